"""Command-line front end.

    thematic <command> [options]

Commands: ingest, stats, series, rank, cluster, compare. Options can also
come from a flat ``key = value`` config file (``--config``); flags win over
the file. Results are written to ``--out`` together with ``manifest.json``.

Exit codes: 0 success, 2 configuration error, 3 input error,
4 computation error.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import sys
from dataclasses import asdict, dataclass, fields
from pathlib import Path
from typing import Callable, Sequence

from . import __version__
from .cluster import SCHEMES, KPolicy, compare_methods, evaluate_scheme, vectorize
from .cooccur import COUNT_MODES, build_index
from .corpus import (
    TIMESTAMP_FORMAT,
    Corpus,
    IngestOptions,
    corpus_stats,
    event_occurrence_series,
    ingest,
    infer_format,
    tweet_length_series,
)
from .errors import ComputationError, ConfigError, IngestError, ThematicError
from .rank import build_ulist, extract_events, rank, to_csv, top_k

COMMANDS = ("ingest", "stats", "series", "rank", "cluster", "compare")
EXIT_OK, EXIT_CONFIG, EXIT_INPUT, EXIT_COMPUTE = 0, 2, 3, 4


@dataclass(frozen=True)
class RunConfig:
    input: str | None = None
    format: str | None = None
    stopwords: str | None = None
    query: str | None = None
    count_mode: str = "raw"
    threshold: float = 1.0
    schemes: tuple[str, ...] = SCHEMES
    scheme: str = "tf"
    k: int | None = None
    k_max: int = 10
    seed: int = 0
    restarts: int = 8
    max_iter: int = 100
    top_k: int | None = None
    out: str = "out"
    lenient: bool = False
    dump_index: bool = False

    def k_policy(self) -> KPolicy:
        return KPolicy(k=self.k, k_max=self.k_max)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["schemes"] = list(self.schemes)
        return d

    def digest(self) -> str:
        blob = json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()


def _bool(text: str) -> bool:
    low = text.strip().lower()
    if low in ("1", "true", "yes", "on"):
        return True
    if low in ("0", "false", "no", "off"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


def _opt_int(text: str) -> int | None:
    return None if text.strip().lower() in ("", "none") else int(text)


def _schemes(text: str) -> tuple[str, ...]:
    return tuple(s.strip() for s in text.split(",") if s.strip())


_CONVERTERS: dict[str, Callable[[str], object]] = {
    "input": str,
    "format": str,
    "stopwords": str,
    "query": str,
    "count_mode": str,
    "threshold": float,
    "schemes": _schemes,
    "scheme": str,
    "k": _opt_int,
    "k_max": int,
    "seed": int,
    "restarts": int,
    "max_iter": int,
    "top_k": _opt_int,
    "out": str,
    "lenient": _bool,
    "dump_index": _bool,
}
assert set(_CONVERTERS) == {f.name for f in fields(RunConfig)}


def _flag(key: str) -> str:
    return "--" + key.replace("_", "-")


def _convert(key: str, raw: str) -> object:
    try:
        return _CONVERTERS[key](raw)
    except ValueError:
        raise ConfigError(f"{_flag(key)[2:]}: invalid value {raw!r}", key=key) from None


def read_config_file(path: str | Path) -> dict[str, object]:
    """Parse flat ``key = value`` lines; ``#`` starts a comment."""
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise ConfigError(f"config: cannot read {path}: {exc.strerror}", key="config") from exc
    values: dict[str, object] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected key = value", key="config")
        key, raw = (part.strip() for part in line.split("=", 1))
        key = key.replace("-", "_")
        if key not in _CONVERTERS:
            raise ConfigError(f"config line {lineno}: unknown key {key!r}", key=key)
        values[key] = _convert(key, raw.strip('"') if raw.startswith('"') else raw)
    return values


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="thematic", description="Thematic context vectors for timestamped short texts.")
    parser.add_argument("--version", action="version", version=f"thematic {__version__}")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("--config", help="flat key = value config file")
    for key in _CONVERTERS:
        if _CONVERTERS[key] is _bool:
            parser.add_argument(_flag(key), dest=key, action="store_const", const="true",
                                default=argparse.SUPPRESS)
        else:
            parser.add_argument(_flag(key), dest=key, default=argparse.SUPPRESS)
    return parser


def _validate(cmd: str, cfg: RunConfig) -> None:
    def bad(key, msg):
        raise ConfigError(f"{_flag(key)[2:]}: {msg}", key=key)

    if cfg.count_mode not in COUNT_MODES:
        bad("count_mode", f"must be one of {', '.join(COUNT_MODES)}, got {cfg.count_mode!r}")
    if cfg.format is not None and cfg.format not in ("csv", "jsonl"):
        bad("format", f"must be csv or jsonl, got {cfg.format!r}")
    for s in cfg.schemes:
        if s not in SCHEMES:
            bad("schemes", f"unknown scheme {s!r}")
    if not cfg.schemes:
        bad("schemes", "at least one scheme is required")
    if cfg.scheme not in SCHEMES:
        bad("scheme", f"unknown scheme {cfg.scheme!r}")
    if cfg.k is not None and cfg.k < 1:
        bad("k", "must be positive")
    for key in ("k_max", "restarts", "max_iter"):
        if getattr(cfg, key) < 1:
            bad(key, "must be positive")
    if cfg.top_k is not None and cfg.top_k < 1:
        bad("top_k", "must be positive")
    if not cfg.input:
        bad("input", f"required for {cmd}")
    if not cfg.out:
        bad("out", "must not be empty")
    needs_query = cmd == "rank" or (cmd == "compare" and "thematic" in cfg.schemes) or (
        cmd == "cluster" and cfg.scheme == "thematic"
    )
    if needs_query and not cfg.query:
        bad("query", f"required for {cmd}")


def parse_config(argv: Sequence[str], file: str | Path | None = None) -> tuple[str, RunConfig]:
    """Resolve the effective configuration: defaults < config file < flags."""
    ns = vars(_build_parser().parse_args(list(argv)))
    cmd = ns.pop("command")
    config_path = ns.pop("config", None) or file
    values = read_config_file(config_path) if config_path else {}
    for key, raw in ns.items():
        values[key] = _convert(key, raw)
    cfg = RunConfig(**values)
    _validate(cmd, cfg)
    return cmd, cfg


# -- execution -----------------------------------------------------------------


def _sha256(path: str | Path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for chunk in iter(lambda: fh.read(1 << 16), b""):
            h.update(chunk)
    return h.hexdigest()


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def _series_csv(points) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["timestamp", "value"])
    for p in points:
        w.writerow([p.timestamp.strftime(TIMESTAMP_FORMAT), p.value])
    return buf.getvalue()


def _curve_csv(curves: dict[str, list[tuple[int, float]]]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["scheme", "k", "inertia"])
    for scheme, curve in curves.items():
        for k, v in curve:
            w.writerow([scheme, k, repr(float(v))])
    return buf.getvalue()


def _warn(msg: str) -> None:
    print(f"thematic: warning: {msg}", file=sys.stderr)


def _stage(name: str, fn, *args, **kwargs):
    try:
        return fn(*args, **kwargs)
    except ThematicError as exc:
        exc.args = (f"{name}: {exc.args[0] if exc.args else exc}",) + exc.args[1:]
        raise


def _load(cfg: RunConfig) -> Corpus:
    try:
        options = IngestOptions(stopword_file=cfg.stopwords, lenient=cfg.lenient)
    except OSError as exc:
        raise IngestError(f"cannot read stopword file {cfg.stopwords}: {exc.strerror}") from exc
    corpus = _stage("ingest", ingest, cfg.input, cfg.format or infer_format(cfg.input), options)
    if corpus.skipped_rows:
        _warn(f"skipped {corpus.skipped_rows} malformed row(s)")
    return corpus


def _outputs(cmd: str, cfg: RunConfig, corpus: Corpus) -> dict[str, str]:
    out: dict[str, str] = {}
    options = IngestOptions(stopword_file=cfg.stopwords)
    events = extract_events(cfg.query, corpus, options).events if cfg.query else ()
    if cfg.query and not events:
        _warn(f"no query term of {cfg.query!r} occurs in the corpus")

    if cfg.dump_index:
        out["index.json"] = _dumps(build_index(corpus).to_json_dict())

    if cmd == "ingest":
        out["corpus.jsonl"] = "".join(
            json.dumps({"id": d.id, "timestamp": d.timestamp.strftime(TIMESTAMP_FORMAT), "tokens": list(d.tokens)},
                       sort_keys=True, ensure_ascii=False) + "\n"
            for d in corpus.documents
        )
    elif cmd == "stats":
        out["stats.json"] = _dumps(corpus_stats(corpus).to_dict())
    elif cmd == "series":
        out["tweet_length.csv"] = _series_csv(tweet_length_series(corpus))
        for e in events:
            out[f"event_{e}.csv"] = _series_csv(event_occurrence_series(corpus, e))
    elif cmd == "rank":
        index = build_index(corpus)
        vectors = _stage("rank", lambda: rank(build_ulist(index, events, cfg.count_mode), cfg.threshold))
        if cfg.top_k:
            vectors = [top_k(cv, cfg.top_k, "all") for cv in vectors]
        out["context_vectors.json"] = _dumps([cv.to_dict() for cv in vectors])
        out["context_vectors.csv"] = to_csv(vectors)
    elif cmd == "cluster":
        context = None
        if cfg.scheme == "thematic":
            if not events:
                raise ComputationError("cluster: thematic scheme needs at least one event")
            context = rank(build_ulist(build_index(corpus), events, cfg.count_mode), cfg.threshold)
        vecs = _stage("cluster", vectorize, corpus, cfg.scheme, context, cfg.count_mode)
        res = _stage("cluster", evaluate_scheme, vecs, cfg.k_policy(), cfg.seed, cfg.restarts, cfg.max_iter)
        payload = res.clustering.to_dict()
        payload.pop("terms")
        payload.pop("centroids")
        payload.update(
            scheme=cfg.scheme,
            doc_ids=[v.doc_id for v in vecs if v.components],
            silhouette=res.silhouette,
            skipped_docs=res.skipped_docs,
            inertia_curve=[[k, v] for k, v in res.inertia_curve],
        )
        out["clustering.json"] = _dumps(payload)
        out["inertia_curve.csv"] = _curve_csv({cfg.scheme: res.inertia_curve})
    elif cmd == "compare":
        if "thematic" in cfg.schemes and not events:
            raise ComputationError("compare: thematic scheme needs at least one event")
        report = _stage(
            "compare", compare_methods, corpus, events, cfg.k_policy(), cfg.seed,
            schemes=cfg.schemes, mode=cfg.count_mode, threshold=cfg.threshold,
            restarts=cfg.restarts, max_iter=cfg.max_iter,
        )
        out["comparison.json"] = report.to_json()
        out["inertia_curves.csv"] = _curve_csv({s: r.inertia_curve for s, r in report.schemes.items()})
    return out


def execute(cmd: str, cfg: RunConfig) -> list[Path]:
    """Run ``cmd``; write its outputs and then ``manifest.json`` into ``cfg.out``.

    Nothing is written unless every stage succeeds.
    """
    if cmd not in COMMANDS:
        raise ConfigError(f"unknown command {cmd!r}", key="command")
    corpus = _load(cfg)
    outputs = _outputs(cmd, cfg, corpus)
    inputs = {cfg.input: _sha256(cfg.input)}
    if cfg.stopwords:
        inputs[cfg.stopwords] = _sha256(cfg.stopwords)
    manifest = {
        "tool_version": __version__,
        "command": cmd,
        "config": cfg.to_dict(),
        "config_digest": cfg.digest(),
        "inputs": inputs,
        "outputs": sorted(outputs),
    }
    out_dir = Path(cfg.out)
    written = []
    try:
        out_dir.mkdir(parents=True, exist_ok=True)
        for name in sorted(outputs):
            path = out_dir / name
            path.write_text(outputs[name], encoding="utf-8", newline="")
            written.append(path)
        path = out_dir / "manifest.json"
        path.write_text(_dumps(manifest), encoding="utf-8")
        written.append(path)
    except OSError:
        for path in written:
            path.unlink(missing_ok=True)
        raise
    return written


def main(argv: Sequence[str] | None = None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    try:
        cmd, cfg = parse_config(argv)
        execute(cmd, cfg)
    except ConfigError as exc:
        print(f"thematic: config error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except (IngestError, OSError) as exc:
        print(f"thematic: input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ComputationError, ValueError) as exc:
        print(f"thematic: computation error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
