"""Corpus ingestion: read timestamped short texts, tokenize them and build
the time series and vocabulary statistics used by the rest of the package.

A corpus is an ordered sequence of ``(timestamp, tokens)`` pairs, sorted by
time, together with per-term counts and document frequencies.
"""

from __future__ import annotations

import csv
import json
import re
from collections import Counter
from dataclasses import dataclass, field
from datetime import datetime
from importlib import resources
from pathlib import Path
from typing import Iterable, Iterator, Mapping, NamedTuple, Sequence

from .errors import IngestError

TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M"

_URL = re.compile(r"(?:https?://|www\.)\S*", re.IGNORECASE)
_APOSTROPHE = re.compile(r"['’‘`]")
_PUNCT = re.compile(r"[^\w\s]|_")
_TRUE = {"1", "true", "t", "yes", "y"}
_FALSE = {"0", "false", "f", "no", "n", ""}


def data_path(name: str) -> Path:
    """Path of a file shipped in ``thematic/data`` (e.g. ``"s4.csv"``)."""
    return Path(str(resources.files("thematic") / "data" / name))


def load_stopwords(path: str | Path | None = None) -> frozenset[str]:
    """Read a stopword file: UTF-8, one term per line, ``#`` starts a comment.

    Without ``path`` the shipped English list is used. Entries are passed
    through the same casing/punctuation rules as document text so that
    ``don't`` in the list also removes ``dont`` from tweets.
    """
    path = data_path("stopwords_en.txt") if path is None else Path(path)
    words = set()
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            words.add(line.lower())
            words.update(_strip_punct(line.lower()).split())
    return frozenset(words)


@dataclass(frozen=True)
class IngestOptions:
    stopword_file: str | Path | None = None
    min_token_len: int = 2
    lenient: bool = False
    timestamp_format: str = TIMESTAMP_FORMAT
    stopwords: frozenset[str] = field(default=None, repr=False, compare=False)  # type: ignore[assignment]

    def __post_init__(self):
        if self.min_token_len < 0:
            raise ValueError("min_token_len must be non-negative")
        if self.stopwords is None:
            object.__setattr__(self, "stopwords", load_stopwords(self.stopword_file))


_DEFAULT_OPTIONS: IngestOptions | None = None


def default_options() -> IngestOptions:
    global _DEFAULT_OPTIONS
    if _DEFAULT_OPTIONS is None:
        _DEFAULT_OPTIONS = IngestOptions()
    return _DEFAULT_OPTIONS


@dataclass(frozen=True)
class RawDocument:
    id: str
    timestamp: datetime
    text: str
    is_retweet: bool = False


@dataclass(frozen=True)
class Document:
    id: str
    timestamp: datetime
    tokens: tuple[str, ...]


class SeriesPoint(NamedTuple):
    timestamp: datetime
    value: float


@dataclass(frozen=True)
class StatsReport:
    docs: int
    vocab: int
    tokens: int
    mean: float
    first: datetime | None
    last: datetime | None

    def to_dict(self) -> dict:
        fmt = lambda t: None if t is None else t.strftime(TIMESTAMP_FORMAT)
        return {
            "docs": self.docs,
            "vocab": self.vocab,
            "tokens": self.tokens,
            "mean": self.mean,
            "first": fmt(self.first),
            "last": fmt(self.last),
        }


@dataclass(frozen=True)
class Corpus:
    """Immutable, time-sorted document collection.

    ``vocabulary`` maps each term to ``(term count, document frequency)``
    and is ordered by first appearance in the sorted corpus.
    """

    documents: tuple[Document, ...]
    vocabulary: Mapping[str, tuple[int, int]]
    total_token_count: int
    skipped_rows: int = 0

    @classmethod
    def from_documents(cls, documents: Iterable[Document], skipped_rows: int = 0) -> "Corpus":
        # sorted() is stable, so equal timestamps keep input order
        docs = tuple(sorted(documents, key=lambda d: d.timestamp))
        counts: Counter[str] = Counter()
        dfs: Counter[str] = Counter()
        order: dict[str, None] = {}
        for doc in docs:
            counts.update(doc.tokens)
            for term in dict.fromkeys(doc.tokens):
                dfs[term] += 1
                order.setdefault(term, None)
        vocab = {t: (counts[t], dfs[t]) for t in order}
        return cls(docs, vocab, sum(counts.values()), skipped_rows)

    @classmethod
    def from_tokens(cls, token_lists: Sequence[Sequence[str]], start: datetime | None = None) -> "Corpus":
        """Build a corpus from pre-tokenized documents at one-minute spacing."""
        from datetime import timedelta

        start = start or datetime(2020, 5, 2, 0, 0)
        docs = [
            Document(f"d{i + 1}", start + timedelta(minutes=i), tuple(toks))
            for i, toks in enumerate(token_lists)
        ]
        return cls.from_documents(docs)

    def __len__(self) -> int:
        return len(self.documents)

    def term_count(self, term: str) -> int:
        return self.vocabulary.get(term, (0, 0))[0]

    def document_frequency(self, term: str) -> int:
        return self.vocabulary.get(term, (0, 0))[1]


def _strip_punct(text: str) -> str:
    text = _APOSTROPHE.sub("", text)
    return _PUNCT.sub(" ", text)


def normalize_tokenize(text: str, options: IngestOptions | None = None) -> list[str]:
    """Lowercase, drop URLs / @mentions / #hashtags, strip punctuation,
    split on whitespace and remove stopwords and short tokens.

    Apostrophes are deleted (``here's`` -> ``heres``); any other
    punctuation acts as a separator (``corona-virus`` -> ``corona virus``).

    >>> normalize_tokenize("Medical CARE!! http://x.co #covid @who")
    ['medical', 'care']
    """
    options = options or default_options()
    text = _URL.sub(" ", text.lower())
    pieces = [p for p in text.split() if not p.startswith(("@", "#"))]
    tokens = _strip_punct(" ".join(pieces)).split()
    stop = options.stopwords
    return [t for t in tokens if len(t) >= options.min_token_len and t not in stop]


def _parse_bool(value, line: int) -> bool | None:
    if value is None:
        return None
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in _TRUE:
        return True
    if text in _FALSE:
        return None if text == "" else False
    raise IngestError(f"invalid is_retweet value {value!r}", line=line)


def _to_raw(record: Mapping, line: int, options: IngestOptions) -> RawDocument:
    missing = [k for k in ("id", "timestamp", "text") if record.get(k) is None]
    if missing:
        raise IngestError(f"missing field(s) {', '.join(missing)}", line=line)
    doc_id = str(record["id"]).strip()
    if not doc_id:
        raise IngestError("empty id", line=line)
    try:
        ts = datetime.strptime(str(record["timestamp"]).strip(), options.timestamp_format)
    except ValueError:
        raise IngestError(f"unparseable timestamp {record['timestamp']!r}", line=line) from None
    text = str(record["text"])
    flag = _parse_bool(record.get("is_retweet"), line)
    if flag is None:
        flag = text.lstrip().startswith("RT @")
    return RawDocument(doc_id, ts, text, flag)


def _csv_records(fh) -> Iterator[tuple[int, dict | None]]:
    reader = csv.DictReader(fh)
    header = reader.fieldnames or []
    if header and not {"id", "timestamp", "text"} <= set(header):
        raise IngestError(f"CSV header must contain id,timestamp,text (got {','.join(header)})", line=1)
    for row in reader:
        # restkey collects surplus cells; a short row leaves None values
        if None in row or any(row.get(k) is None for k in ("id", "timestamp", "text")):
            yield reader.line_num, None
        else:
            yield reader.line_num, row


def _jsonl_records(fh) -> Iterator[tuple[int, dict | None]]:
    for lineno, line in enumerate(fh, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError:
            yield lineno, None
            continue
        yield lineno, obj if isinstance(obj, dict) else None


def ingest(path: str | Path, format: str | None = None, options: IngestOptions | None = None) -> Corpus:
    """Read ``path`` into a :class:`Corpus`.

    ``format`` is ``"csv"`` or ``"jsonl"``; when omitted it is inferred from
    the file suffix. Retweets are dropped; documents that end up with no
    tokens are kept so that time series stay aligned with the input.
    """
    options = options or default_options()
    path = Path(path)
    format = format or infer_format(path)
    if format not in ("csv", "jsonl"):
        raise IngestError(f"unknown format {format!r}")
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise IngestError(f"cannot read {path}: {exc.strerror}") from exc

    docs: list[Document] = []
    skipped = 0
    with fh:
        records = _csv_records(fh) if format == "csv" else _jsonl_records(fh)
        try:
            for lineno, record in records:
                try:
                    if record is None:
                        raise IngestError("malformed row", line=lineno)
                    raw = _to_raw(record, lineno, options)
                except IngestError:
                    if not options.lenient:
                        raise
                    skipped += 1
                    continue
                if raw.is_retweet:
                    continue
                docs.append(Document(raw.id, raw.timestamp, tuple(normalize_tokenize(raw.text, options))))
        except (UnicodeDecodeError, csv.Error) as exc:
            raise IngestError(f"cannot parse {path}: {exc}") from exc
    return Corpus.from_documents(docs, skipped_rows=skipped)


def infer_format(path: str | Path) -> str:
    suffix = Path(path).suffix.lower()
    return "jsonl" if suffix in (".jsonl", ".json", ".ndjson") else "csv"


def tweet_length_series(corpus: Corpus) -> list[SeriesPoint]:
    return [SeriesPoint(d.timestamp, len(d.tokens)) for d in corpus.documents]


def event_occurrence_series(corpus: Corpus, event: str) -> list[SeriesPoint]:
    """0/1 indicator per document of whether ``event`` is among its tokens."""
    return [SeriesPoint(d.timestamp, int(event in d.tokens)) for d in corpus.documents]


def corpus_stats(corpus: Corpus) -> StatsReport:
    n = len(corpus.documents)
    return StatsReport(
        docs=n,
        vocab=len(corpus.vocabulary),
        tokens=corpus.total_token_count,
        mean=corpus.total_token_count / n if n else 0.0,
        first=corpus.documents[0].timestamp if n else None,
        last=corpus.documents[-1].timestamp if n else None,
    )
