"""Thematic context vectors: derive events from a query, score every
co-occurring keyword against each event and rank the results.

A context vector lists, for one event, the keywords seen alongside it in
at least one document, sorted by ranked weight (lowest = most certain).
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from .cooccur import CooccurrenceIndex, UncertaintyRecord, cooccurs, uncertainty_record
from .corpus import Corpus, IngestOptions, normalize_tokenize

DEFAULT_THRESHOLD = 1.0
LABELS = ("certain", "uncertain")


@dataclass(frozen=True)
class EventSet:
    events: tuple[str, ...]

    def __iter__(self):
        return iter(self.events)

    def __len__(self):
        return len(self.events)


@dataclass(frozen=True)
class Ulist:
    """Guarded (keyword, event) records in (event, vocabulary) order."""

    events: tuple[str, ...]
    records: tuple[UncertaintyRecord, ...]

    def __len__(self):
        return len(self.records)


@dataclass(frozen=True)
class Entry:
    record: UncertaintyRecord
    label: str

    @property
    def keyword(self) -> str:
        return self.record.keyword

    @property
    def weight(self) -> float:
        return self.record.ranked_weight

    def to_dict(self) -> dict:
        r = self.record
        return {
            "keyword": r.keyword,
            "entropy": r.entropy,
            "info_gain": r.info_gain,
            "uncertainty": r.uncertainty,
            "ranked_weight": r.ranked_weight,
            "label": self.label,
        }


@dataclass(frozen=True)
class ContextVector:
    event: str
    entries: tuple[Entry, ...]

    def __len__(self):
        return len(self.entries)

    def keywords(self) -> list[str]:
        return [e.keyword for e in self.entries]

    def pairs(self) -> list[tuple[str, float]]:
        return [(e.keyword, e.weight) for e in self.entries]

    def to_dict(self) -> dict:
        return {"event": self.event, "entries": [e.to_dict() for e in self.entries]}


def extract_events(query: str, corpus: Corpus, options: IngestOptions | None = None) -> EventSet:
    """Query terms that occur in the corpus, in query order, without repeats."""
    terms = normalize_tokenize(query, options)
    return EventSet(tuple(t for t in dict.fromkeys(terms) if t in corpus.vocabulary))


def build_ulist(index: CooccurrenceIndex, events: EventSet | Iterable[str], mode: str = "raw") -> Ulist:
    events = tuple(events)
    records = []
    for event in events:
        if not index.documents_with(event):
            continue
        for keyword in index.incidence:
            if keyword != event and cooccurs(index, keyword, event):
                records.append(uncertainty_record(index, keyword, event, mode))
    return Ulist(events, tuple(records))


def _label(weight: float, threshold: float) -> str:
    return "certain" if weight < threshold else "uncertain"


def rank(ulist: Ulist, threshold: float = DEFAULT_THRESHOLD) -> list[ContextVector]:
    """One context vector per event, entries ascending by ranked weight.

    Ties are broken by keyword so the output does not depend on vocabulary
    order. Entries are labelled against ``threshold`` as in
    :func:`partition_certainty`.
    """
    grouped: dict[str, list[UncertaintyRecord]] = {e: [] for e in ulist.events}
    for rec in ulist.records:
        grouped.setdefault(rec.event, []).append(rec)
    out = []
    for event, recs in grouped.items():
        recs.sort(key=lambda r: (r.ranked_weight, r.keyword))
        out.append(ContextVector(event, tuple(Entry(r, _label(r.ranked_weight, threshold)) for r in recs)))
    return out


def partition_certainty(cv: ContextVector, threshold: float = DEFAULT_THRESHOLD) -> ContextVector:
    """Relabel entries: certain when the ranked weight is below ``threshold``."""
    if not math.isfinite(threshold):
        raise ValueError("threshold must be finite")
    return replace(cv, entries=tuple(replace(e, label=_label(e.weight, threshold)) for e in cv.entries))


def top_k(cv: ContextVector, k: int, label: str = "all") -> ContextVector:
    if k < 1:
        raise ValueError("k must be at least 1")
    if label not in LABELS + ("all",):
        raise ValueError(f"label must be certain, uncertain or all, got {label!r}")
    picked = [e for e in cv.entries if label == "all" or e.label == label]
    return replace(cv, entries=tuple(picked[:k]))


def context_vectors(
    corpus: Corpus,
    index: CooccurrenceIndex,
    query: str,
    mode: str = "raw",
    threshold: float = DEFAULT_THRESHOLD,
    options: IngestOptions | None = None,
) -> list[ContextVector]:
    """Query string to ranked, labelled context vectors in one call."""
    events = extract_events(query, corpus, options)
    return rank(build_ulist(index, events, mode), threshold)


def to_csv(vectors: Sequence[ContextVector]) -> str:
    """Long-format table: one row per (event, label, keyword)."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["event", "label", "rank", "keyword", "rank_weight", "uncertainty"])
    for cv in vectors:
        for label in LABELS:
            entries = [e for e in cv.entries if e.label == label]
            for i, e in enumerate(entries):
                writer.writerow([cv.event, label, i, e.keyword, repr(e.weight), repr(e.record.uncertainty)])
    return buf.getvalue()
