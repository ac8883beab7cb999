"""Document-level co-occurrence statistics and the keyword/event
uncertainty measure built on them.

All probabilities are document probabilities: ``P(t)`` is the fraction of
documents containing ``t`` and ``P(i | j)`` the fraction of documents
containing ``j`` that also contain ``i``.

For a keyword ``i`` and an event ``j`` the contextual entropy is

    H = -( P(j) log2(1/P(j)) + P(i) log2(1/P(i)) + P(i|j) log2 P(i|j) )

taken exactly as written, including the sign flip on the last term. The
information gain scales it by the event count, ``IG = C(j) * H``, the
uncertainty is ``1 - IG`` and the ranked weight adds the keyword's share of
all tokens: ``UN + Count(i) / total``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping

from .corpus import Corpus
from .errors import DegenerateInputError, UndefinedConditionalError

COUNT_MODES = ("raw", "normalized")


def _check_mode(mode: str) -> None:
    if mode not in COUNT_MODES:
        raise ValueError(f"count mode must be one of {COUNT_MODES}, got {mode!r}")


def plogp_inv(p: float) -> float:
    """``p * log2(1/p)`` with ``0 * log2(1/0) = 0``."""
    return 0.0 if p <= 0.0 else -p * math.log2(p)


def plogp(p: float) -> float:
    """``p * log2(p)`` with ``0 * log2(0) = 0``."""
    return 0.0 if p <= 0.0 else p * math.log2(p)


@dataclass(frozen=True)
class CooccurrenceIndex:
    """Term -> set of document indices, over a fixed corpus.

    Pair counts are intersections of incidence sets and are computed on
    demand; nothing is cached, so the index is safe to share.
    """

    incidence: Mapping[str, frozenset[int]]
    doc_count: int
    corpus: Corpus

    def documents_with(self, term: str) -> frozenset[int]:
        return self.incidence.get(term, frozenset())

    def pair_count(self, a: str, b: str) -> int:
        return len(self.documents_with(a) & self.documents_with(b))

    def to_json_dict(self) -> dict[str, list[int]]:
        return {t: sorted(docs) for t, docs in self.incidence.items()}


@dataclass(frozen=True)
class UncertaintyRecord:
    event: str
    keyword: str
    entropy: float
    info_gain: float
    uncertainty: float
    ranked_weight: float


def build_index(corpus: Corpus) -> CooccurrenceIndex:
    incidence: dict[str, set[int]] = {t: set() for t in corpus.vocabulary}
    for d, doc in enumerate(corpus.documents):
        for term in doc.tokens:
            incidence[term].add(d)
    return CooccurrenceIndex(
        {t: frozenset(s) for t, s in incidence.items()}, len(corpus.documents), corpus
    )


def term_probability(index: CooccurrenceIndex, term: str) -> float:
    if index.doc_count == 0:
        raise DegenerateInputError("term probability is undefined on an empty corpus")
    return len(index.documents_with(term)) / index.doc_count


def conditional_probability(index: CooccurrenceIndex, keyword: str, event: str) -> float:
    """Fraction of documents containing ``event`` that also contain ``keyword``."""
    n_event = len(index.documents_with(event))
    if n_event == 0:
        raise UndefinedConditionalError(f"event {event!r} does not occur in the corpus")
    return index.pair_count(keyword, event) / n_event


def event_count(index: CooccurrenceIndex, event: str, mode: str = "raw") -> float:
    _check_mode(mode)
    n = len(index.documents_with(event))
    if mode == "raw":
        return n
    return n / index.doc_count if index.doc_count else 0.0


def cooccurs(index: CooccurrenceIndex, keyword: str, event: str) -> bool:
    # binary incidence vectors have nonzero cosine iff they share a document
    return index.pair_count(keyword, event) > 0


def contextual_entropy(index: CooccurrenceIndex, keyword: str, event: str) -> float:
    p_cond = conditional_probability(index, keyword, event)
    p_event = term_probability(index, event)
    p_kw = term_probability(index, keyword)
    return -(plogp_inv(p_event) + plogp_inv(p_kw) + plogp(p_cond))


def information_gain(index: CooccurrenceIndex, keyword: str, event: str, mode: str = "raw") -> float:
    return event_count(index, event, mode) * contextual_entropy(index, keyword, event)


def uncertainty(index: CooccurrenceIndex, keyword: str, event: str, mode: str = "raw") -> float:
    return 1.0 - information_gain(index, keyword, event, mode)


def frequency_share(index: CooccurrenceIndex, keyword: str) -> float:
    total = index.corpus.total_token_count
    if total == 0:
        raise DegenerateInputError("ranked weight is undefined when the corpus has no tokens")
    return index.corpus.term_count(keyword) / total


def ranked_weight(index: CooccurrenceIndex, keyword: str, event: str, mode: str = "raw") -> float:
    return uncertainty(index, keyword, event, mode) + frequency_share(index, keyword)


def uncertainty_record(index: CooccurrenceIndex, keyword: str, event: str, mode: str = "raw") -> UncertaintyRecord:
    """All per-pair quantities in one pass, consistent with the scalar functions."""
    h = contextual_entropy(index, keyword, event)
    ig = event_count(index, event, mode) * h
    un = 1.0 - ig
    return UncertaintyRecord(event, keyword, h, ig, un, un + frequency_share(index, keyword))
