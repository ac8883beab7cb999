"""Small synthetic corpora with known structure."""

from __future__ import annotations

import numpy as np

from .corpus import Corpus, ingest
from .corpus import data_path

TOPIC_NAMES = ("alpha", "bravo", "charlie", "delta", "echo", "foxtrot", "golf", "hotel", "india", "juliet")


def s4() -> Corpus:
    """The four-tweet fixture shipped as ``data/s4.csv``.

    Tokens: [medical virus emergency], [medical virus lockdown],
    [care panic], [virus panic].
    """
    return ingest(data_path("s4.csv"), "csv")


def topic_words(topic: int, words_per_topic: int) -> list[str]:
    return [f"{TOPIC_NAMES[topic]}{j}" for j in range(words_per_topic)]


def planted_topics(
    n_topics: int = 5,
    docs_per_topic: int = 40,
    words_per_topic: int = 8,
    words_per_doc: tuple[int, int] = (3, 6),
    seed: int = 0,
) -> Corpus:
    """Corpus of ``n_topics`` vocabulary-disjoint topics.

    Every document draws ``words_per_doc`` distinct words from its topic's
    vocabulary; the first word of each topic (see :func:`planted_events`)
    appears in every document of that topic. Documents are interleaved in
    time so that topics are not contiguous.
    """
    if not 1 <= n_topics <= len(TOPIC_NAMES):
        raise ValueError(f"n_topics must be in 1..{len(TOPIC_NAMES)}")
    lo, hi = words_per_doc
    if not 1 <= lo <= hi <= words_per_topic:
        raise ValueError("words_per_doc must satisfy 1 <= lo <= hi <= words_per_topic")
    rng = np.random.Generator(np.random.PCG64(seed))
    docs = []
    for i in range(docs_per_topic):
        for t in range(n_topics):
            vocab = topic_words(t, words_per_topic)
            m = int(rng.integers(lo, hi + 1))
            rest = rng.choice(np.arange(1, words_per_topic), size=m - 1, replace=False)
            docs.append([vocab[0]] + [vocab[j] for j in sorted(rest)])
    return Corpus.from_tokens(docs)


def planted_events(n_topics: int = 5) -> list[str]:
    """One event term per topic: the topic's first word."""
    return [f"{TOPIC_NAMES[t]}0" for t in range(n_topics)]
