"""Document embeddings (TF, TF-IDF, thematic) and their evaluation with
seeded K-means, the elbow rule and the silhouette coefficient.

Vectors are held as scipy CSR matrices over the sorted union of terms;
centroids are dense. Squared distances use the expansion
``|x|^2 - 2 x.c + |c|^2`` clipped at zero.
"""

from __future__ import annotations

import hashlib
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

import numpy as np
import scipy.sparse as sp

from .cooccur import build_index, cooccurs, ranked_weight
from .corpus import Corpus
from .errors import ComputationError, MissingContextError
from .rank import DEFAULT_THRESHOLD, ContextVector, build_ulist, rank

SCHEMES = ("tf", "tfidf", "thematic")
DEFAULT_RESTARTS = 8
DEFAULT_MAX_ITER = 100


@dataclass(frozen=True)
class DocVector:
    doc_id: str
    components: Mapping[str, float]

    def __len__(self):
        return len(self.components)


@dataclass
class ClusteringResult:
    k: int
    assignments: np.ndarray
    centroids: np.ndarray
    inertia: float
    seed: int
    iterations: int
    terms: tuple[str, ...] = ()
    # objective after every centroid update of the winning restart
    history: list[float] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "assignments": [int(a) for a in self.assignments],
            "centroids": [[float(v) for v in row] for row in self.centroids],
            "inertia": float(self.inertia),
            "seed": self.seed,
            "iterations": self.iterations,
            "terms": list(self.terms),
        }


# -- vectorization -----------------------------------------------------------


def thematic_term_weights(corpus: Corpus, events: Iterable[str], mode: str = "raw") -> dict[str, float]:
    """Lowest ranked weight of each term over the events it co-occurs with.

    An event term co-occurs with itself, so it keeps its own dimension
    weighted by its self-pair score. Terms sharing no document with any
    event are absent from the result.
    """
    index = build_index(corpus)
    events = [e for e in dict.fromkeys(events) if index.documents_with(e)]
    weights: dict[str, float] = {}
    for term in index.incidence:
        scores = [ranked_weight(index, term, e, mode) for e in events if cooccurs(index, term, e)]
        if scores:
            weights[term] = min(scores)
    return weights


def vectorize(corpus: Corpus, scheme: str = "tf", context: Sequence[ContextVector] | None = None,
              mode: str = "raw") -> list[DocVector]:
    """Embed every document of ``corpus`` (empty documents give empty vectors).

    * ``tf``: raw term counts.
    * ``tfidf``: count times ``log2(N / df)``.
    * ``thematic``: count times the term's lowest ranked weight over the
      events of ``context`` it co-occurs with (``mode`` selects the event
      count flavour); terms tied to no event are dropped.
    """
    if scheme not in SCHEMES:
        raise ValueError(f"scheme must be one of {SCHEMES}, got {scheme!r}")
    if scheme == "thematic":
        if not context:
            raise MissingContextError("thematic weighting needs at least one context vector")
        theme = thematic_term_weights(corpus, [cv.event for cv in context], mode)
    n = len(corpus.documents)
    out = []
    for doc in corpus.documents:
        comps: dict[str, float] = {}
        for term, tf in Counter(doc.tokens).items():
            if scheme == "tf":
                w = float(tf)
            elif scheme == "tfidf":
                w = tf * math.log2(n / corpus.document_frequency(term))
            else:
                if term not in theme:
                    continue
                w = tf * theme[term]
            if w != 0.0:
                comps[term] = w
        out.append(DocVector(doc.id, comps))
    return out


def to_matrix(vectors: Sequence[DocVector]) -> tuple[sp.csr_matrix, tuple[str, ...]]:
    terms = tuple(sorted({t for v in vectors for t in v.components}))
    col = {t: j for j, t in enumerate(terms)}
    rows, cols, vals = [], [], []
    for i, v in enumerate(vectors):
        for t, w in v.components.items():
            rows.append(i)
            cols.append(col[t])
            vals.append(w)
    X = sp.csr_matrix((vals, (rows, cols)), shape=(len(vectors), len(terms)), dtype=float)
    X.sort_indices()
    return X, terms


def _as_matrix(vectors) -> tuple[sp.csr_matrix, tuple[str, ...]]:
    if isinstance(vectors, sp.spmatrix):
        return sp.csr_matrix(vectors, dtype=float), ()
    if len(vectors) and isinstance(vectors[0], DocVector):
        return to_matrix(vectors)
    arr = np.atleast_2d(np.asarray(vectors, dtype=float))
    return sp.csr_matrix(arr), ()


# -- k-means -------------------------------------------------------------------


def _sq_norms(X: sp.csr_matrix) -> np.ndarray:
    return np.asarray(X.multiply(X).sum(axis=1)).ravel()


def _sq_dists(X, x2, C) -> np.ndarray:
    d = x2[:, None] - 2.0 * np.asarray(X @ C.T) + (C * C).sum(axis=1)[None, :]
    return np.maximum(d, 0.0)


def _objective(X, x2, C, labels) -> float:
    d = _sq_dists(X, x2, C)
    return float(d[np.arange(len(labels)), labels].sum())


def _update(X, labels, k, old: np.ndarray) -> np.ndarray:
    n = X.shape[0]
    M = sp.csr_matrix((np.ones(n), (labels, np.arange(n))), shape=(k, n))
    sizes = np.asarray(M.sum(axis=1)).ravel()
    sums = np.asarray((M @ X).todense())
    C = old.copy()
    nonempty = sizes > 0
    C[nonempty] = sums[nonempty] / sizes[nonempty, None]
    return C


def _kmeanspp(X, x2, k, rng: np.random.Generator) -> np.ndarray:
    """k-means++ seeding: distinct rows drawn with probability ~ D^2."""
    n = X.shape[0]
    chosen = [int(rng.integers(n))]
    d2 = _sq_dists(X, x2, X[chosen].toarray())[:, 0]
    for _ in range(1, k):
        mask = np.ones(n, dtype=bool)
        mask[chosen] = False
        total = d2[mask].sum()
        if total > 0:
            p = np.where(mask, d2, 0.0) / d2[mask].sum()
            idx = int(rng.choice(n, p=p))
        else:
            # fewer distinct points than k: fall back to a uniform pick
            idx = int(rng.choice(np.flatnonzero(mask)))
        chosen.append(idx)
        d2 = np.minimum(d2, _sq_dists(X, x2, X[[idx]].toarray())[:, 0])
    return X[chosen].toarray()


def _lloyd(X, x2, C, max_iter):
    labels = np.argmin(_sq_dists(X, x2, C), axis=1)
    history = []
    it = 0
    for it in range(1, max_iter + 1):
        C = _update(X, labels, C.shape[0], C)
        obj = _objective(X, x2, C, labels)
        if history and obj > history[-1] * (1 + 1e-9) + 1e-12:
            raise ComputationError(f"k-means objective increased at iteration {it}")
        history.append(obj)
        new = np.argmin(_sq_dists(X, x2, C), axis=1)
        if np.array_equal(new, labels):
            break
        labels = new
    return labels, C, _objective(X, x2, C, labels), it, history


def kmeans(vectors, k: int, seed: int = 0, max_iter: int = DEFAULT_MAX_ITER, restarts: int = DEFAULT_RESTARTS) -> ClusteringResult:
    """Lloyd's algorithm with k-means++ seeding; best of ``restarts`` runs.

    Randomness comes only from ``numpy.random.Generator(PCG64(seed))``,
    consumed sequentially across restarts, so results are reproducible.
    ``vectors`` may be a list of :class:`DocVector`, a dense array or a
    sparse matrix.
    """
    X, terms = _as_matrix(vectors)
    n = X.shape[0]
    if not 1 <= k <= n:
        raise ComputationError(f"k={k} out of range for {n} vectors")
    if X.nnz == 0:
        raise ComputationError("all vectors are empty")
    if restarts < 1 or max_iter < 1:
        raise ValueError("restarts and max_iter must be positive")
    x2 = _sq_norms(X)
    rng = np.random.Generator(np.random.PCG64(seed))
    best = None
    for _ in range(restarts):
        C0 = _kmeanspp(X, x2, k, rng)
        labels, C, inertia, iters, hist = _lloyd(X, x2, C0, max_iter)
        if best is None or inertia < best.inertia:
            best = ClusteringResult(k, labels, C, inertia, seed, iters, terms, hist)
    return best


def inertia_curve(vectors, k_max: int, seed: int = 0, restarts: int = DEFAULT_RESTARTS,
                  max_iter: int = DEFAULT_MAX_ITER) -> list[tuple[int, float]]:
    X, _ = _as_matrix(vectors)
    if k_max < 1 or k_max > X.shape[0]:
        raise ComputationError(f"k_max={k_max} out of range for {X.shape[0]} vectors")
    return [(k, kmeans(X, k, seed, max_iter, restarts).inertia) for k in range(1, k_max + 1)]


def elbow_select(curve: Sequence[tuple[int, float]]) -> int:
    """k with the largest second difference of inertia; ties go to the smaller k."""
    if len(curve) < 3:
        raise ComputationError("elbow selection needs at least 3 points")
    ks = [k for k, _ in curve]
    y = np.array([v for _, v in curve], dtype=float)
    second = y[:-2] - 2 * y[1:-1] + y[2:]
    tol = 1e-12 * max(1.0, float(np.abs(y).max()))
    best = int(np.flatnonzero(second >= second.max() - tol)[0])
    return ks[best + 1]


def silhouette(vectors, assignments) -> float:
    """Mean silhouette with Euclidean distance; singleton clusters score 0."""
    X, _ = _as_matrix(vectors)
    labels = np.asarray(assignments)
    n = X.shape[0]
    if labels.shape != (n,):
        raise ValueError("one assignment per vector is required")
    ids, labels = np.unique(labels, return_inverse=True)
    k = len(ids)
    if k < 2:
        raise ComputationError("silhouette needs at least two non-empty clusters")
    x2 = _sq_norms(X)
    G = np.asarray((X @ X.T).todense())
    D = np.sqrt(np.maximum(x2[:, None] + x2[None, :] - 2.0 * G, 0.0))
    np.fill_diagonal(D, 0.0)
    M = np.zeros((n, k))
    M[np.arange(n), labels] = 1.0
    sizes = M.sum(axis=0)
    sums = D @ M
    own = sizes[labels]
    a = np.where(own > 1, sums[np.arange(n), labels] / np.maximum(own - 1, 1), 0.0)
    mean_other = sums / sizes[None, :]
    mean_other[np.arange(n), labels] = np.inf
    b = mean_other.min(axis=1)
    denom = np.maximum(a, b)
    s = np.where((own > 1) & (denom > 0), (b - a) / np.where(denom > 0, denom, 1.0), 0.0)
    return float(s.mean())


# -- method comparison ---------------------------------------------------------


@dataclass(frozen=True)
class KPolicy:
    """Either a fixed ``k`` or elbow selection over ``1..k_max``."""

    k: int | None = None
    k_max: int = 10

    def __post_init__(self):
        if self.k is not None and self.k < 1:
            raise ValueError("fixed k must be positive")
        if self.k_max < 1:
            raise ValueError("k_max must be positive")

    def describe(self) -> dict:
        return {"k": self.k} if self.k is not None else {"elbow": True, "k_max": self.k_max}


@dataclass
class SchemeResult:
    k: int
    inertia_curve: list[tuple[int, float]]
    silhouette: float | None
    skipped_docs: int
    clustering: ClusteringResult | None = field(default=None, repr=False)

    def to_dict(self) -> dict:
        return {
            "k": self.k,
            "inertia_curve": [[k, v] for k, v in self.inertia_curve],
            "silhouette": self.silhouette,
            "skipped_docs": self.skipped_docs,
        }


@dataclass
class ComparisonReport:
    schemes: dict[str, SchemeResult]
    deltas: dict[str, dict[str, float | None]]
    seed: int
    config: dict

    @property
    def config_digest(self) -> str:
        blob = json.dumps(self.config, sort_keys=True, separators=(",", ":"))
        return hashlib.sha256(blob.encode("utf-8")).hexdigest()

    def to_dict(self) -> dict:
        return {
            "schemes": {name: r.to_dict() for name, r in self.schemes.items()},
            "deltas": self.deltas,
            "seed": self.seed,
            "config_digest": self.config_digest,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, indent=2) + "\n"


def _delta(new: float | None, old: float | None) -> dict[str, float | None]:
    if new is None or old is None:
        return {"absolute": None, "relative": None}
    diff = new - old
    return {"absolute": diff, "relative": diff / abs(old) if old != 0 else None}


def evaluate_scheme(vectors: Sequence[DocVector], policy: KPolicy, seed: int,
                    restarts: int = DEFAULT_RESTARTS, max_iter: int = DEFAULT_MAX_ITER) -> SchemeResult:
    """Cluster the non-empty vectors under ``policy`` and score the result."""
    kept = [v for v in vectors if v.components]
    skipped = len(vectors) - len(kept)
    n = len(kept)
    if n == 0:
        raise ComputationError("no non-empty document vectors to cluster")
    if policy.k is not None:
        k = policy.k
        result = kmeans(kept, k, seed, max_iter, restarts)
        curve = [(k, result.inertia)]
    else:
        k_max = min(policy.k_max, n)
        if k_max < 3:
            raise ComputationError(f"elbow selection needs at least 3 non-empty documents, got {n}")
        X, _ = to_matrix(kept)
        curve = inertia_curve(X, k_max, seed, restarts, max_iter)
        k = elbow_select(curve)
        result = kmeans(X, k, seed, max_iter, restarts)
    try:
        score = silhouette(to_matrix(kept)[0], result.assignments)
    except ComputationError:
        score = None
    return SchemeResult(k, curve, score, skipped, result)


def compare_methods(
    corpus: Corpus,
    events: Iterable[str],
    k_policy: KPolicy | None = None,
    seed: int = 0,
    *,
    schemes: Sequence[str] = SCHEMES,
    mode: str = "raw",
    threshold: float = DEFAULT_THRESHOLD,
    restarts: int = DEFAULT_RESTARTS,
    max_iter: int = DEFAULT_MAX_ITER,
) -> ComparisonReport:
    """Cluster ``corpus`` under each weighting scheme and compare silhouettes.

    The thematic scheme uses context vectors built from ``events``. Deltas
    are reported both as absolute silhouette differences and relative to
    the baseline's magnitude.
    """
    events = tuple(events)
    k_policy = k_policy or KPolicy()
    for s in schemes:
        if s not in SCHEMES:
            raise ValueError(f"unknown scheme {s!r}")
    context = None
    if "thematic" in schemes:
        if not events:
            raise MissingContextError("the thematic scheme needs at least one event")
        context = rank(build_ulist(build_index(corpus), events, mode), threshold)
    results = {
        s: evaluate_scheme(vectorize(corpus, s, context, mode), k_policy, seed, restarts, max_iter)
        for s in schemes
    }
    deltas = {}
    if "thematic" in results:
        th = results["thematic"].silhouette
        for base in ("tf", "tfidf"):
            if base in results:
                deltas[f"thematic_minus_{base}"] = _delta(th, results[base].silhouette)
    config = {
        "events": list(events),
        "k_policy": k_policy.describe(),
        "seed": seed,
        "schemes": list(schemes),
        "count_mode": mode,
        "threshold": threshold,
        "restarts": restarts,
        "max_iter": max_iter,
    }
    return ComparisonReport(results, deltas, seed, config)
