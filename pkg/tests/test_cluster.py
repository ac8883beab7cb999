import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sklearn.metrics import silhouette_score

import oracles
from conftest import corpus_of
from thematic.cluster import (
    DocVector,
    KPolicy,
    compare_methods,
    elbow_select,
    inertia_curve,
    kmeans,
    silhouette,
    to_matrix,
    vectorize,
)
from thematic.cooccur import build_index, ranked_weight
from thematic.datasets import planted_events, planted_topics
from thematic.errors import ComputationError, MissingContextError
from thematic.rank import build_ulist, rank

FOUR = [(0, 0), (0, 1), (10, 0), (10, 1)]


def test_vectorize_tf_tfidf(s4):
    tf = vectorize(s4, "tf")
    assert tf[2].components == {"care": 1, "panic": 1}
    tfidf = vectorize(s4, "tfidf")
    assert tfidf[0].components["virus"] == pytest.approx(0.4150, abs=1e-4)
    everywhere = corpus_of([["x", "a"], ["x", "b"]])
    assert "x" not in vectorize(everywhere, "tfidf")[0].components


def test_vectorize_thematic(s4):
    with pytest.raises(MissingContextError):
        vectorize(s4, "thematic")
    ix = build_index(s4)
    context = rank(build_ulist(ix, ["medical"]))
    vecs = vectorize(s4, "thematic", context)
    # care never shares a document with medical, so T3 is empty
    assert vecs[2].components == {}
    assert vecs[0].components["virus"] == pytest.approx(ranked_weight(ix, "virus", "medical"))
    # the event term keeps its own dimension through the self pair
    assert vecs[0].components["medical"] == pytest.approx(ranked_weight(ix, "medical", "medical"))
    assert set(vecs[3].components) == {"virus"}


def test_vectorize_thematic_takes_min_over_events(s4):
    ix = build_index(s4)
    context = rank(build_ulist(ix, ["medical", "panic"]))
    vecs = vectorize(s4, "thematic", context)
    expected = min(ranked_weight(ix, "virus", "medical"), ranked_weight(ix, "virus", "panic"))
    assert vecs[3].components["virus"] == pytest.approx(expected)


def test_kmeans_four_points():
    res = kmeans(FOUR, 2, seed=3)
    cost, labels = oracles.best_partition(FOUR, 2)
    assert cost == pytest.approx(1.0)
    assert res.inertia == pytest.approx(1.0, abs=1e-9)
    assert oracles.same_partition(res.assignments, labels)


def test_kmeans_k_extremes():
    pts = np.array([[0.0, 0.0], [1.0, 2.0], [3.0, 1.0], [5.0, 5.0], [2.0, 2.0]])
    assert kmeans(pts, len(pts), seed=1).inertia == pytest.approx(0.0, abs=1e-9)
    total = ((pts - pts.mean(axis=0)) ** 2).sum()
    assert kmeans(pts, 1, seed=1).inertia == pytest.approx(total, rel=1e-12)


def test_kmeans_errors():
    with pytest.raises(ComputationError):
        kmeans(FOUR, 5)
    with pytest.raises(ComputationError):
        kmeans(FOUR, 0)
    with pytest.raises(ComputationError):
        kmeans([[0.0, 0.0], [0.0, 0.0]], 1)


def test_kmeans_deterministic():
    rng = np.random.default_rng(0)
    pts = rng.normal(size=(60, 4))
    a, b = kmeans(pts, 4, seed=11), kmeans(pts, 4, seed=11)
    assert np.array_equal(a.assignments, b.assignments)
    assert a.inertia == b.inertia


def test_inertia_matches_definition():
    rng = np.random.default_rng(5)
    pts = rng.normal(size=(30, 3))
    res = kmeans(pts, 3, seed=2)
    assert res.inertia == pytest.approx(oracles.sse(pts.tolist(), list(res.assignments)), rel=1e-9)
    assert all(0 <= a < 3 for a in res.assignments)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 5))
def test_inertia_non_increasing(seed, k):
    pts = np.random.default_rng(seed).normal(size=(25, 3))
    res = kmeans(pts, k, seed=seed, restarts=1)
    assert all(b <= a * (1 + 1e-12) for a, b in zip(res.history, res.history[1:]))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([0.5, 2.0, 8.0]))
def test_scaling_leaves_assignments(seed, c):
    pts = np.random.default_rng(seed).normal(size=(20, 3))
    a = kmeans(pts, 3, seed=seed)
    b = kmeans(pts * c, 3, seed=seed)
    assert np.array_equal(a.assignments, b.assignments)
    assert b.inertia == pytest.approx(a.inertia * c * c, rel=1e-9)


def test_inertia_curve():
    curve = inertia_curve(FOUR, 4, seed=0)
    assert [k for k, _ in curve] == [1, 2, 3, 4]
    assert curve[-1][1] == pytest.approx(0.0, abs=1e-9)
    same = inertia_curve([[1.0, 1.0]] * 4, 4, seed=0)
    assert all(v == pytest.approx(0.0, abs=1e-12) for _, v in same)


def test_inertia_curve_planted_drop():
    X, _ = to_matrix(vectorize(planted_topics(), "tf"))
    curve = dict(inertia_curve(X, 10, seed=0))
    drops = [curve[k] - curve[k + 1] for k in range(1, 10)]
    assert min(drops[:4]) > 5 * max(drops[4:])


def test_elbow_select():
    assert elbow_select([(1, 10.0), (2, 8.0), (3, 6.0), (4, 4.0)]) == 2
    assert elbow_select([(1, 100.0), (2, 80.0), (3, 60.0), (4, 40.0), (5, 20.0), (6, 19.0), (7, 18.0)]) == 5
    with pytest.raises(ComputationError):
        elbow_select([(1, 1.0), (2, 0.0)])


def test_silhouette_fixture():
    assert silhouette(FOUR, [0, 0, 1, 1]) == pytest.approx(0.9003, abs=1e-3)
    assert silhouette(FOUR, [0, 0, 1, 1]) == pytest.approx(oracles.silhouette(FOUR, [0, 0, 1, 1]), abs=1e-12)
    assert silhouette(FOUR, [0, 1, 0, 1]) < 0
    assert silhouette([(0, 0), (0, 0), (50, 50), (50, 50)], [0, 0, 1, 1]) == 1.0
    with pytest.raises(ComputationError):
        silhouette(FOUR, [0, 0, 0, 0])


def test_silhouette_singletons_score_zero():
    pts = [(0, 0), (0, 1), (5, 5)]
    assert silhouette(pts, [0, 0, 1]) == pytest.approx(oracles.silhouette(pts, [0, 0, 1]), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(st.integers(0, 2**32 - 1), st.integers(2, 4))
def test_silhouette_against_references(seed, k):
    rng = np.random.default_rng(seed)
    pts = rng.normal(size=(12, 2)).round(3)
    labels = np.concatenate([np.arange(k), rng.integers(0, k, size=12 - k)])
    ours = silhouette(pts, labels)
    assert -1 <= ours <= 1
    assert ours == pytest.approx(oracles.silhouette(pts.tolist(), labels.tolist()), abs=1e-9)
    assert ours == pytest.approx(silhouette_score(pts, labels), abs=1e-9)
    perm = rng.permutation(k)
    assert silhouette(pts, perm[labels]) == pytest.approx(ours, abs=1e-12)


def test_sparse_docvectors_equal_dense():
    vecs = [DocVector("a", {"x": 1.0}), DocVector("b", {"x": 1.0, "y": 2.0}), DocVector("c", {"z": 3.0})]
    dense = [[1, 0, 0], [1, 2, 0], [0, 0, 3]]
    assert silhouette(vecs, [0, 0, 1]) == pytest.approx(silhouette(dense, [0, 0, 1]))


def two_topic_corpus():
    a = [["apple", "banana"], ["apple", "cherry"], ["banana", "cherry", "apple"]] * 3
    b = [["rocket", "moon"], ["rocket", "star"], ["moon", "star", "rocket"]] * 3
    return corpus_of([x for pair in zip(a, b) for x in pair])


def test_compare_methods_small():
    report = compare_methods(two_topic_corpus(), ["apple", "rocket"], KPolicy(k_max=6), seed=1)
    assert set(report.schemes) == {"tf", "tfidf", "thematic"}
    for r in report.schemes.values():
        assert -1 <= r.silhouette <= 1
    assert set(report.deltas) == {"thematic_minus_tf", "thematic_minus_tfidf"}
    again = compare_methods(two_topic_corpus(), ["apple", "rocket"], KPolicy(k_max=6), seed=1)
    assert report.to_json() == again.to_json()
    schema = json.loads(report.to_json())
    assert set(schema) == {"schemes", "deltas", "seed", "config_digest"}
    assert set(schema["schemes"]["tf"]) == {"k", "inertia_curve", "silhouette", "skipped_docs"}


def test_compare_fixed_k_and_skips(s4):
    report = compare_methods(s4, ["medical"], KPolicy(k=2), seed=0)
    assert report.schemes["tf"].k == 2
    # T3 (care, panic) has no tie to medical
    assert report.schemes["thematic"].skipped_docs == 1
    assert report.schemes["tf"].skipped_docs == 0


def test_compare_requires_events(s4):
    with pytest.raises(MissingContextError):
        compare_methods(s4, [], KPolicy(k=2))
    report = compare_methods(s4, [], KPolicy(k=2), schemes=("tf",))
    assert report.deltas == {}


def test_planted_topics_shape():
    c = planted_topics()
    assert len(c) == 200
    assert len(c.vocabulary) == 40
    for e in planted_events():
        assert c.document_frequency(e) == 40
