"""
Choosing k with the elbow rule
==============================

Cluster a synthetic corpus of five vocabulary-disjoint topics and pick the
number of clusters from the inertia curve.
"""

from thematic.cluster import elbow_select, inertia_curve, kmeans, silhouette, to_matrix, vectorize
from thematic.datasets import planted_topics

corpus = planted_topics(n_topics=5, docs_per_topic=40, seed=0)
X, terms = to_matrix(vectorize(corpus, "tf"))
print(X.shape, len(terms))

###############################################################################
# Inertia for k = 1..10. The drop is steep up to five clusters and flat
# afterwards; the elbow is where the second difference peaks.

curve = inertia_curve(X, k_max=10, seed=0)
for k, value in curve:
    print(f"{k:2d} {value:10.2f}")

k = elbow_select(curve)
print("elbow at", k)

###############################################################################
# Fit the chosen k and score it.

result = kmeans(X, k, seed=0)
print("inertia", result.inertia, "iterations", result.iterations)
print("silhouette", silhouette(X, result.assignments))
