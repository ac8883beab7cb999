"""
TF, TF-IDF and thematic weighting
=================================

Cluster the same documents under three weightings and compare silhouettes.
The thematic weighting keeps only terms tied to a query event and scales
each by its ranked weight.
"""

import json

from thematic.cluster import KPolicy, compare_methods
from thematic.datasets import planted_events, planted_topics

corpus = planted_topics()
events = planted_events()
print(events)

report = compare_methods(corpus, events, KPolicy(k_max=10), seed=0)

for name, res in report.schemes.items():
    print(f"{name:9s} k={res.k} silhouette={res.silhouette:.4f} skipped={res.skipped_docs}")

###############################################################################
# Deltas are reported as absolute silhouette differences and relative to the
# baseline's magnitude.

print(json.dumps(report.deltas, indent=2))
