"""
Thematic context vectors for a query
====================================

Turn a natural-language query into events, score every keyword that shares
a tweet with an event, and rank the keywords per event.
"""

from thematic.cooccur import build_index, contextual_entropy, ranked_weight, uncertainty
from thematic.datasets import s4
from thematic.rank import build_ulist, extract_events, partition_certainty, rank, top_k

corpus = s4()
index = build_index(corpus)

###############################################################################
# Query words that occur in the corpus become events.

events = extract_events("What has been published about medical care?", corpus)
print(events.events)

###############################################################################
# The per-pair quantities. "virus" appears in both "medical" tweets.

print(contextual_entropy(index, "virus", "medical"))
print(uncertainty(index, "virus", "medical"))
print(ranked_weight(index, "virus", "medical"))

###############################################################################
# Only keywords that co-occur with an event enter the list; "care" and
# "panic" never appear next to "medical".

ulist = build_ulist(index, events)
for cv in rank(ulist):
    print(cv.event, cv.pairs())

###############################################################################
# The certain/uncertain split is a threshold on the ranked weight. On this
# toy corpus every weight is above 1, so raise the threshold to see a split.

medical = rank(ulist)[0]
split = partition_certainty(medical, threshold=2.5)
print([(e.keyword, e.label) for e in split.entries])
print(top_k(split, 10, "certain").keywords())
