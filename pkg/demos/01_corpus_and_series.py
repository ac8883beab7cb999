"""
Ingesting tweets and building time series
=========================================

Read a small CSV of timestamped tweets, look at the normalized tokens and
derive the two per-tweet series: tweet length and event occurrence.
"""

from thematic.corpus import (
    corpus_stats,
    data_path,
    event_occurrence_series,
    ingest,
    normalize_tokenize,
    tweet_length_series,
)

###############################################################################
# The tokenizer lowercases, drops URLs, mentions and hashtags, strips
# punctuation and removes stopwords.

print(normalize_tokenize("Medical CARE!! http://x.co #covid @who"))
print(normalize_tokenize("What has been published about medical care?"))

###############################################################################
# ``s4.csv`` ships with the package: four tweets one minute apart.

corpus = ingest(data_path("s4.csv"))
for doc in corpus.documents:
    print(doc.timestamp, doc.tokens)

print(corpus_stats(corpus).to_dict())

###############################################################################
# One point per tweet. The event series is a 0/1 indicator.

print([p.value for p in tweet_length_series(corpus)])
print([p.value for p in event_occurrence_series(corpus, "virus")])
