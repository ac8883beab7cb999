"""Reference computations written straight from the definitions.

Nothing here imports the package's statistics or clustering code; inputs
are plain lists of token lists or point coordinates.
"""

import itertools
import math


def doc_prob(docs, term):
    return sum(1 for d in docs if term in d) / len(docs)


def cond_prob(docs, keyword, event):
    with_event = [d for d in docs if event in d]
    return sum(1 for d in with_event if keyword in d) / len(with_event)


def _xlog_inv(p):
    # p * log2(1/p), 0 at p == 0
    return p * math.log(1.0 / p, 2) if p else 0.0


def _xlog(p):
    return p * math.log(p, 2) if p else 0.0


def entropy(docs, keyword, event):
    return -(_xlog_inv(doc_prob(docs, event)) + _xlog_inv(doc_prob(docs, keyword))
             + _xlog(cond_prob(docs, keyword, event)))


def event_count(docs, event, mode="raw"):
    c = sum(1 for d in docs if event in d)
    return c if mode == "raw" else c / len(docs)


def info_gain(docs, keyword, event, mode="raw"):
    return event_count(docs, event, mode) * entropy(docs, keyword, event)


def uncertainty(docs, keyword, event, mode="raw"):
    return 1.0 - info_gain(docs, keyword, event, mode)


def ranked_weight(docs, keyword, event, mode="raw"):
    total = sum(len(d) for d in docs)
    count = sum(list(d).count(keyword) for d in docs)
    return uncertainty(docs, keyword, event, mode) + count / total


def cooccurring_pairs(docs, events):
    """Set of (keyword, event) with keyword != event sharing a document."""
    vocab = {t for d in docs for t in d}
    return {(k, e) for e in events for k in vocab if k != e and any(k in d and e in d for d in docs)}


def incidence_cosine(docs, a, b):
    va = [1.0 if a in d else 0.0 for d in docs]
    vb = [1.0 if b in d else 0.0 for d in docs]
    na = math.sqrt(sum(x * x for x in va))
    nb = math.sqrt(sum(x * x for x in vb))
    if na == 0 or nb == 0:
        return 0.0
    return sum(x * y for x, y in zip(va, vb)) / (na * nb)


def sq_dist(p, q):
    return sum((a - b) ** 2 for a, b in zip(p, q))


def sse(points, labels):
    total = 0.0
    for c in set(labels):
        members = [p for p, l in zip(points, labels) if l == c]
        centre = [sum(xs) / len(members) for xs in zip(*members)]
        total += sum(sq_dist(p, centre) for p in members)
    return total


def best_partition(points, k):
    """Exhaustive minimum-SSE assignment into exactly k non-empty clusters."""
    best = None
    for labels in itertools.product(range(k), repeat=len(points)):
        if len(set(labels)) != k or labels[0] != 0:
            continue
        cost = sse(points, labels)
        if best is None or cost < best[0] - 1e-12:
            best = (cost, labels)
    return best


def same_partition(a, b):
    groups = lambda labels: {frozenset(i for i, l in enumerate(labels) if l == c) for c in set(labels)}
    return groups(list(a)) == groups(list(b))


def silhouette(points, labels):
    n = len(points)
    dist = lambda i, j: math.sqrt(sq_dist(points[i], points[j]))
    scores = []
    for i in range(n):
        own = [j for j in range(n) if labels[j] == labels[i] and j != i]
        if not own:
            scores.append(0.0)
            continue
        a = sum(dist(i, j) for j in own) / len(own)
        b = min(
            sum(dist(i, j) for j in range(n) if labels[j] == c) / sum(1 for l in labels if l == c)
            for c in set(labels) if c != labels[i]
        )
        scores.append((b - a) / max(a, b) if max(a, b) > 0 else 0.0)
    return sum(scores) / n
