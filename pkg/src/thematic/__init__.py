"""Event-conditioned thematic context vectors for timestamped short texts."""

from .cluster import (
    ClusteringResult,
    ComparisonReport,
    DocVector,
    KPolicy,
    compare_methods,
    elbow_select,
    inertia_curve,
    kmeans,
    silhouette,
    vectorize,
)
from .cooccur import (
    CooccurrenceIndex,
    UncertaintyRecord,
    build_index,
    conditional_probability,
    contextual_entropy,
    cooccurs,
    event_count,
    information_gain,
    ranked_weight,
    term_probability,
    uncertainty,
)
from .corpus import (
    Corpus,
    Document,
    IngestOptions,
    SeriesPoint,
    StatsReport,
    corpus_stats,
    event_occurrence_series,
    ingest,
    normalize_tokenize,
    tweet_length_series,
)
from .errors import (
    ComputationError,
    ConfigError,
    DegenerateInputError,
    IngestError,
    MissingContextError,
    ThematicError,
    UndefinedConditionalError,
)
from .rank import (
    ContextVector,
    EventSet,
    Ulist,
    build_ulist,
    extract_events,
    partition_certainty,
    rank,
    top_k,
)

__version__ = "0.1.0"
