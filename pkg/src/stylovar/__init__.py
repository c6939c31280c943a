"""Stylometric variation measurements: genre versus individual style.

The pipeline: ingest a labeled corpus, segment and tokenize, measure marker
rates and the per-sentence multi-clause bit, aggregate bits into sliding
window transition-pattern distributions, and compare categories by summed
pairwise symmetrized KL divergence, with seeded author resampling.
"""

from .configurational import (
    PatternCounts,
    PatternDistribution,
    category_distribution,
    distribution_from_counts,
    distribution_from_tracks,
    merge_pattern_counts,
    transition_patterns,
)
from .corpus import Corpus, Document, ingest_corpus
from .discriminability import (
    RNG_SCHEME,
    DivergenceReport,
    DivergenceRow,
    partition_divergence_sum,
    resampled_author_divergence,
    window_sweep,
)
from .errors import (
    AnalysisError,
    DegeneratePartitionError,
    DuplicateIdError,
    InputError,
    MalformedRecordError,
    StylovarError,
    UndefinedDistributionError,
    UndefinedMeasureError,
    UndefinedStatisticError,
    WindowMismatchError,
)
from .features import (
    MarkerVector,
    SentenceFeatureTrack,
    TypicalWordRow,
    make_clause_feature,
    measure_markers,
    multi_clause_bit,
    sentence_feature_track,
    typical_words,
)
from .lexicons import (
    BUILTIN_LEXICONS,
    CLAUSE_MARKERS,
    MARKER_FAMILIES,
    MarkerLexicon,
    load_lexicon,
    make_lexicon,
)
from .stats import (
    Contingency2x2,
    RankTestResult,
    chi_squared_2x2,
    kl_divergence,
    mann_whitney_u,
    symmetrized_kl,
)
from .textproc import Sentence, Token, normalize, segment_spans, sentences, tokenize

__version__ = "0.1.0"

__all__ = [
    "AnalysisError",
    "BUILTIN_LEXICONS",
    "CLAUSE_MARKERS",
    "Contingency2x2",
    "Corpus",
    "DegeneratePartitionError",
    "DivergenceReport",
    "DivergenceRow",
    "Document",
    "DuplicateIdError",
    "InputError",
    "MARKER_FAMILIES",
    "MalformedRecordError",
    "MarkerLexicon",
    "MarkerVector",
    "PatternCounts",
    "PatternDistribution",
    "RNG_SCHEME",
    "RankTestResult",
    "Sentence",
    "SentenceFeatureTrack",
    "StylovarError",
    "Token",
    "TypicalWordRow",
    "UndefinedDistributionError",
    "UndefinedMeasureError",
    "UndefinedStatisticError",
    "WindowMismatchError",
    "category_distribution",
    "chi_squared_2x2",
    "distribution_from_counts",
    "distribution_from_tracks",
    "ingest_corpus",
    "kl_divergence",
    "load_lexicon",
    "make_clause_feature",
    "make_lexicon",
    "mann_whitney_u",
    "measure_markers",
    "merge_pattern_counts",
    "multi_clause_bit",
    "normalize",
    "partition_divergence_sum",
    "resampled_author_divergence",
    "segment_spans",
    "sentence_feature_track",
    "sentences",
    "symmetrized_kl",
    "tokenize",
    "transition_patterns",
    "typical_words",
    "window_sweep",
]
