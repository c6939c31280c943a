"""Sliding-window transition patterns over binary sentence tracks.

A track of bits is scanned with a window of n consecutive sentences
(1 <= n <= 5); each window yields one n-bit pattern, keyed as a
left-to-right bit string (earliest sentence leftmost).  Windows never span
two documents: counts are taken per track and then merged.  Category counts
become probabilities by additive smoothing with a configurable epsilon.
"""

from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from types import MappingProxyType

from .corpus import Corpus
from .errors import (
    DegeneratePartitionError,
    UndefinedDistributionError,
    WindowMismatchError,
)
from .features import FeatureFunction, SentenceFeatureTrack, sentence_feature_track
from .stats import pattern_space

MIN_WINDOW = 1
MAX_WINDOW = 5
DEFAULT_EPSILON = 0.5


def _check_window(window: int) -> None:
    if not MIN_WINDOW <= window <= MAX_WINDOW:
        raise ValueError(f"window must be in [{MIN_WINDOW}, {MAX_WINDOW}], got {window}")


@dataclass(frozen=True, slots=True)
class PatternCounts:
    window: int
    counts: Mapping[str, int]

    @property
    def total(self) -> int:
        return sum(self.counts.values())


@dataclass(frozen=True, slots=True)
class PatternDistribution:
    window: int
    probs: Mapping[str, float]
    category: str
    smoothing_epsilon: float
    counts: Mapping[str, int] = field(default_factory=dict)


def transition_patterns(track: SentenceFeatureTrack, window: int) -> PatternCounts:
    """Counts of every length-``window`` pattern fully inside the track.

    All 2^window patterns appear as keys; a track shorter than the window
    contributes zero windows.
    """
    _check_window(window)
    counts = dict.fromkeys(pattern_space(window), 0)
    bit_string = "".join("1" if bit else "0" for bit in track.bits)
    for i in range(len(bit_string) - window + 1):
        counts[bit_string[i : i + window]] += 1
    return PatternCounts(window=window, counts=MappingProxyType(counts))


def merge_pattern_counts(parts: Iterable[PatternCounts]) -> PatternCounts:
    """Associative, commutative merge of per-track counts."""
    merged: Counter[str] = Counter()
    window: int | None = None
    for part in parts:
        if window is None:
            window = part.window
            merged.update(dict.fromkeys(pattern_space(window), 0))
        elif part.window != window:
            raise WindowMismatchError(
                f"cannot merge window {part.window} counts into window {window}"
            )
        merged.update(part.counts)
    if window is None:
        raise ValueError("nothing to merge")
    return PatternCounts(window=window, counts=MappingProxyType(dict(merged)))


def distribution_from_counts(
    counts: PatternCounts,
    category: str,
    epsilon: float,
) -> PatternDistribution:
    """Additive smoothing: probs(p) = (count(p) + eps) / (total + eps * 2^n)."""
    if epsilon < 0:
        raise ValueError("epsilon must be >= 0")
    total = counts.total
    cells = 2**counts.window
    denominator = total + epsilon * cells
    if denominator == 0:
        raise UndefinedDistributionError(
            f"category {category!r} has zero windows at size {counts.window} "
            "and no smoothing"
        )
    probs = {
        pattern: (counts.counts.get(pattern, 0) + epsilon) / denominator
        for pattern in pattern_space(counts.window)
    }
    return PatternDistribution(
        window=counts.window,
        probs=MappingProxyType(probs),
        category=category,
        smoothing_epsilon=epsilon,
        counts=counts.counts,
    )


def distribution_from_tracks(
    tracks: Iterable[SentenceFeatureTrack],
    window: int,
    category: str,
    epsilon: float = DEFAULT_EPSILON,
) -> PatternDistribution:
    _check_window(window)
    parts = [transition_patterns(track, window) for track in tracks]
    if not parts:
        raise DegeneratePartitionError(f"category {category!r} has no tracks")
    return distribution_from_counts(merge_pattern_counts(parts), category, epsilon)


def category_distribution(
    corpus: Corpus,
    partition: str,
    category: str,
    feature: FeatureFunction,
    window: int,
    epsilon: float = DEFAULT_EPSILON,
    abbreviations: frozenset[str] | None = None,
) -> PatternDistribution:
    """Pattern distribution over every document carrying the category label."""
    docs = corpus.partition(partition).get(category)
    if not docs:
        raise DegeneratePartitionError(
            f"category {category!r} has no documents under {partition!r}"
        )
    tracks = [sentence_feature_track(doc, feature, abbreviations) for doc in docs]
    return distribution_from_tracks(tracks, window, category, epsilon)


def distribution_tsv_rows(dist: PatternDistribution) -> list[tuple[str, ...]]:
    """Rows (category, window, pattern, count, prob, epsilon) for TSV dumps."""
    rows = []
    for pattern in pattern_space(dist.window):
        rows.append(
            (
                dist.category,
                str(dist.window),
                pattern,
                str(dist.counts.get(pattern, 0)),
                f"{dist.probs[pattern]:.12g}",
                f"{dist.smoothing_epsilon:.12g}",
            )
        )
    return rows
