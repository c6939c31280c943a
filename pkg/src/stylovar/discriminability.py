"""Category separation by summed pairwise symmetrized KL divergence.

The central comparison: how far apart are genre categories versus author
categories, per window size.  Genre uses every labeled category once;
authors are repeatedly resampled (a fixed number of representatives per
round, seeded), and the per-round pairwise sums are averaged.

All reductions use math.fsum, whose result is the correctly rounded exact
sum and therefore independent of summation order; serial and parallel runs
produce identical numbers.
"""

from __future__ import annotations

import hashlib
import random
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import combinations
from math import fsum

from .configurational import (
    DEFAULT_EPSILON,
    PatternDistribution,
    distribution_from_tracks,
)
from .corpus import Corpus
from .errors import DegeneratePartitionError, WindowMismatchError
from .features import FeatureFunction, SentenceFeatureTrack, sentence_feature_track
from .stats import symmetrized_kl

DEFAULT_SAMPLE_SIZE = 8
DEFAULT_ROUNDS = 50
DEFAULT_MIN_WINDOWS = 30
DEFAULT_SEED = 20020905

# Resampling scheme identifier, recorded in audit output.  Each round gets a
# Mersenne Twister seeded with sha256("{seed}:{round}"), and authors are
# drawn by a partial Fisher-Yates shuffle driven by rng.random() alone; all
# three pieces have version-stable behavior.
RNG_SCHEME = "sha256+mt19937+partial-fisher-yates/v1"


@dataclass(frozen=True, slots=True)
class DivergenceRow:
    window: int
    partition: str
    divergence_sum: float
    rounds: int
    sample_size: int
    seed: int


@dataclass(frozen=True)
class DivergenceReport:
    rows: tuple[DivergenceRow, ...]
    epsilon: float
    feature_name: str
    warnings: tuple[str, ...] = ()
    author_rounds: Mapping[int, tuple[float, ...]] = field(default_factory=dict)


def _round_rng(seed: int, round_index: int) -> random.Random:
    digest = hashlib.sha256(f"{seed}:{round_index}".encode("ascii")).digest()
    return random.Random(int.from_bytes(digest, "big"))


def _sample_without_replacement(items: Sequence[str], k: int, rng: random.Random) -> list[str]:
    pool = list(items)
    m = len(pool)
    for j in range(k):
        i = j + min(int(rng.random() * (m - j)), m - j - 1)
        pool[j], pool[i] = pool[i], pool[j]
    return pool[:k]


def partition_divergence_sum(distributions: Sequence[PatternDistribution]) -> float:
    """Sum of symmetrized KL over all unordered pairs of categories."""
    if len(distributions) < 2:
        raise DegeneratePartitionError(
            "divergence sum needs at least 2 category distributions"
        )
    windows = {dist.window for dist in distributions}
    if len(windows) > 1:
        raise WindowMismatchError(f"mixed window sizes: {sorted(windows)}")
    epsilons = {dist.smoothing_epsilon for dist in distributions}
    if len(epsilons) > 1:
        raise ValueError(f"mixed smoothing epsilons: {sorted(epsilons)}")
    return fsum(
        symmetrized_kl(first, second)
        for first, second in combinations(distributions, 2)
    )


def collect_tracks(
    corpus: Corpus,
    partition: str,
    feature: FeatureFunction,
    abbreviations: frozenset[str] | None = None,
) -> dict[str, list[SentenceFeatureTrack]]:
    """Per-category sentence tracks for all documents carrying a label."""
    grouped: dict[str, list[SentenceFeatureTrack]] = {}
    for label, docs in corpus.partition(partition).items():
        grouped[label] = [
            sentence_feature_track(doc, feature, abbreviations) for doc in docs
        ]
    return grouped


def window_capacity(tracks: Iterable[SentenceFeatureTrack], window: int) -> int:
    """Total windows the tracks yield at one window size."""
    return sum(max(len(track) - window + 1, 0) for track in tracks)


def eligible_authors(
    tracks_by_author: Mapping[str, list[SentenceFeatureTrack]],
    window: int,
    min_windows: int = DEFAULT_MIN_WINDOWS,
) -> list[str]:
    """Authors with at least ``min_windows`` windows at ``window``, sorted."""
    return sorted(
        author
        for author, tracks in tracks_by_author.items()
        if window_capacity(tracks, window) >= min_windows
    )


def _author_round_sums(
    distributions: Mapping[str, PatternDistribution],
    authors: Sequence[str],
    sample_size: int,
    rounds: int,
    seed: int,
    jobs: int = 1,
) -> list[float]:
    def one_round(round_index: int) -> float:
        rng = _round_rng(seed, round_index)
        chosen = _sample_without_replacement(authors, sample_size, rng)
        return partition_divergence_sum([distributions[author] for author in chosen])

    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(one_round, range(rounds)))
    return [one_round(round_index) for round_index in range(rounds)]


def resampled_author_divergence(
    corpus: Corpus,
    feature: FeatureFunction,
    window: int,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    rounds: int = DEFAULT_ROUNDS,
    seed: int = DEFAULT_SEED,
    epsilon: float = DEFAULT_EPSILON,
    min_windows: int = DEFAULT_MIN_WINDOWS,
    abbreviations: frozenset[str] | None = None,
    jobs: int = 1,
) -> float:
    """Mean over rounds of the pairwise divergence sum of ``sample_size``
    authors drawn without replacement per round."""
    tracks_by_author = collect_tracks(corpus, "author", feature, abbreviations)
    authors = eligible_authors(tracks_by_author, window, min_windows)
    if len(authors) < sample_size:
        raise DegeneratePartitionError(
            f"only {len(authors)} eligible authors, need {sample_size}"
        )
    distributions = {
        author: distribution_from_tracks(
            tracks_by_author[author], window, author, epsilon
        )
        for author in authors
    }
    round_sums = _author_round_sums(
        distributions, authors, sample_size, rounds, seed, jobs
    )
    return fsum(round_sums) / rounds


def window_sweep(
    corpus: Corpus,
    feature: FeatureFunction,
    windows: Sequence[int],
    seed: int = DEFAULT_SEED,
    epsilon: float = DEFAULT_EPSILON,
    sample_size: int = DEFAULT_SAMPLE_SIZE,
    rounds: int = DEFAULT_ROUNDS,
    min_windows: int = DEFAULT_MIN_WINDOWS,
    feature_name: str = "multi_clause",
    abbreviations: frozenset[str] | None = None,
    jobs: int = 1,
) -> DivergenceReport:
    """One genre row and one resampled author row per window size.

    A partition that cannot be evaluated (one genre label, too few eligible
    authors) is skipped with a warning; the sweep fails only when neither
    partition yields any row.
    """
    window_list = sorted(set(windows))
    if not window_list:
        raise ValueError("no window sizes requested")
    # One track per document, shared between the two partitions.
    doc_tracks = {
        doc.id: sentence_feature_track(doc, feature, abbreviations)
        for doc in corpus.documents
        if doc.genre is not None or doc.author is not None
    }
    genre_tracks = {
        label: [doc_tracks[doc.id] for doc in docs]
        for label, docs in corpus.partition("genre").items()
    }
    author_tracks = {
        label: [doc_tracks[doc.id] for doc in docs]
        for label, docs in corpus.partition("author").items()
    }
    largest = max(window_list)
    authors = eligible_authors(author_tracks, largest, min_windows)

    rows: list[DivergenceRow] = []
    warnings: list[str] = []
    author_rounds: dict[int, tuple[float, ...]] = {}

    genre_ok = len(genre_tracks) >= 2
    if not genre_ok:
        warnings.append(
            f"genre partition skipped: {len(genre_tracks)} labeled genre(s), need 2"
        )
    author_ok = len(authors) >= sample_size
    if not author_ok:
        warnings.append(
            f"author partition skipped: {len(authors)} eligible author(s) at "
            f"window {largest}, need {sample_size}"
        )
    if not genre_ok and not author_ok:
        raise DegeneratePartitionError(
            "neither the genre nor the author partition is usable; " + "; ".join(warnings)
        )

    for window in window_list:
        if genre_ok:
            genre_dists = [
                distribution_from_tracks(tracks, window, label, epsilon)
                for label, tracks in genre_tracks.items()
            ]
            rows.append(
                DivergenceRow(
                    window=window,
                    partition="genre",
                    divergence_sum=partition_divergence_sum(genre_dists),
                    rounds=1,
                    sample_size=len(genre_dists),
                    seed=seed,
                )
            )
        if author_ok:
            distributions = {
                author: distribution_from_tracks(
                    author_tracks[author], window, author, epsilon
                )
                for author in authors
            }
            round_sums = _author_round_sums(
                distributions, authors, sample_size, rounds, seed, jobs
            )
            author_rounds[window] = tuple(round_sums)
            rows.append(
                DivergenceRow(
                    window=window,
                    partition="author",
                    divergence_sum=fsum(round_sums) / rounds,
                    rounds=rounds,
                    sample_size=sample_size,
                    seed=seed,
                )
            )
    return DivergenceReport(
        rows=tuple(rows),
        epsilon=epsilon,
        feature_name=feature_name,
        warnings=tuple(warnings),
        author_rounds=author_rounds,
    )


REPORT_COLUMNS = (
    "window",
    "partition",
    "divergence_sum",
    "rounds",
    "sample_size",
    "seed",
    "epsilon",
    "feature",
)


def report_tsv_rows(report: DivergenceReport) -> list[tuple[str, ...]]:
    rows = [REPORT_COLUMNS]
    for row in report.rows:
        rows.append(
            (
                str(row.window),
                row.partition,
                f"{row.divergence_sum:.12g}",
                str(row.rounds),
                str(row.sample_size),
                str(row.seed),
                f"{report.epsilon:.12g}",
                report.feature_name,
            )
        )
    return rows
