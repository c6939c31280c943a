"""Window pattern counting, merging, and smoothed distributions."""

from __future__ import annotations

import random
from collections import Counter

import pytest

from stylovar.configurational import (
    distribution_from_counts,
    distribution_from_tracks,
    category_distribution,
    merge_pattern_counts,
    transition_patterns,
    distribution_tsv_rows,
)
from stylovar.corpus import Corpus, Document
from stylovar.errors import (
    DegeneratePartitionError,
    UndefinedDistributionError,
    WindowMismatchError,
)
from stylovar.features import SentenceFeatureTrack
from stylovar.stats import pattern_space


def track(bits, doc_id="t") -> SentenceFeatureTrack:
    return SentenceFeatureTrack(bits=tuple(bits), doc_id=doc_id)


def brute_force_patterns(bits, window) -> dict[str, int]:
    """Independent enumerator: walk every start offset and format the slice."""
    counts = {p: 0 for p in pattern_space(window)}
    for start in range(len(bits) - window + 1):
        key = "".join(str(b) for b in bits[start : start + window])
        counts[key] += 1
    return counts


class TestTransitionPatterns:
    def test_hand_counted_example(self):
        result = transition_patterns(track([1, 0, 0, 1, 0]), 2)
        assert dict(result.counts) == {"10": 2, "00": 1, "01": 1, "11": 0}

    def test_constant_track(self):
        result = transition_patterns(track([0] * 6), 3)
        assert result.counts["000"] == 4
        assert sum(result.counts.values()) == 4

    def test_track_shorter_than_window(self):
        assert transition_patterns(track([1]), 2).total == 0

    def test_window_bounds(self):
        for bad in (0, 6, -1):
            with pytest.raises(ValueError):
                transition_patterns(track([1, 0]), bad)

    def test_matches_brute_force_on_random_tracks(self):
        rng = random.Random(61)
        for _ in range(300):
            bits = [rng.randrange(2) for _ in range(rng.randrange(0, 30))]
            for window in range(1, 6):
                assert dict(transition_patterns(track(bits), window).counts) == (
                    brute_force_patterns(bits, window)
                )

    def test_total_is_length_minus_window_plus_one(self):
        rng = random.Random(67)
        for _ in range(200):
            bits = [rng.randrange(2) for _ in range(rng.randrange(0, 40))]
            for window in range(1, 6):
                expected = max(len(bits) - window + 1, 0)
                assert transition_patterns(track(bits), window).total == expected

    def test_bigram_left_marginal_identity(self):
        rng = random.Random(71)
        for _ in range(200):
            bits = [rng.randrange(2) for _ in range(rng.randrange(2, 40))]
            counts = transition_patterns(track(bits), 2).counts
            assert counts["11"] + counts["10"] == sum(bits[:-1])


class TestMerge:
    def test_commutative_and_matches_pooled_counts(self):
        rng = random.Random(73)
        tracks = [
            track([rng.randrange(2) for _ in range(rng.randrange(0, 20))], f"t{i}")
            for i in range(8)
        ]
        parts = [transition_patterns(t, 2) for t in tracks]
        merged = merge_pattern_counts(parts)
        reversed_merge = merge_pattern_counts(list(reversed(parts)))
        assert dict(merged.counts) == dict(reversed_merge.counts)
        pooled = Counter()
        for part in parts:
            pooled.update(part.counts)
        assert dict(merged.counts) == {p: pooled[p] for p in pattern_space(2)}

    def test_window_mismatch_rejected(self):
        first = transition_patterns(track([1, 0, 1]), 1)
        second = transition_patterns(track([1, 0, 1]), 2)
        with pytest.raises(WindowMismatchError):
            merge_pattern_counts([first, second])

    def test_empty_merge_rejected(self):
        with pytest.raises(ValueError):
            merge_pattern_counts([])


class TestDistributions:
    def test_probabilities_sum_to_one(self):
        rng = random.Random(79)
        for _ in range(200):
            bits = [rng.randrange(2) for _ in range(rng.randrange(5, 40))]
            window = rng.randrange(1, 6)
            epsilon = rng.choice([0.0, 0.01, 0.5, 1.0, 3.0])
            counts = transition_patterns(track(bits), window)
            if counts.total == 0 and epsilon == 0.0:
                continue
            dist = distribution_from_counts(counts, "c", epsilon)
            assert abs(sum(dist.probs.values()) - 1.0) < 1e-9
            if epsilon > 0:
                assert all(p > 0 for p in dist.probs.values())

    def test_window_one_equals_bit_marginal_exactly(self):
        bits = [1, 0, 0, 1, 0]
        dist = distribution_from_tracks([track(bits)], 1, "c", epsilon=0.0)
        assert dist.probs["1"] == 2 / 5
        assert dist.probs["0"] == 3 / 5

    def test_smoothing_formula(self):
        counts = transition_patterns(track([1, 0, 0, 1, 0]), 2)
        dist = distribution_from_counts(counts, "c", epsilon=0.5)
        # counts 10:2 00:1 01:1 11:0, total 4, denominator 4 + 0.5*4 = 6
        assert dist.probs["10"] == (2 + 0.5) / 6.0
        assert dist.probs["11"] == 0.5 / 6.0

    def test_smoothing_limit_approaches_relative_frequency(self):
        bits = [1, 0, 0, 1, 1, 0, 1, 0, 0, 1, 1, 1, 0, 0, 1, 0]
        counts = transition_patterns(track(bits), 2)
        assert all(v > 0 for v in counts.counts.values())
        tiny = distribution_from_counts(counts, "c", epsilon=1e-12)
        raw = distribution_from_counts(counts, "c", epsilon=0.0)
        for pattern in pattern_space(2):
            assert tiny.probs[pattern] == pytest.approx(raw.probs[pattern], abs=1e-9)

    def test_zero_windows_without_smoothing_is_undefined(self):
        counts = transition_patterns(track([1]), 2)
        with pytest.raises(UndefinedDistributionError):
            distribution_from_counts(counts, "c", epsilon=0.0)
        smoothed = distribution_from_counts(counts, "c", epsilon=0.5)
        assert smoothed.probs["00"] == 0.25

    def test_negative_epsilon_rejected(self):
        counts = transition_patterns(track([1, 0]), 1)
        with pytest.raises(ValueError):
            distribution_from_counts(counts, "c", epsilon=-0.1)


class TestCategoryDistribution:
    def corpus(self) -> Corpus:
        return Corpus(
            documents=(
                Document(id="a", text="We left; it rained. It was wet.", genre="g1"),
                Document(id="b", text="The sun rose. We ran because it poured.", genre="g1"),
                Document(id="c", text="Quiet day. Calm night.", genre="g2"),
            )
        )

    def feature(self):
        from stylovar.features import make_clause_feature
        from stylovar.lexicons import BUILTIN_LEXICONS, CLAUSE_MARKERS

        return make_clause_feature(BUILTIN_LEXICONS[CLAUSE_MARKERS])

    def test_windows_never_cross_documents(self):
        # g1 tracks: [1, 0] and [0, 1]; pooled w2 counts hold only in-doc pairs
        dist = category_distribution(self.corpus(), "genre", "g1", self.feature(), 2, 0.0)
        assert dist.counts["10"] == 1
        assert dist.counts["01"] == 1
        assert dist.counts["00"] == 0 and dist.counts["11"] == 0

    def test_single_bit_docs_have_no_two_windows(self):
        corpus = Corpus(
            documents=(
                Document(id="a", text="We left because it rained.", genre="g"),
                Document(id="b", text="Dry day.", genre="g"),
            )
        )
        with pytest.raises(UndefinedDistributionError):
            category_distribution(corpus, "genre", "g", self.feature(), 2, 0.0)

    def test_missing_category_rejected(self):
        with pytest.raises(DegeneratePartitionError):
            category_distribution(self.corpus(), "genre", "nope", self.feature(), 1, 0.5)

    def test_tsv_rows_shape(self):
        dist = category_distribution(self.corpus(), "genre", "g1", self.feature(), 2, 0.5)
        rows = distribution_tsv_rows(dist)
        assert len(rows) == 4
        assert rows[0][:3] == ("g1", "2", "00")
        assert all(len(row) == 6 for row in rows)
