"""Statistical kernel: 2x2 chi-squared, Mann-Whitney U, and KL divergences.

Pure functions over plain numbers and small mappings; no external
dependencies.  Divergences use log base 2 throughout, so all results are in
bits.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

from .errors import UndefinedStatisticError, WindowMismatchError

if TYPE_CHECKING:
    from .configurational import PatternDistribution

DEFAULT_ALPHA = 0.05
# Largest n1*n2 for which the exact U distribution is enumerated.
EXACT_LIMIT = 400


@dataclass(frozen=True, slots=True)
class Contingency2x2:
    """Counts a/b/c/d: rows = in/out of category, columns = with/without."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        for cell in (self.a, self.b, self.c, self.d):
            if cell < 0:
                raise ValueError("contingency cells must be non-negative")
        if self.n == 0:
            raise ValueError("contingency table is empty")

    @property
    def n(self) -> int:
        return self.a + self.b + self.c + self.d

    def transposed(self) -> Contingency2x2:
        return Contingency2x2(self.a, self.c, self.b, self.d)


@dataclass(frozen=True, slots=True)
class RankTestResult:
    u_statistic: float
    p_value: float
    significant: bool
    method: str


def chi_squared_2x2(t: Contingency2x2) -> float:
    """N(ad - bc)^2 / ((a+b)(c+d)(a+c)(b+d)), without continuity correction."""
    margins = (t.a + t.b, t.c + t.d, t.a + t.c, t.b + t.d)
    if 0 in margins:
        raise UndefinedStatisticError(f"chi-squared undefined: zero margin in {t}")
    numerator = t.n * (t.a * t.d - t.b * t.c) ** 2
    denominator = margins[0] * margins[1] * margins[2] * margins[3]
    return numerator / denominator


def _midranks(values: list[float]) -> tuple[list[float], list[int]]:
    """Ranks (ties averaged, 1-based) in input order, plus tie-group sizes."""
    order = sorted(range(len(values)), key=lambda i: values[i])
    ranks = [0.0] * len(values)
    tie_sizes: list[int] = []
    i = 0
    while i < len(order):
        j = i
        while j + 1 < len(order) and values[order[j + 1]] == values[order[i]]:
            j += 1
        mean_rank = (i + j + 2) / 2
        for k in range(i, j + 1):
            ranks[order[k]] = mean_rank
        tie_sizes.append(j - i + 1)
        i = j + 1
    return ranks, tie_sizes


def _exact_two_sided_p(n1: int, n2: int, u_min: float) -> float:
    """Two-sided p by enumerating the exact null distribution of U.

    count[m][n][u] = arrangements of m x's and n y's with U(x) = u, built by
    the recurrence count(m,n,u) = count(m-1,n,u-n) + count(m,n-1,u).
    Only valid without ties, where U is an integer.
    """
    u_cap = int(u_min)
    prev = [[1] + [0] * u_cap for _ in range(n2 + 1)]  # m = 0 row
    for m in range(1, n1 + 1):
        current = [[1] + [0] * u_cap]  # n = 0
        for n in range(1, n2 + 1):
            row = [0] * (u_cap + 1)
            for u in range(u_cap + 1):
                ways = current[n - 1][u]
                if u >= n:
                    ways += prev[n][u - n]
                row[u] = ways
            current.append(row)
        prev = current
    cumulative = sum(prev[n2])
    total = math.comb(n1 + n2, n1)
    return min(1.0, 2.0 * cumulative / total)


def _normal_two_sided_p(u_min: float, n1: int, n2: int, tie_sizes: list[int]) -> float:
    """Normal approximation with tie-corrected variance and continuity correction."""
    n = n1 + n2
    mean = n1 * n2 / 2.0
    tie_term = sum(t**3 - t for t in tie_sizes)
    variance = n1 * n2 / 12.0 * ((n + 1) - tie_term / (n * (n - 1)))
    if variance <= 0:
        return 1.0  # every observation tied: U is deterministic
    z = (u_min - mean + 0.5) / math.sqrt(variance)
    return min(1.0, 2.0 * 0.5 * math.erfc(-z / math.sqrt(2.0)))


def u_statistics(xs: list[float], ys: list[float]) -> tuple[float, float]:
    """Directed statistics (U1, U2): U1 counts pairs where an x outranks a y."""
    n1, n2 = len(xs), len(ys)
    if n1 == 0 or n2 == 0:
        raise UndefinedStatisticError("u_statistics requires non-empty samples")
    ranks, _ = _midranks(list(xs) + list(ys))
    u1 = sum(ranks[:n1]) - n1 * (n1 + 1) / 2.0
    return u1, n1 * n2 - u1


def mann_whitney_u(
    xs: list[float],
    ys: list[float],
    alpha: float = DEFAULT_ALPHA,
    exact_limit: int = EXACT_LIMIT,
) -> RankTestResult:
    """Two-sided Mann-Whitney U test.

    U is the smaller of the two directed statistics, computed from midranks.
    The p-value is exact (full enumeration) when n1*n2 <= exact_limit and the
    pooled sample has no ties, otherwise a tie-corrected normal approximation
    with continuity correction.
    """
    n1, n2 = len(xs), len(ys)
    if n1 == 0 or n2 == 0:
        raise UndefinedStatisticError("mann_whitney_u requires non-empty samples")
    ranks, tie_sizes = _midranks(list(xs) + list(ys))
    r1 = sum(ranks[:n1])
    u1 = r1 - n1 * (n1 + 1) / 2.0
    u2 = n1 * n2 - u1
    u_min = min(u1, u2)
    has_ties = any(size > 1 for size in tie_sizes)
    if not has_ties and n1 * n2 <= exact_limit:
        p = _exact_two_sided_p(n1, n2, u_min)
        method = "exact"
    else:
        p = _normal_two_sided_p(u_min, n1, n2, tie_sizes)
        method = "normal"
    return RankTestResult(
        u_statistic=u_min, p_value=p, significant=p < alpha, method=method
    )


def pattern_space(window: int) -> list[str]:
    """All 2^window bit-string patterns, in ascending binary order."""
    return [format(i, f"0{window}b") for i in range(2**window)]


def kl_divergence(p_dist: PatternDistribution, q_dist: PatternDistribution) -> float:
    """Directed divergence sum_x P(x) log2(P(x)/Q(x)), in bits.

    Requires matching window sizes and a Q that is positive on the whole
    pattern space; missing keys count as probability zero.
    """
    if p_dist.window != q_dist.window:
        raise WindowMismatchError(
            f"window mismatch: {p_dist.window} vs {q_dist.window}"
        )
    terms = []
    for pattern in pattern_space(p_dist.window):
        q = q_dist.probs.get(pattern, 0.0)
        if q <= 0.0:
            raise UndefinedStatisticError(
                f"divergence undefined: pattern {pattern!r} has zero probability in Q"
            )
        p = p_dist.probs.get(pattern, 0.0)
        if p > 0.0:
            terms.append(p * math.log2(p / q))
    return math.fsum(terms)


def symmetrized_kl(p_dist: PatternDistribution, q_dist: PatternDistribution) -> float:
    """Harmonic mean 2ab/(a+b) of the two directed divergences; 0 when both are 0."""
    forward = kl_divergence(p_dist, q_dist)
    backward = kl_divergence(q_dist, p_dist)
    if forward == 0.0 and backward == 0.0:
        return 0.0
    return 2.0 * forward * backward / (forward + backward)
