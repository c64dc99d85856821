"""Step-length distributions over 1..N and inverse-CDF sampling.

Two closed-form distributions are provided.  The arrangement-weighted
kind gives length n probability proportional to P(N, n) * (F(n) - 1) and
concentrates on n = N as N grows; the plain permutation-count kind gives
probability proportional to P(N, n) and converges to 1/(e * k!) at
n = N - k.  Probabilities are built from exact integer ratios and only
converted to float at the boundary.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction

import numpy as np

from .combinatorics import f_function, max_entropy_normalizer, permutation_count
from .rvg import RngStream

__all__ = [
    "LengthKind",
    "LengthDistribution",
    "rps_length_distribution",
    "per_length_distribution",
    "sample_length",
    "per_limit_probability",
]

_SUM_TOLERANCE = 1e-12


class LengthKind(str, Enum):
    """Which weighting builds the distribution."""

    RPS = "rps"
    PER = "per"


@dataclass(frozen=True, eq=False)
class LengthDistribution:
    """Discrete distribution over step lengths 1..N.

    probs[n-1] is the probability of length n; cumulative is its running
    sum with the final entry pinned to exactly 1.0 so inverse-CDF lookups
    always land in range.  exact holds the underlying integer ratios.
    """

    N: int
    kind: LengthKind
    probs: np.ndarray
    cumulative: np.ndarray
    exact: tuple[Fraction, ...]

    def __post_init__(self) -> None:
        if self.N < 1:
            raise ValueError(f"require N >= 1, got N={self.N}")
        if self.probs.shape != (self.N,) or self.cumulative.shape != (self.N,):
            raise ValueError("probs and cumulative must both have length N")
        if np.any(self.probs < 0):
            raise ValueError("probabilities must be nonnegative")
        if abs(float(self.probs.sum()) - 1.0) > _SUM_TOLERANCE:
            raise ValueError(f"probabilities sum to {self.probs.sum()!r}, expected 1")
        if np.any(np.diff(self.cumulative) < 0) or self.cumulative[-1] != 1.0:
            raise ValueError("cumulative must be nondecreasing and end at 1")

    def probability(self, n: int) -> float:
        """Probability of drawing length n."""
        if not 1 <= n <= self.N:
            raise ValueError(f"require 1 <= n <= {self.N}, got n={n}")
        return float(self.probs[n - 1])


def _build(N: int, kind: LengthKind, exact: tuple[Fraction, ...]) -> LengthDistribution:
    assert sum(exact) == 1  # exact ratios must normalize perfectly
    probs = np.array([float(p) for p in exact])
    cumulative = np.cumsum(probs)
    if abs(float(cumulative[-1]) - 1.0) > _SUM_TOLERANCE:
        raise ValueError(f"float conversion drifted, cumulative ends at {cumulative[-1]!r}")
    cumulative[-1] = 1.0
    probs.setflags(write=False)
    cumulative.setflags(write=False)
    return LengthDistribution(N=N, kind=kind, probs=probs, cumulative=cumulative, exact=exact)


def rps_length_distribution(N: int) -> LengthDistribution:
    """Arrangement-weighted length distribution: p_n = P(N,n) * (F(n)-1) / S(N)."""
    if N < 1:
        raise ValueError(f"require N >= 1, got N={N}")
    denominator = max_entropy_normalizer(N)
    exact = tuple(
        Fraction(permutation_count(N, n) * (f_function(n) - 1), denominator)
        for n in range(1, N + 1)
    )
    return _build(N, LengthKind.RPS, exact)


def per_length_distribution(N: int) -> LengthDistribution:
    """Permutation-count length distribution: p_n = P(N,n) / (F(N)-1).

    The top two lengths tie exactly: p_N = p_{N-1} = N!/(F(N)-1).
    """
    if N < 1:
        raise ValueError(f"require N >= 1, got N={N}")
    denominator = f_function(N) - 1
    exact = tuple(
        Fraction(permutation_count(N, n), denominator) for n in range(1, N + 1)
    )
    return _build(N, LengthKind.PER, exact)


def sample_length(dist: LengthDistribution, rng: RngStream) -> int:
    """One length drawn by inverse CDF on a single uniform variate.

    Returns the smallest n whose cumulative probability reaches the
    variate, breaking boundary ties toward the lowest index.
    """
    u = rng.uniform()
    return int(np.searchsorted(dist.cumulative, u, side="left")) + 1


def per_limit_probability(k: int) -> float:
    """Large-N limit of the permutation-count probability at length N - k: 1/(e * k!)."""
    if k < 0:
        raise ValueError(f"require k >= 0, got k={k}")
    return 1.0 / (math.e * math.factorial(k))
