"""Step-vector sampling from uniform random permutations.

A step of size n places coefficient a_i on the unit direction at angle
2*pi*i/n and sums the results, where (a_1, ..., a_n) is a uniformly
random permutation of 1..n.  Exhaustive enumeration over all n!
permutations (n <= 8) provides the exact support and moments that the
samplers are validated against.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations
from typing import Sequence

import numpy as np

from .errors import CapacityError

__all__ = [
    "SUPPORT_MAX_N",
    "SUPPORT_DECIMALS",
    "EXPECTED_SUPPORT_SIZES",
    "RngStream",
    "StepVector",
    "StepMoments",
    "SupportTable",
    "uniform_permutation",
    "step_from_permutation",
    "sample_step",
    "enumerate_support",
    "exact_moments",
    "exact_direction_means",
    "step_variance",
]

# 8! = 40320 permutations; exhaustive enumeration beyond this is refused.
SUPPORT_MAX_N = 8

# Support values are deduplicated after rounding to this many decimals.
SUPPORT_DECIMALS = 8

# Distinct step values per size, recorded from exhaustive enumeration with
# eight-decimal rounding.  Collisions make sizes 4 and 6 fall well short
# of n!.
EXPECTED_SUPPORT_SIZES: dict[int, int] = {
    1: 1,
    2: 2,
    3: 6,
    4: 16,
    5: 120,
    6: 199,
    7: 5040,
    8: 9968,
}


class RngStream:
    """Deterministic random stream addressed by (seed, stream_index).

    The same pair reproduces the same sequence on every platform, and
    distinct stream indexes under one seed give statistically independent
    streams, so per-path streams make ensemble output independent of
    worker count and execution order.  A single stream must not be shared
    by concurrent callers.
    """

    def __init__(self, seed: int, stream_index: int = 0) -> None:
        self.seed = int(seed)
        self.stream_index = int(stream_index)
        key = np.random.SeedSequence(entropy=self.seed, spawn_key=(self.stream_index,))
        self._gen = np.random.Generator(np.random.PCG64(key))

    def __repr__(self) -> str:
        return f"RngStream(seed={self.seed}, stream_index={self.stream_index})"

    def uniform(self) -> float:
        """One variate from U[0, 1)."""
        return float(self._gen.random())

    def uniforms(self, count: int) -> np.ndarray:
        """A batch of U[0, 1) variates; consumes the stream exactly like
        count scalar draws."""
        if count < 0:
            raise ValueError(f"require count >= 0, got count={count}")
        return self._gen.random(count)

    def permutation(self, n: int) -> np.ndarray:
        """A uniformly random permutation of 1..n."""
        if n < 1:
            raise ValueError(f"require n >= 1, got n={n}")
        return self._gen.permutation(n) + 1


@dataclass(frozen=True)
class StepVector:
    """A single 2-D step."""

    v_x: float
    v_y: float

    def as_array(self) -> np.ndarray:
        return np.array([self.v_x, self.v_y])


@dataclass(frozen=True)
class StepMoments:
    """Exact population moments of the size-n step, from full enumeration."""

    n: int
    mean: StepVector
    var_x: float
    var_y: float
    cov_xy: float
    degenerate: bool


@dataclass(frozen=True)
class SupportTable:
    """Exact support of the size-n step with multiplicities.

    Entries are (value, count) pairs in lexicographic order of (v_x, v_y);
    counts sum to n!.  The degenerate flag marks n = 1, whose single step
    (1, 0) has nonzero mean.
    """

    n: int
    entries: tuple[tuple[StepVector, int], ...]
    degenerate: bool

    def values(self) -> np.ndarray:
        return np.array([[v.v_x, v.v_y] for v, _ in self.entries])

    def counts(self) -> np.ndarray:
        return np.array([c for _, c in self.entries])


@lru_cache(maxsize=None)
def direction_table(n: int) -> np.ndarray:
    """(n, 2) array of unit directions (cos, sin) at angles 2*pi*i/n, i = 1..n."""
    angles = 2.0 * np.pi * np.arange(1, n + 1) / n
    table = np.column_stack([np.cos(angles), np.sin(angles)])
    table.setflags(write=False)
    return table


@lru_cache(maxsize=None)
def _all_permutations(n: int) -> np.ndarray:
    """(n!, n) array of every permutation of 1..n, lexicographic order."""
    if n > SUPPORT_MAX_N:
        raise CapacityError(
            f"exhaustive enumeration is capped at n <= {SUPPORT_MAX_N}, got n={n}"
        )
    matrix = np.array(list(permutations(range(1, n + 1))), dtype=np.int64)
    matrix.setflags(write=False)
    return matrix


def uniform_permutation(n: int, rng: RngStream) -> np.ndarray:
    """A permutation of 1..n with every arrangement equally likely.

    Index shuffling with one uniform draw per position; the (n!, n)
    matrix of all arrangements is never materialized here.
    """
    return rng.permutation(n)


def step_from_permutation(perm: Sequence[int]) -> StepVector:
    """The step vector sum(a_i * (cos, sin)(2*pi*i/n)) for coefficients a_i."""
    a = np.asarray(perm, dtype=np.int64)
    n = a.size
    if n < 1 or not np.array_equal(np.sort(a), np.arange(1, n + 1)):
        raise ValueError(f"input {list(perm)!r} is not a permutation of 1..n")
    v = a.astype(float) @ direction_table(n)
    return StepVector(float(v[0]), float(v[1]))


def sample_step(n: int, rng: RngStream) -> StepVector:
    """One random step of size n."""
    v = rng.permutation(n).astype(float) @ direction_table(n)
    return StepVector(float(v[0]), float(v[1]))


def _enumerated_steps(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError(f"require n >= 1, got n={n}")
    return _all_permutations(n).astype(float) @ direction_table(n)


def enumerate_support(n: int) -> SupportTable:
    """Exact support of the size-n step, deduplicated after rounding.

    Coordinates are rounded to SUPPORT_DECIMALS decimals before grouping,
    which merges arrangements whose sums agree to that precision.
    """
    steps = _enumerated_steps(n)
    rounded = np.round(steps, SUPPORT_DECIMALS) + 0.0  # normalize -0.0
    values, counts = np.unique(rounded, axis=0, return_counts=True)
    entries = tuple(
        (StepVector(float(v[0]), float(v[1])), int(c)) for v, c in zip(values, counts)
    )
    return SupportTable(n=n, entries=entries, degenerate=(n == 1))


def exact_moments(n: int) -> StepMoments:
    """Population mean, variances, and covariance over all n! permutations."""
    steps = _enumerated_steps(n)
    mean = steps.mean(axis=0)
    centered = steps - mean
    var_x = float(np.mean(centered[:, 0] ** 2))
    var_y = float(np.mean(centered[:, 1] ** 2))
    cov_xy = float(np.mean(centered[:, 0] * centered[:, 1]))
    return StepMoments(
        n=n,
        mean=StepVector(float(mean[0]), float(mean[1])),
        var_x=var_x,
        var_y=var_y,
        cov_xy=cov_xy,
        degenerate=(n == 1),
    )


def exact_direction_means(n: int) -> np.ndarray:
    """Average coefficient placed on each direction over all permutations.

    Uniformity makes every entry (1 + n) / 2; sums stay below 2**53 for
    n <= 8, so the averages are exact.
    """
    return _all_permutations(n).mean(axis=0)


def step_variance(n: int) -> float:
    """Per-component step variance for any size.

    Enumerated exactly for n <= 8 (averaging the two components, which
    differ only in the degenerate sizes 1 and 2); the closed form
    n**2 * (n + 1) / 24 beyond, validated against enumeration on 3..8.
    """
    if n < 1:
        raise ValueError(f"require n >= 1, got n={n}")
    if n <= SUPPORT_MAX_N:
        m = exact_moments(n)
        return 0.5 * (m.var_x + m.var_y)
    return n * n * (n + 1) / 24.0
