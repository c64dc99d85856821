"""Random walks driven by length-distributed step sizes.

Each step first draws a size n from a length distribution, then a step
vector from a uniformly random permutation of 1..n.  Walks start at the
origin and record one position per step.  The scaled variant multiplies
every step by sqrt(rho) / (N * sqrt(N) * sqrt(steps)) and reports times
on the grid k/steps in [0, 1]; with rho = 24 the endpoint per-component
variance is close to 1, which is what the verification suites check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .length_dist import (
    LengthDistribution,
    LengthKind,
    per_length_distribution,
    rps_length_distribution,
)
from .rvg import RngStream, direction_table, step_variance

__all__ = [
    "DEFAULT_RHO",
    "WalkConfig",
    "WalkPath",
    "generate_lengths",
    "generate_walk",
    "scaled_walk",
    "generate_ensemble",
    "mixture_step_variance",
    "predicted_component_variance",
]

DEFAULT_RHO = 24.0


@dataclass(frozen=True)
class WalkConfig:
    """Parameters of one walk: step count, length frame, distribution kind,
    seed, variance control factor rho, and whether output is rescaled."""

    steps: int
    max_length: int
    dist_kind: LengthKind = LengthKind.RPS
    seed: int = 0
    rho: float = DEFAULT_RHO
    scaled: bool = False

    def __post_init__(self) -> None:
        if self.steps < 1:
            raise ValueError(f"require steps >= 1, got steps={self.steps}")
        if self.max_length < 2:
            raise ValueError(f"require max_length >= 2, got max_length={self.max_length}")
        if not (self.rho > 0):
            raise ValueError(f"require rho > 0, got rho={self.rho}")

    def length_distribution(self) -> LengthDistribution:
        if self.dist_kind is LengthKind.RPS:
            return rps_length_distribution(self.max_length)
        return per_length_distribution(self.max_length)


@dataclass(frozen=True, eq=False)
class WalkPath:
    """One realized walk.

    positions has steps+1 rows starting at the origin; step_lengths[i] is
    the size drawn for the step from positions[i] to positions[i+1];
    times is k/steps for scaled walks and the step index otherwise.
    """

    times: np.ndarray
    positions: np.ndarray
    step_lengths: np.ndarray

    def __post_init__(self) -> None:
        steps = self.step_lengths.shape[0]
        if self.positions.shape != (steps + 1, 2) or self.times.shape != (steps + 1,):
            raise ValueError("positions and times must have one more entry than step_lengths")
        if self.positions[0, 0] != 0.0 or self.positions[0, 1] != 0.0:
            raise ValueError("walks start at the origin")


def generate_lengths(dist: LengthDistribution, t: int, rng: RngStream) -> np.ndarray:
    """t independent length draws, one per step, by vectorized inverse CDF.

    Consumes the stream identically to t scalar draws, so the result
    matches repeated sample_length on an equal stream.
    """
    if t < 1:
        raise ValueError(f"require t >= 1, got t={t}")
    u = rng.uniforms(t)
    return np.searchsorted(dist.cumulative, u, side="left").astype(np.int64) + 1


def generate_walk(config: WalkConfig, rng: RngStream) -> WalkPath:
    """One walk under config, consuming rng for lengths first, then steps.

    The raw step sum runs from the origin with exactly config.steps
    increments; when config.scaled is set, steps and times are rescaled
    as described in the module docstring.
    """
    dist = config.length_distribution()
    t = config.steps
    lengths = generate_lengths(dist, t, rng)
    increments = np.empty((t, 2))
    for i, n in enumerate(lengths):
        increments[i] = rng.permutation(int(n)).astype(float) @ direction_table(int(n))
    if config.scaled:
        N = config.max_length
        increments *= math.sqrt(config.rho) / (N * math.sqrt(N) * math.sqrt(t))
        times = np.arange(t + 1) / t
    else:
        times = np.arange(t + 1, dtype=float)
    positions = np.vstack([np.zeros((1, 2)), np.cumsum(increments, axis=0)])
    for a in (times, positions, lengths):
        a.setflags(write=False)
    return WalkPath(times=times, positions=positions, step_lengths=lengths)


def scaled_walk(config: WalkConfig, rng: RngStream) -> WalkPath:
    """generate_walk restricted to rescaled output."""
    if not config.scaled:
        raise ValueError("scaled_walk requires config.scaled = True")
    return generate_walk(config, rng)


def generate_ensemble(
    config: WalkConfig, paths: int, master_seed: int | None = None
) -> list[WalkPath]:
    """paths independent walks; path j runs on stream (master_seed, j).

    Per-path streams make the result a pure function of the seed,
    independent of execution order and worker count.
    """
    if paths < 1:
        raise ValueError(f"require paths >= 1, got paths={paths}")
    seed = config.seed if master_seed is None else master_seed
    return [generate_walk(config, RngStream(seed, j)) for j in range(paths)]


def mixture_step_variance(N: int) -> float:
    """Per-component variance of one raw step whose size is drawn from the
    arrangement-weighted distribution over 1..N."""
    dist = rps_length_distribution(N)
    return float(
        sum(p * step_variance(n) for p, n in zip(dist.probs, range(1, N + 1)))
    )


def predicted_component_variance(N: int, rho: float = DEFAULT_RHO) -> float:
    """Predicted per-component endpoint variance of the scaled walk at time 1.

    Each scaled increment has variance rho * v / (N**3 * steps) with v the
    mixture step variance, and the steps sum to rho * v / N**3 at time 1.
    """
    if N < 2:
        raise ValueError(f"require N >= 2, got N={N}")
    if not (rho > 0):
        raise ValueError(f"require rho > 0, got rho={rho}")
    return rho / N**3 * mixture_step_variance(N)
