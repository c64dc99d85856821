"""Permutation event space, mass functions, and their entropy.

An event is an ordered tuple of distinct elements drawn from 1..n; the
event space collects every such arrangement of every subset, F(n) events
in total including the empty one.  A mass function assigns nonnegative
mass summing to one across the nonempty events.  The entropy weights each
event's mass against the number of arrangements sharing its cardinality
and is maximized when mass is proportional to F(cardinality) - 1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from typing import Any, Iterable, Mapping

from .combinatorics import f_function, log_of_bigcount, max_entropy_normalizer
from .errors import CapacityError

__all__ = [
    "ENUMERATION_MAX_N",
    "MASS_TOLERANCE",
    "PermutationEvent",
    "PermutationMassFunction",
    "enumerate_pes",
    "rps_entropy",
    "max_entropy_pmf",
    "max_rps_entropy",
]

# F(8) = 109601 events; full enumeration beyond this is refused.
ENUMERATION_MAX_N = 8

# Mass sums are accepted when within this distance of 1.
MASS_TOLERANCE = 1e-12

PermutationEvent = tuple[int, ...]


def enumerate_pes(n: int) -> list[PermutationEvent]:
    """All ordered arrangements of every subset of 1..n, in canonical order.

    Ordering is by cardinality, then lexicographic; the empty event comes
    first and the list has exactly F(n) entries.
    """
    if n < 0:
        raise ValueError(f"require n >= 0, got n={n}")
    if n > ENUMERATION_MAX_N:
        raise CapacityError(
            f"event-space enumeration is capped at n <= {ENUMERATION_MAX_N}, got n={n}"
        )
    elements = range(1, n + 1)
    events: list[PermutationEvent] = []
    for size in range(n + 1):
        # permutations() on a sorted pool emits each size class lexicographically.
        events.extend(permutations(elements, size))
    return events


def _validate_event(event: PermutationEvent, n: int) -> None:
    if not all(isinstance(e, int) and 1 <= e <= n for e in event):
        raise ValueError(f"event {event!r} has elements outside 1..{n}")
    if len(set(event)) != len(event):
        raise ValueError(f"event {event!r} repeats an element")


@dataclass(frozen=True)
class PermutationMassFunction:
    """Validated mass assignment over the nonempty events of a size-n frame."""

    n: int
    masses: Mapping[PermutationEvent, float]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise ValueError(f"require n >= 0, got n={self.n}")
        clean: dict[PermutationEvent, float] = {}
        for event, mass in self.masses.items():
            event = tuple(event)
            _validate_event(event, self.n)
            if not math.isfinite(mass) or mass < 0:
                raise ValueError(f"mass of {event!r} must be finite and >= 0, got {mass}")
            if event == ():
                if mass != 0:
                    raise ValueError("the empty event must carry zero mass")
                continue
            clean[event] = float(mass)
        total = math.fsum(clean.values())
        if abs(total - 1.0) > MASS_TOLERANCE:
            raise ValueError(f"masses sum to {total!r}, expected 1 within {MASS_TOLERANCE}")
        object.__setattr__(self, "masses", clean)

    def mass(self, event: Iterable[int]) -> float:
        """Mass of one event, zero when unassigned."""
        return self.masses.get(tuple(event), 0.0)

    def to_json_dict(self) -> dict[str, Any]:
        """Serializable form: {"n": ..., "masses": [{"event": [...], "mass": ...}]}."""
        return {
            "n": self.n,
            "masses": [
                {"event": list(event), "mass": mass}
                for event, mass in sorted(self.masses.items(), key=lambda kv: (len(kv[0]), kv[0]))
            ],
        }

    @classmethod
    def from_json_dict(cls, data: Mapping[str, Any]) -> "PermutationMassFunction":
        """Inverse of to_json_dict, with full validation."""
        try:
            n = data["n"]
            entries = data["masses"]
            masses = {tuple(entry["event"]): entry["mass"] for entry in entries}
        except (KeyError, TypeError) as exc:
            raise ValueError(f"malformed mass-function document: {exc}") from exc
        if not isinstance(n, int):
            raise ValueError(f"field 'n' must be an integer, got {n!r}")
        return cls(n=n, masses=masses)


def _log_in_base(base: float):
    if base == 2.0:
        return math.log2
    if base == math.e:
        return math.log
    log_base = math.log(base)
    return lambda v: math.log(v) / log_base


def rps_entropy(pmf: PermutationMassFunction, base: float = 2.0) -> float:
    """Entropy of a permutation mass function.

    An event of cardinality c and mass m contributes -m * log(m / (F(c) - 1));
    zero-mass events contribute nothing.  When all mass sits on singletons
    this reduces to the Shannon entropy of the singleton masses.
    """
    if base <= 1:
        raise ValueError(f"require base > 1, got base={base}")
    log = _log_in_base(base)
    terms = [
        -mass * log(mass / (f_function(len(event)) - 1))
        for event, mass in pmf.masses.items()
        if mass > 0.0
    ]
    return math.fsum(terms)


def max_entropy_pmf(N: int) -> PermutationMassFunction:
    """The entropy-maximizing mass function: mass proportional to F(cardinality) - 1.

    Built from exact integer ratios, converted to float per event at the end.
    """
    if N < 1:
        raise ValueError(f"require N >= 1, got N={N}")
    if N > ENUMERATION_MAX_N:
        raise CapacityError(
            f"max-entropy mass function needs full enumeration, capped at "
            f"N <= {ENUMERATION_MAX_N}, got N={N}"
        )
    denominator = max_entropy_normalizer(N)
    masses = {
        event: float(Fraction(f_function(len(event)) - 1, denominator))
        for event in enumerate_pes(N)
        if event
    }
    return PermutationMassFunction(n=N, masses=masses)


def max_rps_entropy(N: int, base: float = 2.0) -> float:
    """Largest possible entropy for frame size N: log of the normalizer.

    Evaluated straight from the exact integer, so it works far beyond the
    enumeration cap.
    """
    if N < 1:
        raise ValueError(f"require N >= 1, got N={N}")
    return log_of_bigcount(max_entropy_normalizer(N), base)
