"""Exact integer combinatorics for ordered-arrangement counts.

Everything here is arbitrary-precision and exact: P(n, i) counts ordered
arrangements of i items chosen from n, F(n) totals the arrangements of
every subset of an n-element frame, and the normalizer S(N) weights each
arrangement size by F(size) - 1.  These integers feed the entropy,
distribution, and scaling computations in the rest of the package, so no
floating-point shortcut is taken below the supported range (N <= 500).
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import lru_cache

__all__ = [
    "permutation_count",
    "f_function",
    "floor_e_factorial",
    "max_entropy_normalizer",
    "log_of_bigcount",
    "normalizer_ratio",
]


def permutation_count(n: int, i: int) -> int:
    """Number of ordered arrangements of i items chosen from n: n!/(n-i)!."""
    if n < 0 or i < 0 or i > n:
        raise ValueError(f"require 0 <= i <= n, got n={n}, i={i}")
    return math.perm(n, i)


@lru_cache(maxsize=None)
def f_function(i: int) -> int:
    """Count of ordered arrangements over all subset sizes: sum of P(i, j) for j = 0..i."""
    if i < 0:
        raise ValueError(f"require i >= 0, got i={i}")
    return sum(math.perm(i, j) for j in range(i + 1))


@lru_cache(maxsize=None)
def _e_lower_bound(digits: int) -> Fraction:
    """Rational lower bound on e with truncation error below 10**-digits.

    Partial sum of 1/k!; the dropped tail is under 2/(K+1)!, so K is grown
    until (K+1)! exceeds 2 * 10**digits.
    """
    bound = 2 * 10**digits
    k = 1
    while math.factorial(k + 1) <= bound:
        k += 1
    kf = math.factorial(k)
    numerator = sum(kf // math.factorial(j) for j in range(k + 1))
    return Fraction(numerator, kf)


def floor_e_factorial(n: int) -> int:
    """Floor of e * n!, with e carried to enough digits to make the floor exact.

    The fractional part of e * n! is at least 1/(n+1), far above the
    truncation error of the rational e bound, so flooring the lower-bound
    product gives the true value.
    """
    if n < 1:
        raise ValueError(f"require n >= 1, got n={n}")
    nf = math.factorial(n)
    e_lo = _e_lower_bound(len(str(nf)) + 10)
    return (e_lo.numerator * nf) // e_lo.denominator


@lru_cache(maxsize=None)
def max_entropy_normalizer(N: int) -> int:
    """Exact sum over sizes i = 1..N of P(N, i) * (F(i) - 1)."""
    if N < 1:
        raise ValueError(f"require N >= 1, got N={N}")
    return sum(math.perm(N, i) * (f_function(i) - 1) for i in range(1, N + 1))


def log_of_bigcount(x: int, base: float = 2.0) -> float:
    """Logarithm of a positive integer of any size, without float overflow."""
    if x < 1:
        raise ValueError(f"require x >= 1, got x={x}")
    if base <= 1:
        raise ValueError(f"require base > 1, got base={base}")
    bits = x.bit_length()
    if bits <= 53:
        log2_x = math.log2(x)
    else:
        # Keep 64 leading bits; the dropped tail shifts the log by < 2**-63.
        shift = bits - 64
        log2_x = shift + math.log2(x >> shift)
    if base == 2.0:
        return log2_x
    return log2_x / math.log2(base)


def normalizer_ratio(N: int) -> float:
    """Ratio of the normalizer S(N) to e * (N!)**2, in exact rational arithmetic.

    The ratio decreases toward 1 as N grows; the excess stays between
    0.5/N and 2/N over the midrange, which is the checkable form of the
    large-N simplification of the normalizer.
    """
    if N < 1:
        raise ValueError(f"require N >= 1, got N={N}")
    nf = math.factorial(N)
    e_lo = _e_lower_bound(2 * len(str(nf)) + 20)
    return float(Fraction(max_entropy_normalizer(N)) / (e_lo * nf * nf))
