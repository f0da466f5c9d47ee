"""Exact integer and rational number-theoretic primitives.

Everything here is computed in exact arithmetic (Python integers and
``fractions.Fraction``); no floating point enters this module.  These
primitives carry the phase bookkeeping for the rest of the package, where
exact cancellation matters.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator


def gcd0(a: int, b: int) -> int:
    """Greatest common divisor with the convention gcd0(0, n) = n.

    Requires a >= 0 and b >= 1.
    """
    if b < 1:
        raise ValueError("b must be a positive integer")
    if a < 0:
        raise ValueError("a must be nonnegative")
    return math.gcd(a, b)


def lcm_all(ms: Iterable[int]) -> int:
    """Least common multiple of a nonempty sequence of positive integers."""
    ms = list(ms)
    if not ms:
        raise ValueError("lcm_all needs at least one modulus")
    if any(m < 1 for m in ms):
        raise ValueError("moduli must be positive")
    return math.lcm(*ms)


def hbar(m: int, h: int, k: int) -> int:
    """Solve t * (m*h/d) = -1 (mod k/d) for t, where d = gcd(m, k).

    Returns the least nonnegative solution; when the modulus k/d is 1 the
    congruence is vacuous and 0 is returned.  A solution always exists
    because gcd(h, k) = 1 forces gcd(m*h/d, k/d) = 1.
    """
    if k < 1 or h < 0 or h >= k or math.gcd(h, k) != 1:
        raise ValueError("need 0 <= h < k with gcd(h, k) = 1")
    d = gcd0(m, k)
    kp = k // d
    if kp == 1:
        return 0
    a = (m // d) * h % kp
    return (-pow(a, -1, kp)) % kp


def sawtooth(x: Fraction) -> Fraction:
    """The sawtooth ((x)): x - floor(x) - 1/2 off the integers, 0 on them."""
    if x.denominator == 1:
        return Fraction(0)
    return x - math.floor(x) - Fraction(1, 2)


def dedekind_sum(d: int, c: int) -> Fraction:
    """Dedekind sum s(d, c) by the direct O(c) sawtooth sum.

    Requires c >= 1 and gcd(d, c) = 1.
    """
    if c < 1:
        raise ValueError("c must be a positive integer")
    if math.gcd(d, c) != 1:
        raise ValueError("need gcd(d, c) = 1")
    total = Fraction(0)
    for n in range(1, c):
        total += sawtooth(Fraction(d * n, c)) * sawtooth(Fraction(n, c))
    return total


def dedekind_sum_fast(d: int, c: int) -> Fraction:
    """Dedekind sum s(d, c) via the reciprocity recursion, O(log c).

    Agrees exactly with :func:`dedekind_sum`; uses
    s(d, c) + s(c, d) = -1/4 + (d^2 + c^2 + 1)/(12 c d)
    together with periodicity s(d + c, c) = s(d, c).
    """
    if c < 1:
        raise ValueError("c must be a positive integer")
    if math.gcd(d, c) != 1:
        raise ValueError("need gcd(d, c) = 1")
    d %= c
    result = Fraction(0)
    sign = 1
    while d:
        result += sign * (
            Fraction(d * d + c * c + 1, 12 * c * d) - Fraction(1, 4)
        )
        sign = -sign
        c, d = d, c % d
    return result


@dataclass(frozen=True)
class FareyPair:
    """A reduced fraction h/k with 0 <= h < k and gcd(h, k) = 1."""

    h: int
    k: int

    def __post_init__(self) -> None:
        if self.k < 1 or not 0 <= self.h < max(self.k, 1):
            raise ValueError("need 0 <= h < k with k >= 1")
        if math.gcd(self.h, self.k) != 1:
            raise ValueError("need gcd(h, k) = 1")


def coprime_residues(k: int, kappa: int | None = None,
                     ell: int | None = None) -> Iterator[int]:
    """Yield h in [0, k) with gcd(h, k) = 1, optionally with h = kappa (mod ell).

    Note gcd(0, 1) = 1, so h = 0 is admissible exactly when k = 1.
    """
    for h in range(k):
        if math.gcd(h, k) != 1:
            continue
        if kappa is not None and h % ell != kappa:
            continue
        yield h
