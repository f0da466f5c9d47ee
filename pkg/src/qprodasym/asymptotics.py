"""Machinery of the truncated Bessel-series approximation for g(n).

Covers the auxiliary arc quantities (ceiling offsets, fractional
complements, modular inverses, quadratic growth exponents), the residue
classification of Farey arcs, the hypothesis inequality, exact phase
assembly, modified Bessel evaluation in log space, and the truncated
main-term sum itself.
"""

from __future__ import annotations

import cmath
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ._backend import DOUBLE, get_backend
from .arith import coprime_residues, dedekind_sum_fast, gcd0, hbar
from .qseries import ProductSpec


class HypothesisError(ValueError):
    """Raised when a hypothesis of the asymptotic formula fails
    (the assumption inequality, or n out of the admissible range)."""


# ---------------------------------------------------------------------------
# auxiliary arc quantities
# ---------------------------------------------------------------------------

def lambda_int(m: int, r: int, h: int, k: int) -> int:
    """ceil(r*h / gcd(m, k))."""
    d = gcd0(m, k)
    return -((-r * h) // d)


def lambda_star(m: int, r: int, h: int, k: int) -> Fraction:
    """Fractional complement lambda - r*h/gcd(m, k), in [0, 1)."""
    d = gcd0(m, k)
    return lambda_int(m, r, h, k) - Fraction(r * h, d)


def omega_big(spec: ProductSpec) -> Fraction:
    """Exact growth exponent sum_j delta_j (2 m_j - 12 r_j + 12 r_j^2 / m_j)."""
    total = Fraction(0)
    for m, r, d in zip(spec.m, spec.r, spec.delta):
        total += d * (2 * m - 12 * r + Fraction(12 * r * r, m))
    return total


def delta_arc(spec: ProductSpec, kappa: int, ell: int) -> Fraction:
    """Exact arc exponent Delta(kappa, ell); positive on major arcs."""
    if not 0 <= kappa < ell:
        raise ValueError("need 0 <= kappa < ell")
    total = Fraction(0)
    for m, r, d in zip(spec.m, spec.r, spec.delta):
        g = gcd0(m, ell)
        ls = lambda_star(m, r, kappa, ell) if kappa else Fraction(0)
        total += d * (Fraction(2 * g * g, m)
                      + Fraction(12 * g * g, m) * (ls * ls - ls))
    return -total


def upsilon(x: Fraction) -> Fraction:
    """1 at 0, x on (0, 1/2], 1 - x on (1/2, 1)."""
    if not 0 <= x < 1:
        raise ValueError("need 0 <= x < 1")
    if x == 0:
        return Fraction(1)
    if x <= Fraction(1, 2):
        return x
    return 1 - x


@dataclass(frozen=True)
class ArcClass:
    """A residue class (kappa, ell) of Farey fractions, with its Delta."""

    kappa: int
    ell: int
    delta_value: Fraction


def classify_arcs(spec: ProductSpec) -> tuple[list[ArcClass], list[ArcClass]]:
    """Partition {(kappa, ell) : 1 <= ell <= L, 0 <= kappa < ell} by sign of Delta.

    Returns (positive, nonpositive); ties Delta = 0 go to the nonpositive set.
    """
    positive: list[ArcClass] = []
    nonpositive: list[ArcClass] = []
    for ell in range(1, spec.L + 1):
        for kappa in range(ell):
            dv = delta_arc(spec, kappa, ell)
            cls = ArcClass(kappa, ell, dv)
            (positive if dv > 0 else nonpositive).append(cls)
    return positive, nonpositive


def check_assumption(spec: ProductSpec) -> tuple[bool, list[tuple[int, int]]]:
    """Verify the hypothesis inequality on every residue class, exactly.

    For each (kappa, ell) the minimum over j of
    Upsilon(lambda*_j) * gcd(m_j, ell)^2 / m_j must be at least
    Delta(kappa, ell) / 24.  Returns (ok, violations).
    """
    violations: list[tuple[int, int]] = []
    for ell in range(1, spec.L + 1):
        for kappa in range(ell):
            bound = min(
                upsilon(lambda_star(m, r, kappa, ell)) * Fraction(gcd0(m, ell) ** 2, m)
                for m, r in zip(spec.m, spec.r)
            )
            if bound < delta_arc(spec, kappa, ell) / 24:
                violations.append((kappa, ell))
    return not violations, violations


# ---------------------------------------------------------------------------
# exact phases
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class PhaseExponent:
    """A unit complex number e^{i pi t} stored as the exact rational t mod 2."""

    t: Fraction

    @classmethod
    def of(cls, t) -> "PhaseExponent":
        return cls(Fraction(t) % 2)

    def __mul__(self, other: "PhaseExponent") -> "PhaseExponent":
        return PhaseExponent.of(self.t + other.t)

    def to_complex(self, backend=DOUBLE):
        # reduce to (-1, 1] before exponentiating to keep the argument small
        t = self.t if self.t <= 1 else self.t - 2
        return backend.exp(backend.j * backend.pi * backend.real(t))


@dataclass(frozen=True)
class ArcDatum:
    """All exact per-arc data entering one term of the main sum."""

    h: int
    k: int
    lambdas: tuple[int, ...]
    lambda_stars: tuple[Fraction, ...]
    hbars: tuple[int, ...]
    phase: PhaseExponent          # combined (-1)^{sum delta*lambda} * omega^2 * D
    pi_exponents: tuple[tuple[Fraction, int], ...]  # (x mod 1, delta) factors of Pi

    def pi_value(self, backend=DOUBLE):
        """Pi_{h,k} as a complex number; each factor is 1 - e^{2 pi i x}."""
        value = backend.complex_(1)
        for x, d in self.pi_exponents:
            f = 1 - backend.exp(2 * backend.j * backend.pi * backend.real(x))
            if f == 0:
                raise AssertionError("vanishing Pi factor; exponent should be a noninteger")
            value *= f ** d
        return value


def _omega_exponent(spec: ProductSpec, h: int, k: int) -> Fraction:
    # omega_{h,k} = exp(-pi i sum_j delta_j s(m_j h / d_j, k / d_j))
    total = Fraction(0)
    for m, d in zip(spec.m, spec.delta):
        g = gcd0(m, k)
        total += d * dedekind_sum_fast((m // g) * h, k // g)
    return -total


def arc_datum(spec: ProductSpec, h: int, k: int,
              hbars: tuple[int, ...] | None = None) -> ArcDatum:
    """Assemble lambda/hbar data and the exact combined phase for one arc.

    The phase exponent accumulates, as exact rationals mod 2, the parity
    term sum_j delta_j lambda_j, twice the omega exponent, and the D
    exponent; Pi is kept as exact exponents of its 1 - e^{2 pi i x} factors.

    `hbars`, when given, overrides the canonical modular inverses; any
    valid choice (shifts by multiples of k/gcd(m_j, k)) leaves the phase
    and Pi unchanged.
    """
    given = hbars
    lambdas = []
    stars = []
    hbars = []
    t = Fraction(0)
    pi_factors: list[tuple[Fraction, int]] = []
    for j, (m, r, d) in enumerate(zip(spec.m, spec.r, spec.delta)):
        g = gcd0(m, k)
        lam = lambda_int(m, r, h, k)
        ls = lam - Fraction(r * h, g)
        hb = given[j] if given is not None else hbar(m, h, k)
        if (hb * (m // g) * h + 1) % (k // g) != 0:
            raise ValueError(f"invalid hbar override for factor {j}")
        lambdas.append(lam)
        stars.append(ls)
        hbars.append(hb)
        # (-1)^{delta * lambda}
        t += d * lam
        # D exponent contribution
        t += d * (Fraction(r * h, k) - Fraction(r * g, m * k)
                  + 2 * Fraction(r * g, m * k) * ls
                  + Fraction(hb * g, k) * (lam * lam - lam))
        if ls == 0:
            x = Fraction(r * g + r * hb * m * h, m * k) % 1
            if x == 0:
                raise AssertionError("Pi exponent is an integer; contradicts arc preconditions")
            pi_factors.append((x, d))
    t += 2 * _omega_exponent(spec, h, k)
    return ArcDatum(h, k, tuple(lambdas), tuple(stars), tuple(hbars),
                    PhaseExponent.of(t), tuple(pi_factors))


@lru_cache(maxsize=None)
def _arc_datum_cached(spec: ProductSpec, h: int, k: int) -> ArcDatum:
    return arc_datum(spec, h, k)


# ---------------------------------------------------------------------------
# log-space complex values and the Bessel factor
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogComplex:
    """(log-magnitude, argument) pair; overflow-safe product/sum arithmetic."""

    log_mag: float
    arg: float

    @classmethod
    def from_complex(cls, z: complex) -> "LogComplex":
        z = complex(z)
        if z == 0:
            return cls(float("-inf"), 0.0)
        return cls(math.log(abs(z)), cmath.phase(z))

    @classmethod
    def from_log_real(cls, log_mag: float) -> "LogComplex":
        return cls(float(log_mag), 0.0)

    def __mul__(self, other: "LogComplex") -> "LogComplex":
        arg = self.arg + other.arg
        # wrap into (-pi, pi]
        arg = math.remainder(arg, 2 * math.pi)
        return LogComplex(self.log_mag + other.log_mag, arg)

    def to_complex(self) -> complex:
        return cmath.rect(math.exp(self.log_mag), self.arg)

    @property
    def real_sign(self) -> int:
        c = math.cos(self.arg)
        if self.log_mag == float("-inf") or c == 0:
            return 0
        return 1 if c > 0 else -1

    def log_abs_real(self) -> float:
        """log |Re(value)|."""
        return self.log_mag + math.log(abs(math.cos(self.arg)))

    def imag_over_real(self) -> float:
        return abs(math.tan(self.arg))


def logc_sum(terms: list[LogComplex]) -> LogComplex:
    """Sum of LogComplex terms by max-factoring with compensated summation."""
    terms = [t for t in terms if t.log_mag != float("-inf")]
    if not terms:
        return LogComplex(float("-inf"), 0.0)
    top = max(t.log_mag for t in terms)
    re = math.fsum(math.exp(t.log_mag - top) * math.cos(t.arg) for t in terms)
    im = math.fsum(math.exp(t.log_mag - top) * math.sin(t.arg) for t in terms)
    s = complex(re, im)
    if s == 0:
        return LogComplex(float("-inf"), 0.0)
    return LogComplex(top + math.log(abs(s)), cmath.phase(s))


_BESSEL_SPLIT = 25.0


def _bessel_i1_series_log(x, backend=DOUBLE):
    # ascending series: I_1(x) = sum_{t>=0} (x/2)^{2t+1} / (t! (t+1)!)
    half = x / 2
    term = half
    total = term
    t = 1
    while True:
        term = term * half * half / (t * (t + 1))
        total += term
        t += 1
        if term < total * backend.eps:
            break
    return backend.log(total)


def _bessel_i1_asym_log(x, backend=DOUBLE, min_terms: int = 6):
    # exponentially scaled expansion around e^x / sqrt(2 pi x); the
    # correction terms use 4 s^2 = 4 for order s = -1 (equivalently 1).
    term = backend.real(1)
    total = term
    k = 1
    while True:
        factor = ((2 * k - 1) ** 2 - 4) / (8 * x * k)
        nxt = term * factor
        if k > min_terms and abs(nxt) >= abs(term):
            break  # past the optimal truncation point
        term = nxt
        total += term
        k += 1
        if abs(term) < backend.eps * abs(total) and k > min_terms:
            break
    return x + backend.log(total) - backend.log(2 * backend.pi * x) / 2


def bessel_I_minus1(x: float, precision: str = "double") -> LogComplex:
    """I_{-1}(x) = I_1(x) for x > 0, in log-magnitude form.

    Ascending series for x <= 25, exponentially scaled asymptotic
    expansion beyond; the two branches overlap consistently on [20, 30].
    """
    backend = get_backend(precision)
    if x <= 0:
        raise ValueError("x must be positive")
    xb = backend.real(x)
    if x <= _BESSEL_SPLIT:
        lm = _bessel_i1_series_log(xb, backend)
    else:
        lm = _bessel_i1_asym_log(xb, backend)
    return LogComplex.from_log_real(float(lm))


# ---------------------------------------------------------------------------
# the truncated main-term sum
# ---------------------------------------------------------------------------

def default_K(spec: ProductSpec, n: int) -> int:
    """Truncation bound floor(sqrt(2 pi (n + Omega/24))) for the k-sum."""
    return math.floor(math.sqrt(2 * math.pi * float(n + omega_big(spec) / 24)))


def _h_sum(spec: ProductSpec, n: int, kappa: int, ell: int, k: int, backend):
    """Sum over admissible h of e^{-2 pi i n h / k} phase_{h,k} Pi_{h,k}."""
    total = backend.complex_(0)
    for h in coprime_residues(k, kappa, ell):
        datum = _arc_datum_cached(spec, h, k)
        t = PhaseExponent.of(datum.phase.t + Fraction(-2 * n * h, k))
        total += t.to_complex(backend) * datum.pi_value(backend)
    return total


def _positive_classes(spec: ProductSpec) -> dict[int, list[ArcClass]]:
    by_ell: dict[int, list[ArcClass]] = {}
    for cls in classify_arcs(spec)[0]:
        by_ell.setdefault(cls.ell, []).append(cls)
    return by_ell


def _require_hypotheses(spec: ProductSpec, n: int) -> Fraction:
    omega = omega_big(spec)
    if Fraction(n) <= -omega / 24:
        raise HypothesisError(f"need n > -Omega/24 = {-omega / 24}")
    ok, violations = check_assumption(spec)
    if not ok:
        raise HypothesisError(f"hypothesis inequality fails at classes {violations}")
    return omega


def g_asymptotic_members(spec: ProductSpec, n: int,
                         members: list[tuple[int, int, int]],
                         precision: str = "double") -> LogComplex:
    """The main-term sum restricted to explicit (kappa, ell, k) triples."""
    omega = _require_hypotheses(spec, n)
    backend = get_backend(precision)
    terms = []
    w = float(24 * n + omega)
    for kappa, ell, k in members:
        dv = delta_arc(spec, kappa, ell)
        if dv <= 0:
            raise ValueError(f"class ({kappa}, {ell}) is not a major-arc class")
        hs = backend.to_complex(_h_sum(spec, n, kappa, ell, k, backend))
        if hs == 0:
            continue
        x = math.pi * math.sqrt(float(dv) * w) / (6 * k)
        pref = LogComplex.from_log_real(
            math.log(2 * math.pi / k) + 0.5 * math.log(float(dv) / w))
        terms.append(pref * bessel_I_minus1(x, precision)
                     * LogComplex.from_complex(hs))
    front = PhaseExponent.of(Fraction(sum(spec.delta), 2))
    total = logc_sum(terms)
    return LogComplex.from_complex(complex(front.to_complex())) * total


def g_asymptotic(spec: ProductSpec, n: int, K: int | None = None,
                 precision: str = "double", threads: int | None = None) -> LogComplex:
    """Truncated Bessel-series approximation of g(n).

    Sums over every major-arc class and every k <= K congruent to the
    class level mod L, with K defaulting to :func:`default_K`.  The result
    is a LogComplex whose imaginary part is pure numerical noise.
    """
    _require_hypotheses(spec, n)
    if K is None:
        K = default_K(spec, n)
    by_ell = _positive_classes(spec)
    L = spec.L
    members = []
    for k in range(1, K + 1):
        ell = (k - 1) % L + 1
        for cls in by_ell.get(ell, ()):
            members.append((cls.kappa, cls.ell, k))
    if threads is None:
        threads = int(os.environ.get("QPRODASYM_THREADS", "1"))
    if threads > 1 and len(members) > 1:
        chunks = [members[i::threads] for i in range(threads)]
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(
                lambda ms: g_asymptotic_members(spec, n, ms, precision), chunks))
        return logc_sum([p for p in parts])
    return g_asymptotic_members(spec, n, members, precision)
