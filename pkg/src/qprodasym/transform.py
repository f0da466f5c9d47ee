"""Numeric evaluation of eta, theta and the shifted Pochhammer quotient,
plus the matrix machinery used to verify the arc transformation formula.

The identities checked here are exact; any test tolerance exists only to
absorb truncation and rounding of the evaluations themselves.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from ._backend import DOUBLE, get_backend
from .arith import dedekind_sum_fast, gcd0, hbar
from .asymptotics import (PhaseExponent, lambda_int, lambda_star, omega_big,
                          _arc_datum_cached)
from .qseries import ProductSpec

_MAX_TERMS = 200_000


@dataclass(frozen=True)
class ModularMatrix:
    """An SL2(Z) matrix (a, b; c, d); transformations assume c > 0."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self) -> None:
        if self.a * self.d - self.b * self.c != 1:
            raise ValueError("determinant must be 1")

    def mobius(self, tau):
        return (self.a * tau + self.b) / (self.c * tau + self.d)

    def mobius_star(self, tau):
        return 1 / (self.c * tau + self.d)


def build_gamma(m: int, h: int, k: int) -> ModularMatrix:
    """The SL2(Z) matrix that straightens m*tau near the arc at h/k.

    Entries are (t, -b, k', -m'h) with d = gcd(m, k), m' = m/d, k' = k/d,
    t the canonical modular inverse from :func:`arith.hbar` and
    b = (t m' h + 1)/k'.
    """
    d = gcd0(m, k)
    mp_, kp = m // d, k // d
    t = hbar(m, h, k)
    b = (t * mp_ * h + 1) // kp
    return ModularMatrix(t, -b, kp, -mp_ * h)


def default_terms(min_im: float) -> int:
    """Truncation length giving a |q|^terms tail below 1e-14."""
    return min(_MAX_TERMS, math.ceil(60.0 / min_im))


def eval_eta(tau, terms: int, precision: str = "double"):
    """Dedekind eta: q^{1/24} prod_{k<=terms} (1 - q^k), q = e^{2 pi i tau}."""
    B = get_backend(precision)
    tau = B.native(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half plane")
    q = B.exp(2 * B.j * B.pi * tau)
    value = B.exp(2 * B.j * B.pi * tau / 24)
    qk = q
    for _ in range(terms):
        value *= 1 - qk
        qk *= q
    return value


def eval_theta(sigma, tau, terms: int, precision: str = "double"):
    """Half-integer-index theta sum over nu = +-1/2, +-3/2, ..., |nu| <= terms + 1/2."""
    B = get_backend(precision)
    sigma = B.native(sigma)
    tau = B.native(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half plane")
    total = B.complex_(0)
    half = B.real(Fraction(1, 2))
    for t in range(terms + 1):
        for nu in (t + half, -(t + half)):
            total += B.exp(2 * B.j * B.pi * nu * (sigma + half)
                           + B.j * B.pi * nu * nu * tau)
    return total


def eval_zh_point(sigma, tau, terms: int, precision: str = "double"):
    """(zeta, zeta^{-1} q; q)_inf with zeta = e^{2 pi i sigma}, q = e^{2 pi i tau}.

    Converges for 0 <= Im(sigma) < Im(tau); truncated at `terms` factors of
    each product.
    """
    B = get_backend(precision)
    sigma = B.native(sigma)
    tau = B.native(tau)
    if not tau.imag > 0:
        raise ValueError("tau must lie in the upper half plane")
    q = B.exp(2 * B.j * B.pi * tau)
    zeta = B.exp(2 * B.j * B.pi * sigma)
    zinv = 1 / zeta
    value = B.complex_(1)
    qk = B.complex_(1)
    for _ in range(terms):
        value *= (1 - zeta * qk) * (1 - zinv * qk * q)
        qk *= q
    return value


def eval_Zh(r: int, m: int, tau, terms: int, precision: str = "double"):
    """(q^r, q^{m-r}; q^m)_inf evaluated directly, q = e^{2 pi i tau}."""
    if not 1 <= r < m:
        raise ValueError("need 1 <= r < m")
    return eval_zh_point(r * tau, m * tau, terms, precision)


def chi(gamma: ModularMatrix, precision: str = "double"):
    """The eta multiplier e^{pi i ((a+d)/12c - s(d,c) - 1/4)} for c > 0.

    The exponent is assembled as an exact rational and reduced mod 2
    before exponentiation.
    """
    if gamma.c <= 0:
        raise ValueError("need c > 0")
    B = get_backend(precision)
    t = (Fraction(gamma.a + gamma.d, 12 * gamma.c)
         - dedekind_sum_fast(gamma.d, gamma.c) - Fraction(1, 4))
    return PhaseExponent.of(t).to_complex(B)


def transformed_arguments(spec: ProductSpec, h: int, k: int, z, precision: str = "double"):
    """Per-factor straightened arguments (sigma_j, tau_j) on the arc at h/k.

    With z = k(rho - i phi) the straightened half-period is
    hbar d / k + i d^2/(m k z) and the elliptic argument picks up the
    fractional shift lambda* d^2/(m k z).
    """
    B = get_backend(precision)
    z = B.native(z)
    iz = B.j / z
    out = []
    for m, r in zip(spec.m, spec.r):
        d = gcd0(m, k)
        lam = lambda_int(m, r, h, k)
        ls = lambda_star(m, r, h, k)
        hb = hbar(m, h, k)
        tau_t = B.real(Fraction(hb * d, k)) + B.real(Fraction(d * d, m * k)) * iz
        sigma_t = (B.real(Fraction(r * d, m * k) + lam * Fraction(hb * d, k))
                   + B.real(ls * Fraction(d * d, m * k)) * iz)
        out.append((sigma_t, tau_t))
    return out


def check_main_transform(spec: ProductSpec, h: int, k: int, z,
                         terms: int | None = None,
                         precision: str = "double") -> float:
    """Relative discrepancy between both sides of the arc transformation.

    The left side evaluates the product G(e^{2 pi i tau}) directly at
    tau = (h + i z)/k; the right side assembles the exact phase, the
    exponential growth factor and the straightened Pochhammer quotients.
    """
    if k < 1 or not 0 <= h < k or math.gcd(h, k) != 1:
        raise ValueError("need a reduced fraction 0 <= h < k")
    B = get_backend(precision)
    z = B.native(z)
    if not z.real > 0:
        raise ValueError("need Re(z) > 0")
    tau = (h + B.j * z) / k
    args = transformed_arguments(spec, h, k, z, precision)
    if terms is None:
        ims = [float(t.imag) for _, t in args] + [float(tau.imag)]
        terms = default_terms(min(ims))

    lhs = B.complex_(1)
    for m, r, d in zip(spec.m, spec.r, spec.delta):
        lhs *= eval_Zh(r, m, tau, terms, precision) ** d

    datum = _arc_datum_cached(spec, h, k)
    front = PhaseExponent.of(datum.phase.t + Fraction(sum(spec.delta), 2))
    rhs = front.to_complex(B)
    omega = omega_big(spec)
    dv = _delta_hk(spec, h, k)
    rhs *= B.exp(B.pi / (12 * k) * (B.real(omega) * z + B.real(dv) / z))
    for (sigma_t, tau_t), d in zip(args, spec.delta):
        rhs *= eval_zh_point(sigma_t, tau_t, terms, precision) ** d
    return float(B.abs(lhs - rhs) / B.abs(lhs))


def _delta_hk(spec: ProductSpec, h: int, k: int) -> Fraction:
    """Delta evaluated at the Farey fraction itself (equals its class value)."""
    total = Fraction(0)
    for m, r, d in zip(spec.m, spec.r, spec.delta):
        g = gcd0(m, k)
        ls = lambda_star(m, r, h, k)
        total += d * (Fraction(2 * g * g, m)
                      + Fraction(12 * g * g, m) * (ls * ls - ls))
    return -total
