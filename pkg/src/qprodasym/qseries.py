"""Exact truncated power-series expansion of the product

    prod_j (q^{r_j}, q^{m_j - r_j}; q^{m_j})_inf ^ {delta_j}

with arbitrary-precision integer coefficients, plus an independent
expansion oracle computed by a structurally different route.
"""

from __future__ import annotations

import csv
import json
from dataclasses import dataclass
from typing import IO, Sequence

from .arith import lcm_all


@dataclass(frozen=True)
class ProductSpec:
    """The triple (m, r, delta) defining the infinite product.

    Invariants: the three tuples share length J >= 1, 1 <= r_j < m_j and
    delta_j != 0 for every j.
    """

    m: tuple[int, ...]
    r: tuple[int, ...]
    delta: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", tuple(self.m))
        object.__setattr__(self, "r", tuple(self.r))
        object.__setattr__(self, "delta", tuple(self.delta))
        if not (len(self.m) == len(self.r) == len(self.delta)):
            raise ValueError("m, r, delta must have equal length")
        if len(self.m) == 0:
            raise ValueError("need at least one factor")
        for j, (m, r, d) in enumerate(zip(self.m, self.r, self.delta)):
            if m < 2 or not 1 <= r < m:
                raise ValueError(f"factor {j}: need 1 <= r < m, got r={r}, m={m}")
            if d == 0:
                raise ValueError(f"factor {j}: delta must be nonzero")

    @property
    def J(self) -> int:
        return len(self.m)

    @property
    def L(self) -> int:
        """lcm of all moduli m_j."""
        return lcm_all(self.m)

    def negated(self) -> "ProductSpec":
        """The reciprocal product (all exponents negated)."""
        return ProductSpec(self.m, self.r, tuple(-d for d in self.delta))


@dataclass(frozen=True)
class CoeffSeries:
    """Truncated Taylor coefficients g(0..N) as exact integers."""

    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if len(self.coeffs) == 0:
            raise ValueError("series must contain at least the constant term")

    @property
    def truncation_order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, n: int) -> int:
        return self.coeffs[n]

    def __len__(self) -> int:
        return len(self.coeffs)


def _mul_factor_inplace(c: list[int], t: int) -> None:
    # multiply by (1 - q^t): c[n] -= c[n - t], top-down order irrelevant
    # because we iterate downward over a copy-free recurrence.
    for n in range(len(c) - 1, t - 1, -1):
        c[n] -= c[n - t]


def _div_factor_inplace(c: list[int], t: int) -> None:
    # divide by (1 - q^t): prefix sum with stride t.
    for n in range(t, len(c)):
        c[n] += c[n - t]


def apply_factor(series: CoeffSeries, t: int, direction: str = "multiply") -> CoeffSeries:
    """Multiply or divide a series by (1 - q^t), truncation order unchanged."""
    if t < 1:
        raise ValueError("t must be a positive integer")
    c = list(series.coeffs)
    if direction == "multiply":
        _mul_factor_inplace(c, t)
    elif direction == "divide":
        _div_factor_inplace(c, t)
    else:
        raise ValueError("direction must be 'multiply' or 'divide'")
    return CoeffSeries(c)


def expand_spec(spec: ProductSpec, N: int) -> CoeffSeries:
    """Exact coefficients g(0..N) by the stride difference/prefix-sum method.

    Each Pochhammer factor contributes binomials (1 - q^e) for
    e = a, a + m, a + 2m, ... <= N with a in {r, m - r}; each is applied
    |delta| times, multiplying for delta > 0 and dividing for delta < 0.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    c = [0] * (N + 1)
    c[0] = 1
    for m, r, d in zip(spec.m, spec.r, spec.delta):
        op = _mul_factor_inplace if d > 0 else _div_factor_inplace
        for a in (r, m - r):
            for e in range(a, N + 1, m):
                for _ in range(abs(d)):
                    op(c, e)
    return CoeffSeries(c)


def _poly_mul(a: Sequence[int], b: Sequence[int], N: int) -> list[int]:
    """Dense convolution of two integer polynomials, truncated at order N."""
    out = [0] * (N + 1)
    for i, ai in enumerate(a):
        if i > N:
            break
        if not ai:
            continue
        top = N - i
        for j, bj in enumerate(b[: top + 1]):
            if bj:
                out[i + j] += ai * bj
    return out


def _pochhammer_poly(a: int, m: int, N: int) -> list[int]:
    """(q^a; q^m)_inf truncated at order N, by successive binomial factors."""
    c = [0] * (N + 1)
    c[0] = 1
    for e in range(a, N + 1, m):
        for n in range(N, e - 1, -1):
            c[n] -= c[n - e]
    return c


def _newton_inverse(a: Sequence[int], N: int) -> list[int]:
    """Series inverse of a (with a[0] = 1) mod q^(N+1), by Newton doubling."""
    if a[0] != 1:
        raise ValueError("series inversion requires constant term 1")
    b = [1]
    prec = 1
    while prec <= N:
        prec = min(2 * prec, N + 1)
        ab = _poly_mul(a[:prec], b, prec - 1)
        corr = [-x for x in ab]
        corr[0] += 2
        b = _poly_mul(b, corr, prec - 1)
    return b


def oracle_expand(spec: ProductSpec, N: int) -> CoeffSeries:
    """Same coefficients as :func:`expand_spec` by an independent route.

    Each factor pair (q^r, q^{m-r}; q^m)_inf is expanded as a dense
    polynomial, raised to |delta| by convolution, inverted by Newton
    iteration when delta < 0, and all factors are convolved together.
    """
    if N < 0:
        raise ValueError("N must be nonnegative")
    result = [0] * (N + 1)
    result[0] = 1
    for m, r, d in zip(spec.m, spec.r, spec.delta):
        base = _poly_mul(_pochhammer_poly(r, m, N), _pochhammer_poly(m - r, m, N), N)
        power = base
        for _ in range(abs(d) - 1):
            power = _poly_mul(power, base, N)
        if d < 0:
            power = _newton_inverse(power, N)
        result = _poly_mul(result, power, N)
    return CoeffSeries(result)


def series_to_csv(series: CoeffSeries, out: IO[str]) -> None:
    """Write `n,g` rows with plain decimal integers."""
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "g"])
    for n, g in enumerate(series.coeffs):
        writer.writerow([n, g])


def series_to_json(series: CoeffSeries) -> str:
    """JSON document with coefficients as decimal strings (64-bit safe)."""
    doc = {
        "truncation_order": series.truncation_order,
        "coefficients": [str(g) for g in series.coeffs],
    }
    return json.dumps(doc, indent=None, separators=(",", ":"), sort_keys=True)


def series_from_json(text: str) -> CoeffSeries:
    doc = json.loads(text)
    coeffs = [int(s) for s in doc["coefficients"]]
    if len(coeffs) != doc["truncation_order"] + 1:
        raise ValueError("inconsistent JSON series document")
    return CoeffSeries(coeffs)
