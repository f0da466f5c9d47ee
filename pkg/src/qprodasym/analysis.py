"""Dominant-term analysis: rank the Bessel levels sqrt(Delta)/k, sum the
same-level terms, detect periodic vanishing and per-residue signs, and
cross-compare exact coefficients against the truncated approximation.
"""

from __future__ import annotations

import csv
import heapq
import json
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import IO, Sequence

from ._backend import get_backend
from .arith import coprime_residues, lcm_all
from .asymptotics import (PhaseExponent, _h_sum, classify_arcs, delta_arc,
                          g_asymptotic, omega_big)
from .qseries import CoeffSeries, ProductSpec, expand_spec

VANISH_RATIO = 1e-9


class NoMajorArcsError(ValueError):
    """The positive-Delta class set is empty; no dominant term exists."""


@dataclass(frozen=True)
class DominantLevel:
    """One distinct value of sqrt(Delta(kappa, ell))/k and its attaining triples."""

    ratio_squared: Fraction              # Delta / k^2, exact; used for grouping
    members: tuple[tuple[int, int, int], ...]   # (kappa, ell, k), k = ell mod L

    @property
    def value(self) -> float:
        return math.sqrt(float(self.ratio_squared))


def dominant_levels(spec: ProductSpec, depth: int) -> list[DominantLevel]:
    """The `depth` largest distinct values of sqrt(Delta)/k over major arcs.

    Enumeration terminates because sqrt(Delta)/k decreases in k; whether a
    member actually contributes (existence of an admissible h) is decided
    later, when terms are summed.
    """
    if depth < 1:
        raise ValueError("depth must be positive")
    positive, _ = classify_arcs(spec)
    if not positive:
        raise NoMajorArcsError("no major arcs: every class has Delta <= 0")
    L = spec.L
    # k-way merge over the per-class sequences k = ell, ell + L, ...; each
    # sequence is strictly decreasing in sqrt(Delta)/k, so a heap pop order
    # enumerates values globally in decreasing order.
    heap = [(-cls.delta_value / (cls.ell ** 2), cls.kappa, cls.ell, cls.ell)
            for cls in positive]
    heapq.heapify(heap)
    buckets: dict[Fraction, list[tuple[int, int, int]]] = {}
    while heap:
        neg, kappa, ell, k = heapq.heappop(heap)
        ratio = -neg
        if len(buckets) >= depth and ratio not in buckets:
            break
        buckets.setdefault(ratio, []).append((kappa, ell, k))
        dv = ratio * k * k
        k += L
        heapq.heappush(heap, (-dv / (k * k), kappa, ell, k))
    levels = [DominantLevel(ratio, tuple(sorted(buckets[ratio])))
              for ratio in sorted(buckets, reverse=True)]
    return levels[:depth]


@dataclass(frozen=True)
class ResidueVerdict:
    """Per-residue sign/vanishing verdict for the leading amplitude A(n).

    `signs[rho]` is 'positive', 'negative' or 'vanishing'; amplitudes carry
    the real value of the n-periodic factor at each residue.  A vanishing
    verdict is numerical evidence, not a proof.
    """

    modulus: int
    signs: tuple[str, ...]
    amplitudes: tuple[float, ...]
    level_index: int
    inconclusive: bool = False


def leading_profile(spec: ProductSpec, depth: int = 3,
                    precision: str = "double") -> ResidueVerdict:
    """Sign profile of the top nonvanishing Bessel level.

    Sums the h-sums of all members at the largest sqrt(Delta)/k value; the
    resulting amplitude is periodic in n.  If every residue cancels, the
    next level is examined, down to `depth` levels; exhausting them yields
    an inconclusive verdict.
    """
    backend = get_backend(precision)
    levels = dominant_levels(spec, depth)
    front = PhaseExponent.of(Fraction(sum(spec.delta), 2))
    for idx, level in enumerate(levels):
        contributing = [(kappa, ell, k) for kappa, ell, k in level.members
                        if any(True for _ in coprime_residues(k, kappa, ell))]
        if not contributing:
            continue
        P = lcm_all([k for _, _, k in contributing])
        scale = 0.0
        amps = []
        for n0 in range(P):
            total = backend.complex_(0)
            for kappa, ell, k in contributing:
                total += _h_sum(spec, n0, kappa, ell, k, backend)
            value = backend.to_complex(front.to_complex(backend)
                                       * backend.native(total))
            amps.append(value.real)
            scale = max(scale, abs(value))
        if scale == 0.0 or all(abs(a) < VANISH_RATIO * scale for a in amps):
            continue  # the whole level cancels; descend
        cutoff = VANISH_RATIO * max(abs(a) for a in amps)
        signs = tuple("vanishing" if abs(a) < cutoff
                      else ("positive" if a > 0 else "negative")
                      for a in amps)
        return ResidueVerdict(P, signs, tuple(amps), idx)
    return ResidueVerdict(1, ("vanishing",), (0.0,), len(levels), inconclusive=True)


@dataclass(frozen=True)
class CompareRow:
    n: int
    exact: int
    log_abs_exact: float | None
    log_abs_asym: float
    rel_error: float


def compare(spec: ProductSpec, n_values: Sequence[int], K: int | None = None,
            series: CoeffSeries | None = None,
            precision: str = "double") -> list[CompareRow]:
    """Exact g(n) vs the truncated approximation, compared in log space."""
    if not n_values:
        return []
    top = max(n_values)
    if series is None:
        series = expand_spec(spec, top)
    elif series.truncation_order < top:
        raise ValueError("requested n exceeds the available truncation")
    omega = omega_big(spec)
    rows = []
    for n in n_values:
        if Fraction(n) <= -omega / 24:
            raise ValueError(f"n = {n} violates n > -Omega/24")
        exact = series[n]
        approx = g_asymptotic(spec, n, K, precision)
        log_exact = math.log(abs(exact)) if exact else None
        if exact:
            sign = approx.real_sign * (1 if exact > 0 else -1)
            rel = sign * math.exp(approx.log_abs_real() - log_exact) - 1.0
        else:
            rel = math.inf
        rows.append(CompareRow(n, exact, log_exact, approx.log_abs_real(), rel))
    return rows


@dataclass(frozen=True)
class ResidueScan:
    residue: int
    verdict: str            # all-positive / all-negative / all-zero / mixed
    first_counterexample: int | None


def sign_check(spec: ProductSpec, modulus: int, n_from: int, n_to: int,
               series: CoeffSeries | None = None) -> list[ResidueScan]:
    """Scan exact coefficients over [n_from, n_to] by residue class."""
    if modulus < 1:
        raise ValueError("modulus must be positive")
    if not 0 <= n_from <= n_to:
        raise ValueError("need 0 <= n_from <= n_to")
    if series is None:
        series = expand_spec(spec, n_to)
    elif series.truncation_order < n_to:
        raise ValueError("range exceeds the available truncation")
    out = []
    for rho in range(modulus):
        ns = [n for n in range(n_from, n_to + 1) if n % modulus == rho]
        values = [series[n] for n in ns]
        if all(v > 0 for v in values):
            verdict, first = "all-positive", None
        elif all(v < 0 for v in values):
            verdict, first = "all-negative", None
        elif all(v == 0 for v in values):
            verdict, first = "all-zero", None
        else:
            # mixed: report the first n breaking the majority sign
            pos = sum(v > 0 for v in values)
            neg = sum(v < 0 for v in values)
            zero = sum(v == 0 for v in values)
            majority = max((pos, "positive"), (neg, "negative"), (zero, "zero"))[1]
            breaks = {"positive": lambda v: v <= 0,
                      "negative": lambda v: v >= 0,
                      "zero": lambda v: v != 0}[majority]
            first = next(n for n, v in zip(ns, values) if breaks(v))
            verdict = "mixed"
        out.append(ResidueScan(rho, verdict, first))
    return out


def compare_to_csv(rows: list[CompareRow], out: IO[str]) -> None:
    writer = csv.writer(out, lineterminator="\n")
    writer.writerow(["n", "exact", "log_abs_exact", "log_abs_asym", "rel_error"])
    for row in rows:
        writer.writerow([row.n, str(row.exact),
                         _fmt(row.log_abs_exact), _fmt(row.log_abs_asym),
                         _fmt(row.rel_error)])


def compare_to_json(rows: list[CompareRow]) -> str:
    docs = [{"n": r.n, "exact": str(r.exact),
             "log_abs_exact": _fmt(r.log_abs_exact),
             "log_abs_asym": _fmt(r.log_abs_asym),
             "rel_error": _fmt(r.rel_error)} for r in rows]
    return json.dumps(docs, separators=(",", ":"), sort_keys=True)


def _fmt(x: float | None) -> str | None:
    if x is None:
        return None
    return f"{x:.15g}"
