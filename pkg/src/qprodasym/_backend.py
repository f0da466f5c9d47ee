"""Floating backends: IEEE double (cmath) and extended precision (mpmath).

The numeric kernels in :mod:`transform` and :mod:`asymptotics` are written
against this small interface so the CLI's ``--precision`` flag can swap the
arithmetic underneath without duplicating the formulas.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction


class DoubleBackend:
    name = "double"
    pi = math.pi
    j = 1j
    # relative tail target used when sizing adaptive series
    eps = 1e-18

    @staticmethod
    def exp(z):
        return cmath.exp(z) if isinstance(z, complex) else math.exp(z)

    @staticmethod
    def log(z):
        return cmath.log(z) if isinstance(z, complex) else math.log(z)

    @staticmethod
    def sqrt(z):
        return cmath.sqrt(z) if isinstance(z, complex) else math.sqrt(z)

    @staticmethod
    def real(x):
        """Convert an exact number (int/Fraction) to the backend real type."""
        return float(x)

    @staticmethod
    def complex_(re, im=0.0):
        return complex(re, im)

    @staticmethod
    def native(z):
        """Adopt a Python complex as a backend value."""
        return complex(z)

    @staticmethod
    def to_complex(z) -> complex:
        return complex(z)

    @staticmethod
    def abs(z):
        return abs(z)


class ExtendedBackend:
    name = "extended"

    def __init__(self, dps: int = 40):
        import mpmath

        self.mp = mpmath
        if mpmath.mp.dps < dps:
            mpmath.mp.dps = dps
        self.pi = mpmath.pi
        self.j = mpmath.mpc(0, 1)
        self.eps = mpmath.mpf(10) ** (-dps - 5)
        self.exp = mpmath.exp
        self.log = mpmath.log
        self.sqrt = mpmath.sqrt

    def real(self, x):
        if isinstance(x, Fraction):
            return self.mp.mpf(x.numerator) / x.denominator
        return self.mp.mpf(x)

    def complex_(self, re, im=0):
        return self.mp.mpc(re, im)

    def native(self, z):
        return self.mp.mpc(z)

    def to_complex(self, z) -> complex:
        return complex(z)

    def abs(self, z):
        return self.mp.fabs(z)


DOUBLE = DoubleBackend()
_EXTENDED: ExtendedBackend | None = None


def get_backend(precision: str = "double"):
    global _EXTENDED
    if precision == "double":
        return DOUBLE
    if precision == "extended":
        if _EXTENDED is None:
            _EXTENDED = ExtendedBackend()
        return _EXTENDED
    raise ValueError(f"unknown precision {precision!r} (use 'double' or 'extended')")
