"""Exact complex-rational scalars for the bracket engines.

Closure decisions must not depend on float rank estimation, so bracket
coefficients stay exact (pairs of ``Fraction``) as long as every input is
rational.  Any float in the inputs demotes the whole computation to
ordinary complex arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from numbers import Rational


class QC:
    """Complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    # -- arithmetic ---------------------------------------------------
    def __add__(self, other):
        other = _lift(other)
        if isinstance(other, QC):
            return QC(self.re + other.re, self.im + other.im)
        return complex(self) + other

    __radd__ = __add__

    def __neg__(self):
        return QC(-self.re, -self.im)

    def __sub__(self, other):
        other = _lift(other)
        if isinstance(other, QC):
            return QC(self.re - other.re, self.im - other.im)
        return complex(self) - other

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _lift(other)
        if isinstance(other, QC):
            return QC(self.re * other.re - self.im * other.im,
                      self.re * other.im + self.im * other.re)
        return complex(self) * other

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _lift(other)
        if isinstance(other, QC):
            d = other.re * other.re + other.im * other.im
            if d == 0:
                raise ZeroDivisionError("division by exact zero")
            return self * QC(other.re / d, -other.im / d)
        return complex(self) / other

    def __rtruediv__(self, other):
        d = self.re * self.re + self.im * self.im
        if d == 0:
            raise ZeroDivisionError("division by exact zero")
        return _lift(other) * QC(self.re / d, -self.im / d)

    # -- structure ----------------------------------------------------
    def conjugate(self):
        return QC(self.re, -self.im)

    @property
    def is_zero(self):
        return self.re == 0 and self.im == 0

    @property
    def is_real(self):
        return self.im == 0

    def __eq__(self, other):
        other = _lift(other)
        if isinstance(other, QC):
            return self.re == other.re and self.im == other.im
        return complex(self) == other

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __repr__(self):
        if self.im == 0:
            return str(self.re)
        if self.re == 0:
            return f"{self.im}*i"
        return f"({self.re} + {self.im}*i)"


QC_I = QC(0, 1)


def _lift(x):
    """Promote ints and Fractions to QC; leave floats/complex alone."""
    if isinstance(x, QC):
        return x
    if isinstance(x, Rational):  # int, Fraction, bool
        return QC(x)
    return x


def coerce(x):
    """Canonical scalar: QC for rational input, complex otherwise."""
    if isinstance(x, QC):
        return x
    if isinstance(x, Rational):
        return QC(x)
    return complex(x)


def is_exact(x) -> bool:
    return isinstance(x, QC)


def conj_scalar(x):
    return x.conjugate() if isinstance(x, QC) else complex(x).conjugate()


def scalar_is_zero(x) -> bool:
    return x.is_zero if isinstance(x, QC) else x == 0
