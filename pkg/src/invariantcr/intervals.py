"""Complex intervals as rectangles of mpmath real intervals.

mpmath's own ``iv.mpc`` is incomplete (``conjugate`` is broken in 1.3), so a
rectangle of two ``iv.mpf`` values is used instead.  Every operation rounds
outward, so the result always contains the exact value.
"""

from __future__ import annotations

import threading
from contextlib import contextmanager
from fractions import Fraction

from mpmath import iv, libmp, mp

__all__ = ["ComplexInterval", "real_interval", "ivprec", "lower", "upper", "center"]

_PREC_LOCK = threading.RLock()


@contextmanager
def ivprec(bits: int):
    """Run a block with mpmath's interval context at ``bits`` of precision.

    The interval context keeps its precision in a module global, so the switch
    is serialized with a lock.
    """
    with _PREC_LOCK:
        saved = iv.prec
        iv.prec = bits
        try:
            yield
        finally:
            iv.prec = saved


def real_interval(value) -> "iv.mpf":
    """Enclose an int, Fraction or float in an ``iv.mpf`` at the current precision."""
    if isinstance(value, Fraction):
        return iv.mpf(value.numerator) / iv.mpf(value.denominator)
    if isinstance(value, int):
        return iv.mpf(value)
    if isinstance(value, float):
        return iv.mpf(value)
    return iv.mpf(value)


def lower(x) -> "mp.mpf":
    """Left endpoint of an ``iv.mpf`` as a plain mpf, without rounding."""
    return mp.make_mpf(x._mpi_[0])


def upper(x) -> "mp.mpf":
    return mp.make_mpf(x._mpi_[1])


def center(x) -> "mp.mpf":
    """Exact midpoint of an ``iv.mpf`` (``x.mid`` rounds to the ambient precision)."""
    a, b = x._mpi_
    return mp.make_mpf(libmp.mpf_shift(libmp.mpf_add(a, b), -1))


class ComplexInterval:
    __slots__ = ("re", "im")

    def __init__(self, re, im=0):
        self.re = re if isinstance(re, iv.mpf) else real_interval(re)
        self.im = im if isinstance(im, iv.mpf) else real_interval(im)

    @classmethod
    def coerce(cls, value) -> "ComplexInterval":
        if isinstance(value, ComplexInterval):
            return value
        if isinstance(value, complex):
            return cls(iv.mpf(value.real), iv.mpf(value.imag))
        if isinstance(value, tuple) and len(value) == 2:
            return cls(real_interval(value[0]), real_interval(value[1]))
        return cls(real_interval(value), iv.mpf(0))

    def __add__(self, other):
        other = ComplexInterval.coerce(other)
        return ComplexInterval(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = ComplexInterval.coerce(other)
        return ComplexInterval(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return ComplexInterval.coerce(other) - self

    def __neg__(self):
        return ComplexInterval(-self.re, -self.im)

    def __mul__(self, other):
        other = ComplexInterval.coerce(other)
        a, b, c, d = self.re, self.im, other.re, other.im
        return ComplexInterval(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        result = ComplexInterval(iv.mpf(1), iv.mpf(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conjugate(self) -> "ComplexInterval":
        return ComplexInterval(self.re, -self.im)

    def abs2(self):
        """Interval enclosing |z|^2."""
        return self.re**2 + self.im**2

    def contains(self, value) -> bool:
        value = complex(value)
        return value.real in self.re and value.imag in self.im

    def contains_zero(self) -> bool:
        return 0 in self.re and 0 in self.im

    @property
    def width(self):
        """Largest side length of the rectangle, as an mpf upper bound."""
        return max(upper(self.re.delta), upper(self.im.delta))

    def midpoint(self) -> complex:
        return complex(float(self.re.mid), float(self.im.mid))

    def __repr__(self):
        return f"ComplexInterval({self.re}, {self.im})"
