"""Exact scalars: rationals (``fractions.Fraction``) and Gaussian rationals.

A Gaussian rational with zero imaginary part is always collapsed back to a
plain ``Fraction``, so equality between the two representations is
structural and ``isinstance(x, QI)`` means "genuinely non-real".
"""
from __future__ import annotations

from fractions import Fraction


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class QI:
    """Gaussian rational ``re + im*I`` with ``im != 0``.

    Use :func:`gaussian` to build values; it returns a ``Fraction`` when the
    imaginary part vanishes.
    """

    __slots__ = ("re", "im")

    def __init__(self, re, im):
        self.re = _frac(re)
        self.im = _frac(im)

    @staticmethod
    def _parts(x):
        if isinstance(x, QI):
            return x.re, x.im
        if isinstance(x, (int, Fraction)):
            return Fraction(x), Fraction(0)
        return None

    def __add__(self, other):
        p = QI._parts(other)
        if p is None:
            return NotImplemented
        return gaussian(self.re + p[0], self.im + p[1])

    __radd__ = __add__

    def __sub__(self, other):
        p = QI._parts(other)
        if p is None:
            return NotImplemented
        return gaussian(self.re - p[0], self.im - p[1])

    def __rsub__(self, other):
        p = QI._parts(other)
        if p is None:
            return NotImplemented
        return gaussian(p[0] - self.re, p[1] - self.im)

    def __mul__(self, other):
        p = QI._parts(other)
        if p is None:
            return NotImplemented
        a, b = self.re, self.im
        c, d = p
        return gaussian(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        p = QI._parts(other)
        if p is None:
            return NotImplemented
        return self * inverse(gaussian(*p))

    def __rtruediv__(self, other):
        p = QI._parts(other)
        if p is None:
            return NotImplemented
        return gaussian(*p) * inverse(self)

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return inverse(self) ** (-n)
        out = Fraction(1)
        base = self
        while n:
            if n & 1:
                out = base * out
            base = base * base
            n >>= 1
        return out

    def __neg__(self):
        return QI(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return True

    def __eq__(self, other):
        p = QI._parts(other)
        if p is None:
            return NotImplemented
        return self.re == p[0] and self.im == p[1]

    def __hash__(self):
        return hash((self.re, self.im))

    def conjugate(self):
        return QI(self.re, -self.im)

    def __repr__(self):
        return f"QI({self.re}, {self.im})"

    def __str__(self):
        return format_scalar(self)


I = QI(0, 1)


def gaussian(re, im=0):
    """Build ``re + im*I``; returns a ``Fraction`` when ``im == 0``."""
    im = _frac(im)
    if im == 0:
        return _frac(re)
    return QI(re, im)


def inverse(x):
    if isinstance(x, QI):
        n = x.re * x.re + x.im * x.im
        return gaussian(x.re / n, -x.im / n)
    x = _frac(x)
    if x == 0:
        raise ZeroDivisionError("inverse of zero scalar")
    return 1 / x


def conjugate(x):
    return x.conjugate() if isinstance(x, QI) else x


def is_real(x) -> bool:
    return not isinstance(x, QI)


def as_scalar(x):
    """Coerce ints/Fractions/QI to the canonical scalar representation."""
    if isinstance(x, QI):
        return x
    return _frac(x)


def format_scalar(x) -> str:
    """Canonical text for a scalar; the output re-parses to the same value."""
    if isinstance(x, QI):
        im = _imag_text(x.im)
        if x.re == 0:
            return im
        sign = "-" if x.im < 0 else "+"
        return f"({x.re} {sign} {_imag_text(abs(x.im))})"
    return str(_frac(x))


def _imag_text(im: Fraction) -> str:
    if im == 1:
        return "I"
    if im == -1:
        return "-I"
    return f"{im}*I"
