"""Rational functions with lazy reduction.

No multivariate gcd is computed.  Equality is decided by cross
multiplication; cheap simplifications (constant denominators, exact
division, shared denominators) keep expression swell in check.
"""
from __future__ import annotations

from fractions import Fraction

from .poly import Poly, grlex_key
from .scalars import QI, as_scalar, inverse


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QI))


class RatFunc:
    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        if den is None:
            den = num.one()
        if num.vars != den.vars:
            raise ValueError("numerator and denominator use different variables")
        if not den.terms:
            raise ZeroDivisionError("rational function with zero denominator")
        self.num, self.den = _normalize(num, den)

    @property
    def vars(self):
        return self.num.vars

    @classmethod
    def const(cls, vars, c):
        return cls(Poly.const(vars, c))

    @classmethod
    def var(cls, vars, name):
        return cls(Poly.var(vars, name))

    def lift(self, c):
        return RatFunc(self.num.lift(c))

    def zero(self):
        return RatFunc(self.num.zero())

    def one(self):
        return RatFunc(self.num.one())

    def _coerce(self, other):
        if isinstance(other, RatFunc):
            if other.vars != self.vars:
                raise ValueError(f"mismatched variable lists {self.vars} vs {other.vars}")
            return other
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError(f"mismatched variable lists {self.vars} vs {other.vars}")
            return RatFunc(other)
        if _is_scalar(other):
            return self.lift(other)
        return None

    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        if o.den.is_constant() or self.den.is_constant():
            return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)
        q = self.den.divide_exact(o.den)
        if q is not None:
            return RatFunc(self.num + o.num * q, self.den)
        q = o.den.divide_exact(self.den)
        if q is not None:
            return RatFunc(self.num * q + o.num, o.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        if _is_scalar(other):
            return RatFunc(self.num * other, self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if _is_scalar(other):
            return RatFunc(self.num * inverse(as_scalar(other)), self.den)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.num.terms:
            raise ZeroDivisionError("division by zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.one() / (self ** (-n))
        return RatFunc(self.num ** n, self.den ** n)

    def diff(self, i: int) -> "RatFunc":
        n, d = self.num, self.den
        if d.is_constant():
            return RatFunc(n.diff(i), d)
        return RatFunc(n.diff(i) * d - n * d.diff(i), d * d)

    def __bool__(self):
        return bool(self.num.terms)

    def is_constant(self) -> bool:
        """True iff every partial derivative vanishes (reduction independent)."""
        n, d = self.num, self.den
        return all(not (n.diff(i) * d - n * d.diff(i)) for i in range(len(self.vars)))

    def constant_value(self):
        if not self.is_constant():
            raise ValueError("rational function is not constant")
        if not self.num.terms:
            return Fraction(0)
        # num = c * den; compare leading coefficients
        e = min(self.den.terms, key=grlex_key)
        return self.num.terms.get(e, Fraction(0)) / self.den.terms[e]

    def subs(self, point):
        return self.num.subs(point) / self.den.subs(point)

    def __eq__(self, other):
        if _is_scalar(other) or isinstance(other, Poly):
            other = self._coerce(other)
        if not isinstance(other, RatFunc):
            return NotImplemented
        return self.vars == other.vars and self.num * other.den == other.num * self.den

    __hash__ = None

    def __str__(self):
        if self.den == 1:
            return str(self.num)
        return f"({self.num})/({self.den})"

    def __repr__(self):
        return f"RatFunc({str(self)!r})"


def _normalize(num: Poly, den: Poly):
    if not num.terms:
        return num, den.one()
    if den.is_constant():
        return num / den.constant_value(), den.one()
    q = num.divide_exact(den)
    if q is not None:
        return q, den.one()
    lead = den.terms[min(den.terms, key=grlex_key)]
    if lead != 1:
        num, den = num / lead, den / lead
    return num, den
