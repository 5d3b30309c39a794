"""Sparse multivariate (Laurent) polynomials over exact scalars."""
from __future__ import annotations

from fractions import Fraction

from .scalars import QI, as_scalar, format_scalar


def _is_scalar(x) -> bool:
    return isinstance(x, (int, Fraction, QI))


def grlex_key(exps):
    """Sort key putting terms in graded-lexicographic order, largest first."""
    return (-sum(exps), tuple(-e for e in exps))


class Poly:
    """Polynomial in a fixed, ordered list of variables.

    ``terms`` maps exponent tuples to nonzero scalars.  In Laurent mode
    exponents may be negative.  Instances are treated as immutable.
    """

    __slots__ = ("vars", "terms", "laurent")

    def __init__(self, vars, terms=None, laurent=False):
        self.vars = tuple(vars)
        self.laurent = bool(laurent)
        clean = {}
        n = len(self.vars)
        for exps, c in (terms or {}).items():
            exps = tuple(exps)
            if len(exps) != n:
                raise ValueError(f"exponent vector {exps} has wrong length for {self.vars}")
            if not self.laurent and any(e < 0 for e in exps):
                raise ValueError("negative exponent outside Laurent mode")
            c = as_scalar(c)
            if c != 0:
                clean[exps] = c
        self.terms = clean

    # -- constructors -----------------------------------------------------
    @classmethod
    def const(cls, vars, c, laurent=False):
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c}, laurent)

    @classmethod
    def var(cls, vars, name, laurent=False):
        vars = tuple(vars)
        i = vars.index(name)
        e = [0] * len(vars)
        e[i] = 1
        return cls(vars, {tuple(e): 1}, laurent)

    @classmethod
    def _raw(cls, vars, terms, laurent):
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p.laurent = laurent
        return p

    def zero(self):
        return Poly._raw(self.vars, {}, self.laurent)

    def one(self):
        return Poly._raw(self.vars, {(0,) * len(self.vars): Fraction(1)}, self.laurent)

    def lift(self, c):
        """Embed a scalar into this polynomial's ring."""
        return Poly.const(self.vars, c, self.laurent)

    # -- coercion ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.vars != self.vars:
                raise ValueError(f"mismatched variable lists {self.vars} vs {other.vars}")
            return other
        if _is_scalar(other):
            return self.lift(other)
        return None

    # -- arithmetic --------------------------------------------------------
    def __add__(self, other):
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for e, c in o.terms.items():
            v = out.get(e, 0) + c
            if v == 0:
                out.pop(e, None)
            else:
                out[e] = v
        return Poly._raw(self.vars, out, self.laurent or o.laurent)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw(self.vars, {e: -c for e, c in self.terms.items()}, self.laurent)

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
            other = as_scalar(other)
            if other == 0:
                return self.zero()
            return Poly._raw(self.vars, {e: c * other for e, c in self.terms.items()}, self.laurent)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        out = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in o.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                v = out.get(e, 0) + c1 * c2
                if v == 0:
                    out.pop(e, None)
                else:
                    out[e] = v
        return Poly._raw(self.vars, out, self.laurent or o.laurent)

    __rmul__ = __mul__

    def __truediv__(self, other):
        """Division by a nonzero scalar, or by a monomial in Laurent mode."""
        if _is_scalar(other):
            other = as_scalar(other)
            if other == 0:
                raise ZeroDivisionError("division by zero")
            return self * (1 / other)
        o = self._coerce(other)
        if o is None:
            return NotImplemented
        if not o.terms:
            raise ZeroDivisionError("division by zero polynomial")
        if o.is_constant():
            return self / o.constant_value()
        if len(o.terms) == 1 and (self.laurent or o.laurent):
            (e, c), = o.terms.items()
            inv = Poly._raw(self.vars, {tuple(-x for x in e): 1 / c}, True)
            return self * inv
        q = self.divide_exact(o)
        if q is None:
            raise ValueError("polynomial division is not exact")
        return q

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.one() / (self ** (-n))
        out = self.one()
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def diff(self, i: int) -> "Poly":
        """Partial derivative with respect to variable index ``i``."""
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k == 0:
                continue
            ne = e[:i] + (k - 1,) + e[i + 1:]
            out[ne] = c * k
        return Poly._raw(self.vars, out, self.laurent)

    def divide_exact(self, other: "Poly"):
        """Return ``self / other`` if ``other`` divides exactly, else ``None``."""
        if self.laurent or other.laurent:
            return None
        if not other.terms:
            raise ZeroDivisionError("division by zero polynomial")
        lead_e = min(other.terms, key=grlex_key)
        lead_c = other.terms[lead_e]
        rem = self
        quot = {}
        while rem.terms:
            e = min(rem.terms, key=grlex_key)
            shift = tuple(a - b for a, b in zip(e, lead_e))
            if any(s < 0 for s in shift):
                return None
            c = rem.terms[e] / lead_c
            quot[shift] = quot.get(shift, 0) + c
            rem = rem - Poly._raw(self.vars, {shift: c}, False) * other
        return Poly(self.vars, quot, False)

    def subs(self, point):
        """Evaluate at ``point`` (a sequence of scalars, one per variable)."""
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, k in zip(point, e):
                if k:
                    t = t * (x ** k)
            total = total + t
        return total

    def conjugate(self):
        from .scalars import conjugate
        return Poly._raw(self.vars, {e: conjugate(c) for e, c in self.terms.items()}, self.laurent)

    # -- predicates --------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_value(self):
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def __eq__(self, other):
        if _is_scalar(other):
            other = self.lift(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    # -- printing ----------------------------------------------------------
    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=grlex_key):
            c = self.terms[e]
            mono = "*".join(
                v if k == 1 else f"{v}^{k}" for v, k in zip(self.vars, e) if k
            )
            neg = (isinstance(c, Fraction) and c < 0) or (
                isinstance(c, QI) and c.re == 0 and c.im < 0)
            a = -c if neg else c
            if not mono:
                body = format_scalar(a)
            elif a == 1:
                body = mono
            else:
                body = f"{format_scalar(a)}*{mono}"
            if not parts:
                parts.append(("-" if neg else "") + body)
            else:
                parts.append((" - " if neg else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"Poly({self.vars}, {str(self)!r})"
