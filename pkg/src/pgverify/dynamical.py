"""Dynamical r-matrices ``r: h* -> Lambda^2 g`` with rational coefficients.

Coordinates ``lambda_i`` on ``h*`` are dual to the chosen basis ``h_i`` of
the abelian subalgebra: ``lambda_i(h_j) = delta_ij``.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exterior import Multivector, schouten, wedge
from .kernel import RatFunc, inverse, parse_expression
from .lie_core import ChevalleyData, LieAlgebra
from .report import CheckReport, aggregate, failed, passed, skipped, timed

NUMERIC_NOTE = "numeric, non-certifying"


class DynamicalR:
    __slots__ = ("parent", "cartan", "lambda_names", "r")

    def __init__(self, parent: LieAlgebra, cartan, r: Multivector, lambda_names=None):
        cartan = tuple(cartan)
        for a, b in combinations(cartan, 2):
            if any(parent.bracket_basis(a, b).values()):
                raise ValueError(f"[{parent.basis_names[a]}, {parent.basis_names[b]}] != 0: "
                                 "h is not abelian")
        if r.terms and r.grade != 2:
            raise ValueError("r(lambda) must be a bivector")
        self.parent = parent
        self.cartan = cartan
        self.lambda_names = tuple(lambda_names or (f"l{i + 1}" for i in range(len(cartan))))
        if len(self.lambda_names) != len(cartan):
            raise ValueError("one coordinate per Cartan element")
        self.r = r if r.terms else Multivector.zero(parent, 2)
        self.r = self.r.map_coefficients(self._lift)

    def _lift(self, c):
        if isinstance(c, RatFunc):
            if c.vars != self.lambda_names:
                raise ValueError(f"coefficient variables {c.vars} != {self.lambda_names}")
            return c
        return RatFunc.const(self.lambda_names, c)

    @classmethod
    def from_table(cls, parent: LieAlgebra, cartan, table, lambda_names=None):
        """``table`` maps ``(i, j)`` basis pairs to expressions in the ``lambda`` names."""
        cartan = [parent.index(c) if isinstance(c, str) else c for c in cartan]
        names = tuple(lambda_names or (f"l{i + 1}" for i in range(len(cartan))))
        r = Multivector.zero(parent, 2)
        for (i, j), v in table.items():
            i = parent.index(i) if isinstance(i, str) else i
            j = parent.index(j) if isinstance(j, str) else j
            if isinstance(v, str):
                v = parse_expression(v, names, mode="ratfunc")
            elif not isinstance(v, RatFunc):
                v = RatFunc.const(names, v)
            r = r + Multivector.basis(parent, i, j).scale(v)
        return cls(parent, cartan, r, names)

    def scale(self, t):
        return DynamicalR(self.parent, self.cartan, self.r.scale(t), self.lambda_names)

    def __add__(self, other):
        return DynamicalR(self.parent, self.cartan, self.r + other.r, self.lambda_names)


def cdybe_residual(dr: DynamicalR) -> Multivector:
    """``sum_i h_i ^ dr/dlambda_i + 1/2 [r, r]`` with RatFunc coefficients."""
    L = dr.parent
    out = schouten(dr.r, dr.r).scale(Fraction(1, 2))
    if not out.terms:
        out = Multivector.zero(L, 3)
    for i, hi in enumerate(dr.cartan):
        deriv = dr.r.map_coefficients(lambda c, i=i: c.diff(i))
        out = out + wedge(Multivector.basis(L, hi), deriv)
    return out


def _invariance_witness(m: Multivector):
    L = m.parent
    for i in range(L.dim):
        res = schouten(Multivector.basis(L, i), m)
        if res:
            return f"[{L.basis_names[i]}, residual] = {res}"
    return None


@timed
def check_dynamical(dr: DynamicalR) -> CheckReport:
    """Pass iff the residual is constant over ``h*`` and ``g``-invariant."""
    res = cdybe_residual(dr)
    for idx, c in sorted(res.terms.items()):
        if not c.is_constant():
            mono = "^".join(dr.parent.basis_names[i] for i in idx)
            return aggregate("dynamical_r_matrix", [
                failed("constant", f"coefficient of {mono} is {c}"),
                skipped("invariant", "residual is not constant"),
            ])
    const = res.map_coefficients(lambda c: c.constant_value())
    w = _invariance_witness(const)
    inv = passed("invariant") if w is None else failed("invariant", w)
    return aggregate("dynamical_r_matrix", [passed("constant"), inv],
                     details={"residual": str(const)})


# -- the rational family ---------------------------------------------------------------

def _root_values(data: ChevalleyData):
    """``alpha(h_k)`` for each positive root, read off ``[h_k, e_alpha]``."""
    L = data.algebra
    out = []
    for e in data.e:
        out.append([L.bracket_basis(hk, e).get(e, Fraction(0)) for hk in data.h])
    return out


def root_pairing(data: ChevalleyData, lambda_names=None):
    """``(alpha, lambda)`` as linear RatFuncs, using the form restricted to h."""
    k = data.rank
    names = tuple(lambda_names or (f"l{i + 1}" for i in range(k)))
    L = data.algebra
    G = [[data.form(L.basis_vector(a), L.basis_vector(b)) for b in data.h] for a in data.h]
    Ginv = inverse(G)
    lam = [RatFunc.var(names, x) for x in names]
    # lambda^sharp = sum_j (G^-1 lambda)_j h_j
    sharp = [sum((Ginv[j][m] * lam[m] for m in range(k)), RatFunc.const(names, 0))
             for j in range(k)]
    return [sum((av[j] * sharp[j] for j in range(k)), RatFunc.const(names, 0))
            for av in _root_values(data)], names


def rational_family(data: ChevalleyData, lambda_names=None) -> DynamicalR:
    """``r(lambda) = sum_alpha lambda_alpha / (alpha, lambda) e_alpha ^ f_alpha``,
    ``lambda_alpha = 1/(e_alpha, f_alpha)``."""
    pairs, names = root_pairing(data, lambda_names)
    L = data.algebra
    r = Multivector.zero(L, 2)
    for e, f, p, ap in zip(data.e, data.f, data.pairing, pairs):
        r = r + Multivector.basis(L, e, f).scale(RatFunc.const(names, Fraction(1) / p) / ap)
    return DynamicalR(L, data.h, r, names)


# -- numeric spot checks (non-certifying) ---------------------------------------------

def coth_family(data: ChevalleyData):
    """Entries ``{(e_alpha, f_alpha): lambda -> lambda_alpha coth((alpha, lambda))}``."""
    import mpmath
    pairs, _ = root_pairing(data)
    out = {}
    for e, f, p, ap in zip(data.e, data.f, data.pairing, pairs):
        coeffs = [ap.num.diff(i).constant_value() / ap.den.constant_value()
                  for i in range(data.rank)]
        lam_a = Fraction(1) / p

        def entry(lam, coeffs=coeffs, lam_a=lam_a):
            x = mpmath.fsum(mpmath.mpf(c.numerator) / c.denominator * v for c, v in zip(coeffs, lam))
            return mpmath.mpf(lam_a.numerator) / lam_a.denominator * mpmath.coth(x)
        out[(e, f)] = entry
    return out


def numeric_residual(parent: LieAlgebra, cartan, entries, point):
    """Residual at ``point`` for callable bivector entries; derivatives by mpmath."""
    import mpmath
    point = [mpmath.mpf(x.numerator) / x.denominator if isinstance(x, Fraction) else mpmath.mpf(x)
             for x in point]
    r = Multivector.zero(parent, 2)
    for (a, b), fn in entries.items():
        r = r + Multivector.basis(parent, a, b).scale(fn(point))
    out = schouten(r, r).scale(mpmath.mpf(1) / 2)
    for i, hi in enumerate(cartan):
        d = Multivector.zero(parent, 2)
        for (a, b), fn in entries.items():
            def along(t, fn=fn, i=i):
                p = list(point)
                p[i] = t
                return fn(p)
            d = d + Multivector.basis(parent, a, b).scale(mpmath.diff(along, point[i]))
        out = out + wedge(Multivector.basis(parent, hi), d)
    return out


@timed
def check_dynamical_numeric(parent: LieAlgebra, cartan, entries, points, tol=1e-20) -> CheckReport:
    """Spot check at sample points: residual values agree and are invariant up to ``tol``."""
    import mpmath
    mpmath.mp.dps = max(mpmath.mp.dps, 40)
    vals = [numeric_residual(parent, cartan, entries, p) for p in points]
    base = vals[0]
    keys = set().union(*(v.terms for v in vals))
    for p, v in zip(points[1:], vals[1:]):
        for k in keys:
            diff = abs(v.terms.get(k, 0) - base.terms.get(k, 0))
            if diff > tol:
                return failed("dynamical_numeric", f"residual differs at {list(map(str, p))}: {diff}",
                              note=NUMERIC_NOTE)
    for i in range(parent.dim):
        res = schouten(Multivector.basis(parent, i), base)
        big = max((abs(c) for c in res.terms.values()), default=0)
        if big > tol:
            return failed("dynamical_numeric", f"[{parent.basis_names[i]}, residual] ~ {big}",
                          note=NUMERIC_NOTE)
    shown = {"^".join(parent.basis_names[j] for j in k): mpmath.nstr(c, 15)
             for k, c in sorted(base.terms.items()) if abs(c) > tol}
    return passed("dynamical_numeric", note=NUMERIC_NOTE, details={"residual": shown})
