"""Cobrackets, Lie bialgebras, r-matrices and quasi-Lie bialgebras.

The pairing between ``Lambda^2 g*`` and ``Lambda^2 g`` is the determinant
pairing ``<xi^eta, X^Y> = xi(X) eta(Y) - xi(Y) eta(X)`` with no 1/2.
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .exterior import KDifferential, Multivector, extend_derivation, schouten, wedge
from .lie_core import ChevalleyData, LieAlgebra, compact_basis
from .kernel.scalars import I as IMAG, inverse, is_real
from .report import CheckReport, aggregate, failed, passed, timed


class Cobracket(KDifferential):
    """Linear map ``g -> Lambda^2 g``; acts on ``Lambda g`` as a 2-differential."""

    __slots__ = ()

    def __init__(self, parent: LieAlgebra, images):
        super().__init__(parent, 2, images)

    @classmethod
    def coboundary(cls, r: Multivector) -> "Cobracket":
        d = KDifferential.ad(r)
        return cls(d.parent, d.images)

    @classmethod
    def zero(cls, parent):
        return cls(parent, [Multivector.zero(parent, 2)] * parent.dim)

    def scale(self, c):
        return Cobracket(self.parent, [m.scale(c) for m in self.images])


def _basis_pairs(L):
    return combinations(range(L.dim), 2)


@timed
def check_cocycle(delta: KDifferential) -> CheckReport:
    """``delta[X,Y] = [delta X, Y] + [X, delta Y]`` on all basis pairs."""
    L = delta.parent
    for i, j in _basis_pairs(L):
        X, Y = Multivector.basis(L, i), Multivector.basis(L, j)
        res = delta(schouten(X, Y)) - schouten(delta(X), Y) - schouten(X, delta(Y))
        if res:
            return failed("cocycle", f"({L.basis_names[i]},{L.basis_names[j]}): {res}")
    return passed("cocycle")


def check_cocycle_adjoint(delta: KDifferential) -> CheckReport:
    """The 1-cocycle form ``delta[X,Y] = ad_X delta(Y) - ad_Y delta(X)``.

    ``ad_X`` acts on ``Lambda^2 g`` as the derivation extending the bracket.
    """
    L = delta.parent
    for i, j in _basis_pairs(L):
        X, Y = Multivector.basis(L, i), Multivector.basis(L, j)
        adX = KDifferential.ad(X)
        adY = KDifferential.ad(Y)
        res = delta(schouten(X, Y)) - adX(delta(Y)) + adY(delta(X))
        if res:
            return failed("cocycle_adjoint", f"({L.basis_names[i]},{L.basis_names[j]}): {res}")
    return passed("cocycle_adjoint")


@timed
def check_delta_squared(delta: KDifferential) -> CheckReport:
    """``delta(delta X) = 0`` for basis ``X``; higher degrees follow by Leibniz."""
    L = delta.parent
    note = "checked on degree 1; higher degrees follow by Leibniz"
    for i in range(L.dim):
        res = extend_derivation(delta, delta.images[i])
        if res:
            return failed("delta_squared", f"{L.basis_names[i]}: {res}", note=note)
    return passed("delta_squared", note=note)


def check_bialgebra(delta: KDifferential) -> CheckReport:
    return aggregate("lie_bialgebra", [check_cocycle(delta), check_delta_squared(delta)])


def dual_bracket(delta: KDifferential, names=None) -> LieAlgebra:
    """Bracket on ``g*`` with ``<[xi_a, xi_b], e_k> = <xi_a ^ xi_b, delta e_k>``.

    Jacobi is not guaranteed; run ``validate_lie_algebra`` on the result.
    """
    L = delta.parent
    n = L.dim
    names = names or [f"{b}*" for b in L.basis_names]
    c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
    for k, img in enumerate(delta.images):
        for (a, b), v in img.terms.items():
            c[a][b][k] = v
            c[b][a][k] = -v
    return LieAlgebra(names, c)


# -- r-matrices ---------------------------------------------------------------

@timed
def check_r_matrix(r: Multivector) -> CheckReport:
    """Pass iff ``[r,r]`` is ad-invariant; ``details['triangular']`` iff ``[r,r] = 0``."""
    if r.grade != 2 and r.terms:
        raise ValueError("an r-matrix has grade 2")
    L = r.parent
    s = schouten(r, r)
    details = {"triangular": not s, "schouten_square": str(s)}
    for i in range(L.dim):
        res = schouten(Multivector.basis(L, i), s)
        if res:
            return failed("r_matrix", f"[{L.basis_names[i]}, [r,r]] = {res}", details=details)
    return passed("r_matrix", details=details)


def chevalley_r_matrix(data: ChevalleyData) -> Multivector:
    """``r = sum_alpha lambda_alpha e_alpha ^ f_alpha`` with ``lambda = 1/(e,f)``."""
    L = data.algebra
    r = Multivector.zero(L, 2)
    for a, b, p in zip(data.e, data.f, data.pairing):
        if p == 0:
            raise ValueError("zero pairing (e_alpha, f_alpha)")
        r = r + Multivector.basis(L, a, b).scale(inverse(p))
    return r


def compact_r_matrix(data: ChevalleyData):
    """``r_hat = 1/2 sum lambda_alpha X_alpha ^ Y_alpha`` in the compact basis.

    Returns ``(r_hat, compact_basis)``.
    """
    cb = compact_basis(data)
    K = cb.algebra
    r = Multivector.zero(K, 2)
    for x, y, p in zip(cb.x, cb.y, data.pairing):
        r = r + Multivector.basis(K, x, y).scale(Fraction(1, 2) * inverse(p))
    return r, cb


def pushforward(m: Multivector, matrix, target: LieAlgebra) -> Multivector:
    """Image of ``m`` under ``b_a -> sum_i matrix[i][a] e_i`` (basis change)."""
    n = target.dim
    cols = [Multivector.from_vector(target, [matrix[i][a] for i in range(n)]) for a in range(n)]
    out = Multivector.zero(target, m.grade)
    for idx, c in m.terms.items():
        acc = Multivector.scalar(target, Fraction(1))
        for a in idx:
            acc = wedge(acc, cols[a])
        out = out + acc.scale(c)
    return out


@timed
def check_compact_r_matrix(data: ChevalleyData) -> CheckReport:
    """``r_hat`` has real coefficients and equals ``sqrt(-1) r`` after the basis change."""
    r = chevalley_r_matrix(data)
    r_hat, cb = compact_r_matrix(data)
    real = passed("real_coefficients")
    for idx, c in r_hat.terms.items():
        if not is_real(c):
            real = failed("real_coefficients", f"coefficient {c} at {idx}")
            break
    consts = passed("real_structure_constants")
    if any(not is_real(v) for row in cb.algebra.c for col in row for v in col):
        consts = failed("real_structure_constants", "compact-basis constants are not real")
    image = pushforward(r_hat, cb.matrix, data.algebra)
    res = image - r.scale(IMAG)
    ident = passed("r_hat_equals_i_r") if not res else failed("r_hat_equals_i_r", res)
    return aggregate("compact_r_matrix", [consts, real, ident],
                     details={"r_hat": str(r_hat)})


# -- quasi-Lie bialgebras ---------------------------------------------------------

class QuasiBialgebra:
    __slots__ = ("parent", "delta", "phi")

    def __init__(self, delta: KDifferential, phi: Multivector):
        if phi.terms and phi.grade != 3:
            raise ValueError("phi must be a trivector")
        if delta.k != 2:
            raise ValueError("delta must be a 2-differential")
        self.parent = delta.parent
        self.delta = delta
        self.phi = phi if phi.terms else Multivector.zero(delta.parent, 3)


@timed
def check_quasi_bialgebra(q: QuasiBialgebra) -> CheckReport:
    """Cocycle, ``delta^2 X = [phi, X]`` on the basis, and ``delta phi = 0``."""
    L = q.parent
    d = q.delta
    sq = passed("delta_squared_is_ad_phi")
    for i in range(L.dim):
        X = Multivector.basis(L, i)
        res = d(d(X)) - schouten(q.phi, X)
        if res:
            sq = failed("delta_squared_is_ad_phi", f"{L.basis_names[i]}: {res}")
            break
    dphi = d(q.phi)
    closed = passed("delta_phi") if not dphi else failed("delta_phi", dphi)
    return aggregate("quasi_bialgebra", [check_cocycle(d), sq, closed])


def coadjoint_literal_residual(delta: KDifferential):
    """First nonzero residual of "ad*_X is a derivation of the dual bracket", or None.

    This literal reading fails for the standard sl_2 bialgebra, so it is a
    diagnostic only; :func:`check_double_compatibility` is the real test.
    ``ad*_X xi = -xi o ad_X``.
    """
    L = delta.parent
    D = dual_bracket(delta)
    n = L.dim

    def coad(i, xi):
        return [-sum((xi[j] * L.c[i][k][j] for j in range(n)), Fraction(0)) for k in range(n)]

    for i in range(n):
        for a, b in combinations(range(n), 2):
            xa, xb = D.basis_vector(a), D.basis_vector(b)
            lhs = coad(i, D.bracket(xa, xb))
            rhs = [u + v for u, v in zip(D.bracket(coad(i, xa), xb), D.bracket(xa, coad(i, xb)))]
            res = [u - v for u, v in zip(lhs, rhs)]
            if any(res):
                return f"X={L.basis_names[i]}, ({D.basis_names[a]},{D.basis_names[b]}): {res}"
    return None


def drinfeld_double(delta: KDifferential):
    """``g + g*`` with ``[X, xi] = ad*_X xi - ad*_xi X`` and the canonical pairing.

    Returns ``(algebra, pairing_matrix)``; basis ``e_1..e_n, e_1*..e_n*``.
    """
    L = delta.parent
    D = dual_bracket(delta)
    n = L.dim
    z = Fraction(0)
    c = [[[z] * (2 * n) for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c[i][j][k] = L.c[i][j][k]
                c[n + i][n + j][n + k] = D.c[i][j][k]
    for i in range(n):
        for a in range(n):
            v = [z] * (2 * n)
            for j in range(n):
                v[n + j] = v[n + j] - L.c[i][j][a]
            for b in range(n):
                v[b] = v[b] + D.c[a][b][i]
            c[i][n + a] = v
            c[n + a][i] = [-x for x in v]
    names = list(L.basis_names) + list(D.basis_names)
    pairing = [[Fraction(int(abs(i - j) == n)) for j in range(2 * n)] for i in range(2 * n)]
    return LieAlgebra(names, c), pairing


@timed
def check_double_compatibility(delta: KDifferential) -> CheckReport:
    """``(g, g*)`` compatibility: the double bracket on ``g + g*`` satisfies Jacobi
    and the canonical pairing is invariant."""
    from .lie_core import BilinearForm, check_form, validate_lie_algebra
    d, pairing = drinfeld_double(delta)
    return aggregate("double_compatibility",
                     [validate_lie_algebra(d), check_form(d, BilinearForm.of(pairing))])
