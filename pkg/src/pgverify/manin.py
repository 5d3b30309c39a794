"""Manin pairs and quasi-triples at the Lie algebra level.

A quasi-triple ``(d, g, h)`` determines ``(g, F, phi)``: lift ``xi in g*``
to ``xi_hat in h`` through the pairing, then

* ``F`` is dual to the h-component of ``[xi_hat, eta_hat]_d``, and
* ``phi(xi, eta, zeta) = (pr_g [xi_hat, eta_hat]_d | zeta_hat)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .bialgebra import QuasiBialgebra, check_quasi_bialgebra, drinfeld_double
from .exterior import KDifferential, Multivector
from .kernel import det, inverse, rank
from .lie_core import BilinearForm, LieAlgebra, check_form, validate_lie_algebra
from .report import CheckReport, aggregate, failed, passed, timed


class ConventionError(RuntimeError):
    """Extraction produced data that fails the quasi-bialgebra axioms."""


@dataclass(frozen=True)
class ManinData:
    d: LieAlgebra
    pairing: BilinearForm
    g_basis: tuple
    h_basis: tuple
    g_names: tuple = ()

    def __post_init__(self):
        if self.d.dim % 2:
            raise ValueError("a Manin pair needs an even-dimensional double")
        object.__setattr__(self, "g_basis", tuple(tuple(v) for v in self.g_basis))
        object.__setattr__(self, "h_basis", tuple(tuple(v) for v in self.h_basis))
        if not self.g_names:
            object.__setattr__(self, "g_names", tuple(f"g{i + 1}" for i in range(len(self.g_basis))))

    @property
    def n(self):
        return self.d.dim // 2


def _combined(m: ManinData):
    """Columns are g_basis then h_basis (coordinates in d)."""
    cols = list(m.g_basis) + list(m.h_basis)
    N = m.d.dim
    return [[cols[a][i] for a in range(len(cols))] for i in range(N)]


@timed
def validate_manin(m: ManinData) -> CheckReport:
    n = m.n
    reports = [validate_lie_algebra(m.d), check_form(m.d, m.pairing)]
    if len(m.g_basis) != n or len(m.h_basis) != n:
        reports.append(failed("shape", f"need {n} g and {n} h vectors"))
        return aggregate("manin", reports)
    B = _combined(m)
    comp = passed("complement") if det(B) != 0 else failed(
        "complement", "g_basis + h_basis is not a basis of d")
    reports.append(comp)
    gmat = [list(v) for v in m.g_basis]
    closure = passed("g_subalgebra")
    for a, b in combinations(range(n), 2):
        br = m.d.bracket(m.g_basis[a], m.g_basis[b])
        if rank(gmat + [br]) > rank(gmat):
            closure = failed("g_subalgebra", f"[{m.g_names[a]}, {m.g_names[b]}] leaves g")
            break
    reports.append(closure)
    for label, basis in (("g_lagrangian", m.g_basis), ("h_isotropic", m.h_basis)):
        rep = passed(label)
        for a in range(n):
            for b in range(a, n):
                v = m.pairing(basis[a], basis[b])
                if v != 0:
                    rep = failed(label, f"pairing({a},{b}) = {v}")
                    break
            if not rep:
                break
        reports.append(rep)
    return aggregate("manin", reports, note="signature (n,n) is not checked")


def _extract(m: ManinData):
    n = m.n
    B = _combined(m)
    Binv = inverse(B)
    # P[a][b] = (g_a | h_b); hat_b = sum_c h_c Pinv[c][b] gives (g_a | hat_b) = delta_ab
    P = [[m.pairing(m.g_basis[a], m.h_basis[b]) for b in range(n)] for a in range(n)]
    Pinv = inverse(P)
    N = m.d.dim
    hats = []
    for b in range(n):
        v = [Fraction(0)] * N
        for c in range(n):
            coef = Pinv[c][b]
            if coef:
                v = [x + coef * y for x, y in zip(v, m.h_basis[c])]
        hats.append(v)

    def split(v):
        coords = [sum((Binv[r][i] * v[i] for i in range(N)), Fraction(0)) for r in range(N)]
        gpart = coords[:n]
        hcoords = coords[n:]
        # h_c = sum_b P[b][c] hat_b
        hat_coords = [sum((P[b][c] * hcoords[c] for c in range(n)), Fraction(0)) for b in range(n)]
        return gpart, hat_coords

    # structure constants of g in g_basis
    c = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            gpart, hpart = split(m.d.bracket(m.g_basis[a], m.g_basis[b]))
            if any(hpart):
                raise ValueError("g_basis does not span a subalgebra")
            c[a][b] = gpart
    g = LieAlgebra(m.g_names, c)
    F_imgs = [dict() for _ in range(n)]
    phi_terms = {}
    gvec = {}
    for a, b in combinations(range(n), 2):
        gpart, hpart = split(m.d.bracket(hats[a], hats[b]))
        for k, v in enumerate(hpart):
            if v:
                F_imgs[k][(a, b)] = v
        gvec[(a, b)] = gpart
    for a, b, cc in combinations(range(n), 3):
        gpart = gvec[(a, b)]
        gv = [Fraction(0)] * N
        for k, v in enumerate(gpart):
            if v:
                gv = [x + v * y for x, y in zip(gv, m.g_basis[k])]
        val = m.pairing(gv, hats[cc])
        if val:
            phi_terms[(a, b, cc)] = val
    F = KDifferential(g, 2, [Multivector(g, 2, t) for t in F_imgs])
    return QuasiBialgebra(F, Multivector(g, 3, phi_terms)), hats


def extract_quasi(m: ManinData, validate=True) -> QuasiBialgebra:
    """``(g, F, phi)`` from a Manin quasi-triple; the result passes the quasi axioms.

    Raises ``ValueError`` if the data is not a valid quasi-triple and
    :class:`ConventionError` if the extracted triple fails
    :func:`check_quasi_bialgebra`.
    """
    if validate:
        rep = validate_manin(m)
        if not rep.passed:
            raise ValueError(f"invalid Manin data: {rep.residual_witness or rep.note}")
    q, _ = _extract(m)
    rep = check_quasi_bialgebra(q)
    if not rep.passed:
        raise ConventionError(f"extracted quasi-bialgebra fails: {rep.residual_witness}")
    return q


def h_bracket_on_dual(m: ManinData) -> LieAlgebra:
    """Bracket of h transported to g* via the pairing (Manin triple case)."""
    q, hats = _extract(m)
    n = m.n
    B = inverse(_combined(m))
    P = [[m.pairing(m.g_basis[a], m.h_basis[b]) for b in range(n)] for a in range(n)]
    N = m.d.dim
    c = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            v = m.d.bracket(hats[a], hats[b])
            coords = [sum((B[r][i] * v[i] for i in range(N)), Fraction(0)) for r in range(N)]
            if any(coords[:n]):
                raise ValueError("h is not a subalgebra")
            c[a][b] = [sum((P[k][cc] * coords[n + cc] for cc in range(n)), Fraction(0))
                       for k in range(n)]
    return LieAlgebra([f"{x}*" for x in m.g_names], c)


# -- the d = g + g double ----------------------------------------------------------

def direct_sum_double(L: LieAlgebra, K: BilinearForm, h_scale=Fraction(1, 2)) -> ManinData:
    """``d = g + g`` with ``((u1,u2)|(v1,v2)) = K(u1,v1) - K(u2,v2)``,
    ``g`` the diagonal and ``h = h_scale * anti-diagonal``."""
    n = L.dim
    z = Fraction(0)
    c = [[[z] * (2 * n) for _ in range(2 * n)] for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            for k in range(n):
                c[i][j][k] = L.c[i][j][k]
                c[n + i][n + j][n + k] = L.c[i][j][k]
    names = [f"{b}_1" for b in L.basis_names] + [f"{b}_2" for b in L.basis_names]
    d = LieAlgebra(names, c)
    pm = [[z] * (2 * n) for _ in range(2 * n)]
    for i in range(n):
        for j in range(n):
            pm[i][j] = K.matrix[i][j]
            pm[n + i][n + j] = -K.matrix[i][j]
    g_basis, h_basis = [], []
    for i in range(n):
        v = [z] * (2 * n)
        v[i], v[n + i] = Fraction(1), Fraction(1)
        g_basis.append(v)
        w = [z] * (2 * n)
        w[i], w[n + i] = h_scale, -h_scale
        h_basis.append(w)
    return ManinData(d, BilinearForm.of(pm), g_basis, h_basis, tuple(L.basis_names))


def _is_direct_sum_double(m: ManinData):
    n = m.n
    d = m.d
    for i in range(2 * n):
        for j in range(2 * n):
            for k in range(2 * n):
                same = (i < n) == (j < n) == (k < n)
                v = d.c[i][j][k]
                if not same and v != 0:
                    return None
                if i < n and j < n and k < n and v != d.c[n + i][n + j][n + k]:
                    return None
    pm = m.pairing.matrix
    for i in range(n):
        for j in range(n):
            if pm[i][n + j] != 0 or pm[n + i][j] != 0 or pm[n + i][n + j] != -pm[i][j]:
                return None
    for i, v in enumerate(m.g_basis):
        want = [Fraction(int(k == i or k == n + i)) for k in range(2 * n)]
        if list(v) != want:
            return None
    c = [[[d.c[i][j][k] for k in range(n)] for j in range(n)] for i in range(n)]
    L = LieAlgebra(m.g_names, c)
    return L, BilinearForm.of([[pm[i][j] for j in range(n)] for i in range(n)])


def phi_quarter(m: ManinData) -> Multivector:
    """``phi(u,v,w) = 1/4 K(u,[v,w])`` as an element of ``Lambda^3 g`` via K-duality."""
    shape = _is_direct_sum_double(m)
    if shape is None:
        raise ValueError("Manin data is not the direct-sum double of g with diagonal g")
    L, K = shape
    n = L.dim
    Kinv = inverse([list(r) for r in K.matrix])
    # u_a is K-dual to the coordinate functional xi^a: K(u_a, e_b) = delta_ab
    u = [[Kinv[j][a] for j in range(n)] for a in range(n)]
    terms = {}
    for a, b, c in combinations(range(n), 3):
        v = Fraction(1, 4) * K(u[a], L.bracket(u[b], u[c]))
        if v:
            terms[(a, b, c)] = v
    return Multivector(L, 3, terms)


def trilinear_quarter(L: LieAlgebra, K: BilinearForm, x, y, z):
    """``1/4 K(x, [y, z])`` on g-vectors."""
    return Fraction(1, 4) * K(x, L.bracket(y, z))


def twisted_double(delta: KDifferential, A) -> ManinData:
    """Drinfeld double of ``(g, delta)`` with complement ``{xi + A xi}``.

    ``A`` is an antisymmetric n x n matrix; ``A = 0`` gives the Manin triple.
    """
    d, pm = drinfeld_double(delta)
    n = delta.parent.dim
    g_basis, h_basis = [], []
    for i in range(n):
        v = [Fraction(0)] * (2 * n)
        v[i] = Fraction(1)
        g_basis.append(v)
    for a in range(n):
        w = [Fraction(0)] * (2 * n)
        w[n + a] = Fraction(1)
        for b in range(n):
            w[b] = w[b] + A[a][b]
        h_basis.append(w)
    return ManinData(d, BilinearForm.of(pm), g_basis, h_basis, tuple(delta.parent.basis_names))
