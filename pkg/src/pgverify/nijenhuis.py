"""(1,1)-tensors: Nijenhuis torsion, compatibility with a Poisson bivector,
and Poisson (quasi-)Nijenhuis verdicts.

``N`` acts on vector fields by ``(NX)^i = sum_j N[i][j] X^j``; its dual acts
on 1-forms by ``(N* xi)_j = sum_i xi_i N[i][j]``.
"""
from __future__ import annotations

from itertools import combinations

from .polyfield import (FORM, VECTOR, Algebroid, Chart, Derivation, PolyField, check_quasi_algebroid,
                        d_function, de_rham, is_poisson, koszul_bracket, sharp, sn_bracket,
                        vector_field, one_form, wedge3_sharp, interior)
from .kernel import inverse
from .report import CheckReport, aggregate, failed, passed, residual_check, skipped, timed


class TensorN:
    __slots__ = ("chart", "matrix")

    def __init__(self, chart: Chart, matrix):
        n = chart.dim
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise ValueError(f"N must be {n}x{n}")
        self.chart = chart
        self.matrix = tuple(tuple(chart.lift(v) for v in row) for row in matrix)

    @classmethod
    def scalar(cls, chart, c):
        n = chart.dim
        return cls(chart, [[c if i == j else 0 for j in range(n)] for i in range(n)])

    def apply(self, X: PolyField) -> PolyField:
        n = self.chart.dim
        comps = X.components()
        return vector_field(self.chart, [sum((self.matrix[i][j] * comps[j] for j in range(n)),
                                             self.chart.zero()) for i in range(n)])

    def apply_dual(self, xi: PolyField) -> PolyField:
        n = self.chart.dim
        comps = xi.components()
        return one_form(self.chart, [sum((comps[i] * self.matrix[i][j] for i in range(n)),
                                         self.chart.zero()) for j in range(n)])

    def __call__(self, X):
        return self.apply(X)


def _coord_field(chart, i):
    return PolyField.basis(chart, VECTOR, i)


def _coord_form(chart, i):
    return PolyField.basis(chart, FORM, i)


def torsion_on(N: TensorN, X: PolyField, Y: PolyField) -> PolyField:
    """``[NX,NY] - N([NX,Y] + [X,NY] - N[X,Y])``."""
    NX, NY = N.apply(X), N.apply(Y)
    inner = sn_bracket(NX, Y) + sn_bracket(X, NY) - N.apply(sn_bracket(X, Y))
    return sn_bracket(NX, NY) - N.apply(inner)


def torsion(N: TensorN):
    """``{(a, b): T(d_a, d_b)}`` for ``a < b``; all other entries follow by antisymmetry."""
    chart = N.chart
    return {(a, b): torsion_on(N, _coord_field(chart, a), _coord_field(chart, b))
            for a, b in combinations(range(chart.dim), 2)}


def torsion_residual(N: TensorN):
    for (a, b), v in torsion(N).items():
        if v:
            return f"T(d_{N.chart.names[a]}, d_{N.chart.names[b]}) = {v}"
    return None


# -- compatibility -------------------------------------------------------------

def pi_N_components(pi: PolyField, N: TensorN):
    """``pi_N^{ij} = pi(N* dx_i, dx_j)`` (full matrix, not assumed antisymmetric)."""
    chart = pi.chart
    n = chart.dim
    rows = []
    for i in range(n):
        v = sharp(pi, N.apply_dual(_coord_form(chart, i)))
        rows.append(v.components())
    return rows


def pi_N(pi: PolyField, N: TensorN) -> PolyField:
    """Bivector with ``pi_N# = pi# o N*``; raises if that map is not antisymmetric."""
    m = pi_N_components(pi, N)
    n = pi.chart.dim
    terms = {}
    for i in range(n):
        if m[i][i]:
            raise ValueError(f"pi# o N* is not antisymmetric (diagonal entry {i})")
        for j in range(i + 1, n):
            if m[i][j] + m[j][i]:
                raise ValueError(f"pi# o N* is not antisymmetric at ({i},{j})")
            terms[(i, j)] = m[i][j]
    return PolyField(pi.chart, VECTOR, 2, terms)


@timed
def check_compatible(pi: PolyField, N: TensorN) -> CheckReport:
    """``N pi# = pi# N*`` and the deformed-bracket identity on coordinate 1-forms."""
    chart = pi.chart
    n = chart.dim
    first = passed("N_pi_sharp")
    for i in range(n):
        dx = _coord_form(chart, i)
        res = N.apply(sharp(pi, dx)) - sharp(pi, N.apply_dual(dx))
        if res:
            first = failed("N_pi_sharp", f"dx_{chart.names[i]}: {res}")
            break
    if not first:
        return aggregate("compatible", [first, skipped("bracket_identity", "needs N pi# = pi# N*")])
    piN = pi_N(pi, N)
    second = passed("bracket_identity", note="checked on coordinate 1-forms")
    for i, j in combinations(range(n), 2):
        a, b = _coord_form(chart, i), _coord_form(chart, j)
        lhs = koszul_bracket(piN, a, b)
        rhs = (koszul_bracket(pi, N.apply_dual(a), b) + koszul_bracket(pi, a, N.apply_dual(b))
               - N.apply_dual(koszul_bracket(pi, a, b)))
        res = lhs - rhs
        if res:
            second = failed("bracket_identity",
                            f"(dx_{chart.names[i]}, dx_{chart.names[j]}): {res}")
            break
    return aggregate("compatible", [first, second])


# -- i_N and d_N ---------------------------------------------------------------------

def i_N_derivation(N: TensorN) -> Derivation:
    chart = N.chart
    return Derivation(chart, FORM, 1, lambda f: PolyField.zero(chart, FORM, 0),
                      [N.apply_dual(_coord_form(chart, i)) for i in range(chart.dim)])


def i_N(N: TensorN, alpha: PolyField) -> PolyField:
    """``(i_N a)(X_1..X_p) = sum_i a(X_1, .., N X_i, .., X_p)``."""
    if alpha.grade == 0:
        return PolyField.zero(alpha.chart, FORM, 0)
    return i_N_derivation(N)(alpha)


def d_N(N: TensorN, alpha: PolyField) -> PolyField:
    """``d_N = i_N d - d i_N``."""
    return i_N(N, de_rham(alpha)) - de_rham(i_N(N, alpha))


def d_N_derivation(N: TensorN) -> Derivation:
    """``d_N`` as a degree-1 derivation: ``d_N f = N* df``, ``d_N dx_i = -d(N* dx_i)``."""
    chart = N.chart
    return Derivation(chart, FORM, 2, lambda f: N.apply_dual(d_function(chart, f)),
                      [-de_rham(N.apply_dual(_coord_form(chart, i))) for i in range(chart.dim)])


# -- PN / PqN -------------------------------------------------------------------------

@timed
def check_pn(pi: PolyField, N: TensorN) -> CheckReport:
    tors = torsion_residual(N)
    reps = [is_poisson(pi),
            passed("torsion_free") if tors is None else failed("torsion_free", tors),
            check_compatible(pi, N)]
    if all(r.passed for r in reps):
        piN = pi_N(pi, N)
        reps.append(aggregate("bi_hamiltonian", [
            residual_check("[pi,pi]", sn_bracket(pi, pi)),
            residual_check("[pi,pi_N]", sn_bracket(pi, piN)),
            residual_check("[pi_N,pi_N]", sn_bracket(piN, piN)),
        ]))
    return aggregate("poisson_nijenhuis", reps)


def torsion_phi_residual(pi: PolyField, N: TensorN, phi: PolyField):
    chart = pi.chart
    for (a, b), T in torsion(N).items():
        X, Y = _coord_field(chart, a), _coord_field(chart, b)
        rhs = sharp(pi, interior(Y, interior(X, phi))) if phi.grade == 3 else \
            PolyField.zero(chart, VECTOR, 1)
        res = T - rhs
        if res:
            return f"(d_{chart.names[a]}, d_{chart.names[b]}): {res}"
    return None


@timed
def check_pqn(pi: PolyField, N: TensorN, phi: PolyField) -> CheckReport:
    """Poisson, compatible, ``d phi = 0``, ``d(i_N phi) = 0`` and
    ``T(X,Y) = pi#(phi(X,Y,.))`` on coordinate pairs."""
    tr = torsion_phi_residual(pi, N, phi)
    return aggregate("poisson_quasi_nijenhuis", [
        is_poisson(pi),
        check_compatible(pi, N),
        residual_check("phi_closed", de_rham(phi)),
        residual_check("i_N_phi_closed", de_rham(i_N(N, phi))),
        passed("torsion_is_phi") if tr is None else failed("torsion_is_phi", tr),
    ])


PROP_310_READINGS = ((1, "+wedge3_sharp"), (-1, "-wedge3_sharp"))


@timed
def check_prop_310(pi: PolyField, N: TensorN, phi: PolyField) -> CheckReport:
    """``[pi, pi_N] = 0`` and ``[pi_N, pi_N] = 2 pi#(phi)``.

    ``pi#(phi)`` is read as ``s * wedge3_sharp(pi, phi)`` with ``s = +1`` tried
    first, then ``s = -1``; ``details['reading']`` names the one that held.
    A failure under both readings is reported as a convention failure.
    """
    try:
        piN = pi_N(pi, N)
    except ValueError as exc:
        return failed("prop_310", str(exc))
    first = residual_check("[pi,pi_N]", sn_bracket(pi, piN))
    sq = sn_bracket(piN, piN)
    w = wedge3_sharp(pi, phi)
    second = None
    for s, label in PROP_310_READINGS:
        res = sq - w.scale(2 * s)
        if not res:
            second = passed("[pi_N,pi_N]", details={"reading": label})
            break
        if second is None:
            second = failed("[pi_N,pi_N]", res, note="convention failure: no sign reading holds",
                            details={"reading": None})
    return aggregate("prop_310", [first, second])


@timed
def check_lemma_pnij(delta: Derivation) -> CheckReport:
    """``[delta, d] = delta d + d delta`` vanishes on functions and coordinate 1-forms."""
    chart = delta.chart
    n = chart.dim
    samples = [PolyField.function(chart, chart.coordinate(i)) for i in range(n)]
    samples += [PolyField.function(chart, chart.coordinate(i) * chart.coordinate(j))
                for i in range(n) for j in range(i, n)]
    samples += [_coord_form(chart, i) for i in range(n)]
    samples += [_coord_form(chart, i).scale(chart.coordinate(j)) for i in range(n) for j in range(n)]
    for s in samples:
        res = delta(de_rham(s)) + de_rham(delta(s))
        if res:
            return failed("delta_d_commutator", f"on {s}: {res}")
    return passed("delta_d_commutator")


@timed
def check_qn_coherence(pi: PolyField, N: TensorN, phi: PolyField, functions=()) -> CheckReport:
    """``((T*M)_pi, d_N, phi)`` is a quasi-Lie bialgebroid (and ``phi`` closed)."""
    alg = Algebroid.cotangent(pi)
    rep = check_quasi_algebroid(alg, d_N_derivation(N), phi, functions)
    return aggregate("qn_coherence", [rep, residual_check("phi_closed", de_rham(phi))])


def solve_phi_from_torsion(pi: PolyField, N: TensorN) -> PolyField:
    """For constant invertible ``pi``, the 3-form with ``pi#(phi(X,Y,.)) = T(X,Y)``.

    Raises ``ValueError`` when ``pi`` is not constant or the resulting array
    is not totally antisymmetric.
    """
    chart = pi.chart
    n = chart.dim
    P = [sharp(pi, _coord_form(chart, i)).components() for i in range(n)]  # P[i][j] = pi^{ij}
    if not all(v.is_constant() for row in P for v in row):
        raise ValueError("pi must have constant coefficients")
    Pinv = inverse([[v.constant_value() for v in row] for row in P])
    vals = {}
    for (a, b), T in torsion(N).items():
        t = T.components()
        # pi#(xi)^j = sum_i xi_i P[i][j]  =>  xi = t * Pinv
        xi = [sum((t[j] * Pinv[j][c] for j in range(n)), chart.zero()) for c in range(n)]
        for c in range(n):
            vals[(a, b, c)] = xi[c]
    terms = {}
    for a, b, c in combinations(range(n), 3):
        v = vals[(a, b, c)]
        if not (vals[(b, c, a)] == v and vals[(a, c, b)] == -v):
            raise ValueError("torsion is not of the form pi#(phi(X,Y,.))")
        terms[(a, b, c)] = v
    for (a, b, c), v in vals.items():
        if c in (a, b) and v:
            raise ValueError("torsion is not of the form pi#(phi(X,Y,.))")
    return PolyField(chart, FORM, 3, terms)
