from itertools import combinations

import pytest
import sympy
from hypothesis import given, settings

from pgverify.nijenhuis import (PROP_310_READINGS, TensorN, check_compatible, check_lemma_pnij,
                                check_pn, check_pqn, check_prop_310, check_qn_coherence, d_N,
                                d_N_derivation, i_N, pi_N, solve_phi_from_torsion, torsion,
                                torsion_on, torsion_residual)
from pgverify.polyfield import (FORM, Chart, PolyField, bivector, de_rham_derivation, sn_bracket,
                                wedge)
from conftest import polyfields, polys, pqn4, sympy_bracket_matrix, to_sympy

XY = Chart(["x", "y"])
X4 = Chart(["x1", "x2", "x3", "x4"])


def tensor(chart, rows):
    return TensorN(chart, [[chart.parse(str(v)) for v in row] for row in rows])


# -- sympy oracles -----------------------------------------------------------------

def sym_matrix(N):
    syms = sympy.symbols(N.chart.names)
    return syms, sympy.Matrix([[to_sympy(v, syms) for v in row] for row in N.matrix])


def sym_torsion(N):
    """``T(d_a, d_b)`` components via sympy vector-field brackets."""
    syms, M = sym_matrix(N)
    n = len(syms)

    def br(X, Y):
        return [sum(X[k] * sympy.diff(Y[i], syms[k]) - Y[k] * sympy.diff(X[i], syms[k])
                    for k in range(n)) for i in range(n)]

    def app(V):
        return list(M * sympy.Matrix(V))

    out = {}
    for a, b in combinations(range(n), 2):
        X = [int(i == a) for i in range(n)]
        Y = [int(i == b) for i in range(n)]
        NX, NY = app(X), app(Y)
        inner = [u + v - w for u, v, w in zip(br(NX, Y), br(X, NY), app(br(X, Y)))]
        T = [sympy.expand(u - w) for u, w in zip(br(NX, NY), app(inner))]
        out[(a, b)] = T
    return out


def sym_koszul(P, syms, alpha, beta):
    """``L_{P alpha} beta - L_{P beta} alpha - d P(alpha, beta)`` with ``(P xi)^j = xi_i P^{ij}``."""
    n = len(syms)

    def sh(xi):
        return [sum(xi[i] * P[i, j] for i in range(n)) for j in range(n)]

    def lie(X, b):
        return [sum(X[k] * sympy.diff(b[j], syms[k]) + b[k] * sympy.diff(X[k], syms[j])
                    for k in range(n)) for j in range(n)]

    pab = sum(alpha[i] * P[i, j] * beta[j] for i in range(n) for j in range(n))
    return [sympy.expand(u - v - sympy.diff(pab, syms[j]))
            for j, (u, v) in enumerate(zip(lie(sh(alpha), beta), lie(sh(beta), alpha)))]


def sym_compatible(pi, N):
    syms, P = sympy_bracket_matrix(pi)
    _, M = sym_matrix(N)
    n = len(syms)
    # N pi# = pi# N*: as matrices acting on covector columns, pi# = P^T and N* = M^T
    if sympy.expand(M * P.T - P.T * M.T) != sympy.zeros(n, n):
        return False
    PN = (P.T * M.T).T  # pi_N^{ij} = (pi# N* dx_i)^j
    for i, j in combinations(range(n), 2):
        a = [int(k == i) for k in range(n)]
        b = [int(k == j) for k in range(n)]
        Na, Nb = list(M.T * sympy.Matrix(a)), list(M.T * sympy.Matrix(b))
        lhs = sym_koszul(PN, syms, a, b)
        ab = sym_koszul(P, syms, a, b)
        rhs = [u + v - w for u, v, w in zip(sym_koszul(P, syms, Na, b), sym_koszul(P, syms, a, Nb),
                                            list(M.T * sympy.Matrix(ab)))]
        if any(sympy.expand(u - v) != 0 for u, v in zip(lhs, rhs)):
            return False
    return True


def poly_components(V, chart):
    syms = sympy.symbols(chart.names)
    return [sympy.expand(to_sympy(c, syms)) for c in V.components()]


# -- torsion -----------------------------------------------------------------------

@pytest.mark.parametrize("rows", [[[3, 0], [0, 3]], [["x", 0], [0, "x"]], [[0, "x"], [0, 0]],
                                  [["x", 0], [0, "y"]], [["y", "x"], [1, "x*y"]]])
def test_torsion_matches_oracle(rows):
    N = tensor(XY, rows)
    want = sym_torsion(N)
    got = torsion(N)
    for key, T in want.items():
        assert poly_components(got[key], XY) == T


def test_scalar_tensors_are_torsion_free():
    assert torsion_residual(TensorN.scalar(XY, 3)) is None
    assert torsion_residual(TensorN.scalar(XY, XY.var("x"))) is None
    for rows in ([[0, "x"], [0, 0]], [["y", "x"], [1, "x*y"]]):
        N = tensor(XY, rows)
        zero = all(c == 0 for T in sym_torsion(N).values() for c in T)
        assert (torsion_residual(N) is None) == zero
    assert torsion_residual(tensor(XY, [["y", "x"], [1, "x*y"]])) is not None


@settings(max_examples=20, deadline=None)
@given(polys(("x", "y")), polyfields(XY, 1), polyfields(XY, 1))
def test_torsion_is_tensorial(f, X, Y):
    N = tensor(XY, [["y", "x"], [1, "x*y"]])
    assert torsion_on(N, X.scale(f), Y) == torsion_on(N, X, Y).scale(f)
    assert torsion_on(N, X, Y) == -torsion_on(N, Y, X)


# -- compatibility and pi_N ------------------------------------------------------------

@pytest.mark.parametrize("rows", [[[2, 0], [0, 2]], [["x", 0], [0, "x"]], [["x", 0], [0, "y"]]])
def test_compatibility_matches_oracle(rows):
    pi = bivector(XY, {(0, 1): 1})
    N = tensor(XY, rows)
    assert check_compatible(pi, N).passed == sym_compatible(pi, N)


def test_compatibility_r4_diagonal():
    pi = bivector(X4, {(0, 1): 1, (2, 3): 1})
    N = tensor(X4, [["x1", 0, 0, 0], [0, "x1", 0, 0], [0, 0, "x3", 0], [0, 0, 0, "x3"]])
    assert check_compatible(pi, N).passed == sym_compatible(pi, N)
    rep = check_pn(pi, N)
    expected = sym_compatible(pi, N) and all(all(c == 0 for c in T)
                                              for T in sym_torsion(N).values())
    assert rep.passed == expected


def test_pi_N_examples():
    pi = bivector(XY, {(0, 1): 1})
    assert pi_N(pi, TensorN.scalar(XY, 5)) == pi.scale(5)
    assert pi_N(pi, TensorN.scalar(XY, XY.var("x"))) == bivector(XY, {(0, 1): XY.var("x")})
    assert not pi_N(pi, TensorN.scalar(XY, 0))
    with pytest.raises(ValueError):
        pi_N(pi, tensor(XY, [["x", 0], [0, "y"]]))


# -- i_N and d_N --------------------------------------------------------------------

def test_i_N_examples():
    N = TensorN.scalar(XY, XY.var("x"))
    x = XY.var("x")
    assert not i_N(N, PolyField.function(XY, x))
    assert i_N(N, PolyField.basis(XY, FORM, 1)) == PolyField.basis(XY, FORM, 1, coeff=x)
    assert i_N(N, PolyField.basis(XY, FORM, 0, 1)) == PolyField.basis(XY, FORM, 0, 1, coeff=x + x)


def test_d_N_examples():
    N = TensorN.scalar(XY, XY.var("x"))
    x = XY.var("x")
    assert d_N(N, PolyField.function(XY, x)) == PolyField.basis(XY, FORM, 0, coeff=x)
    assert not d_N(N, PolyField.function(XY, 1))


N_GENERIC = TensorN(XY, [[XY.parse("y"), XY.parse("x")], [XY.one(), XY.parse("x*y")]])


@settings(max_examples=20, deadline=None)
@given(polyfields(XY, 0, FORM), polyfields(XY, 1, FORM), polyfields(XY, 2, FORM))
def test_d_N_derivation_equals_composite(f, a, b):
    D = d_N_derivation(N_GENERIC)
    for w in (f, a, b):
        assert D(w) == d_N(N_GENERIC, w)


@settings(max_examples=20, deadline=None)
@given(polys(("x", "y")), polyfields(XY, 1, FORM), polyfields(XY, 1, FORM))
def test_i_N_and_d_N_are_derivations(g, a, b):
    assert i_N(N_GENERIC, wedge(a, b)) == wedge(i_N(N_GENERIC, a), b) + wedge(a, i_N(N_GENERIC, b))
    G = PolyField.function(XY, g)
    lhs = d_N(N_GENERIC, wedge(G, a))
    rhs = wedge(d_N(N_GENERIC, G), a) + wedge(G, d_N(N_GENERIC, a))
    assert lhs == rhs


def test_torsion_shows_in_d_N_squared():
    pi, N, phi = pqn4()
    D = d_N_derivation(N)
    chart = N.chart
    monos = [chart.parse(m) for m in ("x1", "x2", "x3", "x4", "x2*x3", "x3*x4", "x2^2")]
    assert any(D(D(PolyField.function(chart, m))) for m in monos)
    t = TensorN.scalar(XY, XY.var("x"))
    Dt = d_N_derivation(t)
    assert all(not Dt(Dt(PolyField.function(XY, XY.parse(m)))) for m in ("x", "y", "x*y", "y^2"))


def test_lemma_pnij():
    assert check_lemma_pnij(d_N_derivation(TensorN.scalar(XY, XY.var("x")))).passed
    assert check_lemma_pnij(de_rham_derivation(XY)).passed
    # d_N always anticommutes with d (d_N = [i_N, d]); torsion does not enter
    _, N, _ = pqn4()
    assert check_lemma_pnij(d_N_derivation(N)).passed


# -- PN / PqN verdicts ---------------------------------------------------------------

def test_pn_scalar_instances():
    pi = bivector(XY, {(0, 1): 1})
    assert check_pn(pi, TensorN.scalar(XY, 3)).passed
    rep = check_pn(pi, TensorN.scalar(XY, XY.var("x")))
    assert rep.passed
    assert rep.find("bi_hamiltonian").passed
    piN = pi_N(pi, TensorN.scalar(XY, XY.var("x")))
    assert piN == bivector(XY, {(0, 1): XY.var("x")})
    for P, Q in ((pi, pi), (pi, piN), (piN, piN)):
        assert not sn_bracket(P, Q)


def test_pqn_reduces_to_pn():
    pi = bivector(XY, {(0, 1): 1})
    N = TensorN.scalar(XY, XY.var("x"))
    zero = PolyField.zero(XY, FORM, 3)
    assert check_pqn(pi, N, zero).passed == check_pn(pi, N).passed
    bad = tensor(XY, [[0, "x"], [0, 0]])
    assert check_pqn(pi, bad, zero).passed == check_pn(pi, bad).passed


def test_constructed_pqn_instance():
    pi, N, phi = pqn4()
    assert torsion_residual(N) is not None
    assert solve_phi_from_torsion(pi, N) == phi
    assert check_pqn(pi, N, phi).passed
    assert not check_pn(pi, N).passed


def test_prop_310_on_the_instance():
    pi, N, phi = pqn4()
    rep = check_prop_310(pi, N, phi)
    assert rep.passed
    assert rep.find("[pi_N,pi_N]").details["reading"] == "-wedge3_sharp"
    assert [label for _, label in PROP_310_READINGS] == ["+wedge3_sharp", "-wedge3_sharp"]
    # converse direction on the same nondegenerate instance
    assert check_pqn(pi, N, phi).passed


def test_prop_310_for_pn_triples():
    pi = bivector(XY, {(0, 1): 1})
    rep = check_prop_310(pi, TensorN.scalar(XY, XY.var("x")), PolyField.zero(XY, FORM, 3))
    assert rep.passed


def test_prop_310_convention_failure_is_reported():
    pi, N, phi = pqn4()
    rep = check_prop_310(pi, N, phi.scale(3))
    assert rep.status == "fail"
    assert "convention failure" in rep.find("[pi_N,pi_N]").note


def test_qn_coherence():
    pi, N, phi = pqn4()
    fs = ["x1*x2", "x3*x4^2", "x2+x3"]
    assert check_qn_coherence(pi, N, phi, [N.chart.parse(f) for f in fs]).passed
    assert not check_qn_coherence(pi, N, -phi).passed


def test_solve_phi_rejects_nonconstant_pi():
    pi = bivector(XY, {(0, 1): XY.var("x")})
    with pytest.raises(ValueError):
        solve_phi_from_torsion(pi, TensorN.scalar(XY, 1))


def test_tensor_shape_checked():
    with pytest.raises(ValueError):
        TensorN(XY, [[1, 0]])
