"""Finite-dimensional Lie algebras given by structure constants.

Vectors are plain lists of scalars in the algebra's basis.  The invariant
form attached to the ``sl_n`` constructor is the trace form
``K(x, y) = tr(xy)``, which normalizes ``(E_ij, E_ji) = 1``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations

from .kernel import det, inverse, solve
from .kernel.scalars import I as IMAG, conjugate, is_real
from .report import CheckReport, aggregate, failed, passed, timed


class LieAlgebra:
    """``[e_i, e_j] = sum_k c[i][j][k] e_k``.

    ``matrices`` optionally realizes each basis element as a square matrix
    (a tuple of tuples of scalars); the group-level checks need it.
    """

    def __init__(self, basis_names, c, matrices=None):
        self.basis_names = tuple(basis_names)
        self.dim = len(self.basis_names)
        n = self.dim
        if len(c) != n or any(len(row) != n or any(len(v) != n for v in row) for row in c):
            raise ValueError(f"structure constant table must be {n}x{n}x{n}")
        self.c = tuple(tuple(tuple(v) for v in row) for row in c)
        self._sparse = {}
        for i in range(n):
            for j in range(n):
                d = {k: v for k, v in enumerate(self.c[i][j]) if v != 0}
                if d:
                    self._sparse[(i, j)] = d
        self.matrices = None if matrices is None else tuple(matrices)

    @classmethod
    def from_brackets(cls, basis_names, brackets, matrices=None):
        """``brackets`` maps ``(i, j)`` to a coefficient list; mirrors are synthesized."""
        n = len(basis_names)
        c = [[[Fraction(0)] * n for _ in range(n)] for _ in range(n)]
        for (i, j), vec in brackets.items():
            for k, v in enumerate(vec):
                c[i][j][k] = v
                c[j][i][k] = -v
        return cls(basis_names, c, matrices)

    @classmethod
    def abelian(cls, n, names=None):
        names = names or [f"x{i + 1}" for i in range(n)]
        z = Fraction(0)
        return cls(names, [[[z] * n for _ in range(n)] for _ in range(n)])

    def index(self, name: str) -> int:
        return self.basis_names.index(name)

    def basis_vector(self, i):
        v = [Fraction(0)] * self.dim
        v[i] = Fraction(1)
        return v

    def bracket_basis(self, i, j) -> dict:
        """Sparse ``{k: c_ij^k}``."""
        return self._sparse.get((i, j), {})

    def bracket(self, x, y):
        out = [Fraction(0)] * self.dim
        for i, a in enumerate(x):
            if a == 0:
                continue
            for j, b in enumerate(y):
                if b == 0:
                    continue
                for k, v in self.bracket_basis(i, j).items():
                    out[k] = out[k] + a * b * v
        return out

    def is_abelian(self) -> bool:
        return not self._sparse

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, basis={self.basis_names})"


def vec_str(L: LieAlgebra, v) -> str:
    parts = [f"({c})*{L.basis_names[i]}" for i, c in enumerate(v) if c != 0]
    return " + ".join(parts) or "0"


@timed
def validate_lie_algebra(L: LieAlgebra) -> CheckReport:
    """Antisymmetry and Jacobi identity, expanded on all basis triples."""
    n = L.dim
    anti = passed("antisymmetry")
    for i in range(n):
        for j in range(i, n):
            for k in range(n):
                r = L.c[i][j][k] + L.c[j][i][k]
                if r != 0:
                    anti = failed("antisymmetry", f"c[{i}][{j}][{k}] + c[{j}][{i}][{k}] = {r}")
                    break
            if not anti:
                break
        if not anti:
            break
    jac = passed("jacobi")
    for i, j, k in combinations(range(n), 3):
        x, y, z = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
        res = [a + b + c for a, b, c in zip(
            L.bracket(L.bracket(x, y), z),
            L.bracket(L.bracket(y, z), x),
            L.bracket(L.bracket(z, x), y))]
        if any(v != 0 for v in res):
            names = L.basis_names
            jac = failed("jacobi", f"({names[i]},{names[j]},{names[k]}): {vec_str(L, res)}")
            break
    return aggregate("lie_algebra", [anti, jac])


def ad_matrix(L: LieAlgebra, x):
    """Matrix of ``ad_x`` in the basis: column ``j`` is ``[x, e_j]``."""
    cols = [L.bracket(x, L.basis_vector(j)) for j in range(L.dim)]
    return [[cols[j][i] for j in range(L.dim)] for i in range(L.dim)]


# -- bilinear forms ----------------------------------------------------------

@dataclass(frozen=True)
class BilinearForm:
    matrix: tuple

    @classmethod
    def of(cls, rows):
        return cls(tuple(tuple(r) for r in rows))

    def __call__(self, x, y):
        n = len(self.matrix)
        return sum((x[i] * self.matrix[i][j] * y[j]
                    for i in range(n) for j in range(n) if x[i] != 0 and y[j] != 0),
                   Fraction(0))

    def scaled(self, s):
        return BilinearForm.of([[s * v for v in row] for row in self.matrix])


def check_form(L: LieAlgebra, K: BilinearForm) -> CheckReport:
    """Symmetry, ad-invariance ``K([x,y],z) + K(y,[x,z]) = 0``, nondegeneracy."""
    n = L.dim
    m = K.matrix
    sym = passed("symmetric")
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] != m[j][i]:
                sym = failed("symmetric", f"K[{i}][{j}] != K[{j}][{i}]")
                break
    inv = passed("invariant")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                x, y, z = L.basis_vector(i), L.basis_vector(j), L.basis_vector(k)
                r = K(L.bracket(x, y), z) + K(y, L.bracket(x, z))
                if r != 0:
                    inv = failed("invariant", f"(i,j,k)=({i},{j},{k}): {r}")
                    break
            if not inv:
                break
        if not inv:
            break
    d = det([list(r) for r in m])
    nondeg = passed("nondegenerate", details={"det": str(d)}) if d != 0 else failed(
        "nondegenerate", "det K = 0")
    return aggregate("bilinear_form", [sym, inv, nondeg])


# -- sl_n ----------------------------------------------------------------------

def _unit(n, i, j):
    return tuple(tuple(Fraction(int(r == i and c == j)) for c in range(n)) for r in range(n))


def _mat_mul(a, b):
    n = len(a)
    return tuple(tuple(sum((a[i][k] * b[k][j] for k in range(n)), Fraction(0))
                       for j in range(n)) for i in range(n))


def _mat_sub(a, b):
    return tuple(tuple(x - y for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def _trace(a):
    return sum((a[i][i] for i in range(len(a))), Fraction(0))


def matrix_coordinates(matrices, m):
    """Coordinates of matrix ``m`` in the span of ``matrices`` (exact solve)."""
    n = len(m)
    flat = [[mat[r][c] for mat in matrices] for r in range(n) for c in range(n)]
    rhs = [[m[r][c]] for r in range(n) for c in range(n)]
    # least-squares-free exact solve: normal equations are nonsingular for independent columns
    ata = [[sum(flat[k][i] * flat[k][j] for k in range(len(flat))) for j in range(len(matrices))]
           for i in range(len(matrices))]
    atb = [[sum(flat[k][i] * rhs[k][0] for k in range(len(flat)))] for i in range(len(matrices))]
    coords = [row[0] for row in solve(ata, atb)]
    recon = [[sum((coords[a] * matrices[a][r][c] for a in range(len(matrices))), Fraction(0))
              for c in range(n)] for r in range(n)]
    if any(recon[r][c] != m[r][c] for r in range(n) for c in range(n)):
        raise ValueError("matrix is not in the span of the basis")
    return coords


def matrix_lie_algebra(names, matrices) -> LieAlgebra:
    """Lie algebra spanned by ``matrices`` under the commutator."""
    dim = len(matrices)
    c = [[None] * dim for _ in range(dim)]
    for i in range(dim):
        for j in range(dim):
            comm = _mat_sub(_mat_mul(matrices[i], matrices[j]), _mat_mul(matrices[j], matrices[i]))
            c[i][j] = matrix_coordinates(matrices, comm)
    return LieAlgebra(names, c, matrices)


def gl(n: int) -> LieAlgebra:
    names, mats = [], []
    for i in range(n):
        for j in range(n):
            names.append(f"E{i + 1}{j + 1}")
            mats.append(_unit(n, i, j))
    return matrix_lie_algebra(names, mats)


@dataclass(frozen=True)
class ChevalleyData:
    """Positive roots ``(i, j)`` with ``i < j``; ``e[a]``/``f[a]`` are basis indices."""
    algebra: LieAlgebra
    roots: tuple
    e: tuple
    f: tuple
    h: tuple
    pairing: tuple
    form: BilinearForm

    @property
    def rank(self):
        return len(self.h)

    def with_form(self, K: BilinearForm) -> "ChevalleyData":
        """Same data with pairings recomputed under another invariant form."""
        L = self.algebra
        pairing = tuple(K(L.basis_vector(a), L.basis_vector(b)) for a, b in zip(self.e, self.f))
        return ChevalleyData(L, self.roots, self.e, self.f, self.h, pairing, K)


def chevalley_sl(n: int):
    """``sl_n`` with basis ``E_ij`` (i != j) then ``H_i = E_ii - E_{i+1,i+1}``.

    Returns ``(algebra, chevalley_data, trace_form)``.
    """
    if n < 2:
        raise ValueError("sl_n needs n >= 2")
    names, mats, index = [], [], {}
    for i in range(n):
        for j in range(n):
            if i != j:
                index[(i, j)] = len(names)
                names.append(f"E{i + 1}{j + 1}")
                mats.append(_unit(n, i, j))
    h = []
    for i in range(n - 1):
        h.append(len(names))
        names.append(f"H{i + 1}")
        mats.append(_mat_sub(_unit(n, i, i), _unit(n, i + 1, i + 1)))
    if n == 2:
        names = ["e", "f", "h"]
    L = matrix_lie_algebra(names, mats)
    K = BilinearForm.of([[_trace(_mat_mul(a, b)) for b in mats] for a in mats])
    roots = tuple((i, j) for i in range(n) for j in range(i + 1, n))
    e = tuple(index[r] for r in roots)
    f = tuple(index[(j, i)] for i, j in roots)
    pairing = tuple(K.matrix[a][b] for a, b in zip(e, f))
    return L, ChevalleyData(L, roots, e, f, tuple(h), pairing, K), K


def sl2():
    return chevalley_sl(2)


def change_basis(L: LieAlgebra, M, names) -> LieAlgebra:
    """Structure constants in the basis ``b_a = sum_i M[i][a] e_i``."""
    n = L.dim
    Minv = inverse([list(r) for r in M])
    cols = [[M[i][a] for i in range(n)] for a in range(n)]
    c = [[None] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            br = L.bracket(cols[a], cols[b])
            c[a][b] = [sum((Minv[k][i] * br[i] for i in range(n)), Fraction(0)) for k in range(n)]
    return LieAlgebra(names, c)


@dataclass(frozen=True)
class CompactBasis:
    """Change of basis to ``{X_a, Y_a, t_i}``; ``matrix`` columns are new vectors."""
    matrix: tuple
    names: tuple
    x: tuple
    y: tuple
    t: tuple
    algebra: LieAlgebra


def compact_basis(data: ChevalleyData) -> CompactBasis:
    """``X = e - f``, ``Y = I (e + f)``, ``t = I h`` in that order."""
    L = data.algebra
    n = L.dim
    cols, names = [], []
    xs, ys, ts = [], [], []
    for k, (a, b) in enumerate(zip(data.e, data.f)):
        col = [Fraction(0)] * n
        col[a], col[b] = Fraction(1), Fraction(-1)
        xs.append(len(cols))
        cols.append(col)
        names.append(f"X{k + 1}")
    for k, (a, b) in enumerate(zip(data.e, data.f)):
        col = [Fraction(0)] * n
        col[a], col[b] = IMAG, IMAG
        ys.append(len(cols))
        cols.append(col)
        names.append(f"Y{k + 1}")
    for k, hi in enumerate(data.h):
        col = [Fraction(0)] * n
        col[hi] = IMAG
        ts.append(len(cols))
        cols.append(col)
        names.append(f"t{k + 1}")
    M = tuple(tuple(cols[a][i] for a in range(n)) for i in range(n))
    if det([list(r) for r in M]) == 0:
        raise ArithmeticError("compact basis change is singular (internal inconsistency)")
    new = change_basis(L, M, names)
    return CompactBasis(M, tuple(names), tuple(xs), tuple(ys), tuple(ts), new)


def structure_constants_real(L: LieAlgebra) -> bool:
    return all(is_real(v) for row in L.c for col in row for v in col)


def conjugate_constants(L: LieAlgebra) -> LieAlgebra:
    return LieAlgebra(L.basis_names,
                      [[[conjugate(v) for v in col] for col in row] for row in L.c])
