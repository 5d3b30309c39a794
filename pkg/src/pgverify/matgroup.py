"""Coboundary bivectors on rational matrix groups.

Tangent vectors at ``g`` are n x n matrices; ``(L_g)_* X = gX`` and
``(R_g)_* X = Xg``. Bivectors are sums of wedge pairs compared through their
antisymmetric ``n^2 x n^2`` tensor.
"""
from __future__ import annotations

import random
from fractions import Fraction

from .bialgebra import pushforward
from .exterior import Multivector, schouten, wedge
from .kernel import det, inverse, matmul
from .lie_core import LieAlgebra, matrix_coordinates
from .report import CheckReport, aggregate, failed, passed, timed

GROUPS = ("GL", "SL")


def _freeze(m):
    return tuple(tuple(Fraction(x) if isinstance(x, int) else x for x in row) for row in m)


def _identity(n):
    return tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n))


class GroupPoint:
    __slots__ = ("matrix", "group")

    def __init__(self, matrix, group="GL"):
        if group not in GROUPS:
            raise ValueError(f"group must be one of {GROUPS}")
        m = _freeze(matrix)
        n = len(m)
        if any(len(row) != n for row in m):
            raise ValueError("group element must be square")
        d = det(m)
        if d == 0:
            raise ValueError("matrix is not invertible")
        if group == "SL" and d != 1:
            raise ValueError(f"det = {d}, not 1")
        self.matrix = m
        self.group = group

    @classmethod
    def identity(cls, n, group="GL"):
        return cls(_identity(n), group)

    @property
    def n(self):
        return len(self.matrix)

    def __mul__(self, other: "GroupPoint") -> "GroupPoint":
        group = "SL" if self.group == other.group == "SL" else "GL"
        return GroupPoint(matmul(self.matrix, other.matrix), group)

    def inverse(self) -> "GroupPoint":
        return GroupPoint(inverse(self.matrix), self.group)

    def __eq__(self, other):
        return isinstance(other, GroupPoint) and self.matrix == other.matrix

    __hash__ = None

    def __repr__(self):
        return f"GroupPoint({[[str(x) for x in row] for row in self.matrix]}, {self.group})"


class TangentBivector:
    """``sum c (A ^ B)`` at ``base``; pairs are stored with ``A < B`` lexicographically."""

    __slots__ = ("base", "pairs")

    def __init__(self, base: GroupPoint, pairs=None):
        self.base = base
        out = {}
        for (A, B), c in (pairs or {}).items():
            if A == B or not c:
                continue
            if B < A:
                A, B, c = B, A, -c
            v = out.get((A, B), 0) + c
            if v:
                out[(A, B)] = v
            else:
                out.pop((A, B), None)
        self.pairs = out

    @classmethod
    def from_multivector(cls, r: Multivector, base: GroupPoint):
        """Legs ``(b_i, b_j)`` of ``r`` as matrices, placed at ``base`` unchanged."""
        mats = _matrices(r.parent)
        return cls(base, {(mats[i], mats[j]): c for (i, j), c in r.terms.items()})

    def tensor(self):
        """Antisymmetric ``{((r,c),(r',c')): value}`` with zero entries dropped."""
        out = {}
        for (A, B), c in self.pairs.items():
            n = len(A)
            for i in range(n):
                for j in range(n):
                    if not A[i][j] and not B[i][j]:
                        continue
                    for k in range(n):
                        for m in range(n):
                            v = c * (A[i][j] * B[k][m] - B[i][j] * A[k][m])
                            if v:
                                key = ((i, j), (k, m))
                                w = out.get(key, 0) + v
                                if w:
                                    out[key] = w
                                else:
                                    out.pop(key)
        return out

    def __add__(self, other):
        if self.base != other.base:
            raise ValueError("bivectors live at different points")
        pairs = dict(self.pairs)
        for k, v in other.pairs.items():
            pairs[k] = pairs.get(k, 0) + v
        return TangentBivector(self.base, pairs)

    def scale(self, c):
        return TangentBivector(self.base, {k: v * c for k, v in self.pairs.items()})

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (isinstance(other, TangentBivector) and self.base == other.base
                and self.tensor() == other.tensor())

    __hash__ = None

    def __bool__(self):
        return bool(self.tensor())

    def __str__(self):
        if not self.pairs:
            return "0"
        parts = []
        for (A, B), c in sorted(self.pairs.items()):
            fa = [[str(x) for x in row] for row in A]
            fb = [[str(x) for x in row] for row in B]
            parts.append(f"({c})*{fa}^{fb}")
        return " + ".join(parts)


def _matrices(L: LieAlgebra):
    if L.matrices is None:
        raise ValueError("the Lie algebra has no matrix realization")
    return [_freeze(m) for m in L.matrices]


def translate(t: TangentBivector, side: str, by: GroupPoint) -> TangentBivector:
    """Left translation ``X -> bX`` or right translation ``X -> Xb`` of each leg."""
    if by.n != t.base.n:
        raise ValueError("size mismatch")
    b = by.matrix
    if side == "left":
        base = by * t.base
        pairs = {(_freeze(matmul(b, A)), _freeze(matmul(b, B))): c for (A, B), c in t.pairs.items()}
    elif side == "right":
        base = t.base * by
        pairs = {(_freeze(matmul(A, b)), _freeze(matmul(B, b))): c for (A, B), c in t.pairs.items()}
    else:
        raise ValueError("side must be 'left' or 'right'")
    return TangentBivector(base, pairs)


def coboundary_pi(r: Multivector, g: GroupPoint) -> TangentBivector:
    """``pi_g = (L_g)_* r - (R_g)_* r``."""
    e = TangentBivector.from_multivector(r, GroupPoint.identity(g.n, g.group))
    return translate(e, "left", g) - translate(e, "right", g)


@timed
def check_multiplicative(r: Multivector, g: GroupPoint, h: GroupPoint) -> CheckReport:
    """``(R_h)_* pi_g + (L_g)_* pi_h = pi_{gh}``."""
    lhs = translate(coboundary_pi(r, g), "right", h) + translate(coboundary_pi(r, h), "left", g)
    res = lhs - coboundary_pi(r, g * h)
    return passed("multiplicative") if not res else failed("multiplicative", res)


# -- the cocycle pi~ --------------------------------------------------------------------

def adjoint_matrix(L: LieAlgebra, g: GroupPoint):
    """Matrix of ``Ad_g`` in the basis of ``L``: column ``a`` holds ``g b_a g^-1``."""
    mats = _matrices(L)
    gi = inverse(g.matrix)
    cols = [matrix_coordinates(mats, matmul(matmul(g.matrix, m), gi)) for m in mats]
    return [[cols[a][i] for a in range(L.dim)] for i in range(L.dim)]


def adjoint(m: Multivector, g: GroupPoint) -> Multivector:
    return pushforward(m, adjoint_matrix(m.parent, g), m.parent)


def cocycle_tilde(r: Multivector, g: GroupPoint) -> Multivector:
    """``pi~(g) = (R_g)^-1_* pi_g = Ad_g r - r``."""
    return adjoint(r, g) - r


def cocycle_tilde_direct(r: Multivector, g: GroupPoint) -> TangentBivector:
    """``(R_{g^-1})_* pi_g`` computed on matrices (cross-check of :func:`cocycle_tilde`)."""
    return translate(coboundary_pi(r, g), "right", g.inverse())


@timed
def check_cocycle_tilde(r: Multivector, g: GroupPoint, h: GroupPoint) -> CheckReport:
    """``pi~(gh) = pi~(g) + Ad_g pi~(h)``."""
    res = cocycle_tilde(r, g * h) - cocycle_tilde(r, g) - adjoint(cocycle_tilde(r, h), g)
    return passed("group_cocycle") if not res else failed("group_cocycle", res)


class Dual:
    """``a + b eps`` with ``eps^2 = 0``."""

    __slots__ = ("a", "b")

    def __init__(self, a, b=0):
        self.a, self.b = a, b

    @staticmethod
    def _lift(x):
        return x if isinstance(x, Dual) else Dual(x)

    def __add__(self, other):
        o = self._lift(other)
        return Dual(self.a + o.a, self.b + o.b)

    __radd__ = __add__

    def __neg__(self):
        return Dual(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-self._lift(other))

    def __rsub__(self, other):
        return self._lift(other) - self

    def __mul__(self, other):
        o = self._lift(other)
        return Dual(self.a * o.a, self.a * o.b + self.b * o.a)

    __rmul__ = __mul__

    def __eq__(self, other):
        o = self._lift(other)
        return self.a == o.a and self.b == o.b

    __hash__ = None

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __repr__(self):
        return f"Dual({self.a}, {self.b})"


def tilde_derivative(r: Multivector, X) -> Multivector:
    """First-order part of ``pi~(exp(eps X))`` computed with dual-number matrices.

    ``exp(eps X) = 1 + eps X`` and its inverse is ``1 - eps X``.
    """
    L = r.parent
    mats = _matrices(L)
    n = len(X)
    g = [[Dual(Fraction(int(i == j)), X[i][j]) for j in range(n)] for i in range(n)]
    gi = [[Dual(Fraction(int(i == j)), -X[i][j]) for j in range(n)] for i in range(n)]
    cols = []
    for m in mats:
        conj = matmul(matmul(g, m), gi)
        eps_part = [[x.b if isinstance(x, Dual) else Fraction(0) for x in row] for row in conj]
        cols.append(matrix_coordinates(mats, eps_part))
    # d/d eps of Ad r = sum over legs of (derivative of one leg) ^ (other leg)
    D = [[cols[a][i] for a in range(L.dim)] for i in range(L.dim)]
    out = Multivector.zero(L, 2)
    for (i, j), c in r.terms.items():
        di = Multivector.from_vector(L, [D[k][i] for k in range(L.dim)])
        dj = Multivector.from_vector(L, [D[k][j] for k in range(L.dim)])
        bi, bj = Multivector.basis(L, i), Multivector.basis(L, j)
        out = out + (wedge(di, bj) + wedge(bi, dj)).scale(c)
    return out


@timed
def check_tilde_derivative(r: Multivector, X, against="[r,X]") -> CheckReport:
    """Compare ``d/dt pi~(exp tX)`` at ``t = 0`` with ``[r, X]`` (or ``[X, r]``)."""
    L = r.parent
    Xv = Multivector.from_vector(L, matrix_coordinates(_matrices(L), X))
    deriv = tilde_derivative(r, X)
    if against == "[r,X]":
        target = schouten(r, Xv)
    elif against == "[X,r]":
        target = schouten(Xv, r)
    else:
        raise ValueError("against must be '[r,X]' or '[X,r]'")
    res = deriv - target
    details = {"derivative": str(deriv), "target": against}
    return (passed("tilde_derivative", details=details) if not res
            else failed("tilde_derivative", res, details=details))


# -- exact random sampling -------------------------------------------------------------

def _sample_entry(rng: random.Random, bound=4, den=3):
    return Fraction(rng.randint(-bound, bound), rng.randint(1, den))


def random_gl(n: int, rng: random.Random, bound=4, den=3) -> GroupPoint:
    """Entries from ``{p/q : |p| <= bound, 1 <= q <= den}``; singular draws are rejected."""
    while True:
        m = [[_sample_entry(rng, bound, den) for _ in range(n)] for _ in range(n)]
        if det(m) != 0:
            return GroupPoint(m, "GL")


def random_sl(n: int, rng: random.Random, bound=4, den=3) -> GroupPoint:
    """A random invertible matrix with its first column scaled by ``1/det``."""
    m = [list(row) for row in random_gl(n, rng, bound, den).matrix]
    d = det(m)
    for i in range(n):
        m[i][0] = m[i][0] / d
    return GroupPoint(m, "SL")


def sample_checks(r: Multivector, group: str, samples: int, seed: int) -> CheckReport:
    """Multiplicativity and the cocycle identity on ``samples`` random pairs."""
    rng = random.Random(seed)
    n = len(_matrices(r.parent)[0])
    draw = random_sl if group == "SL" else random_gl
    for k in range(samples):
        g, h = draw(n, rng), draw(n, rng)
        m = check_multiplicative(r, g, h)
        c = check_cocycle_tilde(r, g, h)
        if not m:
            return aggregate("matrix_group", [failed("multiplicative", f"sample {k}: {m.residual_witness}")])
        if not c:
            return aggregate("matrix_group", [failed("group_cocycle", f"sample {k}: {c.residual_witness}")])
    return aggregate("matrix_group", [passed("multiplicative"), passed("group_cocycle")],
                     details={"samples": samples, "group": group})
