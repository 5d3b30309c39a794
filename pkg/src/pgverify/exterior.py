"""Exterior algebra of a Lie algebra with its Schouten bracket.

Sign conventions, pinned here once:

* ``wedge`` sorts the concatenated index tuple and multiplies by the
  parity of the sorting permutation.
* ``schouten`` on monomials is
  ``[e_I, e_J] = sum_{i,j} (-1)^(i+j) [e_{I_i}, e_{J_j}] ^ e_{I\\i} ^ e_{J\\j}``
  (1-based positions).  It restricts to the Lie bracket in degree 1 and
  satisfies ``[P,Q] = -(-1)^((p-1)(q-1)) [Q,P]`` and
  ``[P, Q^R] = [P,Q]^R + (-1)^((p-1)q) Q^[P,R]``.
* A k-differential ``d`` extends from degree 1 by
  ``d(P^Q) = dP^Q + (-1)^(p(k-1)) P^dQ`` and kills scalars.

Coefficients may live in any commutative ring whose elements support
``+ - *`` and truthiness (Fraction, Gaussian rationals, RatFunc, ...).
"""
from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from .kernel.scalars import QI, format_scalar
from .lie_core import LieAlgebra
from .report import CheckReport, failed, passed, timed

_ZERO = Fraction(0)


def sort_sign(idx):
    """Return ``(sign, sorted_tuple)``; sign is 0 if an index repeats."""
    idx = list(idx)
    if len(set(idx)) != len(idx):
        return 0, None
    sign = 1
    # insertion sort counting transpositions
    for i in range(1, len(idx)):
        j = i
        while j > 0 and idx[j - 1] > idx[j]:
            idx[j - 1], idx[j] = idx[j], idx[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(idx)


def _accumulate(out, key, val):
    v = out.get(key)
    v = val if v is None else v + val
    if v:
        out[key] = v
    else:
        out.pop(key, None)


class Multivector:
    """Homogeneous element of ``Lambda^grade g``."""

    __slots__ = ("parent", "grade", "terms")

    def __init__(self, parent: LieAlgebra, grade: int, terms=None):
        self.parent = parent
        self.grade = grade
        clean = {}
        for idx, c in (terms or {}).items():
            idx = tuple(idx)
            if len(idx) != grade:
                raise ValueError(f"index tuple {idx} does not have length {grade}")
            if any(a >= b for a, b in zip(idx, idx[1:])):
                raise ValueError(f"index tuple {idx} is not strictly increasing")
            if any(i < 0 or i >= parent.dim for i in idx):
                raise ValueError(f"index tuple {idx} out of range")
            if c:
                clean[idx] = c
        self.terms = clean

    @classmethod
    def _raw(cls, parent, grade, terms):
        m = object.__new__(cls)
        m.parent, m.grade, m.terms = parent, grade, terms
        return m

    @classmethod
    def zero(cls, parent, grade):
        return cls._raw(parent, grade, {})

    @classmethod
    def scalar(cls, parent, c):
        return cls(parent, 0, {(): c})

    @classmethod
    def basis(cls, parent, *indices):
        """``e_{i1} ^ ... ^ e_{ip}`` for arbitrary (unsorted) indices."""
        s, idx = sort_sign(indices)
        if s == 0:
            return cls.zero(parent, len(indices))
        return cls._raw(parent, len(indices), {idx: Fraction(s)})

    @classmethod
    def from_vector(cls, parent, vec):
        return cls(parent, 1, {(i,): c for i, c in enumerate(vec) if c})

    def to_vector(self):
        if self.grade != 1:
            raise ValueError("only grade-1 elements convert to vectors")
        v = [_ZERO] * self.parent.dim
        for (i,), c in self.terms.items():
            v[i] = c
        return v

    # -- linear structure --------------------------------------------------
    def _check(self, other):
        if not isinstance(other, Multivector):
            raise TypeError("expected a Multivector")
        if other.parent is not self.parent and other.parent.c != self.parent.c:
            raise ValueError("multivectors over different Lie algebras")

    def __add__(self, other):
        self._check(other)
        if self.grade != other.grade:
            if not other.terms:
                return self
            if not self.terms:
                return other
            raise ValueError(f"cannot add grades {self.grade} and {other.grade}")
        out = dict(self.terms)
        for k, v in other.terms.items():
            _accumulate(out, k, v)
        return Multivector._raw(self.parent, self.grade, out)

    def __neg__(self):
        return Multivector._raw(self.parent, self.grade, {k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        if not c:
            return Multivector.zero(self.parent, self.grade)
        out = {}
        for k, v in self.terms.items():
            w = c * v
            if w:
                out[k] = w
        return Multivector._raw(self.parent, self.grade, out)

    def __mul__(self, c):
        if isinstance(c, Multivector):
            return NotImplemented
        return self.scale(c)

    __rmul__ = __mul__

    def map_coefficients(self, fn):
        out = {}
        for k, v in self.terms.items():
            w = fn(v)
            if w:
                out[k] = w
        return Multivector._raw(self.parent, self.grade, out)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Multivector):
            return NotImplemented
        if not self.terms and not other.terms:
            return True
        return self.grade == other.grade and self.terms == other.terms

    __hash__ = None

    def coefficient(self, *indices):
        s, idx = sort_sign(indices)
        if s == 0:
            return _ZERO
        c = self.terms.get(idx, _ZERO)
        return c if s == 1 else -c

    def __str__(self):
        if not self.terms:
            return "0"
        names = self.parent.basis_names
        parts = []
        for idx in sorted(self.terms):
            c = self.terms[idx]
            mono = "^".join(names[i] for i in idx) or "1"
            cs = format_scalar(c) if isinstance(c, (int, Fraction, QI)) else str(c)
            parts.append(f"({cs})*{mono}" if idx else f"({cs})")
        return " + ".join(parts)

    def __repr__(self):
        return f"Multivector(grade={self.grade}, {self})"


def wedge(a: Multivector, b: Multivector) -> Multivector:
    a._check(b)
    out = {}
    for ia, ca in a.terms.items():
        for ib, cb in b.terms.items():
            s, idx = sort_sign(ia + ib)
            if s == 0:
                continue
            v = ca * cb
            _accumulate(out, idx, v if s == 1 else -v)
    return Multivector._raw(a.parent, a.grade + b.grade, out)


def wedge_all(parent, factors):
    acc = Multivector.scalar(parent, Fraction(1))
    for f in factors:
        acc = wedge(acc, f)
    return acc


def _schouten_monomials(L: LieAlgebra, I, J):
    """Marle formula on basis monomials; returns a term dict."""
    out = {}
    for a, i in enumerate(I):
        rest_i = I[:a] + I[a + 1:]
        for b, j in enumerate(J):
            br = L.bracket_basis(i, j)
            if not br:
                continue
            rest_j = J[:b] + J[b + 1:]
            sign = -1 if (a + b) % 2 else 1
            for k, ck in br.items():
                s, idx = sort_sign((k,) + rest_i + rest_j)
                if s == 0:
                    continue
                _accumulate(out, idx, ck if s * sign == 1 else -ck)
    return out


def schouten(P: Multivector, Q: Multivector) -> Multivector:
    P._check(Q)
    L = P.parent
    grade = max(P.grade + Q.grade - 1, 0)
    out = {}
    if P.grade == 0 or Q.grade == 0:
        return Multivector.zero(L, grade)
    cache = {}
    for I, cp in P.terms.items():
        for J, cq in Q.terms.items():
            key = (I, J)
            mono = cache.get(key)
            if mono is None:
                mono = cache[key] = _schouten_monomials(L, I, J)
            if not mono:
                continue
            w = cp * cq
            for idx, c in mono.items():
                _accumulate(out, idx, c * w)
    return Multivector._raw(L, grade, out)


# -- k-differentials -----------------------------------------------------------

class KDifferential:
    """Degree ``k-1`` derivation of ``Lambda g`` given by its values on the basis.

    ``images[i]`` is the grade-k image of ``e_i``; scalars map to zero.
    """

    __slots__ = ("parent", "k", "images")

    def __init__(self, parent: LieAlgebra, k: int, images):
        images = tuple(images)
        if len(images) != parent.dim:
            raise ValueError(f"need {parent.dim} images, got {len(images)}")
        for m in images:
            if m.terms and m.grade != k:
                raise ValueError(f"image of grade {m.grade} for a {k}-differential")
        self.parent = parent
        self.k = k
        self.images = tuple(m if m.terms else Multivector.zero(parent, k) for m in images)

    @classmethod
    def ad(cls, P: Multivector) -> "KDifferential":
        """Coboundary ``[P, .]``."""
        L = P.parent
        return cls(L, P.grade, [schouten(P, Multivector.basis(L, i)) for i in range(L.dim)])

    @classmethod
    def zero(cls, parent, k):
        return cls(parent, k, [Multivector.zero(parent, k)] * parent.dim)

    def __call__(self, P: Multivector) -> Multivector:
        return extend_derivation(self, P)

    def scale(self, c):
        return KDifferential(self.parent, self.k, [m.scale(c) for m in self.images])

    def __eq__(self, other):
        if not isinstance(other, KDifferential):
            return NotImplemented
        return self.k == other.k and all(a == b for a, b in zip(self.images, other.images))

    __hash__ = None


def extend_derivation(d: KDifferential, P: Multivector) -> Multivector:
    if P.parent is not d.parent and P.parent.c != d.parent.c:
        raise ValueError("derivation and multivector over different Lie algebras")
    L = d.parent
    grade = P.grade + d.k - 1
    out = {}
    for idx, c in P.terms.items():
        for m, i in enumerate(idx):
            img = d.images[i]
            if not img.terms:
                continue
            left = Multivector.basis(L, *idx[:m])
            right = Multivector.basis(L, *idx[m + 1:])
            term = wedge(wedge(left, img), right)
            sign = -1 if (m * (d.k - 1)) % 2 else 1
            for key, v in term.terms.items():
                _accumulate(out, key, v * c if sign == 1 else -(v * c))
    return Multivector._raw(L, max(grade, 0), out)


def compose(d1: KDifferential, d2: KDifferential, P: Multivector) -> Multivector:
    return extend_derivation(d1, extend_derivation(d2, P))


def graded_commutator(d1: KDifferential, d2: KDifferential) -> KDifferential:
    """``[d1, d2] = d1 d2 - (-1)^((k-1)(l-1)) d2 d1``, determined on degree 1."""
    if d1.parent.c != d2.parent.c:
        raise ValueError("differentials over different Lie algebras")
    L = d1.parent
    sign = -1 if ((d1.k - 1) * (d2.k - 1)) % 2 else 1
    imgs = []
    for i in range(L.dim):
        X = Multivector.basis(L, i)
        a = compose(d1, d2, X)
        b = compose(d2, d1, X)
        imgs.append(a - b if sign == 1 else a + b)
    return KDifferential(L, d1.k + d2.k - 1, imgs)


@timed
def is_k_differential(d: KDifferential) -> CheckReport:
    """``d[X,Y] = [dX,Y] + [X,dY]`` on all basis pairs.

    Both sides are derivations in each slot, so basis pairs of degree 1
    suffice for the full Gerstenhaber statement.
    """
    L = d.parent
    note = "checked on degree-1 basis pairs; higher degrees follow by Leibniz"
    for i, j in combinations(range(L.dim), 2):
        X, Y = Multivector.basis(L, i), Multivector.basis(L, j)
        lhs = d(schouten(X, Y))
        rhs = schouten(d(X), Y) + schouten(X, d(Y))
        res = lhs - rhs
        if res:
            names = L.basis_names
            return failed("k_differential", f"({names[i]},{names[j]}): {res}", note=note)
    return passed("k_differential", note=note)
