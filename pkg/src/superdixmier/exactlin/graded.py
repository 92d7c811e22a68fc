"""Super vector spaces: graded subspaces, even bilinear forms, perpendiculars."""

from dataclasses import dataclass
from fractions import Fraction

from .linalg import (
    ZERO,
    extend_basis,
    Span,
    dot,
    intersect_vectors,
    lincomb,
    mat_vec,
    nullspace,
    unit,
)
from .scalars import QQ, adjoin_sqrt, sqrt_in


class DimensionMismatch(ValueError):
    pass


@dataclass(frozen=True)
class SuperDim:
    even: int
    odd: int

    def __add__(self, other):
        return SuperDim(self.even + other.even, self.odd + other.odd)

    def __sub__(self, other):
        return SuperDim(self.even - other.even, self.odd - other.odd)

    @property
    def total(self):
        return self.even + self.odd

    def __iter__(self):
        return iter((self.even, self.odd))

    def __str__(self):
        return "(%d|%d)" % (self.even, self.odd)


def vector_parity(parities, v):
    """0 or 1 for a homogeneous nonzero vector, None for zero; mixed raises."""
    seen = None
    for p, a in zip(parities, v):
        if a:
            if seen is None:
                seen = p
            elif seen != p:
                raise ValueError("vector is not homogeneous")
    return seen


def split_parity(parities, v):
    even = tuple(a if p == 0 else ZERO for p, a in zip(parities, v))
    odd = tuple(a if p == 1 else ZERO for p, a in zip(parities, v))
    return even, odd


class GradedSubspace:
    """Subspace W = W_0 + W_1 of a super vector space with the given basis parities."""

    __slots__ = ("parities", "even", "odd")

    def __init__(self, parities, even=(), odd=()):
        self.parities = tuple(parities)
        n = len(self.parities)
        for v in even:
            if vector_parity(self.parities, v) == 1:
                raise ValueError("odd vector passed as even")
        for v in odd:
            if vector_parity(self.parities, v) == 0:
                raise ValueError("even vector passed as odd")
        self.even = Span(n, even)
        self.odd = Span(n, odd)

    @classmethod
    def span(cls, parities, vectors, split=False):
        even, odd = [], []
        for v in vectors:
            v = tuple(v)
            if split:
                e, o = split_parity(parities, v)
                even.append(e)
                odd.append(o)
                continue
            p = vector_parity(parities, v)
            if p == 0:
                even.append(v)
            elif p == 1:
                odd.append(v)
        return cls(parities, even, odd)

    @classmethod
    def zero(cls, parities):
        return cls(parities)

    @classmethod
    def full(cls, parities):
        n = len(parities)
        return cls.span(parities, [unit(n, i) for i in range(n)])

    @classmethod
    def from_indices(cls, parities, indices):
        n = len(parities)
        return cls.span(parities, [unit(n, i) for i in indices])

    @property
    def n(self):
        return len(self.parities)

    @property
    def sdim(self):
        return SuperDim(self.even.dim, self.odd.dim)

    @property
    def dim(self):
        return self.even.dim + self.odd.dim

    @property
    def basis(self):
        return list(self.even.rows) + list(self.odd.rows)

    def part(self, parity):
        return self.even if parity == 0 else self.odd

    def contains(self, v):
        e, o = split_parity(self.parities, v)
        return self.even.contains(e) and self.odd.contains(o)

    def issubset(self, other):
        return self.even <= other.even and self.odd <= other.odd

    __le__ = issubset

    def __eq__(self, other):
        return (
            isinstance(other, GradedSubspace)
            and self.parities == other.parities
            and self.even == other.even
            and self.odd == other.odd
        )

    def __hash__(self):
        return hash((self.parities, self.even.dim, self.odd.dim))

    def __add__(self, other):
        self._check(other)
        return GradedSubspace(
            self.parities,
            list(self.even.rows) + list(other.even.rows),
            list(self.odd.rows) + list(other.odd.rows),
        )

    def intersect(self, other):
        self._check(other)
        n = self.n
        return GradedSubspace(
            self.parities,
            intersect_vectors(self.even.rows, other.even.rows, n),
            intersect_vectors(self.odd.rows, other.odd.rows, n),
        )

    def complement_basis(self, within=None):
        """Homogeneous vectors completing self to ``within`` (default: everything).

        Candidates are the echelon basis of ``within`` (standard basis if None),
        taken greedily in order, even ones first.
        """
        n = self.n
        if within is None:
            cands = [unit(n, i) for i in range(n)]
        else:
            cands = within.basis
        out = []
        for parity in (0, 1):
            S = self.part(parity)
            for v in cands:
                if vector_parity(self.parities, v) != parity:
                    continue
                if not S.contains(v):
                    S = S.sum(Span(n, [v]))
                    out.append(tuple(v))
        return out

    def _check(self, other):
        if self.parities != other.parities:
            raise DimensionMismatch("subspaces live in different ambient spaces")

    def __repr__(self):
        return "GradedSubspace(sdim=%s in %s)" % (
            self.sdim,
            SuperDim(self.parities.count(0), self.parities.count(1)),
        )


class EvenBilinearForm:
    """An even bilinear form given by its Gram matrix on a homogeneous basis."""

    __slots__ = ("parities", "matrix", "symmetry")

    def __init__(self, parities, matrix, symmetry="superantisymmetric"):
        if symmetry not in ("superantisymmetric", "supersymmetric"):
            raise ValueError("unknown symmetry tag %r" % symmetry)
        self.parities = tuple(parities)
        n = len(self.parities)
        if len(matrix) != n or any(len(row) != n for row in matrix):
            raise DimensionMismatch("Gram matrix has wrong shape")
        self.matrix = tuple(tuple(Fraction(a) if isinstance(a, int) else a for a in row) for row in matrix)
        self.symmetry = symmetry
        # even block: antisymmetric for superantisymmetric forms
        even_sign = -1 if symmetry == "superantisymmetric" else 1
        for i in range(n):
            for j in range(n):
                a = self.matrix[i][j]
                pi, pj = self.parities[i], self.parities[j]
                if pi != pj:
                    if a:
                        raise ValueError("cross-parity entry (%d,%d) is nonzero" % (i, j))
                    continue
                sign = even_sign if pi == 0 else -even_sign
                if a != sign * self.matrix[j][i]:
                    raise ValueError("entry (%d,%d) breaks %s symmetry" % (i, j, symmetry))

    @property
    def n(self):
        return len(self.parities)

    def __call__(self, u, v):
        return dot(u, mat_vec(self.matrix, v))

    def gram(self, vectors):
        return [[self(u, v) for v in vectors] for u in vectors]

    def radical(self, V=None):
        if V is None:
            V = GradedSubspace.full(self.parities)
        return perp(V, self, V)


def perp(V, form, W):
    """{v in V : B(v, w) = 0 for all w in W}."""
    if V.parities != form.parities or W.parities != form.parities:
        raise DimensionMismatch("space, form and W must share the ambient space")
    n = form.n
    parts = []
    for parity in (0, 1):
        Vb = V.part(parity).rows
        Wb = W.part(parity).rows
        if not Vb:
            parts.append([])
            continue
        eqs = [[form(v, w) for v in Vb] for w in Wb]
        sols = nullspace(eqs, len(Vb)) if eqs else [unit(len(Vb), i) for i in range(len(Vb))]
        parts.append([lincomb(s, Vb, n) for s in sols])
    return GradedSubspace(form.parities, parts[0], parts[1])


def is_totally_isotropic(W, form):
    if W.parities != form.parities:
        raise DimensionMismatch("W and the form have different ambient spaces")
    basis = W.basis
    return all(not form(u, v) for u in basis for v in basis)


def is_maximal_isotropic(W, form, V=None):
    """Maximal among totally isotropic subspaces of V (default: the ambient space)."""
    if V is None:
        V = GradedSubspace.full(form.parities)
    if not W <= V or not is_totally_isotropic(W, form):
        return False
    rad = perp(V, form, V)
    even_sign_anti = form.symmetry == "superantisymmetric"
    for parity in (0, 1):
        alternating = (parity == 0) == even_sign_anti
        Wp = W.part(parity)
        if alternating:
            if 2 * Wp.dim != V.part(parity).dim + rad.part(parity).dim:
                return False
        else:
            Wperp = perp(V, form, W).part(parity)
            quot = extend_basis(Wp.rows, Wperp.rows, form.n)
            if find_isotropic_vector(form.gram(quot), allow_roots=True) is not None:
                return False
    return True


def diagonalize(G):
    """Congruence-diagonalize a symmetric Gram matrix.

    Returns (vectors, values) with B(vectors[i], vectors[j]) = 0 for i != j and
    B(vectors[i], vectors[i]) = values[i], or ("isotropic", v) as soon as a
    nonzero vector with B(v, v) = 0 shows up.
    """
    m = len(G)

    def B(u, v):
        return dot(u, mat_vec(G, v))

    remaining = [unit(m, i) for i in range(m)]
    vecs, vals = [], []
    while remaining:
        w = remaining.pop(0)
        q = B(w, w)
        if not q:
            return "isotropic", w
        vecs.append(w)
        vals.append(q)
        remaining = [tuple(a - (B(r, w) / q) * b for a, b in zip(r, w)) for r in remaining]
    return vecs, vals


def find_isotropic_vector(G, allow_roots=True, tower=QQ):
    """Nonzero v with v^T G v = 0 for a symmetric Gram matrix G, or None.

    Search order: kernel vectors, zero diagonal entries, pairs of diagonal
    values whose negated ratio is already a square, then (if allowed) one
    adjoined square root.
    """
    m = len(G)
    if m == 0:
        return None
    ker = nullspace([list(r) for r in G], m)
    if ker:
        return ker[0]
    for i in range(m):
        if not G[i][i]:
            return unit(m, i)
    vecs, vals = diagonalize(G)
    if vecs == "isotropic":
        return vals
    for i in range(m):
        for j in range(i + 1, m):
            s = sqrt_in(-vals[i] / vals[j], tower)
            if s is not None:
                return tuple(a + s * b for a, b in zip(vecs[i], vecs[j]))
    if allow_roots and m >= 2:
        _, s = adjoin_sqrt(tower, -vals[0] / vals[1])
        return tuple(a + s * b for a, b in zip(vecs[0], vecs[1]))
    return None
