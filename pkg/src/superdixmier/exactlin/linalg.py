"""Dense exact linear algebra over Fraction/Surd entries.

Matrices are lists of rows.  Echelon forms use the leftmost nonzero column as
pivot and the first row (in the current order) holding it, so results are
deterministic.
"""

from fractions import Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def zeros(n):
    return [ZERO] * n


def unit(n, i):
    v = [ZERO] * n
    v[i] = ONE
    return tuple(v)


def identity(n):
    return [list(unit(n, i)) for i in range(n)]


def is_zero_vector(v):
    return not any(v)


def add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def scale(c, v):
    return tuple(c * a for a in v)


def dot(u, v):
    s = ZERO
    for a, b in zip(u, v):
        if a and b:
            s = s + a * b
    return s


def lincomb(coeffs, vectors, n=None):
    if n is None:
        n = len(vectors[0]) if vectors else 0
    out = [ZERO] * n
    for c, v in zip(coeffs, vectors):
        if not c:
            continue
        for i, a in enumerate(v):
            if a:
                out[i] = out[i] + c * a
    return tuple(out)


def transpose(A, ncols=None):
    if not A:
        return [[] for _ in range(ncols or 0)]
    return [list(col) for col in zip(*A)]


def mat_vec(A, v):
    return tuple(dot(row, v) for row in A)


def mat_mul(A, B):
    Bt = transpose(B)
    return [[dot(row, col) for col in Bt] for row in A]


def rref(rows, ncols=None):
    """Reduced row echelon form; returns (nonzero rows, pivot columns)."""
    M = [list(r) for r in rows]
    if ncols is None:
        ncols = len(M[0]) if M else 0
    pivots = []
    r = 0
    nrows = len(M)
    for c in range(ncols):
        if r == nrows:
            break
        p = None
        for i in range(r, nrows):
            if M[i][c]:
                p = i
                break
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = ONE / M[r][c]
        M[r] = [a * inv if a else ZERO for a in M[r]]
        pivot_row = M[r]
        for i in range(nrows):
            if i != r:
                f = M[i][c]
                if f:
                    row = M[i]
                    M[i] = [a - f * b if b else a for a, b in zip(row, pivot_row)]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in M[:r]], pivots


def rank(rows, ncols=None):
    return len(rref(rows, ncols)[1])


def nullspace(A, ncols):
    """Basis of {x : A x = 0}; one vector per free column, that column set to 1."""
    R, pivots = rref(A, ncols)
    pivset = set(pivots)
    basis = []
    for f in range(ncols):
        if f in pivset:
            continue
        v = [ZERO] * ncols
        v[f] = ONE
        for row, p in zip(R, pivots):
            if row[f]:
                v[p] = -row[f]
        basis.append(tuple(v))
    return basis


def solve(A, b, ncols):
    """One solution x of A x = b (free variables zero), or None."""
    aug = [list(row) + [bi] for row, bi in zip(A, b)]
    R, pivots = rref(aug, ncols + 1)
    if pivots and pivots[-1] == ncols:
        return None
    x = [ZERO] * ncols
    for row, p in zip(R, pivots):
        x[p] = row[ncols]
    return tuple(x)


def inverse(A):
    n = len(A)
    aug = [list(row) + list(unit(n, i)) for i, row in enumerate(A)]
    R, pivots = rref(aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        raise ValueError("matrix is singular")
    return [list(row[n:]) for row in R]


class Span:
    """A subspace of k^n stored in reduced echelon form."""

    __slots__ = ("n", "rows", "pivots")

    def __init__(self, n, vectors=()):
        self.n = n
        self.rows, self.pivots = rref(list(vectors), n)

    @property
    def dim(self):
        return len(self.rows)

    def contains(self, v):
        return is_zero_vector(self.reduce(v))

    def reduce(self, v):
        """Remainder of v after eliminating pivot columns."""
        v = list(v)
        for row, p in zip(self.rows, self.pivots):
            c = v[p]
            if c:
                v = [a - c * b if b else a for a, b in zip(v, row)]
        return tuple(v)

    def coordinates(self, v):
        """Coefficients of v in terms of self.rows (v must lie in the span)."""
        coords = [v[p] for p in self.pivots]
        if lincomb(coords, self.rows, self.n) != tuple(v):
            raise ValueError("vector not in span")
        return tuple(coords)

    def __eq__(self, other):
        return isinstance(other, Span) and self.n == other.n and self.rows == other.rows

    def __hash__(self):
        return hash((self.n, len(self.rows)))

    def __le__(self, other):
        return all(other.contains(r) for r in self.rows)

    def sum(self, other):
        return Span(self.n, list(self.rows) + list(other.rows))

    def intersect(self, other):
        return Span(self.n, intersect_vectors(self.rows, other.rows, self.n))

    def __repr__(self):
        return "Span(dim=%d of %d)" % (self.dim, self.n)


def annihilator(vectors, n):
    """Basis of linear forms (as vectors) vanishing on the span of vectors."""
    return nullspace(list(vectors), n)


def intersect_vectors(U, W, n):
    """Spanning set of span(U) ∩ span(W)."""
    if not U or not W:
        return []
    ann = annihilator(W, n)
    if not ann:
        return list(U)
    # coefficients a with sum a_i U_i killed by every form in ann
    eqs = [[dot(f, u) for u in U] for f in ann]
    sols = nullspace(eqs, len(U))
    return [lincomb(s, U, n) for s in sols]


def complement_indices(rows, n):
    """Standard basis indices completing span(rows) to k^n (greedy, in order)."""
    S = Span(n, rows)
    rows = list(S.rows)
    chosen = []
    for i in range(n):
        e = unit(n, i)
        T = Span(n, rows + [e])
        if T.dim > len(rows):
            rows = list(T.rows)
            chosen.append(i)
    return chosen


def extend_basis(base, candidates, n):
    """Greedy choice of candidates extending span(base); returns chosen candidates."""
    S = Span(n, base)
    chosen = []
    for v in candidates:
        if not S.contains(v):
            S = S.sum(Span(n, [v]))
            chosen.append(tuple(v))
    return chosen
