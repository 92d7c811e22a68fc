"""Lie superalgebras given by structure constants on a homogeneous basis."""

from dataclasses import dataclass

from .exactlin.graded import GradedSubspace, SuperDim, vector_parity
from .exactlin.linalg import (
    ZERO,
    Span,
    annihilator,
    dot,
    inverse,
    lincomb,
    mat_vec,
    nullspace,
    solve,
    transpose,
    unit,
)
from .exactlin.scalars import as_scalar
from .exactlin.graded import find_isotropic_vector
from .fmt import format_vector


class HypothesisError(ValueError):
    """A mathematical precondition of an algorithm does not hold."""


class NotAnIdeal(ValueError):
    pass


def sign(p):
    return -1 if p else 1


class SuperLieAlgebra:
    """Basis labels, parities and the bracket table [e_i, e_j] = sum_k c_ij^k e_k.

    ``table`` maps (i, j) to {k: c}.  Missing pairs are zero.  No skew
    completion happens here (see :meth:`from_brackets`), so a malformed table
    can be represented and reported by :func:`validate`.
    """

    def __init__(self, labels, parities, table, name=None):
        self.labels = tuple(labels)
        self.parities = tuple(int(p) for p in parities)
        if len(self.labels) != len(self.parities):
            raise ValueError("labels and parities differ in length")
        if len(set(self.labels)) != len(self.labels):
            raise ValueError("duplicate basis labels")
        self.name = name or "g"
        n = len(self.labels)
        self._sparse = {}
        for (i, j), col in table.items():
            entries = tuple((k, as_scalar(c)) for k, c in sorted(col.items()) if c)
            if entries:
                self._sparse[(i, j)] = entries
        self._dense = [[self._dense_entry(i, j) for j in range(n)] for i in range(n)]
        self._cache = {}

    def _dense_entry(self, i, j):
        v = [ZERO] * len(self.labels)
        for k, c in self._sparse.get((i, j), ()):
            v[k] = c
        return tuple(v)

    @classmethod
    def from_brackets(cls, labels, parities, brackets, name=None):
        """Build from {(i, j): {k: c}} given for some ordered pairs; the partner
        (j, i) is filled in by superskewsymmetry unless given explicitly."""
        table = {}
        for (i, j), col in brackets.items():
            table[(i, j)] = dict(col)
        for (i, j), col in list(brackets.items()):
            if (j, i) not in brackets and i != j:
                s = -sign(parities[i] * parities[j])
                table[(j, i)] = {k: s * as_scalar(c) for k, c in col.items()}
        return cls(labels, parities, table, name)

    # basic data ------------------------------------------------------------
    @property
    def dim(self):
        return len(self.labels)

    @property
    def sdim(self):
        return SuperDim(self.parities.count(0), self.parities.count(1))

    def index(self, label):
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError("unknown generator %r" % label) from None

    def unit(self, i):
        return unit(self.dim, i)

    def vector(self, coeffs):
        """Vector from {label or index: scalar}."""
        v = [ZERO] * self.dim
        for key, c in coeffs.items():
            i = key if isinstance(key, int) else self.index(key)
            v[i] = v[i] + as_scalar(c)
        return tuple(v)

    def parity_of(self, v):
        return vector_parity(self.parities, v)

    def bracket_basis(self, i, j):
        return self._dense[i][j]

    def structure(self, i, j):
        return self._sparse.get((i, j), ())

    def bracket(self, u, v):
        n = self.dim
        out = [ZERO] * n
        for i, a in enumerate(u):
            if not a:
                continue
            for j, b in enumerate(v):
                if not b:
                    continue
                ab = a * b
                for k, c in self._sparse.get((i, j), ()):
                    out[k] = out[k] + ab * c
        return tuple(out)

    def ad_matrix(self, v):
        """Matrix of ad(v): column j holds [v, e_j]."""
        cols = [self.bracket(v, unit(self.dim, j)) for j in range(self.dim)]
        return transpose(cols) if cols else []

    def format(self, v):
        return format_vector(v, self.labels)

    def full_space(self):
        return GradedSubspace.full(self.parities)

    def span(self, vectors):
        return GradedSubspace.span(self.parities, vectors)

    def span_labels(self, labels):
        return GradedSubspace.from_indices(self.parities, [self.index(l) for l in labels])

    def even_indices(self):
        return [i for i, p in enumerate(self.parities) if p == 0]

    def odd_indices(self):
        return [i for i, p in enumerate(self.parities) if p == 1]

    def bracket_spaces(self, U, W):
        """Graded span of [U, W]."""
        vecs = [self.bracket(u, w) for u in U.basis for w in W.basis]
        return GradedSubspace.span(self.parities, [v for v in vecs if any(v)])

    def is_subalgebra(self, H):
        return self.bracket_spaces(H, H) <= H

    def is_ideal(self, K):
        return self.bracket_spaces(self.full_space(), K) <= K

    def __repr__(self):
        return "SuperLieAlgebra(%s, sdim=%s)" % (self.name, self.sdim)

    def __eq__(self, other):
        return (
            isinstance(other, SuperLieAlgebra)
            and self.labels == other.labels
            and self.parities == other.parities
            and self._sparse == other._sparse
        )

    def __hash__(self):
        return hash((self.labels, self.parities))


# ---------------------------------------------------------------------------
# validation
# ---------------------------------------------------------------------------

@dataclass
class ValidationReport:
    ok: bool
    axiom: str = ""
    where: tuple = ()
    message: str = ""

    def __bool__(self):
        return self.ok

    def __str__(self):
        if self.ok:
            return "valid"
        return "invalid: %s at %s (%s)" % (self.axiom, self.where, self.message)


def validate(alg):
    n = alg.dim
    par = alg.parities
    L = alg.labels
    for (i, j), entries in alg._sparse.items():
        for k, c in entries:
            if par[k] != (par[i] + par[j]) % 2:
                return ValidationReport(
                    False, "parity homogeneity", (L[i], L[j], L[k]),
                    "[%s,%s] has a component along %s of the wrong parity" % (L[i], L[j], L[k]),
                )
    for i in range(n):
        for j in range(i, n):
            s = -sign(par[i] * par[j])
            a, b = alg.bracket_basis(i, j), alg.bracket_basis(j, i)
            if any(x != s * y for x, y in zip(b, a)):
                return ValidationReport(
                    False, "superskewsymmetry", (L[i], L[j]),
                    "[%s,%s] != -(-1)^(|%s||%s|) [%s,%s]" % (L[j], L[i], L[i], L[j], L[i], L[j]),
                )
    for i in range(n):
        ei = unit(n, i)
        for j in range(n):
            eij = alg.bracket_basis(i, j)
            s = sign(par[i] * par[j])
            for k in range(n):
                lhs = alg.bracket(ei, alg.bracket_basis(j, k))
                rhs1 = alg.bracket(eij, unit(n, k))
                rhs2 = alg.bracket(unit(n, j), alg.bracket_basis(i, k))
                if any(l != r1 + s * r2 for l, r1, r2 in zip(lhs, rhs1, rhs2)):
                    return ValidationReport(
                        False, "super Jacobi identity", (L[i], L[j], L[k]),
                        "[x,[y,z]] != [[x,y],z] + (-1)^(|x||y|)[y,[x,z]]",
                    )
    return ValidationReport(True)


# ---------------------------------------------------------------------------
# centers, series, nilpotency
# ---------------------------------------------------------------------------

def centralizer(alg, S):
    """Super centralizer {v : [v, s] = 0 for every s in S}."""
    S = [tuple(s) for s in S]
    n = alg.dim
    parts = []
    for parity in (0, 1):
        idx = [i for i in range(n) if alg.parities[i] == parity]
        if not idx:
            parts.append([])
            continue
        rows = []
        for s in S:
            cols = [alg.bracket(unit(n, i), s) for i in idx]
            for k in range(n):
                rows.append([col[k] for col in cols])
        sols = nullspace(rows, len(idx)) if rows else [unit(len(idx), a) for a in range(len(idx))]
        vecs = []
        for sol in sols:
            v = [ZERO] * n
            for a, i in enumerate(idx):
                v[i] = sol[a]
            vecs.append(tuple(v))
        parts.append(vecs)
    return GradedSubspace(alg.parities, parts[0], parts[1])


def center(alg):
    if "center" not in alg._cache:
        alg._cache["center"] = centralizer(alg, [unit(alg.dim, j) for j in range(alg.dim)])
    return alg._cache["center"]


def lower_central_series(alg):
    """[C^1 = g, C^2 = [g,g], ...] ending with the first repeated term."""
    if "lcs" not in alg._cache:
        g = alg.full_space()
        series = [g]
        while True:
            nxt = alg.bracket_spaces(g, series[-1])
            if nxt == series[-1]:
                break
            series.append(nxt)
            if nxt.dim == 0:
                break
        alg._cache["lcs"] = series
    return alg._cache["lcs"]


def derived_series(alg, space=None):
    key = ("derived", None if space is None else tuple(space.basis))
    if key not in alg._cache:
        cur = alg.full_space() if space is None else space
        series = [cur]
        while True:
            nxt = alg.bracket_spaces(cur, cur)
            if nxt == cur:
                break
            series.append(nxt)
            cur = nxt
            if nxt.dim == 0:
                break
        alg._cache[key] = series
    return alg._cache[key]


def is_nilpotent(alg):
    return lower_central_series(alg)[-1].dim == 0


def ad_nilpotent_basis(alg):
    """True iff every basis ad-matrix is nilpotent (Engel-side cross-check)."""
    n = alg.dim
    for i in range(n):
        A = alg.ad_matrix(unit(n, i))
        P = A
        for _ in range(n):
            P = [[dot(row, col) for col in zip(*A)] for row in P]
        if any(any(r) for r in P):
            return False
    return True


def is_solvable(alg):
    g0 = GradedSubspace(alg.parities, [unit(alg.dim, i) for i in alg.even_indices()])
    return derived_series(alg, g0)[-1].dim == 0


def even_part(alg):
    return GradedSubspace(alg.parities, [unit(alg.dim, i) for i in alg.even_indices()])


# ---------------------------------------------------------------------------
# subalgebras, quotients, rebasing
# ---------------------------------------------------------------------------

def _label_for(alg, v):
    nz = [i for i, a in enumerate(v) if a]
    if len(nz) == 1 and v[nz[0]] == 1:
        return alg.labels[nz[0]]
    return "(" + alg.format(v) + ")"


class Inclusion:
    """Subalgebra K of g with an explicit basis (vectors of g)."""

    def __init__(self, parent, basis, sub):
        self.parent = parent
        self.basis = [tuple(b) for b in basis]
        self.sub = sub
        self._span = Span(parent.dim, self.basis)
        if self._span.dim != len(self.basis):
            raise ValueError("basis vectors are dependent")
        # coordinates of a vector in the chosen basis
        M = [list(b) for b in self.basis]
        self._solver = M

    def coordinates(self, v):
        x = solve(transpose(self._solver, self.parent.dim), list(v), len(self.basis))
        if x is None:
            raise ValueError("vector %s not in subalgebra" % self.parent.format(v))
        return x

    def image(self, w):
        return lincomb(w, self.basis, self.parent.dim)


def subalgebra(alg, basis, labels=None, name=None):
    """Return (K, Inclusion) for the subalgebra with the given homogeneous basis."""
    basis = [tuple(b) for b in basis]
    pars = []
    for b in basis:
        p = alg.parity_of(b)
        if p is None:
            raise ValueError("zero basis vector")
        pars.append(p)
    if labels is None:
        labels = [_label_for(alg, b) for b in basis]
    m = len(basis)
    tmp = Inclusion(alg, basis, None)
    table = {}
    for a in range(m):
        for b in range(m):
            w = alg.bracket(basis[a], basis[b])
            if any(w):
                try:
                    coords = tmp.coordinates(w)
                except ValueError:
                    raise ValueError("span is not closed under the bracket") from None
                table[(a, b)] = {k: c for k, c in enumerate(coords) if c}
    K = SuperLieAlgebra(labels, pars, table, name=name or alg.name + "_sub")
    return K, Inclusion(alg, basis, K)


class Quotient:
    """g/c with the quotient basis given by complement vectors of g."""

    def __init__(self, parent, ideal, complement, alg):
        self.parent = parent
        self.ideal = ideal
        self.complement = complement
        self.alg = alg
        full = list(complement) + list(ideal.basis)
        self._inv = inverse([list(v) for v in full])
        self._m = len(complement)

    def project(self, v):
        coords = mat_vec(transpose(self._inv), v)
        return tuple(coords[: self._m])

    def matrix(self):
        n = self.parent.dim
        cols = [self.project(unit(n, i)) for i in range(n)]
        return transpose(cols, self._m)

    def lift(self, w):
        return lincomb(w, self.complement, self.parent.dim)


def quotient(alg, ideal, name=None):
    """Return (g/ideal, Quotient) using standard basis vectors outside the ideal."""
    if not alg.is_ideal(ideal):
        raise NotAnIdeal("subspace is not an ideal")
    comp = ideal.complement_basis()
    # keep the original basis order for the complement
    comp.sort(key=lambda v: next(i for i, a in enumerate(v) if a))
    labels = [alg.labels[next(i for i, a in enumerate(v) if a)] for v in comp]
    pars = [alg.parity_of(v) for v in comp]
    q = Quotient(alg, ideal, comp, None)
    table = {}
    for a in range(len(comp)):
        for b in range(len(comp)):
            w = q.project(alg.bracket(comp[a], comp[b]))
            if any(w):
                table[(a, b)] = {k: c for k, c in enumerate(w) if c}
    Q = SuperLieAlgebra(labels, pars, table, name=name or alg.name + "_quo")
    q.alg = Q
    report = validate(Q)
    if not report:
        raise AssertionError("quotient failed validation: %s" % report)
    return Q, q


# ---------------------------------------------------------------------------
# Bell-Musson triples
# ---------------------------------------------------------------------------

@dataclass
class BMTriple:
    z: tuple
    y: tuple
    x: tuple
    k: GradedSubspace
    y_square_zero: bool
    parity: int

    def check(self, alg, lam):
        """Assert every defining property by bracket evaluation."""
        n = alg.dim
        if any(alg.bracket(self.y, self.x)[i] != self.z[i] for i in range(n)):
            raise AssertionError("[y,x] != z")
        if dot(lam, self.z) != 1:
            raise AssertionError("lambda(z) != 1")
        if dot(lam, self.y):
            raise AssertionError("lambda(y) != 0")
        if self.y_square_zero and any(alg.bracket(self.y, self.y)):
            raise AssertionError("[y,y] != 0")
        if centralizer(alg, [self.y]) != self.k:
            raise AssertionError("k is not the centralizer of y")
        if (self.k + alg.span([self.x])) != alg.full_space() or self.k.contains(self.x):
            raise AssertionError("g != k + span(x)")
        zs = Span(n, [self.z])
        for j in range(n):
            if not zs.contains(alg.bracket(unit(n, j), self.y)):
                raise AssertionError("[g,y] not inside span(z)")
        return True


def second_center(alg, z):
    """{v : [v, g] ⊆ span(z)} as a graded subspace."""
    n = alg.dim
    forms = annihilator([z], n)
    parts = []
    for parity in (0, 1):
        idx = [i for i in range(n) if alg.parities[i] == parity]
        rows = []
        for j in range(n):
            cols = [alg.bracket(unit(n, i), unit(n, j)) for i in idx]
            for f in forms:
                rows.append([dot(f, c) for c in cols])
        sols = nullspace(rows, len(idx)) if rows else [unit(len(idx), a) for a in range(len(idx))]
        vecs = []
        for sol in sols:
            v = [ZERO] * n
            for a, i in enumerate(idx):
                v[i] = sol[a]
            vecs.append(tuple(v))
        parts.append(vecs)
    return GradedSubspace(alg.parities, parts[0], parts[1])


def find_bm_triple(alg, lam):
    """Deterministic choice of (z, y, x) with [y,x] = z, lambda(z) = 1, lambda(y) = 0."""
    lam = tuple(lam)
    if not is_nilpotent(alg):
        raise HypothesisError("algebra is not nilpotent")
    Z = center(alg)
    if Z.sdim != SuperDim(1, 0):
        raise HypothesisError("center must be one-dimensional and even, got sdim %s" % Z.sdim)
    z = Z.even.rows[0]
    lz = dot(lam, z)
    if not lz:
        raise HypothesisError("lambda vanishes on the center")
    z = tuple(a / lz for a in z)
    n = alg.dim
    Z2 = second_center(alg, z)
    zspan = alg.span([z])
    lifts0 = zspan.complement_basis(Z2)
    lifts0 = [v for v in lifts0 if alg.parity_of(v) == 0]
    y = None
    if lifts0:
        y0 = lifts0[0]
        ly = dot(lam, y0)
        y = tuple(a - ly * b for a, b in zip(y0, z))
        parity = 0
    else:
        L = list(Z2.odd.rows)
        if not L:
            raise HypothesisError("g/span(z) has trivial center")
        G = [[dot(lam, alg.bracket(u, v)) for v in L] for u in L]
        w = find_isotropic_vector(G, allow_roots=True)
        if w is None:
            raise HypothesisError(
                "odd lifts carry an anisotropic form (the dim-2 Clifford case belongs to the caller)"
            )
        y = lincomb(w, L, n)
        parity = 1
    # x: first solution of [y, x] = z among basis vectors of y's parity
    idx = [i for i in range(n) if alg.parities[i] == parity]
    cols = [alg.bracket(y, unit(n, i)) for i in idx]
    A = [[col[k] for col in cols] for k in range(n)]
    sol = solve(A, list(z), len(idx))
    if sol is None:
        raise HypothesisError("no x with [y,x] = z")
    x = [ZERO] * n
    for a, i in enumerate(idx):
        x[i] = sol[a]
    x = tuple(x)
    k = centralizer(alg, [y])
    triple = BMTriple(z, y, x, k, not any(alg.bracket(y, y)), parity)
    if parity == 1 and not triple.y_square_zero:
        raise HypothesisError("odd y with [y,y] != 0")
    triple.check(alg, lam)
    return triple
