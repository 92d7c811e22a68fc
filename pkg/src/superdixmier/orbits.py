"""Coadjoint action through exp(ad x), orbit comparison and stabilizer bounds."""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from .dixmier import build_dixmier, kernel_slice
from .dixmier.morphism import slice_element
from .exactlin.graded import GradedSubspace
from .exactlin.linalg import ZERO, dot, identity, inverse, mat_mul, mat_vec, nullspace, unit
from .exactlin.scalars import as_scalar, format_scalar
from .pbw import evaluate, from_vector, generator, one, zero
from .polarization import Functional
from .superlie import HypothesisError, center, is_nilpotent, subalgebra


class AdjointAutomorphism:
    """exp(ad x_1) ... exp(ad x_r) as a matrix on g (columns are images of basis vectors)."""

    def __init__(self, alg, matrix, xs=()):
        self.alg = alg
        self.matrix = [list(r) for r in matrix]
        self.xs = [tuple(x) for x in xs]
        self._inv = None

    def __call__(self, v):
        return tuple(mat_vec(self.matrix, v))

    @property
    def inverse_matrix(self):
        if self._inv is None:
            self._inv = inverse(self.matrix)
        return self._inv

    def compose(self, other):
        """self ∘ other."""
        return AdjointAutomorphism(self.alg, mat_mul(self.matrix, other.matrix), other.xs + self.xs)

    def inverse(self):
        return AdjointAutomorphism(self.alg, self.inverse_matrix, [tuple(-a for a in x) for x in reversed(self.xs)])

    def preserves_brackets(self):
        n = self.alg.dim
        cols = [self(unit(n, i)) for i in range(n)]
        for i in range(n):
            for j in range(i, n):
                lhs = self(self.alg.bracket_basis(i, j))
                if tuple(lhs) != tuple(self.alg.bracket(cols[i], cols[j])):
                    return False
        return True

    def on_pbw(self, u):
        n = self.alg.dim
        images = [from_vector(self.alg, self(unit(n, i))) for i in range(n)]
        return evaluate(u, images, one(self.alg))

    def is_identity(self):
        return self.matrix == identity(self.alg.dim)


def identity_automorphism(alg):
    return AdjointAutomorphism(alg, identity(alg.dim))


def exp_ad(alg, x):
    x = tuple(as_scalar(a) for a in x)
    if alg.parity_of(x) == 1:
        raise ValueError("exp(ad x) needs an even x")
    if not is_nilpotent(alg):
        raise HypothesisError("exp(ad x) is only finite for nilpotent algebras")
    n = alg.dim
    A = alg.ad_matrix(x)
    total = identity(n)
    P = identity(n)
    for k in range(1, n + 1):
        P = mat_mul(A, P)
        if not any(any(r) for r in P):
            break
        f = Fraction(1, factorial(k))
        total = [[a + f * b for a, b in zip(r1, r2)] for r1, r2 in zip(total, P)]
    aut = AdjointAutomorphism(alg, total, [x])
    if not aut.preserves_brackets():
        raise AssertionError("exp(ad x) does not preserve brackets")
    return aut


def coadjoint(A, lam):
    """(A.lam)(v) = lam(A^{-1} v)."""
    Ainv = A.inverse_matrix
    n = A.alg.dim
    vals = [sum((lam[k] * Ainv[k][i] for k in range(n)), ZERO) for i in range(n)]
    return Functional(A.alg, vals)


def apply_witness(alg, lam, xs):
    """Apply exp(ad x) for x in xs (first element first)."""
    mu = Functional(alg, lam)
    for x in xs:
        mu = coadjoint(exp_ad(alg, x), mu)
    return mu


# ---------------------------------------------------------------------------
# orbit comparison
# ---------------------------------------------------------------------------

@dataclass
class OrbitVerdict:
    kind: str  # equal_with_witness | equal_by_ideal_slice | distinct_with_separator | inconclusive
    witness: list = None
    separator: object = None
    degree: int = None
    details: dict = field(default_factory=dict)

    @property
    def equal(self):
        return self.kind.startswith("equal")

    def to_json(self, alg):
        out = {"verdict": self.kind}
        if self.degree is not None:
            out["degree"] = self.degree
        if self.witness is not None:
            out["witness"] = [[format_scalar(a) for a in x] for x in self.witness]
            out["witness_text"] = [alg.format(x) for x in self.witness]
        if self.separator is not None:
            out["separator"] = str(self.separator)
        out.update(self.details)
        return out


def _coadjoint_polys(alg, mu, x):
    """Coefficients c[j][k] with (exp(ad tx).mu)(e_j) = sum_k c[j][k] t^k."""
    n = alg.dim
    A = alg.ad_matrix(x)
    coeffs = [[mu[j]] for j in range(n)]
    P = identity(n)
    k = 0
    while True:
        k += 1
        P = mat_mul(A, P)
        if not any(any(r) for r in P) or k > n:
            break
        f = Fraction((-1) ** k, factorial(k))
        for j in range(n):
            coeffs[j].append(f * sum((mu[r] * P[r][j] for r in range(n)), ZERO))
    return coeffs


def _mismatch(mu, target):
    return sum(1 for a, b in zip(mu, target) if a != b)


def _greedy(alg, mu, target, xs_order, max_passes):
    witness = []
    for _ in range(max_passes):
        if tuple(mu) == tuple(target):
            return mu, witness
        improved = False
        for x in xs_order:
            polys = _coadjoint_polys(alg, mu, x)
            for j, c in enumerate(polys):
                if mu[j] == target[j]:
                    continue
                if len(c) < 2 or not c[1] or any(c[2:]):
                    continue
                t = (target[j] - c[0]) / c[1]
                xt = tuple(a * t for a in x)
                new = coadjoint(exp_ad(alg, xt), mu)
                if _mismatch(new, target) < _mismatch(mu, target):
                    mu = new
                    witness.append(xt)
                    improved = True
                    break
        if not improved:
            break
    return mu, witness


def _sweep_order(alg):
    """Even basis vectors, outermost central-series layer first."""
    from .superlie import lower_central_series

    series = lower_central_series(alg)
    ev = alg.even_indices()

    def layer(i):
        v = unit(alg.dim, i)
        d = 0
        for s in series:
            if s.contains(v):
                d += 1
        return d

    return [unit(alg.dim, i) for i in sorted(ev, key=lambda i: (layer(i), i))]


def _slice_compare(alg, m1, m2, D):
    exps, K1 = kernel_slice(m1, D)
    _, K2 = kernel_slice(m2, D)
    for v in K1.rows:
        if not K2.contains(v):
            return slice_element(alg, exps, v)
    for v in K2.rows:
        if not K1.contains(v):
            return slice_element(alg, exps, v)
    return None


def orbit_equal(alg, lam1, lam2, degree=3, tries=8, seed=0):
    lam1 = Functional(alg, lam1)
    lam2 = Functional(alg, lam2)
    if tuple(lam1) == tuple(lam2):
        return OrbitVerdict("equal_with_witness", witness=[], degree=degree)
    for v in center(alg).basis:
        a, b = dot(lam1, v), dot(lam2, v)
        if a != b:
            u = sum((generator(alg, i) * c for i, c in enumerate(v) if c), zero(alg)) - a
            return OrbitVerdict("distinct_with_separator", separator=u, degree=0,
                                details={"reason": "central values differ on %s" % alg.format(v)})
    m1, m2 = build_dixmier(alg, lam1), build_dixmier(alg, lam2)
    sep = _slice_compare(alg, m1, m2, degree)
    if sep is not None:
        return OrbitVerdict("distinct_with_separator", separator=sep, degree=degree,
                            details={"reason": "kernel slices differ"})
    order = _sweep_order(alg)
    mu, wit = _greedy(alg, lam1, lam2, order, 2 * alg.dim + 2)
    if tuple(mu) == tuple(lam2):
        return OrbitVerdict("equal_with_witness", witness=wit, degree=degree)
    for k in range(tries):
        rng = random.Random(seed * 1000003 + k)
        pre = []
        mu = lam1
        for _ in range(rng.randint(1, 3)):
            x = order[rng.randrange(len(order))] if order else None
            if x is None:
                break
            t = Fraction(rng.randint(-3, 3), rng.randint(1, 3))
            if not t:
                continue
            xt = tuple(a * t for a in x)
            mu = coadjoint(exp_ad(alg, xt), mu)
            pre.append(xt)
        shuffled = list(order)
        rng.shuffle(shuffled)
        mu, wit = _greedy(alg, mu, lam2, shuffled, 2 * alg.dim + 2)
        if tuple(mu) == tuple(lam2):
            return OrbitVerdict("equal_with_witness", witness=pre + wit, degree=degree, details={"try": k})
    if degree < 1:
        return OrbitVerdict("inconclusive", degree=degree)
    return OrbitVerdict("equal_by_ideal_slice", degree=degree)


# ---------------------------------------------------------------------------
# ideal invariance and stabilizers
# ---------------------------------------------------------------------------

@dataclass
class InvarianceReport:
    ok: bool
    checked: int
    failures: list = field(default_factory=list)

    def __bool__(self):
        return self.ok


def ideal_invariance_check(m, A, N=3):
    """A_U maps ker(pi_lambda) ∩ F^N into ker(pi_lambda)."""
    exps, K = kernel_slice(m, N)
    fails = []
    for v in K.rows:
        u = slice_element(m.alg, exps, v)
        if not m.member(A.on_pbw(u)):
            fails.append(str(u))
    return InvarianceReport(not fails, K.dim, fails)


def _apply_derivation(u, D_images, parity):
    """Super-derivation of U(K) given by its values on generators (all of parity ``parity``)."""
    alg = u.alg
    out = zero(alg)
    for m, c in u.terms.items():
        word = [i for i, e in enumerate(m) for _ in range(e)]
        for pos, i in enumerate(word):
            pre_par = sum(alg.parities[j] for j in word[:pos]) % 2
            left = one(alg)
            for j in word[:pos]:
                left = left * generator(alg, j)
            right = one(alg)
            for j in word[pos + 1:]:
                right = right * generator(alg, j)
            term = left * D_images[i] * right
            out = out + (term * (-c) if parity and pre_par else term * c)
    return out


@dataclass
class StabilizerBound:
    space: GradedSubspace
    g_prime: GradedSubspace
    checks: dict = field(default_factory=dict)

    @property
    def ok(self):
        return all(self.checks.values())


def stabilizer_bound(alg, lam, k, N=3):
    """g' + k with g' = {x : lambda([x, k]) = 0}, checked to stabilize I(lambda|k) on F^N."""
    if not alg.is_ideal(k):
        raise ValueError("k is not an ideal")
    n = alg.dim
    parts = []
    for parity in (0, 1):
        idx = [i for i in range(n) if alg.parities[i] == parity]
        rows = [[dot(lam, alg.bracket(unit(n, i), y)) for i in idx] for y in k.basis]
        sols = nullspace(rows, len(idx)) if rows and idx else [unit(len(idx), a) for a in range(len(idx))]
        vecs = []
        for s in sols:
            v = [ZERO] * n
            for a, i in enumerate(idx):
                v[i] = s[a]
            vecs.append(tuple(v))
        parts.append(vecs)
    gp = GradedSubspace(alg.parities, parts[0], parts[1])
    bound = gp + k
    K, incl = subalgebra(alg, k.basis, name=alg.name + "_k")
    lamk = [dot(lam, b) for b in k.basis]
    mk = build_dixmier(K, lamk)
    exps, Ks = kernel_slice(mk, N)
    kernel = [slice_element(K, exps, v) for v in Ks.rows]
    checks = {}
    for x in bound.basis:
        px = alg.parity_of(x)
        D = [from_vector(K, incl.coordinates(alg.bracket(x, b))) for b in k.basis]
        ok = all(mk.member(_apply_derivation(u, D, px)) for u in kernel)
        checks["ad(%s)" % alg.format(x)] = ok
    return StabilizerBound(bound, gp, checks)
