"""Recursive construction of pi_lambda: U(g) -> factored Clifford-Weyl algebra.

Each recursion level either quotients by central elements in ker(lambda),
splits off one tensor factor along a Bell-Musson triple, or terminates.
Factors accumulate deepest level first.  The central element z of every
level is sent to 1, so the unlocalized composite has kernel I(lambda).
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial

from ..exactlin.graded import GradedSubspace
from ..exactlin.linalg import ZERO, Span, dot, nullspace, unit
from ..exactlin.scalars import QQ, common_tower, format_scalar, tower_of
from ..pbw import evaluate, monomial, monomials
from ..polarization import lambda_form
from ..superlie import (
    HypothesisError,
    Inclusion,
    center,
    find_bm_triple,
    is_nilpotent,
    quotient,
    subalgebra,
)
from .target import (
    CliffordFactor,
    MatrixFactor,
    TargetAlgebra,
    WeylFactor,
    supercommutator,
    tensor_right,
)

_MATRIX_ONE = [((0, 0), Fraction(1)), ((1, 1), Fraction(1))]
_E12 = [((0, 1), Fraction(1))]
_E21 = [((1, 0), Fraction(1))]


@dataclass
class Step:
    """One recursion level: the algebra there, its generator images and what was done."""

    kind: str  # quotient | even | odd | clifford | evaluation
    depth: int
    algebra: object
    lam: tuple
    target: TargetAlgebra
    images: list
    details: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, "depth": self.depth, "sdim": str(self.algebra.sdim), **self.details}


def _vec_str(alg, v):
    return alg.format(v)


def _lam_vanishes_on_derived(L, lam):
    n = L.dim
    return all(not dot(lam, L.bracket_basis(i, j)) for i in range(n) for j in range(i, n))


def _central_kernel(L, lam):
    """Z(L) ∩ ker(lam) as a graded subspace."""
    Z = center(L)
    ev = Z.even.rows
    vals = [[dot(lam, v) for v in ev]]
    keep = []
    for sol in nullspace(vals, len(ev)) if ev else []:
        keep.append(tuple(sum((c * v[k] for c, v in zip(sol, ev)), ZERO) for k in range(L.dim)))
    return GradedSubspace(L.parities, keep, Z.odd.rows)


def _combine(coords, images, target):
    out = target.zero()
    for c, im in zip(coords, images):
        if c:
            out = out + im * c
    return out


def _build(L, lam, depth, steps):
    n = L.dim
    lam = tuple(lam)
    if _lam_vanishes_on_derived(L, lam):
        T = TargetAlgebra(())
        images = [T.scalar(lam[i]) for i in range(n)]
        steps.append(Step("evaluation", depth, L, lam, T, images,
                          {"values": {L.labels[i]: format_scalar(lam[i]) for i in range(n) if lam[i]}}))
        return T, images

    c = _central_kernel(L, lam)
    if c.dim:
        Q, qm = quotient(L, c)
        lamQ = [dot(lam, v) for v in qm.complement]
        T, imgsQ = _build(Q, lamQ, depth + 1, steps)
        images = [_combine(qm.project(unit(n, i)), imgsQ, T) for i in range(n)]
        steps.append(Step("quotient", depth, L, lam, T, images,
                          {"quotient_by": [_vec_str(L, v) for v in c.basis]}))
        return T, images

    Z = center(L)
    if n == 2 and len(L.odd_indices()) == 1:
        (z,) = Z.even.rows
        z = tuple(a / dot(lam, z) for a in z)
        (yi,) = L.odd_indices()
        a = dot(lam, L.bracket_basis(yi, yi)) / 2
        T = TargetAlgebra((CliffordFactor(a),))
        images = [None] * n
        for i in range(n):
            images[i] = T.basis_element((1,)) if i == yi else T.scalar(lam[i])
        steps.append(Step("clifford", depth, L, lam, T, images,
                          {"z": _vec_str(L, z), "y": L.labels[yi], "a": format_scalar(a)}))
        return T, images

    tri = find_bm_triple(L, lam)
    kb = list(tri.k.basis)
    K, incl = subalgebra(L, kb, name="%s_k" % L.name)
    ycoords = incl.coordinates(tri.y)
    Kq, qk = quotient(K, GradedSubspace.span(K.parities, [tuple(ycoords)]))
    lamK = [dot(lam, incl.image(v)) for v in qk.complement]
    Tk, imgs_k = _build(Kq, lamK, depth + 1, steps)

    def pi_k(w):
        return _combine(qk.project(incl.coordinates(w)), imgs_k, Tk)

    x = tri.x
    split = Inclusion(L, kb + [x], None)
    if tri.parity == 0:
        T = TargetAlgebra(Tk.factors + (WeylFactor(),))
        phi_x = tensor_right(Tk.one(), T, [((0, 1), Fraction(1))])

        def phi_w(w):
            out = T.zero()
            cur, m = w, 0
            while any(cur):
                coeff = Fraction((-1) ** m, factorial(m))
                out = out + tensor_right(pi_k(cur), T, [((m, 0), coeff)])
                cur = L.bracket(x, cur)
                m += 1
                if m > n + 1:
                    raise HypothesisError("ad(x) is not nilpotent")
            return out

        kind = "even"
    else:
        T = TargetAlgebra(Tk.factors + (MatrixFactor(),))
        half_xx = tuple(a / 2 for a in L.bracket(x, x))
        phi_x = tensor_right(pi_k(half_xx), T, _E12) + tensor_right(Tk.one(), T, _E21)

        def phi_w(w):
            sgn = 1 if L.parity_of(w) else -1  # (-1)^{|w|+1}
            return tensor_right(pi_k(w), T, _MATRIX_ONE) + tensor_right(pi_k(L.bracket(x, w)), T, _E12) * sgn

        kind = "odd"
    kimgs = [phi_w(w) for w in kb]
    images = []
    for i in range(n):
        co = split.coordinates(unit(n, i))
        im = _combine(co[:-1], kimgs, T)
        if co[-1]:
            im = im + phi_x * co[-1]
        images.append(im)
    steps.append(Step(kind, depth, L, lam, T, images,
                      {"z": _vec_str(L, tri.z), "y": _vec_str(L, tri.y), "x": _vec_str(L, x),
                       "k": [_vec_str(L, v) for v in kb]}))
    return T, images


class DixmierMorphism:
    """pi_lambda with its step list (outermost level first)."""

    def __init__(self, alg, lam, steps, target, images):
        self.alg = alg
        self.lam = tuple(lam)
        self.steps = steps
        self.target = target
        self.images = images
        self.p = sum(1 for f in target.factors if isinstance(f, WeylFactor))
        self.q = sum(2 if isinstance(f, MatrixFactor) else 1 if isinstance(f, CliffordFactor) else 0
                     for f in target.factors)
        self._power_cache = {}

    def __call__(self, u):
        if u.alg is not self.alg:
            raise ValueError("element from another algebra")
        return evaluate(u, self.images, self.target.one(), self._power_cache)

    def member(self, u):
        return not self(u)

    @property
    def clifford_index(self):
        for t, f in enumerate(self.target.factors):
            if isinstance(f, CliffordFactor):
                return t
        return None

    def radicands(self):
        T = QQ
        for im in self.images:
            for c in im.terms.values():
                T = common_tower(T, tower_of(c))[0]
        for f in self.target.factors:
            if isinstance(f, CliffordFactor):
                T = common_tower(T, tower_of(f.a))[0]
        return [format_scalar(r) for r in T.radicands]

    def generator_images(self):
        return {lab: str(im) for lab, im in zip(self.alg.labels, self.images)}

    def to_json(self):
        return {
            "p": self.p,
            "q": self.q,
            "target": self.target.describe(),
            "steps": [s.to_json() for s in self.steps],
            "adjoined_radicands": self.radicands(),
            "generator_images": self.generator_images(),
        }


def build_dixmier(alg, lam):
    if not is_nilpotent(alg):
        raise HypothesisError("the Dixmier construction needs a nilpotent algebra")
    lam = tuple(lam)
    for i in alg.odd_indices():
        if lam[i]:
            raise ValueError("functional must vanish on odd basis vectors")
    steps = []
    T, images = _build(alg, lam, 0, steps)
    steps.reverse()
    return DixmierMorphism(alg, lam, steps, T, images)


def member(m, u):
    return m.member(u)


@dataclass
class StepReport:
    ok: bool
    failures: list

    def __bool__(self):
        return self.ok


def _check_images(L, images):
    fails = []
    n = L.dim
    for i in range(n):
        bad = images[i].parities() - {L.parities[i]}
        if bad:
            fails.append("image of %s is not of parity %d" % (L.labels[i], L.parities[i]))
    for i in range(n):
        for j in range(i, n):
            lhs = supercommutator(images[i], images[j])
            rhs = _combine(L.bracket_basis(i, j), images, images[i].target)
            if lhs != rhs:
                fails.append("[%s, %s]" % (L.labels[i], L.labels[j]))
    return fails


def validate_step_images(m):
    """Every level's generator images respect every bracket of that level."""
    fails = []
    for s in m.steps:
        for f in _check_images(s.algebra, s.images):
            fails.append("depth %d (%s): %s" % (s.depth, s.kind, f))
    return StepReport(not fails, fails)


def pq_formula(alg, lam):
    """((dim g0 - dim g0^lam)/2, dim g1 - dim g1^lam)."""
    ker = lambda_form(alg, lam).kernel
    n0 = len(alg.even_indices())
    n1 = len(alg.odd_indices())
    return (n0 - ker.even.dim) // 2, n1 - ker.odd.dim


# ---------------------------------------------------------------------------
# kernel slices
# ---------------------------------------------------------------------------

def _linear_kernel(values, zero_check=None):
    """Nullspace of the map e_j -> values[j] (TargetElements or dicts)."""
    keys = {}
    for v in values:
        for k in (v.terms if hasattr(v, "terms") else v):
            keys.setdefault(k, len(keys))
    rows = [[ZERO] * len(values) for _ in keys]
    for j, v in enumerate(values):
        for k, c in (v.terms if hasattr(v, "terms") else v).items():
            rows[keys[k]][j] = c
    if not rows:
        return [unit(len(values), j) for j in range(len(values))]
    return nullspace(rows, len(values))


def slice_elements(alg, N):
    """(exponent tuples, PBW monomials) spanning F^N."""
    exps = monomials(alg, N)
    return exps, [monomial(alg, e) for e in exps]


def kernel_slice(m, N):
    """(exponent tuples of F^N, Span of ker pi_lambda ∩ F^N in those coordinates)."""
    exps, elems = slice_elements(m.alg, N)
    return exps, Span(len(exps), _linear_kernel([m(u) for u in elems]))


def slice_element(alg, exps, v):
    """The PBW element with coordinates v over the monomials exps."""
    return sum((monomial(alg, e, c) for e, c in zip(exps, v) if c), monomial(alg, exps[0], 0))


def even_part_ideal_check(m, m0=None, N=3):
    """I(lam) ∩ U(g0) ⊆ I(lam|g0) on the degree-N slice of U(g0)."""
    alg = m.alg
    ev = alg.even_indices()
    if m0 is None:
        G0, _ = subalgebra(alg, [unit(alg.dim, i) for i in ev], labels=[alg.labels[i] for i in ev],
                           name=alg.name + "_0")
        m0 = build_dixmier(G0, [m.lam[i] for i in ev])
    G0 = m0.alg
    monos0 = monomials(G0, N)
    lifted = []
    for e in monos0:
        full = [0] * alg.dim
        for a, i in enumerate(ev):
            full[i] = e[a]
        lifted.append(monomial(alg, full))
    K = _linear_kernel([m(u) for u in lifted])
    fails = []
    for v in K:
        w = slice_element(G0, monos0, v)
        if not m0.member(w):
            fails.append(str(w))
    return StepReport(not fails, fails), len(K)
