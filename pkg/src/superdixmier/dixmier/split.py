"""Clifford normal form of the target, supercenter checks and the I^+/I^- split."""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from ..exactlin.graded import GradedSubspace, perp
from ..exactlin.linalg import Span, dot, unit
from ..exactlin.scalars import QQ, adjoin_sqrt, format_scalar
from ..pbw import CharacterError, LeftIdealReducer, mono_parity
from ..polarization import lambda_form, polarize
from .morphism import _linear_kernel, slice_elements
from .target import CliffordFactor, MatrixFactor, TargetAlgebra, TargetElement, WeylFactor, supercommutator

HALF = Fraction(1, 2)


# ---------------------------------------------------------------------------
# Clifford presentation
# ---------------------------------------------------------------------------

@dataclass
class CliffordPresentation:
    """Generators e_1..e_q with e_i^2 = 1, pairwise anticommuting.

    forward: target elements for the e_i; backward: each matrix/Clifford
    generator of the target as {sorted index tuple: coefficient} over
    Clifford monomials in the e_i.
    """

    target: TargetAlgebra
    forward: list
    backward: dict
    radicands: list

    def clifford_monomial(self, idx):
        out = self.target.one()
        for i in idx:
            out = out * self.forward[i]
        return out

    def express(self, expr):
        out = self.target.zero()
        for idx, c in expr.items():
            out = out + self.clifford_monomial(idx) * c
        return out

    def verify(self):
        fails = []
        one = self.target.one()
        for i, e in enumerate(self.forward):
            if e * e != one:
                fails.append("e_%d^2 != 1" % (i + 1))
            for j in range(i + 1, len(self.forward)):
                f = self.forward[j]
                if e * f + f * e:
                    fails.append("e_%d, e_%d do not anticommute" % (i + 1, j + 1))
        for (t, name), expr in self.backward.items():
            if self.express(expr) != self.target.generator(t, name):
                fails.append("backward image of %s_%d" % (name, t + 1))
        return fails


def canonicalize_clifford(target):
    i_unit = None
    forward, backward, rads = [], {}, []
    for t, f in enumerate(target.factors):
        if isinstance(f, MatrixFactor):
            if i_unit is None:
                _, i_unit = adjoin_sqrt(QQ, -1)
                rads.append("-1")
            E12 = target.generator(t, "E12")
            E21 = target.generator(t, "E21")
            k = len(forward)
            forward.append(E12 + E21)
            forward.append(E12 * (-i_unit) + E21 * i_unit)
            # E12 = (e1 + i e2)/2, E21 = (e1 - i e2)/2
            backward[(t, "E12")] = {(k,): HALF, (k + 1,): i_unit * HALF}
            backward[(t, "E21")] = {(k,): HALF, (k + 1,): -i_unit * HALF}
        elif isinstance(f, CliffordFactor):
            _, r = adjoin_sqrt(QQ, f.a)
            if not isinstance(r, Fraction):
                rads.append(format_scalar(f.a))
            k = len(forward)
            forward.append(target.generator(t, "g") * (1 / r))
            backward[(t, "g")] = {(k,): r}
    return CliffordPresentation(target, forward, backward, rads)


def full_matrix_check(target):
    """Clifford monomials are independent; for even q their commutant among them is scalar."""
    pres = canonicalize_clifford(target)
    fails = pres.verify()
    q = len(pres.forward)
    monos = [idx for r in range(q + 1) for idx in combinations(range(q), r)]
    vals = [pres.clifford_monomial(idx) for idx in monos]
    if _linear_kernel(vals):
        fails.append("Clifford monomials are dependent")
    if q % 2 == 0:
        # ungraded center of Cliff_q is k for q even
        for idx in monos[1:]:
            m = vals[monos.index(idx)]
            if all(m * e == e * m for e in pres.forward):
                fails.append("monomial %s is central" % (idx,))
    return fails


def supercenter_check(target, degree=3):
    """Basis of the supercenter among elements of Weyl degree <= degree, per parity."""
    parts = [f_keys(f, degree) for f in target.factors]
    keys = [()]
    for opts in parts:
        keys = [k + (o,) for k in keys for o in opts]
    keys = [k for k in keys if _weyl_degree(target, k) <= degree]
    gens = [g for _, g in target.all_generators()]
    result = {}
    for parity in (0, 1):
        ks = [k for k in keys if target.key_parity(k) == parity]
        if not ks:
            result[parity] = []
            continue
        cols = []
        for k in ks:
            b = target.basis_element(k)
            merged = {}
            for gi, g in enumerate(gens):
                for kk, c in supercommutator(b, g).terms.items():
                    merged[(gi, kk)] = c
            cols.append(merged)
        sols = _linear_kernel(cols)
        result[parity] = [TargetElement(target, {k: c for k, c in zip(ks, s) if c}) for s in sols]
    return result


def f_keys(f, degree):
    if isinstance(f, WeylFactor):
        return [(a, b) for a in range(degree + 1) for b in range(degree + 1 - a)]
    if isinstance(f, MatrixFactor):
        return [(0, 0), (0, 1), (1, 0), (1, 1)]
    return [0, 1]


def _weyl_degree(target, key):
    return sum(f.degree(k) for f, k in zip(target.factors, key))


def supercenter_is_scalar(target, degree=3):
    res = supercenter_check(target, degree)
    if res[1] or len(res[0]) != 1:
        return False
    (s,) = res[0]
    one = target.one()
    lead = next(iter(one.terms))
    return s.terms.get(lead) and s * (1 / s.terms[lead]) == one


# ---------------------------------------------------------------------------
# I^+ / I^-
# ---------------------------------------------------------------------------

@dataclass
class SplitReport:
    maximal: bool
    q: int
    checks: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)
    plus: object = None
    minus: object = None

    @property
    def ok(self):
        return all(self.checks.values())

    def to_json(self):
        out = {"q": self.q, "already_maximal": self.maximal,
               "checks": {k: bool(v) for k, v in self.checks.items()}}
        if self.notes:
            out["notes"] = list(self.notes)
        return out


class SignedOracle:
    """u in I^s(lambda) iff ev_s(pi(u)) = 0, where ev_s sends epsilon to s*sqrt(a)."""

    def __init__(self, m, s):
        self.m = m
        self.s = s
        t = m.clifford_index
        if t != 0:
            raise AssertionError("Clifford factor must be the deepest factor")
        T = m.target
        self.a = T.factors[0].a
        _, self.root = adjoin_sqrt(QQ, self.a)
        self.reduced = TargetAlgebra(T.factors[1:])
        P = self.reduced.one()
        for j, f in enumerate(self.reduced.factors):
            if isinstance(f, MatrixFactor):
                P = P * (self.reduced.generator(j, "E12") * self.reduced.generator(j, "E21")
                         - self.reduced.generator(j, "E21") * self.reduced.generator(j, "E12"))
        self.P = P

    def ev(self, X):
        out0 = {}
        out1 = {}
        for key, c in X.terms.items():
            (out1 if key[0] else out0)[key[1:]] = c
        R = self.reduced
        res = TargetElement(R, out0)
        if out1:
            res = res + self.P * TargetElement(R, out1) * (self.s * self.root)
        return res

    def __call__(self, u):
        return self.ev(self.m(u))

    def member(self, u):
        return not self(u)


def epsilon_element(m):
    T = m.target
    key_parts = [[(1, Fraction(1))]]
    for f in T.factors[1:]:
        if isinstance(f, MatrixFactor):
            key_parts.append([((0, 0), Fraction(1)), ((1, 1), Fraction(-1))])
        else:
            key_parts.append(f.one())
    terms = {(): Fraction(1)}
    for parts in key_parts:
        terms = {k + (kk,): c * cc for k, c in terms.items() for kk, cc in parts}
    return TargetElement(T, terms)


def _sigma_span(span, monos, alg):
    signs = [(-1) ** mono_parity(alg, e) for e in monos]
    return Span(span.n, [tuple(c * s for c, s in zip(v, signs)) for v in span.rows])


def _reduction_slice(alg, tail, chi, monos):
    red = LeftIdealReducer(alg, tail, chi)
    return Span(len(monos), _linear_kernel([red.reduce(u) for u in monos]))


def ideal_route(m, monos, Kp, Km):
    """Extended polarization h + span(c), lambda([c,c]) = 2, characters lambda +- c*."""
    alg, lam = m.alg, m.lam
    h = polarize(alg, lam).h
    form = lambda_form(alg, lam).form
    n = alg.dim
    g1 = GradedSubspace(alg.parities, [], [unit(n, i) for i in alg.odd_indices()])
    h1 = GradedSubspace(alg.parities, [], h.odd.rows)
    h1p = perp(g1, form, h1)
    comp = h1.complement_basis(within=h1p)
    if len(comp) != 1:
        return {"dim": False}, ["h1-perp/h1 has dimension %d" % len(comp)]
    c = comp[0]
    beta = form(c, c)
    if not beta:
        return {"anisotropic": False}, ["lambda([c,c]) = 0"]
    _, r = adjoin_sqrt(QQ, 2 / beta)
    c = tuple(a * r for a in c)
    hat = h + alg.span([c])
    notes = ["c = %s" % alg.format(c)]
    if not alg.is_subalgebra(hat):
        return {}, notes + ["h + span(c) is not a subalgebra; cross-check skipped"]
    base_chi = [dot(lam, b) for b in h.basis]
    try:
        SJ = _reduction_slice(alg, h.basis, base_chi, monos)
        SJp = _reduction_slice(alg, list(h.basis) + [c], base_chi + [Fraction(1)], monos)
        SJm = _reduction_slice(alg, list(h.basis) + [c], base_chi + [Fraction(-1)], monos)
    except CharacterError as exc:
        return {}, notes + ["character check failed (%s); cross-check skipped" % exc]
    checks = {
        "ideal_intersection": SJp.intersect(SJm) == SJ,
        # which sign of c matches which evaluation is a convention
        "ideal_contains": (Kp <= SJp and Km <= SJm) or (Kp <= SJm and Km <= SJp),
    }
    return checks, notes


def split_maximal(m, N=3, cross_check=True):
    if m.q % 2 == 0:
        rep = SplitReport(True, m.q)
        rep.checks["supercenter_scalar"] = supercenter_is_scalar(m.target)
        rep.checks["full_matrix"] = not full_matrix_check(m.target)
        return rep
    rep = SplitReport(False, m.q)
    T = m.target
    eps = epsilon_element(m)
    gens = [g for _, g in T.all_generators()]
    rep.checks["epsilon_central"] = all(eps * g == g * eps for g in gens)
    rep.checks["epsilon_square"] = eps * eps == T.scalar(T.factors[0].a)
    plus, minus = SignedOracle(m, 1), SignedOracle(m, -1)
    rep.plus, rep.minus = plus, minus
    alg = m.alg
    # each evaluation is an algebra map on generators
    for name, orc in (("plus", plus), ("minus", minus)):
        ims = [orc.ev(im) for im in m.images]
        ok = True
        for i in range(alg.dim):
            for j in range(i, alg.dim):
                sgn = (-1) ** (alg.parities[i] * alg.parities[j])
                lhs = ims[i] * ims[j] - ims[j] * ims[i] * sgn
                rhs = orc.reduced.zero()
                for k, cc in alg.structure(i, j):
                    rhs = rhs + ims[k] * cc
                ok = ok and lhs == rhs
        rep.checks["morphism_" + name] = ok
    monos, elems = slice_elements(alg, N)
    K = Span(len(monos), _linear_kernel([m(u) for u in elems]))
    Kp = Span(len(monos), _linear_kernel([plus(u) for u in elems]))
    Km = Span(len(monos), _linear_kernel([minus(u) for u in elems]))
    rep.checks["sigma_swaps"] = _sigma_span(Kp, monos, alg) == Km
    rep.checks["contain_plus"] = K <= Kp
    rep.checks["contain_minus"] = K <= Km
    rep.checks["intersection"] = Kp.intersect(Km) == K
    rep.checks["proper"] = Kp.dim > K.dim and Km.dim > K.dim
    if cross_check:
        checks, notes = ideal_route(m, elems, Kp, Km)
        rep.checks.update(checks)
        rep.notes.extend(notes)
    return rep
