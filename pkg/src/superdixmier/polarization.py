"""Functionals, the form lambda([x, y]) and polarizations."""

from dataclasses import dataclass, field

from .exactlin.graded import (
    EvenBilinearForm,
    GradedSubspace,
    find_isotropic_vector,
    is_maximal_isotropic,
    is_totally_isotropic,
    perp,
)
from .exactlin.linalg import ZERO, annihilator, dot, extend_basis, lincomb, nullspace, unit
from .exactlin.scalars import as_scalar
from .superlie import HypothesisError, is_nilpotent


class EngelFailure(HypothesisError):
    pass


class Functional(tuple):
    """Coefficient vector of an even functional (zero on odd basis vectors)."""

    def __new__(cls, alg, values):
        vals = tuple(as_scalar(v) for v in values)
        if len(vals) != alg.dim:
            raise ValueError("functional has %d entries, algebra has dimension %d" % (len(vals), alg.dim))
        for v, p in zip(vals, alg.parities):
            if p and v:
                raise ValueError("functional must vanish on odd basis vectors")
        return tuple.__new__(cls, vals)

    @classmethod
    def from_values(cls, alg, values):
        """From {label: scalar}."""
        v = [ZERO] * alg.dim
        for lab, c in values.items():
            v[alg.index(lab)] = as_scalar(c)
        return cls(alg, v)

    def __call__(self, v):
        return dot(self, v)


def in_L(alg, lam):
    """lambda([g_0, g_0]) = 0 (homogeneity is built into Functional)."""
    ev = alg.even_indices()
    return all(not dot(lam, alg.bracket_basis(i, j)) for i in ev for j in ev)


@dataclass
class LambdaForm:
    form: EvenBilinearForm
    kernel: GradedSubspace

    @property
    def A(self):
        """Even block."""
        ev = [i for i, p in enumerate(self.form.parities) if p == 0]
        return [[self.form.matrix[i][j] for j in ev] for i in ev]

    @property
    def B(self):
        """Odd block."""
        od = [i for i, p in enumerate(self.form.parities) if p == 1]
        return [[self.form.matrix[i][j] for j in od] for i in od]


def lambda_form(alg, lam, space=None):
    """The form <x, y> = lambda([x, y]) and its kernel (inside ``space`` if given)."""
    n = alg.dim
    M = [[dot(lam, alg.bracket_basis(i, j)) for j in range(n)] for i in range(n)]
    form = EvenBilinearForm(alg.parities, M, "superantisymmetric")
    V = alg.full_space() if space is None else space
    ker = perp(V, form, V)
    if not alg.is_subalgebra(ker):
        raise AssertionError("kernel of the lambda-form is not a subalgebra")
    return LambdaForm(form, ker)


def _restricted_gram(form, vectors):
    return [[form(u, v) for v in vectors] for u in vectors]


def max_isotropic_submodule(alg, form, V, acting, seed=None):
    """Acting-stable maximal totally isotropic subspace of V containing seed.

    V: GradedSubspace (typically purely odd); acting: list of even vectors of
    the algebra acting through ad; form: EvenBilinearForm on the algebra.
    """
    n = alg.dim
    acting = [tuple(a) for a in acting]
    W = seed if seed is not None else GradedSubspace.zero(alg.parities)
    if not W <= V:
        raise ValueError("seed is not inside V")
    for a in acting:
        for w in W.basis:
            if not W.contains(alg.bracket(a, w)):
                raise ValueError("seed is not stable under the acting algebra")
        for v in V.basis:
            if not V.contains(alg.bracket(a, v)):
                raise ValueError("V is not stable under the acting algebra")
        _check_nilpotent_on(alg, a, V)
    if not is_totally_isotropic(W, form):
        raise ValueError("seed is not isotropic")
    while True:
        Wp = perp(V, form, W)
        if Wp == W:
            return W
        reps = []
        for parity in (0, 1):
            reps += extend_basis(W.part(parity).rows, Wp.part(parity).rows, n)
        # N: classes u with [a, u] in W for every acting a
        Wforms = annihilator(W.basis, n) if W.dim else [unit(n, i) for i in range(n)]
        rows = []
        for a in acting:
            imgs = [alg.bracket(a, r) for r in reps]
            for f in Wforms:
                rows.append([dot(f, im) for im in imgs])
        sols = nullspace(rows, len(reps)) if rows else [unit(len(reps), i) for i in range(len(reps))]
        if not sols:
            raise EngelFailure("no jointly annihilated vector in W^perp/W; action is not nilpotent")
        N = [lincomb(s, reps, n) for s in sols]
        # keep N homogeneous: split by parity (reps are homogeneous, so each sol is too
        # only when it mixes none; project parity parts to be safe)
        Nh = []
        for vec in N:
            for parity in (0, 1):
                part = tuple(c if alg.parities[i] == parity else ZERO for i, c in enumerate(vec))
                if any(part) and part not in Nh:
                    Nh.append(part)
        Nh = extend_basis([], Nh, n)
        G = _restricted_gram(form, Nh)
        w = find_isotropic_vector(G, allow_roots=True)
        if w is None:
            return W
        vec = lincomb(w, Nh, n)
        W = W + GradedSubspace.span(alg.parities, [vec], split=True)


def _check_nilpotent_on(alg, a, V):
    cur = list(V.basis)
    for _ in range(V.dim + 1):
        cur = [alg.bracket(a, v) for v in cur]
        if not any(any(v) for v in cur):
            return
    raise EngelFailure("ad(%s) is not nilpotent on the module" % alg.format(a))


def _lcs_in(alg, space, acting_space):
    """[space, [acting, space], [acting, [acting, space]], ...] down to stability."""
    series = [space]
    while True:
        nxt = alg.bracket_spaces(acting_space, series[-1])
        if nxt == series[-1]:
            break
        series.append(nxt)
        if nxt.dim == 0:
            break
    return series


def vergne_flag(alg, space, acting_space=None):
    """Complete flag 0 ⊂ a_1 ⊂ ... ⊂ space refining the central series of
    ``space`` taken relative to ``acting_space`` (default: space itself)."""
    if acting_space is None:
        acting_space = space
    series = _lcs_in(alg, space, acting_space)
    if series[-1].dim != 0:
        raise HypothesisError("central series does not reach zero; algebra not nilpotent")
    n = alg.dim
    flag = []
    current = []
    for i in range(len(series) - 2, -1, -1):
        bigger = series[i].basis
        for v in extend_basis(current, bigger, n):
            current = current + [v]
            flag.append(list(current))
    return flag


def polarize_even(alg, lam, space=None, acting_space=None):
    """Vergne polarization of the even Lie algebra ``space`` (default g_0)."""
    if space is None:
        space = GradedSubspace(alg.parities, [unit(alg.dim, i) for i in alg.even_indices()])
    if space.odd.dim:
        raise ValueError("polarize_even expects a purely even subalgebra")
    flag = vergne_flag(alg, space, acting_space)
    n = alg.dim
    h = GradedSubspace.zero(alg.parities)
    M = [[dot(lam, alg.bracket_basis(i, j)) for j in range(n)] for i in range(n)]
    form = EvenBilinearForm(alg.parities, M)
    for a in flag:
        A = GradedSubspace(alg.parities, a)
        h = h + perp(A, form, A)
    return h


@dataclass
class Polarization:
    h: GradedSubspace
    lam: tuple
    ambient: GradedSubspace = None
    invariant: bool = None
    notes: list = field(default_factory=list)

    @property
    def sdim(self):
        return self.h.sdim


@dataclass
class PolarizationReport:
    subalgebra: bool
    subordinate: bool
    contains_kernel: bool
    maximal_isotropic: bool
    even_dimension: bool

    @property
    def ok(self):
        return all(
            (self.subalgebra, self.subordinate, self.contains_kernel, self.maximal_isotropic, self.even_dimension)
        )

    def __bool__(self):
        return self.ok


def check_polarization(alg, h, lam, ambient=None):
    """The four polarization invariants, plus the even dimension formula."""
    V = alg.full_space() if ambient is None else ambient
    lf = lambda_form(alg, lam, V)
    sub = alg.is_subalgebra(h) and h <= V
    subord = all(not dot(lam, alg.bracket(a, b)) for a in h.basis for b in h.basis)
    kern = lf.kernel <= h
    maxiso = is_maximal_isotropic(h, lf.form, V)
    evdim = 2 * h.even.dim == V.even.dim + lf.kernel.even.dim
    return PolarizationReport(sub, subord, kern, maxiso, evdim)


def polarize(alg, lam):
    """Polarization h = h_0 + V with V a g_0-stable maximal isotropic part of g_1."""
    if not is_nilpotent(alg):
        raise HypothesisError("polarizations are only constructed for nilpotent algebras")
    lam = tuple(lam)
    lf = lambda_form(alg, lam)
    n = alg.dim
    g0 = [unit(n, i) for i in alg.even_indices()]
    g1 = GradedSubspace(alg.parities, [], [unit(n, i) for i in alg.odd_indices()])
    V = max_isotropic_submodule(alg, lf.form, g1, g0)
    h0 = polarize_even(alg, lam)
    h = h0 + V
    rep = check_polarization(alg, h, lam)
    if not rep:
        raise AssertionError("constructed polarization fails its invariants: %s" % rep)
    return Polarization(h, lam)


def invariant_polarize(alg, k, lam, acting=None):
    """Polarization of the ideal k at lambda|k, aiming for stability under ``acting``.

    The odd part is stable under g_0 by construction.  The even part uses a
    Vergne flag of g_0-stable subspaces of k_0; stability of the result under
    the whole algebra is checked afterwards and reported in ``invariant``.
    """
    lam = tuple(lam)
    n = alg.dim
    if not alg.is_ideal(k):
        raise ValueError("k is not an ideal")
    acting_space = alg.full_space() if acting is None else acting
    g0 = GradedSubspace(alg.parities, [v for v in acting_space.even.rows])
    M = [[dot(lam, alg.bracket_basis(i, j)) for j in range(n)] for i in range(n)]
    form = EvenBilinearForm(alg.parities, M)
    k1 = GradedSubspace(alg.parities, [], k.odd.rows)
    V = max_isotropic_submodule(alg, form, k1, g0.basis)
    k0 = GradedSubspace(alg.parities, k.even.rows)
    h0 = polarize_even(alg, lam, k0, acting_space=g0)
    h = h0 + V
    rep = check_polarization(alg, h, lam, k)
    if not rep:
        # fall back to the plain flag of k_0
        h = polarize_even(alg, lam, k0) + V
        rep = check_polarization(alg, h, lam, k)
        if not rep:
            raise AssertionError("no polarization of k found: %s" % rep)
    invariant = alg.bracket_spaces(acting_space, h) <= h
    notes = [] if invariant else ["invariance not achieved"]
    return Polarization(h, lam, k, invariant, notes)
