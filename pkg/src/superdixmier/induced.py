"""Truncated induced modules ind(lambda|h, g).

A vector is a dict from complement exponent tuples to scalars: the tuple a
stands for x^a ⊗ v, where x runs over a complement of h and v spans the
one-dimensional h-module given by lambda.  The complement is ordered as a
basis of ``outer``/h followed by a basis of g/``outer``; the filtration
degree used by descent counts only the second group.
"""

from dataclasses import dataclass

from .exactlin.linalg import Span, ZERO, dot, nullspace
from .exactlin.scalars import as_scalar, format_scalar
from .fmt import format_sum
from .pbw import LeftIdealReducer, evaluate, format_monomial, from_vector, monomial, monomials, one
from .superlie import subalgebra


class TruncationOverflow(ArithmeticError):
    """A product would leave the truncation V_M."""


class DescentFailure(RuntimeError):
    pass


def _add_into(out, terms, scale=1):
    for k, c in terms.items():
        v = out.get(k, 0) + c * scale
        if v:
            out[k] = v
        else:
            out.pop(k, None)
    return out


class InducedTruncation:
    def __init__(self, alg, h, lam, M, parity=0, outer=None):
        self.alg = alg
        self.h = h
        self.lam = tuple(as_scalar(c) for c in lam)
        self.M = M
        self.parity = parity
        if outer is None:
            outer = h
        if not h <= outer:
            raise ValueError("h must lie inside the outer subalgebra")
        self.outer = outer
        inner = h.complement_basis(within=outer)
        rest = outer.complement_basis()
        self.complement = list(inner) + list(rest)
        self.nc = len(self.complement)
        self.counted = [False] * len(inner) + [True] * len(rest)
        chi = [dot(self.lam, b) for b in h.basis]
        self.reducer = LeftIdealReducer(alg, h.basis, chi, complement=self.complement)
        self.labels = self.reducer.rebased.labels[: self.nc]
        self._cpar = self.reducer.rebased.parities[: self.nc]
        self._ntail = len(h.basis)
        self._mono_cache = {}

    # -- bookkeeping --------------------------------------------------------

    def basis(self, degree=None):
        """Complement exponent tuples of total degree <= degree (default M)."""
        d = self.M if degree is None else degree
        out = []

        def rec(i, left, cur):
            if i == self.nc:
                out.append(tuple(cur))
                return
            top = min(left, 1) if self._cpar[i] else left
            for e in range(top + 1):
                cur.append(e)
                rec(i + 1, left - e, cur)
                cur.pop()

        rec(0, d, [])
        out.sort(key=lambda m: (sum(m), [-e for e in m]))
        return out

    def vector(self, exps, coeff=1):
        exps = tuple(exps)
        if len(exps) != self.nc:
            raise ValueError("expected %d exponents" % self.nc)
        return {exps: as_scalar(coeff)}

    def one(self):
        return {(0,) * self.nc: as_scalar(1)}

    @staticmethod
    def degree(t):
        return max((sum(m) for m in t), default=-1)

    def filtration_degree(self, t):
        return max((sum(e for e, c in zip(m, self.counted) if c) for m in t), default=-1)

    def mono_parity(self, m):
        return (sum(e for e, p in zip(m, self._cpar) if p) + self.parity) % 2

    def top_part(self, t, n):
        return {m: c for m, c in t.items() if sum(e for e, c2 in zip(m, self.counted) if c2) >= n}

    def format(self, t):
        items = sorted(t.items(), key=lambda mc: (sum(mc[0]), [-e for e in mc[0]]))
        out = []
        for m, c in items:
            body = format_monomial(self.labels, m)
            out.append((c, (body + "*v") if body else "v"))
        return format_sum(out)

    def to_json(self, t):
        items = sorted(t.items(), key=lambda mc: (sum(mc[0]), [-e for e in mc[0]]))
        return {format_monomial(self.labels, m) or "1": format_scalar(c) for m, c in items}

    # -- action -------------------------------------------------------------

    def _rebased_monomial(self, m):
        r = self._mono_cache.get(m)
        if r is None:
            r = monomial(self.reducer.rebased, m + (0,) * self._ntail)
            self._mono_cache[m] = r
        return r

    def act(self, u, t):
        """u . t for u in U(g); raises TruncationOverflow past degree M."""
        if not t or not u:
            return {}
        if u.degree + self.degree(t) > self.M:
            raise TruncationOverflow(
                "degree %d element on a degree %d vector exceeds M = %d" % (u.degree, self.degree(t), self.M)
            )
        ur = self.reducer.to_rebased(u)
        out = {}
        for m, c in t.items():
            prod = ur * self._rebased_monomial(m)
            _add_into(out, self.reducer.reduce_rebased_terms(prod.terms), c)
        return out

    # -- annihilators -------------------------------------------------------

    def annihilator_truncated(self, N, M=None):
        """Span (over the monomials of F^N) of u killing every x^a ⊗ v with |a| <= M - N."""
        M = self.M if M is None else M
        if M < N:
            raise ValueError("probe degree M must be at least N")
        if M > self.M:
            raise TruncationOverflow("probe degree exceeds the truncation")
        exps = monomials(self.alg, N)
        probes = self.basis(M - N)
        cols = []
        for e in exps:
            u = monomial(self.alg, e)
            col = {}
            for j, m in enumerate(probes):
                for k, c in self.act(u, {m: as_scalar(1)}).items():
                    col[(j, k)] = c
            cols.append(col)
        keys = {}
        for col in cols:
            for k in col:
                keys.setdefault(k, len(keys))
        rows = [[ZERO] * len(cols) for _ in keys]
        for j, col in enumerate(cols):
            for k, c in col.items():
                rows[keys[k]][j] = c
        sols = nullspace(rows, len(cols)) if rows else [
            tuple(1 if i == j else 0 for i in range(len(cols))) for j in range(len(cols))
        ]
        return exps, Span(len(exps), sols)

    # -- descent ------------------------------------------------------------

    def descend(self, t, k, d):
        """z in U(k), deg z <= d, with z.t of lower filtration degree and nonzero."""
        n = self.filtration_degree(t)
        if n < 1:
            raise ValueError("descent needs a vector of filtration degree >= 1")
        K, incl = subalgebra(self.alg, k.basis, name=self.alg.name + "_k")
        images = [from_vector(self.alg, b) for b in k.basis]
        unit_elem = one(self.alg)
        for e in range(d + 1):
            cands = [evaluate(monomial(K, m), images, unit_elem) for m in monomials(K, e)]
            vals = [self.act(z, t) for z in cands]
            keys = {}
            for v in vals:
                for m in self.top_part(v, n):
                    keys.setdefault(m, len(keys))
            rows = [[ZERO] * len(vals) for _ in keys]
            for j, v in enumerate(vals):
                for m, c in self.top_part(v, n).items():
                    rows[keys[m]][j] = c
            sols = nullspace(rows, len(vals)) if rows else [
                tuple(1 if i == j else 0 for i in range(len(vals))) for j in range(len(vals))
            ]
            for s in sols:
                image = {}
                for c, v in zip(s, vals):
                    if c:
                        _add_into(image, v, c)
                if image:
                    z = sum((zc * c for zc, c in zip(cands, s) if c), unit_elem * 0)
                    return Descent(z, image, e, n)
        raise DescentFailure("no witness of degree <= %d" % d)

    def replay(self, descent, t):
        """Recompute a descent witness and confirm its defining properties."""
        img = self.act(descent.z, t)
        return img == descent.image and img and self.filtration_degree(img) < self.filtration_degree(t)


@dataclass
class Descent:
    z: object
    image: dict
    degree: int
    n: int


@dataclass
class DecompositionReport:
    ok: bool
    message: str = ""

    def __bool__(self):
        return self.ok


def ideal_component_decomposition_check(trunc, k, degree=None):
    """Each line x^a ⊗ v is k-stable with y acting by (-1)^{|x^a||y|} lambda(y)."""
    alg, lam = trunc.alg, trunc.lam
    n = alg.dim
    for y in k.basis:
        for i in range(n):
            e = tuple(1 if j == i else 0 for j in range(n))
            if dot(lam, alg.bracket(e, y)):
                return DecompositionReport(
                    False, "lambda([%s, %s]) != 0" % (alg.labels[i], alg.format(y))
                )
    if not k <= trunc.h:
        return DecompositionReport(False, "k is not contained in h")
    d = trunc.M - 1 if degree is None else degree
    for m in trunc.basis(d):
        p = trunc.mono_parity(m) ^ trunc.parity
        for y in k.basis:
            py = alg.parity_of(y)
            u = sum((monomial(alg, tuple(1 if j == i else 0 for j in range(n)), c)
                     for i, c in enumerate(y) if c), one(alg) * 0)
            got = trunc.act(u, {m: as_scalar(1)})
            want = dot(lam, y) * (-1 if p * py else 1)
            exp = {m: want} if want else {}
            if got != exp:
                return DecompositionReport(
                    False, "%s on %s" % (alg.format(y), trunc.format({m: as_scalar(1)}))
                )
    return DecompositionReport(True)
