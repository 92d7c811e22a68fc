"""The enveloping algebra U(g) in the PBW basis of the algebra's basis order."""

from fractions import Fraction
from itertools import product as _cartesian
from math import comb

from .exactlin.linalg import ZERO, dot
from .exactlin.scalars import Surd, as_scalar
from .fmt import format_sum
from .kernel import Straightener

ONE = Fraction(1)


class AlgebraMismatch(ValueError):
    pass


class ConfinementError(ValueError):
    pass


def straightener(alg):
    st = alg._cache.get("straightener")
    if st is None:
        n = alg.dim
        structure = [[alg.structure(i, j) for j in range(n)] for i in range(n)]
        st = Straightener(alg.parities, structure)
        alg._cache["straightener"] = st
    return st


def mono_parity(alg, m):
    return sum(e for e, p in zip(m, alg.parities) if p) % 2


def format_monomial(labels, m):
    parts = []
    for lab, e in zip(labels, m):
        if e == 1:
            parts.append(lab)
        elif e > 1:
            parts.append("%s^%d" % (lab, e))
    return "*".join(parts)


class PBWElement:
    """Finite sum of PBW monomials with exact coefficients (immutable)."""

    __slots__ = ("alg", "terms")

    def __init__(self, alg, terms):
        self.alg = alg
        self.terms = {m: c for m, c in terms.items() if c}

    # construction ---------------------------------------------------------
    @classmethod
    def _raw(cls, alg, terms):
        self = object.__new__(cls)
        self.alg = alg
        self.terms = terms
        return self

    # structure ------------------------------------------------------------
    @property
    def degree(self):
        """Filtration degree; -1 for the zero element."""
        return max((sum(m) for m in self.terms), default=-1)

    def parities(self):
        return {mono_parity(self.alg, m) for m in self.terms}

    @property
    def parity(self):
        ps = self.parities()
        if not ps:
            return 0
        if len(ps) > 1:
            raise ValueError("element is not homogeneous")
        return ps.pop()

    def is_homogeneous(self):
        return len(self.parities()) <= 1

    def parity_part(self, p):
        return PBWElement._raw(self.alg, {m: c for m, c in self.terms.items() if mono_parity(self.alg, m) == p})

    def degree_part(self, d):
        return PBWElement._raw(self.alg, {m: c for m, c in self.terms.items() if sum(m) == d})

    def leading(self):
        return self.degree_part(self.degree)

    def coefficient(self, m):
        return self.terms.get(tuple(m), ZERO)

    def scalar_part(self):
        return self.terms.get((0,) * self.alg.dim, ZERO)

    # arithmetic -----------------------------------------------------------
    def _check(self, other):
        if other.alg is not self.alg:
            raise AlgebraMismatch("elements of different enveloping algebras")

    def _coerce(self, other):
        if isinstance(other, PBWElement):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction, Surd)):
            return scalar(self.alg, other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = out.get(m, 0) + c
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return PBWElement._raw(self.alg, out)

    __radd__ = __add__

    def __neg__(self):
        return PBWElement._raw(self.alg, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            if not other:
                return zero(self.alg)
            return PBWElement._raw(self.alg, {m: c * other for m, c in self.terms.items()})
        if not isinstance(other, PBWElement):
            return NotImplemented
        return multiply(self, other)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n):
        if not isinstance(n, int) or n < 0:
            return NotImplemented
        result = one(self.alg)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            other = scalar(self.alg, other)
        if not isinstance(other, PBWElement):
            return NotImplemented
        return self.alg is other.alg and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def sorted_terms(self):
        return sorted(self.terms.items(), key=lambda mc: (sum(mc[0]), [-e for e in mc[0]]))

    def __str__(self):
        labels = self.alg.labels
        return format_sum((c, format_monomial(labels, m)) for m, c in self.sorted_terms())

    def __repr__(self):
        return "PBWElement(%s)" % self


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def zero(alg):
    return PBWElement._raw(alg, {})


def one(alg):
    return PBWElement._raw(alg, {(0,) * alg.dim: ONE})


def scalar(alg, c):
    c = as_scalar(c)
    if not c:
        return zero(alg)
    return PBWElement._raw(alg, {(0,) * alg.dim: c})


def monomial(alg, exps, coeff=ONE):
    """The product e_1^{a_1} ... e_n^{a_n}, straightened (odd exponents > 1 allowed)."""
    exps = tuple(exps)
    if all(e <= 1 or p == 0 for e, p in zip(exps, alg.parities)):
        return PBWElement(alg, {exps: as_scalar(coeff)})
    out = one(alg)
    for i, e in enumerate(exps):
        for _ in range(e):
            out = out * generator(alg, i)
    return out * as_scalar(coeff)


def generator(alg, key):
    i = key if isinstance(key, int) else alg.index(key)
    m = [0] * alg.dim
    m[i] = 1
    return PBWElement._raw(alg, {tuple(m): ONE})


def from_vector(alg, v):
    terms = {}
    for i, c in enumerate(v):
        if c:
            m = [0] * alg.dim
            m[i] = 1
            terms[tuple(m)] = c
    return PBWElement._raw(alg, terms)


def to_vector(u):
    """Degree-one part of u as a vector (u must have degree <= 1)."""
    n = u.alg.dim
    v = [ZERO] * n
    for m, c in u.terms.items():
        s = sum(m)
        if s == 1:
            v[m.index(1)] = c
        elif s > 1:
            raise ValueError("element has degree > 1")
    return tuple(v)


def monomials(alg, N):
    """All PBW exponent vectors of degree <= N, ordered by degree then lexicographically."""
    n = alg.dim
    out = []

    def rec(i, left, cur):
        if i == n:
            out.append(tuple(cur))
            return
        top = min(left, 1) if alg.parities[i] else left
        for e in range(top, -1, -1):
            cur.append(e)
            rec(i + 1, left - e, cur)
            cur.pop()

    rec(0, N, [])
    out.sort(key=lambda m: (sum(m), [-e for e in m]))
    return out


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------

def multiply(u, v):
    if u.alg is not v.alg:
        raise AlgebraMismatch("elements of different enveloping algebras")
    if not u.terms or not v.terms:
        return zero(u.alg)
    return PBWElement._raw(u.alg, straightener(u.alg).multiply(u.terms, v.terms))


def left_generator(alg, i, u):
    return PBWElement._raw(alg, straightener(alg).left_gen(i, u.terms))


def _word(m):
    w = []
    for i, e in enumerate(m):
        w.extend([i] * e)
    return w


def alpha(u):
    """Principal antiautomorphism: x -> -x on g, reversing products with Koszul signs."""
    alg = u.alg
    st = straightener(alg)
    out = {}
    n0 = (0,) * alg.dim
    for m, c in u.terms.items():
        w = _word(m)
        odd_letters = sum(1 for i in w if alg.parities[i])
        s = len(w) + odd_letters * (odd_letters - 1) // 2
        cur = {n0: c if s % 2 == 0 else -c}
        for i in w:  # builds w_N ... w_1
            cur = st.left_gen(i, cur)
        for mm, d in cur.items():
            val = out.get(mm, 0) + d
            if val:
                out[mm] = val
            else:
                out.pop(mm, None)
    return PBWElement._raw(alg, out)


def sigma(u):
    """Parity automorphism: identity on even monomials, -1 on odd ones."""
    alg = u.alg
    return PBWElement._raw(alg, {m: (-c if mono_parity(alg, m) else c) for m, c in u.terms.items()})


def supercommutator(u, v):
    """[u, v] = uv - (-1)^{|u||v|} vu, extended bilinearly over parity parts."""
    out = zero(u.alg)
    for pu in (0, 1):
        a = u.parity_part(pu)
        if not a:
            continue
        for pv in (0, 1):
            b = v.parity_part(pv)
            if not b:
                continue
            ab = a * b
            ba = b * a
            out = out + (ab + ba if pu and pv else ab - ba)
    return out


def ad_action(x, u, confine=None):
    """ad(x)(u) for a homogeneous vector x of g.

    ``confine``: optional GradedSubspace k; requires [x, k] ⊆ k so that U(k)
    is preserved.
    """
    alg = u.alg
    x = tuple(x)
    if alg.parity_of(x) is None:
        return zero(alg)
    if confine is not None:
        for b in confine.basis:
            if not confine.contains(alg.bracket(x, b)):
                raise ConfinementError("[x, k] is not contained in k")
    return supercommutator(from_vector(alg, x), u)


def ad_element(w, u):
    """ad(w)(u) for w in U(g): ad(e_{i1} ... e_{ik}) = ad(e_{i1}) ... ad(e_{ik})."""
    alg = u.alg
    out = zero(alg)
    for m, c in w.terms.items():
        cur = u
        for i in reversed(_word(m)):
            cur = supercommutator(generator(alg, i), cur)
            if not cur:
                break
        out = out + cur * c
    return out


def evaluate(u, images, one_value, power_cache=None):
    """Image of u under the algebra morphism sending generator i to images[i]."""
    if power_cache is None:
        power_cache = {}
    total = None
    for m, c in u.terms.items():
        prod = one_value
        for i, e in enumerate(m):
            if not e:
                continue
            key = (i, e)
            p = power_cache.get(key)
            if p is None:
                p = images[i]
                for _ in range(e - 1):
                    p = p * images[i]
                power_cache[key] = p
            prod = prod * p
        term = prod * c
        total = term if total is None else total + term
    if total is None:
        return one_value * 0
    return total


def power_expansion(z, ys, ns):
    """Right side of the commutation rule

        z y_1^{n_1} ... y_p^{n_p}
          = sum_m (-1)^eps prod C(n_i, m_i) y^m delta(y^{n-m})(z),

    delta = ad o alpha, eps = |z| sum n_i|y_i| + sum_{i<j} (n_i - m_i)|y_i| m_j |y_j|.
    """
    alg = z.alg
    zp = z.parity
    yp = [alg.parity_of(y) or 0 for y in ys]
    yel = [from_vector(alg, y) for y in ys]
    out = zero(alg)
    base = zp * sum(n * p for n, p in zip(ns, yp))
    for ms in _cartesian(*[range(n + 1) for n in ns]):
        eps = base
        for i in range(len(ns)):
            for j in range(i + 1, len(ns)):
                eps += (ns[i] - ms[i]) * yp[i] * ms[j] * yp[j]
        coeff = 1
        left = one(alg)
        rest = one(alg)
        for i, (n, mi) in enumerate(zip(ns, ms)):
            coeff *= comb(n, mi)
            left = left * yel[i] ** mi
            rest = rest * yel[i] ** (n - mi)
        term = left * ad_element(alpha(rest), z)
        out = out + term * (coeff if eps % 2 == 0 else -coeff)
    return out


# ---------------------------------------------------------------------------
# left ideals generated by a character of a subalgebra
# ---------------------------------------------------------------------------

class CharacterError(ValueError):
    pass


class LeftIdealReducer:
    """Normal form modulo U(g)J, J = span{h - chi(h)} for a character chi of h.

    The algebra is re-based as (complement vectors, tail vectors): every PBW
    monomial then reads c^a h^b and h^b is replaced by prod chi(h_j)^{b_j}.
    The character may be ungraded (odd tail vectors with nonzero values), as
    long as chi(a)chi(b) - (-1)^{|a||b|} chi(b)chi(a) = chi([a,b]).
    """

    def __init__(self, alg, tail, chi, complement=None):
        from .superlie import subalgebra

        self.alg = alg
        self.tail = [tuple(t) for t in tail]
        self.chi = [as_scalar(c) for c in chi]
        tail_space = alg.span(self.tail)
        if tail_space.dim != len(self.tail):
            raise ValueError("tail vectors are dependent")
        if not alg.is_subalgebra(tail_space):
            raise CharacterError("tail does not span a subalgebra")
        if complement is None:
            complement = tail_space.complement_basis()
        self.complement = [tuple(c) for c in complement]
        self.nc = len(self.complement)
        basis = self.complement + self.tail
        self.rebased, self.inclusion = subalgebra(alg, basis, name=alg.name + "_rebased")
        R = self.rebased
        # check the character on tail pairs
        for a in range(len(self.tail)):
            for b in range(len(self.tail)):
                pa = alg.parity_of(self.tail[a])
                pb = alg.parity_of(self.tail[b])
                lhs = self.chi[a] * self.chi[b] - (-1) ** (pa * pb) * self.chi[b] * self.chi[a]
                br = self.inclusion.coordinates(alg.bracket(self.tail[a], self.tail[b]))
                rhs = sum((br[self.nc + t] * self.chi[t] for t in range(len(self.tail))), ZERO)
                if any(br[: self.nc]) or lhs != rhs:
                    raise CharacterError(
                        "chi is not a character on (%s, %s)" % (alg.format(self.tail[a]), alg.format(self.tail[b]))
                    )
        self._images = [
            from_vector(R, self.inclusion.coordinates(tuple(1 if k == i else 0 for k in range(alg.dim))))
            for i in range(alg.dim)
        ]
        self._power_cache = {}

    def to_rebased(self, u):
        if u.alg is not self.alg:
            raise AlgebraMismatch("element from another algebra")
        return evaluate(u, self._images, one(self.rebased), self._power_cache)

    def reduce_rebased_terms(self, terms):
        """Dict over rebased monomials -> dict over complement exponent tuples."""
        out = {}
        nc = self.nc
        chi = self.chi
        for m, c in terms.items():
            val = c
            for t, e in enumerate(m[nc:]):
                if e:
                    val = val * chi[t] ** e
                    if not val:
                        break
            if not val:
                continue
            key = m[:nc]
            v = out.get(key, 0) + val
            if v:
                out[key] = v
            else:
                out.pop(key, None)
        return out

    def reduce(self, u):
        return self.reduce_rebased_terms(self.to_rebased(u).terms)

    def format(self, red):
        labels = self.rebased.labels[: self.nc]
        items = sorted(red.items(), key=lambda mc: (sum(mc[0]), [-e for e in mc[0]]))
        return format_sum((c, format_monomial(labels, m)) for m, c in items)


def _subordinate_check(alg, h, lam):
    for a in h.basis:
        for b in h.basis:
            if dot(lam, alg.bracket(a, b)):
                raise CharacterError("h is not subordinate to lambda: lambda([%s, %s]) != 0" % (alg.format(a), alg.format(b)))


def reducer_for(alg, h, lam):
    """Cached LeftIdealReducer for a subordinate subalgebra h and functional lam."""
    lam = tuple(as_scalar(c) for c in lam)
    key = ("reducer", tuple(h.basis), lam)
    red = alg._cache.get(key)
    if red is None:
        _subordinate_check(alg, h, lam)
        red = LeftIdealReducer(alg, h.basis, [dot(lam, b) for b in h.basis])
        alg._cache[key] = red
    return red


def reduce_mod_left_ideal(u, h, lam):
    """Normal form of u modulo U(g)(ker lambda|U(h)); a dict over complement monomials."""
    return reducer_for(u.alg, h, lam).reduce(u)
