"""Factored Clifford-Weyl target algebras.

A target is a super tensor product of factors, listed deepest recursion
level first.  Basis elements are tuples of per-factor keys; multiplication
of pure tensors picks up the Koszul sign (-1)^{sum_{i>j} |f_i||g_j|}.
"""

from fractions import Fraction
from math import comb, factorial

from ..exactlin.scalars import Surd, as_scalar
from ..fmt import format_sum

ONE = Fraction(1)


class WeylFactor:
    """A_1: even generators q, p with [q, p] = 1; key (a, b) means q^a p^b."""

    kind = "weyl"

    def one(self):
        return [((0, 0), ONE)]

    def parity(self, key):
        return 0

    def mul(self, k1, k2):
        a, b = k1
        c, d = k2
        out = []
        # p^b q^c = sum_k (-1)^k k! C(b,k) C(c,k) q^{c-k} p^{b-k}
        for k in range(min(b, c) + 1):
            coeff = factorial(k) * comb(b, k) * comb(c, k)
            if k % 2:
                coeff = -coeff
            out.append(((a + c - k, b + d - k), Fraction(coeff)))
        return out

    def generators(self):
        return {"q": (1, 0), "p": (0, 1)}

    def degree(self, key):
        return key[0] + key[1]

    def name(self, key, t):
        parts = []
        for sym, e in (("q", key[0]), ("p", key[1])):
            if e == 1:
                parts.append("%s_%d" % (sym, t))
            elif e > 1:
                parts.append("%s_%d^%d" % (sym, t, e))
        return "*".join(parts)

    def describe(self):
        return "A1"

    def __eq__(self, other):
        return isinstance(other, WeylFactor)

    def __hash__(self):
        return hash("weyl")


class MatrixFactor:
    """M_2 with matrix units E_rc; diagonal units even, antidiagonal odd."""

    kind = "matrix"

    def one(self):
        return [((0, 0), ONE), ((1, 1), ONE)]

    def parity(self, key):
        return (key[0] + key[1]) % 2

    def mul(self, k1, k2):
        if k1[1] != k2[0]:
            return []
        return [((k1[0], k2[1]), ONE)]

    def generators(self):
        return {"E12": (0, 1), "E21": (1, 0)}

    def degree(self, key):
        return 0

    def name(self, key, t):
        return "E%d%d_%d" % (key[0] + 1, key[1] + 1, t)

    def describe(self):
        return "M2"

    def __eq__(self, other):
        return isinstance(other, MatrixFactor)

    def __hash__(self):
        return hash("matrix")


class CliffordFactor:
    """One odd generator g with g^2 = a; keys 0 (unit) and 1 (g)."""

    kind = "clifford"

    def __init__(self, a):
        self.a = as_scalar(a)
        if not self.a:
            raise ValueError("Clifford generator must square to a nonzero scalar")

    def one(self):
        return [(0, ONE)]

    def parity(self, key):
        return key

    def mul(self, k1, k2):
        if k1 and k2:
            return [(0, self.a)]
        return [(k1 ^ k2, ONE)]

    def generators(self):
        return {"g": 1}

    def degree(self, key):
        return 0

    def name(self, key, t):
        return "g_%d" % t if key else ""

    def describe(self):
        from ..exactlin.scalars import format_scalar

        return "Cliff1(g^2 = %s)" % format_scalar(self.a)

    def __eq__(self, other):
        return isinstance(other, CliffordFactor) and self.a == other.a

    def __hash__(self):
        return hash(("clifford", self.a))


class TargetAlgebra:
    def __init__(self, factors):
        self.factors = tuple(factors)

    def key_parity(self, key):
        return sum(f.parity(k) for f, k in zip(self.factors, key)) % 2

    def mul_keys(self, k1, k2):
        """Product of two pure tensors as a list of (key, coeff)."""
        # Koszul sign: g_j moves past f_i for every i > j
        sgn = 0
        acc = 0  # parity of f_i for i > j, scanning from the right
        for j in range(len(self.factors) - 1, -1, -1):
            sgn += acc * self.factors[j].parity(k2[j])
            acc += self.factors[j].parity(k1[j])
        prefix = [((), -ONE if sgn % 2 else ONE)]
        for f, a, b in zip(self.factors, k1, k2):
            prods = f.mul(a, b)
            if not prods:
                return []
            prefix = [(key + (kk,), c * cc) for key, c in prefix for kk, cc in prods]
        return prefix

    def one(self):
        terms = {(): ONE}
        for f in self.factors:
            terms = {k + (kk,): c * cc for k, c in terms.items() for kk, cc in f.one()}
        return TargetElement(self, terms)

    def scalar(self, c):
        return self.one() * as_scalar(c)

    def zero(self):
        return TargetElement(self, {})

    def generator(self, t, name):
        """Generator ``name`` of factor t (others at identity)."""
        key = self.factors[t].generators()[name]
        terms = {(): ONE}
        for s, f in enumerate(self.factors):
            parts = [(key, ONE)] if s == t else f.one()
            terms = {k + (kk,): c * cc for k, c in terms.items() for kk, cc in parts}
        return TargetElement(self, terms)

    def basis_element(self, key, coeff=ONE):
        return TargetElement(self, {tuple(key): as_scalar(coeff)})

    def all_generators(self):
        out = []
        for t, f in enumerate(self.factors):
            for name in f.generators():
                out.append(((t, name), self.generator(t, name)))
        return out

    def describe(self):
        return " (x) ".join(f.describe() for f in self.factors) if self.factors else "k"

    def __eq__(self, other):
        return isinstance(other, TargetAlgebra) and self.factors == other.factors

    def __hash__(self):
        return hash(self.factors)


def tensor_right(elem, new_target, parts):
    """elem ⊗ (sum c_k key_k) in new_target (one extra factor on the right, no sign)."""
    terms = {}
    for key, c in elem.terms.items():
        for kk, cc in parts:
            v = c * cc
            if v:
                k2 = key + (kk,)
                s = terms.get(k2, 0) + v
                if s:
                    terms[k2] = s
                else:
                    terms.pop(k2, None)
    return TargetElement(new_target, terms)


class TargetElement:
    __slots__ = ("target", "terms")

    def __init__(self, target, terms):
        self.target = target
        self.terms = {k: c for k, c in terms.items() if c}

    def _coerce(self, other):
        if isinstance(other, TargetElement):
            return other
        if isinstance(other, (int, Fraction, Surd)):
            return self.target.scalar(other)
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k, 0) + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return TargetElement(self.target, out)

    __radd__ = __add__

    def __neg__(self):
        return TargetElement(self.target, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            if not other:
                return TargetElement(self.target, {})
            return TargetElement(self.target, {k: c * other for k, c in self.terms.items()})
        if not isinstance(other, TargetElement):
            return NotImplemented
        out = {}
        mk = self.target.mul_keys
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                c12 = c1 * c2
                for k, c in mk(k1, k2):
                    v = out.get(k, 0) + c12 * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return TargetElement(self.target, out)

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction, Surd)):
            return self.__mul__(other)
        return NotImplemented

    def __pow__(self, n):
        result = self.target.one()
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms))

    def __bool__(self):
        return bool(self.terms)

    def parity_part(self, p):
        kp = self.target.key_parity
        return TargetElement(self.target, {k: c for k, c in self.terms.items() if kp(k) == p})

    def parities(self):
        kp = self.target.key_parity
        return {kp(k) for k in self.terms}

    def __str__(self):
        factors = self.target.factors

        def body(key):
            names = [f.name(k, t + 1) for t, (f, k) in enumerate(zip(factors, key))]
            return "*".join(n for n in names if n)

        items = sorted(self.terms.items(), key=lambda kc: str(kc[0]))
        return format_sum((c, body(k)) for k, c in items)

    def __repr__(self):
        return "TargetElement(%s)" % self


def supercommutator(a, b):
    out = a.target.zero()
    for pa in (0, 1):
        x = a.parity_part(pa)
        if not x:
            continue
        for pb in (0, 1):
            y = b.parity_part(pb)
            if not y:
                continue
            out = out + (x * y + y * x if pa and pb else x * y - y * x)
    return out
