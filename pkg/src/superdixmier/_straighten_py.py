"""Pure-Python PBW straightening kernel.

Monomials are exponent tuples in the fixed basis order.  ``gen_mono(i, m)``
returns the normal form of e_i * m as a dict monomial -> coefficient.  The
recursion rewrites e_i e_j (i > j) to (-1)^{|i||j|} e_j e_i + [e_i, e_j] and
e_i e_i (i odd) to 1/2 [e_i, e_i]; each step lowers (degree, inversions).

Returned dicts are shared with the memo tables and must not be mutated.
"""

from fractions import Fraction

_ONE = Fraction(1)
_HALF = Fraction(1, 2)


class Straightener:
    def __init__(self, parities, structure):
        """structure[i][j] is a tuple of (k, c) with [e_i, e_j] = sum c e_k."""
        self.n = len(parities)
        self.odd = tuple(bool(p) for p in parities)
        self.structure = tuple(tuple(tuple(row) for row in rows) for rows in structure)
        self._gen = {}
        self._mono = {}

    def cache_size(self):
        return len(self._gen) + len(self._mono)

    def gen_mono(self, i, m):
        key = (i, m)
        hit = self._gen.get(key)
        if hit is not None:
            return hit
        n = self.n
        j = 0
        while j < n and m[j] == 0:
            j += 1
        if j == n or i < j or (i == j and not self.odd[i]):
            mm = list(m)
            mm[i] += 1
            res = {tuple(mm): _ONE}
        elif i == j:
            rest = list(m)
            rest[i] = 0
            rest = tuple(rest)
            res = {}
            for k, c in self.structure[i][i]:
                f = c * _HALF
                for mono, d in self.gen_mono(k, rest).items():
                    v = res.get(mono, 0) + f * d
                    if v:
                        res[mono] = v
                    else:
                        res.pop(mono, None)
        else:
            rest = list(m)
            rest[j] -= 1
            rest = tuple(rest)
            neg = self.odd[i] and self.odd[j]
            res = {}
            for mono, c in self.gen_mono(i, rest).items():
                if neg:
                    c = -c
                for mono2, d in self.gen_mono(j, mono).items():
                    v = res.get(mono2, 0) + c * d
                    if v:
                        res[mono2] = v
                    else:
                        res.pop(mono2, None)
            for k, c in self.structure[i][j]:
                for mono, d in self.gen_mono(k, rest).items():
                    v = res.get(mono, 0) + c * d
                    if v:
                        res[mono] = v
                    else:
                        res.pop(mono, None)
        self._gen[key] = res
        return res

    def mono_mono(self, a, b):
        key = (a, b)
        hit = self._mono.get(key)
        if hit is not None:
            return hit
        i = 0
        n = self.n
        while i < n and a[i] == 0:
            i += 1
        if i == n:
            res = {b: _ONE}
        else:
            rest = list(a)
            rest[i] -= 1
            inner = self.mono_mono(tuple(rest), b)
            res = {}
            for mono, c in inner.items():
                for mono2, d in self.gen_mono(i, mono).items():
                    v = res.get(mono2, 0) + c * d
                    if v:
                        res[mono2] = v
                    else:
                        res.pop(mono2, None)
        self._mono[key] = res
        return res

    def multiply(self, a, b):
        res = {}
        for ma, ca in a.items():
            for mb, cb in b.items():
                cab = ca * cb
                for mono, d in self.mono_mono(ma, mb).items():
                    v = res.get(mono, 0) + cab * d
                    if v:
                        res[mono] = v
                    else:
                        res.pop(mono, None)
        return res

    def left_gen(self, i, b):
        """e_i * b for a dict b."""
        res = {}
        for mb, cb in b.items():
            for mono, d in self.gen_mono(i, mb).items():
                v = res.get(mono, 0) + cb * d
                if v:
                    res[mono] = v
                else:
                    res.pop(mono, None)
        return res
