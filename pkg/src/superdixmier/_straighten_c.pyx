# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled PBW straightening kernel (same algorithm as _straighten_py)."""

from fractions import Fraction

cdef object _ONE = Fraction(1)
cdef object _HALF = Fraction(1, 2)


cdef inline void _acc(dict res, object mono, object val):
    cdef object v = res.get(mono)
    if v is None:
        if val:
            res[mono] = val
        return
    v = v + val
    if v:
        res[mono] = v
    else:
        del res[mono]


cdef class Straightener:
    cdef public int n
    cdef public tuple odd
    cdef public tuple structure
    cdef dict _gen
    cdef dict _mono
    cdef list _oddflags

    def __init__(self, parities, structure):
        self.n = len(parities)
        self.odd = tuple(bool(p) for p in parities)
        self._oddflags = [1 if p else 0 for p in parities]
        self.structure = tuple(tuple(tuple(row) for row in rows) for rows in structure)
        self._gen = {}
        self._mono = {}

    def cache_size(self):
        return len(self._gen) + len(self._mono)

    cpdef dict gen_mono(self, int i, tuple m):
        cdef tuple key = (i, m)
        cdef object hit = self._gen.get(key)
        if hit is not None:
            return <dict>hit
        cdef int n = self.n
        cdef int j = 0
        cdef list mm
        cdef tuple rest
        cdef dict res, inner, inner2
        cdef bint neg
        cdef object c, d, f, mono, mono2, k
        while j < n and m[j] == 0:
            j += 1
        if j == n or i < j or (i == j and not self._oddflags[i]):
            mm = list(m)
            mm[i] = mm[i] + 1
            res = {tuple(mm): _ONE}
        elif i == j:
            mm = list(m)
            mm[i] = 0
            rest = tuple(mm)
            res = {}
            for k, c in self.structure[i][i]:
                f = c * _HALF
                inner = self.gen_mono(k, rest)
                for mono, d in inner.items():
                    _acc(res, mono, f * d)
        else:
            mm = list(m)
            mm[j] = mm[j] - 1
            rest = tuple(mm)
            neg = self._oddflags[i] and self._oddflags[j]
            res = {}
            inner = self.gen_mono(i, rest)
            for mono, c in inner.items():
                if neg:
                    c = -c
                inner2 = self.gen_mono(j, mono)
                for mono2, d in inner2.items():
                    _acc(res, mono2, c * d)
            for k, c in self.structure[i][j]:
                inner = self.gen_mono(k, rest)
                for mono, d in inner.items():
                    _acc(res, mono, c * d)
        self._gen[key] = res
        return res

    cpdef dict mono_mono(self, tuple a, tuple b):
        cdef tuple key = (a, b)
        cdef object hit = self._mono.get(key)
        if hit is not None:
            return <dict>hit
        cdef int n = self.n
        cdef int i = 0
        cdef list rest
        cdef dict res, inner
        cdef object mono, mono2, c, d
        while i < n and a[i] == 0:
            i += 1
        if i == n:
            res = {b: _ONE}
        else:
            rest = list(a)
            rest[i] = rest[i] - 1
            inner = self.mono_mono(tuple(rest), b)
            res = {}
            for mono, c in inner.items():
                for mono2, d in self.gen_mono(i, mono).items():
                    _acc(res, mono2, c * d)
        self._mono[key] = res
        return res

    cpdef dict multiply(self, dict a, dict b):
        cdef dict res = {}
        cdef object ma, ca, mb, cb, cab, mono, d
        for ma, ca in a.items():
            for mb, cb in b.items():
                cab = ca * cb
                for mono, d in self.mono_mono(ma, mb).items():
                    _acc(res, mono, cab * d)
        return res

    cpdef dict left_gen(self, int i, dict b):
        cdef dict res = {}
        cdef object mb, cb, mono, d
        for mb, cb in b.items():
            for mono, d in self.gen_mono(i, mb).items():
                _acc(res, mono, cb * d)
        return res
