"""Exact scalars: rationals and elements of multi-quadratic towers.

A tower is Q(r_0, ..., r_{k-1}) where r_i^2 = d_i and each radicand d_i lives
in the tower built from r_0 .. r_{i-1}.  An element is stored as a map from a
bitmask S to a rational coefficient of prod_{i in S} r_i.  Each level is a
genuine quadratic extension because a radicand is only adjoined after an
exact square test fails, so the representation is unique.

Plain rationals are ``fractions.Fraction``.  Arithmetic on :class:`Surd`
demotes the result back to a ``Fraction`` whenever it is rational.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

__all__ = [
    "Tower",
    "Surd",
    "QQ",
    "adjoin_sqrt",
    "sqrt_in",
    "as_scalar",
    "format_scalar",
    "rational_sqrt",
    "common_tower",
    "tower_of",
]


def rational_sqrt(q):
    """Return the rational square root of q, or None if there is none."""
    q = Fraction(q)
    if q < 0:
        return None
    n, d = q.numerator, q.denominator
    rn, rd = isqrt(n), isqrt(d)
    if rn * rn == n and rd * rd == d:
        return Fraction(rn, rd)
    return None


# ---------------------------------------------------------------------------
# towers
# ---------------------------------------------------------------------------

_TOWERS = {}


class Tower:
    """An immutable, interned list of radicands."""

    __slots__ = ("radicands", "key", "__weakref__")

    def __new__(cls, radicands=()):
        radicands = tuple(radicands)
        key = tuple(_radicand_key(r) for r in radicands)
        found = _TOWERS.get(key)
        if found is not None:
            return found
        self = object.__new__(cls)
        self.radicands = radicands
        self.key = key
        _TOWERS[key] = self
        return self

    @property
    def depth(self):
        return len(self.radicands)

    @property
    def degree(self):
        return 1 << len(self.radicands)

    def prefix(self, k):
        return Tower(self.radicands[:k])

    def is_prefix_of(self, other):
        return other.key[: len(self.key)] == self.key

    def radicand_dict(self, level):
        r = self.radicands[level]
        if isinstance(r, Surd):
            return r.coeffs
        return {0: r}

    def root(self, level):
        return Surd._make(self, {1 << level: Fraction(1)})

    def __repr__(self):
        if not self.radicands:
            return "QQ"
        return "QQ(" + ", ".join("sqrt(%s)" % format_scalar(r) for r in self.radicands) + ")"

    def __reduce__(self):
        return (Tower, (self.radicands,))


def _radicand_key(r):
    if isinstance(r, Surd):
        return tuple(sorted(r.coeffs.items()))
    return ((0, Fraction(r)),)


QQ = Tower(())


# ---------------------------------------------------------------------------
# raw coefficient-dict arithmetic inside one tower
# ---------------------------------------------------------------------------

def _add(a, b):
    out = dict(a)
    for m, c in b.items():
        v = out.get(m, 0) + c
        if v:
            out[m] = v
        else:
            out.pop(m, None)
    return out


def _neg(a):
    return {m: -c for m, c in a.items()}


def _scale(a, c):
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def _split(a, bit):
    lo, hi = {}, {}
    for m, c in a.items():
        if m & bit:
            hi[m ^ bit] = c
        else:
            lo[m] = c
    return lo, hi


def _shift(a, bit):
    return {m | bit: c for m, c in a.items()}


def _top(a):
    top = 0
    for m in a:
        if m > top:
            top = m
    return top.bit_length() - 1


def _mul(tower, a, b):
    if not a or not b:
        return {}
    level = max(_top(a), _top(b))
    if level < 0:
        v = a[0] * b[0]
        return {0: v} if v else {}
    bit = 1 << level
    a0, a1 = _split(a, bit)
    b0, b1 = _split(b, bit)
    d = tower.radicand_dict(level)
    lo = _add(_mul(tower, a0, b0), _mul(tower, _mul(tower, a1, b1), d))
    hi = _add(_mul(tower, a0, b1), _mul(tower, a1, b0))
    out = lo
    out.update(_shift(hi, bit))
    return out


def _inv(tower, a):
    if not a:
        raise ZeroDivisionError("inverse of zero")
    level = _top(a)
    if level < 0:
        return {0: 1 / Fraction(a[0])}
    bit = 1 << level
    a0, a1 = _split(a, bit)
    d = tower.radicand_dict(level)
    norm = _add(_mul(tower, a0, a0), _neg(_mul(tower, _mul(tower, a1, a1), d)))
    ninv = _inv(tower, norm)
    out = _mul(tower, a0, ninv)
    out.update(_shift(_neg(_mul(tower, a1, ninv)), bit))
    return out


def _sqrt(tower, a, k):
    """Square root of a (supported on the first k levels) inside those levels."""
    if not a:
        return {}
    if k == 0:
        r = rational_sqrt(a.get(0, 0))
        return None if r is None else {0: r}
    bit = 1 << (k - 1)
    a0, a1 = _split(a, bit)
    d = tower.radicand_dict(k - 1)
    if not a1:
        s = _sqrt(tower, a0, k - 1)
        if s is not None:
            return s
        t = _sqrt(tower, _mul(tower, a0, _inv(tower, d)), k - 1)
        if t is not None:
            return _shift(t, bit)
        return None
    # (u + v r)^2 = a0 + a1 r  with u, v both nonzero
    norm = _add(_mul(tower, a0, a0), _neg(_mul(tower, _mul(tower, a1, a1), d)))
    n = _sqrt(tower, norm, k - 1)
    if n is None:
        return None
    half = Fraction(1, 2)
    for cand in (_add(a0, n), _add(a0, _neg(n))):
        u = _sqrt(tower, _scale(cand, half), k - 1)
        if u:
            v = _mul(tower, a1, _inv(tower, _scale(u, 2)))
            out = dict(u)
            out.update(_shift(v, bit))
            return out
    return None


# ---------------------------------------------------------------------------
# unification of towers
# ---------------------------------------------------------------------------

_EMBED_CACHE = {}


def common_tower(t1, t2):
    """Return (T, images) where T extends t1 and images[j] is r_j of t2 inside T."""
    if t2.is_prefix_of(t1):
        return t1, None
    if t1.is_prefix_of(t2):
        return t2, None
    ck = (t1.key, t2.key)
    hit = _EMBED_CACHE.get(ck)
    if hit is not None:
        return hit
    T = t1
    images = []
    for j in range(t2.depth):
        rad = _translate(T, t2.radicand_dict(j), images)
        T, root = _adjoin_dict(T, rad)
        images.append(root)
    _EMBED_CACHE[ck] = (T, images)
    return T, images


def _translate(T, a, images):
    out = {}
    for m, c in a.items():
        term = {0: c}
        j = 0
        while m:
            if m & 1:
                term = _mul(T, term, images[j])
            m >>= 1
            j += 1
        out = _add(out, term)
    return out


def _adjoin_dict(T, a):
    s = _sqrt(T, a, T.depth)
    if s is not None:
        return T, s
    rad = Surd._make(T, a)
    T2 = Tower(T.radicands + (rad,))
    return T2, {1 << T.depth: Fraction(1)}


def _coerce_pair(x, y):
    """Return (tower, dx, dy) with both operands as dicts in a common tower."""
    if isinstance(x, Surd):
        tx, dx = x.tower, x.coeffs
    else:
        tx, dx = QQ, ({0: Fraction(x)} if x else {})
    if isinstance(y, Surd):
        ty, dy = y.tower, y.coeffs
    else:
        ty, dy = QQ, ({0: Fraction(y)} if y else {})
    if tx is ty:
        return tx, dx, dy
    T, images = common_tower(tx, ty)
    if images is None:
        return T, dx, dy
    return T, dx, _translate(T, dy, images)


def tower_of(x):
    return x.tower if isinstance(x, Surd) else QQ


# ---------------------------------------------------------------------------
# tower elements
# ---------------------------------------------------------------------------

class Surd:
    """Irrational element of a square-root tower (rational results demote to Fraction)."""

    __slots__ = ("tower", "coeffs", "_hash")

    @staticmethod
    def _make(tower, coeffs):
        coeffs = {m: Fraction(c) for m, c in coeffs.items() if c}
        if not coeffs:
            return Fraction(0)
        if len(coeffs) == 1 and 0 in coeffs:
            return coeffs[0]
        self = object.__new__(Surd)
        self.tower = tower
        self.coeffs = coeffs
        self._hash = None
        return self

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, (Surd, Fraction, int)):
            return NotImplemented
        T, a, b = _coerce_pair(self, other)
        return Surd._make(T, _add(a, b))

    __radd__ = __add__

    def __neg__(self):
        return Surd._make(self.tower, _neg(self.coeffs))

    def __pos__(self):
        return self

    def __sub__(self, other):
        if not isinstance(other, (Surd, Fraction, int)):
            return NotImplemented
        T, a, b = _coerce_pair(self, other)
        return Surd._make(T, _add(a, _neg(b)))

    def __rsub__(self, other):
        if not isinstance(other, (Surd, Fraction, int)):
            return NotImplemented
        T, a, b = _coerce_pair(other, self)
        return Surd._make(T, _add(a, _neg(b)))

    def __mul__(self, other):
        if isinstance(other, (Fraction, int)):
            return Surd._make(self.tower, _scale(self.coeffs, other))
        if not isinstance(other, Surd):
            return NotImplemented
        T, a, b = _coerce_pair(self, other)
        return Surd._make(T, _mul(T, a, b))

    __rmul__ = __mul__

    def inverse(self):
        return Surd._make(self.tower, _inv(self.tower, self.coeffs))

    def __truediv__(self, other):
        if isinstance(other, (Fraction, int)):
            if not other:
                raise ZeroDivisionError("division by zero")
            return Surd._make(self.tower, _scale(self.coeffs, 1 / Fraction(other)))
        if not isinstance(other, Surd):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        if not isinstance(other, (Fraction, int)):
            return NotImplemented
        return self.inverse() * other

    def __pow__(self, n):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            return self.inverse() ** (-n)
        result = Fraction(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # comparison -----------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (Fraction, int)):
            return False
        if not isinstance(other, Surd):
            return NotImplemented
        if self.tower is other.tower:
            return self.coeffs == other.coeffs
        T, a, b = _coerce_pair(self, other)
        return a == b

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self):
        # the mask-0 coefficient is a normalized trace, so it does not depend
        # on which tower the element is written in
        if self._hash is None:
            self._hash = hash(self.coeffs.get(0, Fraction(0)))
        return self._hash

    def __bool__(self):
        return True

    def __str__(self):
        return format_scalar(self)

    def __repr__(self):
        return "Surd(%s)" % format_scalar(self)

    def __reduce__(self):
        return (Surd._make, (self.tower, self.coeffs))

    def conjugate_at(self, level):
        """Apply r_level -> -r_level (a field automorphism of the top level)."""
        if level != self.tower.depth - 1:
            raise ValueError("only the top level has a well-defined conjugate")
        bit = 1 << level
        return Surd._make(self.tower, {m: (-c if m & bit else c) for m, c in self.coeffs.items()})


def as_scalar(x):
    """Normalize ints/strings/Fractions/Surds to a Fraction or Surd."""
    if isinstance(x, Surd):
        return x
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        from ..parsing import parse_scalar

        return parse_scalar(x)
    raise TypeError("not an exact scalar: %r" % (x,))


def _embed(tower, x):
    """Write x inside a tower extending ``tower``; return (T, coefficient dict)."""
    if not isinstance(x, Surd):
        return tower, ({0: Fraction(x)} if x else {})
    if x.tower.is_prefix_of(tower):
        return tower, x.coeffs
    T, images = common_tower(tower, x.tower)
    if images is None:
        return T, x.coeffs
    return T, _translate(T, x.coeffs, images)


def sqrt_in(x, tower=QQ):
    """Square root of x inside the smallest tower holding x and ``tower``, else None."""
    x = as_scalar(x)
    T, a = _embed(tower, x)
    s = _sqrt(T, a, T.depth)
    if s is None:
        return None
    return Surd._make(T, s)


def adjoin_sqrt(tower, radicand):
    """Return (tower', root) with root**2 == radicand and tower' extending tower.

    No new level is added when the radicand is already a square.
    """
    radicand = as_scalar(radicand)
    if not radicand:
        raise ValueError("cannot adjoin the square root of zero")
    T, a = _embed(tower, radicand)
    T2, root = _adjoin_dict(T, a)
    return T2, Surd._make(T2, root)


# ---------------------------------------------------------------------------
# formatting
# ---------------------------------------------------------------------------

def _format_rational(q):
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return "%d/%d" % (q.numerator, q.denominator)


def _basis_name(tower, mask):
    names = []
    j = 0
    while mask:
        if mask & 1:
            names.append("sqrt(%s)" % format_scalar(tower.radicands[j]))
        mask >>= 1
        j += 1
    return "*".join(names)


def format_scalar(x):
    """Canonical string: "3/2", "1 + 2*sqrt(2)", "sqrt(1 + sqrt(2))"."""
    if not isinstance(x, Surd):
        return _format_rational(x)
    parts = []
    for m in sorted(x.coeffs):
        c = x.coeffs[m]
        if m == 0:
            body = _format_rational(abs(c))
        else:
            name = _basis_name(x.tower, m)
            body = name if abs(c) == 1 else "%s*%s" % (_format_rational(abs(c)), name)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts)
