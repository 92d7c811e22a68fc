from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superdixmier.exactlin.graded import (
    DimensionMismatch,
    EvenBilinearForm,
    GradedSubspace,
    is_maximal_isotropic,
    is_totally_isotropic,
    perp,
)
from superdixmier.exactlin.linalg import Span, mat_vec, nullspace, rank
from superdixmier.exactlin.scalars import QQ, adjoin_sqrt

from conftest import small_ints


@st.composite
def matrices(draw, max_rows=5, max_cols=5):
    r = draw(st.integers(1, max_rows))
    c = draw(st.integers(1, max_cols))
    return [[draw(small_ints) for _ in range(c)] for _ in range(r)], c


@given(matrices())
def test_nullspace_is_kernel_with_right_dimension(mc):
    A, c = mc
    ker = nullspace(A, c)
    for v in ker:
        assert not any(mat_vec(A, v))
    assert len(ker) + rank(A, c) == c
    assert Span(c, ker).dim == len(ker)


@st.composite
def forms_and_subspaces(draw):
    """A superantisymmetric even form on (n0|n1) with n0, n1 <= 6 and a graded W."""
    n0 = draw(st.integers(0, 6))
    n1 = draw(st.integers(0, 6))
    if n0 + n1 == 0:
        n1 = 1
    par = [0] * n0 + [1] * n1
    n = n0 + n1
    M = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n0):
        for j in range(i + 1, n0):
            a = draw(small_ints)
            M[i][j], M[j][i] = a, -a
    for i in range(n0, n):
        for j in range(i, n):
            a = draw(small_ints)
            M[i][j] = M[j][i] = a
    form = EvenBilinearForm(par, M)
    vecs = []
    for _ in range(draw(st.integers(0, 4))):
        p = draw(st.sampled_from([q for q in (0, 1) if par.count(q)]))
        v = tuple(draw(small_ints) if par[i] == p else Fraction(0) for i in range(n))
        vecs.append(v)
    return par, form, GradedSubspace.span(par, vecs)


@given(forms_and_subspaces())
def test_perp_dimension_identity(data):
    par, form, W = data
    V = GradedSubspace.full(par)
    Wp = perp(V, form, W)
    rad = perp(V, form, V)
    lhs = W.sdim + Wp.sdim
    rhs = V.sdim + W.intersect(rad).sdim
    assert tuple(lhs) == tuple(rhs)


@given(forms_and_subspaces())
def test_double_perp(data):
    par, form, W = data
    V = GradedSubspace.full(par)
    rad = perp(V, form, V)
    pp = perp(V, form, perp(V, form, W))
    assert W <= pp
    Wr = W + rad
    assert perp(V, form, perp(V, form, Wr)) == Wr


def _symplectic():
    return EvenBilinearForm([0, 0], [[0, 1], [-1, 0]])


def test_perp_examples():
    f = _symplectic()
    V = GradedSubspace.full(f.parities)
    assert perp(V, f, GradedSubspace.zero(f.parities)) == V
    line = GradedSubspace.span(f.parities, [(1, 0)])
    assert perp(V, f, line) == line


def test_perp_over_gaussian_rationals():
    _, i = adjoin_sqrt(QQ, -1)
    f = EvenBilinearForm([1, 1], [[1, 0], [0, 1]])
    V = GradedSubspace.full(f.parities)
    W = GradedSubspace.span(f.parities, [(Fraction(1), i)])
    assert perp(V, f, W) == W


def test_perp_dimension_mismatch():
    f = _symplectic()
    with pytest.raises(DimensionMismatch):
        perp(GradedSubspace.full([0, 0, 0]), f, GradedSubspace.zero([0, 0]))


def test_isotropy_examples():
    f = _symplectic()
    V = GradedSubspace.full(f.parities)
    rad = perp(V, f, V)
    assert is_totally_isotropic(rad, f)
    assert is_maximal_isotropic(GradedSubspace.span(f.parities, [(1, 0)]), f)
    assert not is_maximal_isotropic(GradedSubspace.zero(f.parities), f)
    g = EvenBilinearForm([1, 1], [[1, 0], [0, -1]])
    assert is_maximal_isotropic(GradedSubspace.span(g.parities, [(1, 1)]), g)
    assert not is_totally_isotropic(GradedSubspace.span(g.parities, [(1, 0)]), g)


def test_form_symmetry_enforced():
    with pytest.raises(ValueError):
        EvenBilinearForm([0, 0], [[0, 1], [1, 0]])
    with pytest.raises(ValueError):
        EvenBilinearForm([0, 1], [[0, 1], [0, 0]])
