from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superdixmier.dixmier import (
    CliffordFactor,
    MatrixFactor,
    TargetAlgebra,
    WeylFactor,
    build_dixmier,
    even_part_ideal_check,
    kernel_slice,
    pq_formula,
    validate_step_images,
)
from superdixmier.dixmier.morphism import slice_element
from superdixmier.dixmier.split import (
    SignedOracle,
    canonicalize_clifford,
    full_matrix_check,
    split_maximal,
    supercenter_check,
    supercenter_is_scalar,
)
from superdixmier.dixmier.target import supercommutator
from superdixmier.exactlin.scalars import QQ, adjoin_sqrt
from superdixmier.parsing import parse_element
from superdixmier.pbw import generator
from superdixmier.polarization import Functional
from superdixmier.superlie import HypothesisError

from conftest import cat, small_ints
from test_superlie import gl11_like

_, SQRT2 = adjoin_sqrt(QQ, 2)
_, I = adjoin_sqrt(QQ, -1)


def morph(name, lname="lam"):
    alg, lams = cat(name)
    return alg, build_dixmier(alg, lams[lname])


# -- examples ----------------------------------------------------------------

def test_abelian():
    alg, m = morph("abelian")
    assert (m.p, m.q) == (0, 0)
    assert [s.kind for s in m.steps] == ["evaluation"]
    for i in range(alg.dim):
        assert m(generator(alg, i)) == m.target.scalar(m.lam[i])


def test_clifford_terminal():
    alg, m = morph("cl11")
    assert (m.p, m.q) == (0, 1)
    assert m.target.factors == (CliffordFactor(Fraction(1, 2)),)
    assert m(generator(alg, "c")) == m.target.generator(0, "g")
    assert m.member(parse_element(alg, "c^2 - 1/2"))


def test_h3():
    alg, m = morph("h3")
    assert (m.p, m.q) == (1, 0)
    assert m.target.factors == (WeylFactor(),)
    T = m.target
    assert m(generator(alg, "z")) == T.one()
    assert m(generator(alg, "p")) == T.generator(0, "p")
    assert m(generator(alg, "q")) == T.generator(0, "q")
    assert m.member(parse_element(alg, "z - 1"))
    assert not m.member(parse_element(alg, "q"))


def test_super_heisenberg():
    alg, m = morph("sheis")
    assert (m.p, m.q) == (0, 2)
    assert [s.kind for s in m.steps].count("odd") == 1
    assert m.target.factors == (MatrixFactor(),)
    assert m.member(parse_element(alg, "c1*c2 + c2*c1 - 1"))


def test_json_shape():
    _, m = morph("h3")
    js = m.to_json()
    assert js["p"] == 1 and js["q"] == 0
    assert set(js) >= {"p", "q", "steps", "adjoined_radicands", "generator_images"}
    _, m = morph("sheis_diag")
    assert m.to_json()["adjoined_radicands"] == ["-1"]


def test_rejects_bad_input():
    alg = gl11_like()
    with pytest.raises(HypothesisError):
        build_dixmier(alg, Functional(alg, [0, 1, 0, 0]))
    alg, _ = cat("cl11")
    with pytest.raises(ValueError):
        build_dixmier(alg, (1, 1))


# -- catalogue-wide ----------------------------------------------------------

def test_pq_formula(pair):
    alg, lam = pair
    m = build_dixmier(alg, lam)
    assert (m.p, m.q) == pq_formula(alg, lam)
    kinds = [s.kind for s in m.steps]
    assert m.p == kinds.count("even")
    assert m.q == 2 * kinds.count("odd") + kinds.count("clifford")
    assert ("clifford" in kinds) == (m.q % 2 == 1)


def test_step_images(pair):
    alg, lam = pair
    rep = validate_step_images(build_dixmier(alg, lam))
    assert rep.ok, rep.failures


def test_images_homogeneous(pair):
    alg, lam = pair
    m = build_dixmier(alg, lam)
    for i, im in enumerate(m.images):
        assert im.parities() <= {alg.parities[i]}


def test_kernel_is_two_sided(pair):
    alg, lam = pair
    m = build_dixmier(alg, lam)
    exps, K = kernel_slice(m, 2)
    for v in K.rows[:6]:
        u = slice_element(alg, exps, v)
        for i in range(alg.dim):
            g = generator(alg, i)
            assert m.member(g * u) and m.member(u * g)


def test_even_part(pair):
    alg, lam = pair
    rep, _ = even_part_ideal_check(build_dixmier(alg, lam), N=2)
    assert rep.ok, rep.failures


def test_split(pair):
    alg, lam = pair
    m = build_dixmier(alg, lam)
    rep = split_maximal(m, N=2)
    assert rep.ok, rep.checks
    assert rep.maximal == (m.q % 2 == 0)


def test_target_supercenter(pair):
    alg, lam = pair
    m = build_dixmier(alg, lam)
    assert supercenter_is_scalar(m.target, degree=2)
    assert not full_matrix_check(m.target)


# -- target algebras ---------------------------------------------------------

TARGETS = [
    TargetAlgebra((WeylFactor(),)),
    TargetAlgebra((MatrixFactor(), WeylFactor())),
    TargetAlgebra((CliffordFactor(Fraction(1, 2)), MatrixFactor())),
    TargetAlgebra((CliffordFactor(3), MatrixFactor(), MatrixFactor())),
]


@st.composite
def target_elements(draw, T):
    gens = [g for _, g in T.all_generators()]
    out = T.zero()
    for _ in range(draw(st.integers(1, 3))):
        term = T.scalar(draw(small_ints))
        for _ in range(draw(st.integers(0, 3))):
            term = term * draw(st.sampled_from(gens))
        out = out + term
    return out


@pytest.mark.parametrize("T", TARGETS, ids=lambda T: T.describe())
@given(st.data())
def test_target_associative_and_super_jacobi(T, data):
    a = data.draw(target_elements(T))
    b = data.draw(target_elements(T))
    c = data.draw(target_elements(T))
    assert (a * b) * c == a * (b * c)
    # super Jacobi for the supercommutator on homogeneous parts
    for pa in (0, 1):
        for pb in (0, 1):
            x, y = a.parity_part(pa), b.parity_part(pb)
            s = -1 if pa and pb else 1
            assert supercommutator(y, x) == supercommutator(x, y) * (-s)


def test_weyl_relation():
    T = TargetAlgebra((WeylFactor(),))
    q, p = T.generator(0, "q"), T.generator(0, "p")
    assert q * p - p * q == T.one()


def test_koszul_sign_across_factors():
    T = TargetAlgebra((CliffordFactor(1), MatrixFactor()))
    g, e12 = T.generator(0, "g"), T.generator(1, "E12")
    assert g * e12 == -(e12 * g)
    assert supercommutator(g, e12) == 0


def test_supercenter_examples():
    T = TargetAlgebra((WeylFactor(), MatrixFactor()))
    res = supercenter_check(T, 3)
    assert len(res[0]) == 1 and not res[1]
    # [g, g] = 2g^2 != 0, so only scalars survive
    T1 = TargetAlgebra((CliffordFactor(1),))
    assert supercenter_is_scalar(T1)


def test_canonicalize():
    T0 = TargetAlgebra((WeylFactor(),))
    assert canonicalize_clifford(T0).forward == []
    T = TargetAlgebra((MatrixFactor(),))
    pres = canonicalize_clifford(T)
    E12, E21 = T.generator(0, "E12"), T.generator(0, "E21")
    assert pres.forward == [E12 + E21, E12 * (-I) + E21 * I]
    assert not pres.verify()
    Tc = TargetAlgebra((CliffordFactor(Fraction(1, 2)),))
    pres = canonicalize_clifford(Tc)
    assert pres.forward == [Tc.generator(0, "g") * SQRT2]
    assert pres.radicands == ["1/2"]
    assert not pres.verify()


def test_split_examples():
    alg, m = morph("h3")
    assert split_maximal(m).maximal
    alg, m = morph("cl11")
    rep = split_maximal(m)
    assert not rep.maximal and rep.ok
    u = parse_element(alg, "c") - SQRT2 / 2
    assert rep.plus.member(u) and not rep.minus.member(u)
    assert rep.plus.member(parse_element(alg, "z - 1"))
    alg, m = morph("model13")
    rep = split_maximal(m, N=3)
    assert rep.ok and rep.checks["intersection"] and rep.checks["ideal_intersection"]


def test_signed_oracle_needs_clifford_first():
    _, m = morph("h3")
    with pytest.raises(AssertionError):
        SignedOracle(m, 1)
