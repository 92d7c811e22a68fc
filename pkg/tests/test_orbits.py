import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superdixmier import catalogue
from superdixmier.dixmier import build_dixmier
from superdixmier.exactlin.linalg import dot
from superdixmier.orbits import (
    apply_witness,
    coadjoint,
    exp_ad,
    ideal_invariance_check,
    identity_automorphism,
    orbit_equal,
    stabilizer_bound,
)
from superdixmier.polarization import Functional
from superdixmier.superlie import HypothesisError, center

from conftest import cat
from test_superlie import gl11_like


def random_even(alg, rng):
    return tuple(Fraction(rng.randint(-3, 3), rng.randint(1, 2)) if p == 0 else Fraction(0)
                 for p in alg.parities)


def test_exp_ad_examples():
    alg, _ = cat("h3")
    assert exp_ad(alg, alg.vector({"z": 1})).is_identity()
    A = exp_ad(alg, alg.vector({"q": 1}))
    assert A(alg.vector({"p": 1})) == alg.vector({"p": 1, "z": 1})
    B = A.compose(A.inverse())
    assert B.is_identity()
    assert A.inverse().matrix == exp_ad(alg, alg.vector({"q": -1})).matrix


def test_exp_ad_rejects():
    alg, _ = cat("cl11")
    with pytest.raises(ValueError):
        exp_ad(alg, alg.vector({"c": 1}))
    g = gl11_like()
    with pytest.raises(HypothesisError):
        exp_ad(g, g.vector({"h": 1}))


def test_coadjoint_examples():
    alg, lams = cat("h3")
    lam = lams["lam"]
    assert tuple(coadjoint(identity_automorphism(alg), lam)) == tuple(lam)
    mu = coadjoint(exp_ad(alg, alg.vector({"q": 1})), lam)
    assert tuple(mu) == tuple(alg.vector({"z": 1, "p": -1}))


@pytest.mark.parametrize("name", catalogue.names())
@given(st.randoms(use_true_random=False))
def test_brackets_preserved_and_center_fixed(name, rng):
    alg, lams = cat(name)
    x = random_even(alg, rng)
    A = exp_ad(alg, x)
    assert A.preserves_brackets()
    for lam in lams.values():
        mu = coadjoint(A, lam)
        for v in center(alg).basis:
            assert dot(mu, v) == dot(lam, v)


def test_orbit_equal_examples():
    alg, lams = cat("h3")
    v = orbit_equal(alg, lams["lam"], lams["lam"])
    assert v.kind == "equal_with_witness" and v.witness == []
    v = orbit_equal(alg, lams["lam"], lams["lam_shift"])
    assert v.kind == "equal_with_witness"
    assert tuple(apply_witness(alg, lams["lam"], v.witness)) == tuple(lams["lam_shift"])
    v = orbit_equal(alg, lams["lam"], Functional(alg, [2, 0, 0]))
    assert v.kind == "distinct_with_separator"
    assert str(v.separator) == "-1 + z"
    v = orbit_equal(alg, lams["lam"], lams["lam_flat"])
    assert not v.equal


def test_orbit_distinct_by_slice():
    # same central values, different orbits: the flat functionals q* and p* on h3
    alg, _ = cat("h3")
    v = orbit_equal(alg, Functional(alg, [0, 1, 0]), Functional(alg, [0, 0, 1]))
    assert v.kind == "distinct_with_separator" and v.details["reason"] == "kernel slices differ"
    m1 = build_dixmier(alg, Functional(alg, [0, 1, 0]))
    m2 = build_dixmier(alg, Functional(alg, [0, 0, 1]))
    assert m1.member(v.separator) != m2.member(v.separator)


def test_orbit_inconclusive_without_slice():
    # q* and 2q* on h3: both fixed by the coadjoint action, same central value
    alg, _ = cat("h3")
    a, b = Functional(alg, [0, 1, 0]), Functional(alg, [0, 2, 0])
    assert orbit_equal(alg, a, b, degree=0, tries=2).kind == "inconclusive"
    assert orbit_equal(alg, a, b, degree=1).kind == "distinct_with_separator"


@pytest.mark.parametrize("name,lname", catalogue.pairs(), ids=lambda p: str(p))
def test_random_translates_found(name, lname):
    alg, lams = cat(name)
    lam = lams[lname]
    rng = random.Random(3)
    mu = coadjoint(exp_ad(alg, random_even(alg, rng)), lam)
    v = orbit_equal(alg, lam, mu, degree=2)
    assert v.equal
    if v.kind == "equal_with_witness":
        assert tuple(apply_witness(alg, lam, v.witness)) == tuple(mu)


def test_orbit_reproducible():
    alg, lams = cat("filiform4")
    lam = lams["lam"]
    mu = coadjoint(exp_ad(alg, alg.vector({"e1": 2, "e2": -1})), lam)
    a = orbit_equal(alg, lam, mu, seed=5).to_json(alg)
    b = orbit_equal(alg, lam, mu, seed=5).to_json(alg)
    assert a == b


@pytest.mark.parametrize("name", ["h3", "cl11", "mixed32", "filiform4"])
def test_ideal_invariance(name):
    alg, lams = cat(name)
    m = build_dixmier(alg, lams["lam"])
    assert ideal_invariance_check(m, identity_automorphism(alg), N=2)
    rng = random.Random(11)
    A = exp_ad(alg, random_even(alg, rng))
    rep = ideal_invariance_check(m, A, N=3)
    assert rep.ok and rep.checked > 0


def test_stabilizer_bound_examples():
    alg, lams = cat("h3")
    lam = lams["lam"]
    b = stabilizer_bound(alg, lam, alg.full_space())
    assert b.space == alg.full_space() and b.ok
    k = alg.span_labels(["z", "q"])
    b = stabilizer_bound(alg, lam, k)
    assert b.space == k and b.ok
    alg, lams = cat("abelian")
    b = stabilizer_bound(alg, lams["lam"], alg.span_labels(["a"]))
    assert b.space == alg.full_space() and b.ok


def test_stabilizer_bound_requires_ideal():
    alg, lams = cat("h3")
    with pytest.raises(ValueError):
        stabilizer_bound(alg, lams["lam"], alg.span_labels(["q"]))


@pytest.mark.parametrize("name", ["h5", "filiform4", "mixed32", "h3c2"])
def test_stabilizer_bound_center_ideal(name):
    alg, lams = cat(name)
    lam = lams["lam"]
    # k = g^1 (derived algebra) is an ideal; bound contains it
    from superdixmier.superlie import lower_central_series

    k = lower_central_series(alg)[1]
    b = stabilizer_bound(alg, lam, k)
    assert k <= b.space and b.ok, b.checks
