import pytest
from hypothesis import given, strategies as st

from superdixmier import catalogue, kernel
from superdixmier.exactlin.linalg import unit
from superdixmier.parsing import parse_element
from superdixmier.pbw import (
    AlgebraMismatch,
    ConfinementError,
    ad_action,
    alpha,
    from_vector,
    generator,
    power_expansion,
    monomials,
    one,
    reduce_mod_left_ideal,
    sigma,
)
from superdixmier.pbw import CharacterError, multiply

from conftest import cat, homogeneous_elements

SMALL = [n for n in catalogue.names() if cat(n)[0].sdim.even <= 3 and cat(n)[0].sdim.odd <= 3]


def E(name, text):
    return parse_element(cat(name)[0], text)


def test_examples_h3():
    assert E("h3", "p*q") == E("h3", "q*p - z")
    assert str(E("h3", "p*q")) == "-z + q*p"
    assert E("h3", "3/2*q*p^2 - z") == E("h3", "3/2*p^2*q + 3*p*z - z")


def test_odd_squares():
    assert E("sheis", "c1*c1") == 0
    assert E("cl11", "c^2") == E("cl11", "1/2*z")
    assert E("cl11", "c^3") == E("cl11", "1/2*z*c")


def test_alpha_examples():
    alg, _ = cat("h3")
    q, p = generator(alg, "q"), generator(alg, "p")
    assert alpha(q) == -q
    assert alpha(q * p) == p * q
    alg, _ = cat("sheis")
    y1, y2 = generator(alg, "c1"), generator(alg, "c2")
    assert alpha(y1 * y2) == -(y2 * y1)


def test_sigma_examples():
    assert sigma(E("h3c1", "q*p")) == E("h3c1", "q*p")
    assert sigma(E("h3c1", "q*c")) == -E("h3c1", "q*c")


def test_ad_examples():
    alg, _ = cat("h3")
    p = alg.vector({"p": 1})
    assert ad_action(p, one(alg)) == 0
    assert ad_action(p, generator(alg, "q")) == -generator(alg, "z")


def test_ad_confinement():
    alg, _ = cat("h3")
    with pytest.raises(ConfinementError):
        ad_action(alg.vector({"p": 1}), generator(alg, "q"), confine=alg.span_labels(["q"]))
    ad_action(alg.vector({"p": 1}), generator(alg, "q"), confine=alg.span_labels(["z", "q"]))


def test_algebra_mismatch():
    with pytest.raises(AlgebraMismatch):
        multiply(E("h3", "q"), E("h5", "q1"))


def test_reduce_examples():
    alg, _ = cat("h3")
    h = alg.span_labels(["z", "q"])
    lam = alg.vector({"z": 1})
    assert reduce_mod_left_ideal(E("h3", "z - 1"), h, lam) == {}
    # complement-first order: p*q is already normal, q*p = p*q + z
    assert reduce_mod_left_ideal(E("h3", "p*q"), h, lam) == {}
    assert reduce_mod_left_ideal(E("h3", "q*p"), h, lam) == {(0,): 1}
    assert reduce_mod_left_ideal(E("h3", "p^2"), h, lam) == {(2,): 1}


def test_reduce_needs_subordinate():
    alg, _ = cat("h3")
    with pytest.raises(CharacterError):
        reduce_mod_left_ideal(E("h3", "q"), alg.full_space(), alg.vector({"z": 1}))


@pytest.mark.parametrize("name", SMALL)
@given(data=st.data())
def test_associativity(name, data):
    alg, _ = cat(name)
    u = data.draw(homogeneous_elements(alg))
    v = data.draw(homogeneous_elements(alg))
    w = data.draw(homogeneous_elements(alg))
    assert (u * v) * w == u * (v * w)


@pytest.mark.parametrize("name", SMALL)
@given(data=st.data())
def test_alpha_antiautomorphism(name, data):
    alg, _ = cat(name)
    u = data.draw(homogeneous_elements(alg))
    v = data.draw(homogeneous_elements(alg))
    s = -1 if u.parity and v.parity else 1
    assert alpha(u * v) == alpha(v) * alpha(u) * s
    assert alpha(alpha(u)) == u
    assert sigma(alpha(u)) == alpha(sigma(u))
    assert sigma(sigma(u)) == u


@pytest.mark.parametrize("name", SMALL)
@given(data=st.data())
def test_ad_is_superderivation(name, data):
    alg, _ = cat(name)
    i = data.draw(st.integers(0, alg.dim - 1))
    x = unit(alg.dim, i)
    px = alg.parities[i]
    u = data.draw(homogeneous_elements(alg, max_degree=2))
    v = data.draw(homogeneous_elements(alg, max_degree=2))
    s = -1 if px and u.parity else 1
    assert ad_action(x, u * v) == ad_action(x, u) * v + u * ad_action(x, v) * s


@pytest.mark.parametrize("name", SMALL)
@given(data=st.data())
def test_gr_compatibility(name, data):
    alg, _ = cat(name)
    u = data.draw(homogeneous_elements(alg))
    v = data.draw(homogeneous_elements(alg))
    prod = u * v
    assert prod.degree <= u.degree + v.degree
    # leading terms multiply supercommutatively
    top = prod.degree_part(u.degree + v.degree)
    other = (v * u).degree_part(u.degree + v.degree)
    s = -1 if u.parity and v.parity else 1
    assert top == other * s


@pytest.mark.parametrize("name", ["h3c1", "mixed32", "eng22", "model13", "h3c2"])
@given(data=st.data())
def test_power_expansion(name, data):
    alg, _ = cat(name)
    z = data.draw(homogeneous_elements(alg, max_degree=2, max_terms=2))
    p = data.draw(st.integers(1, 2))
    idx = data.draw(st.lists(st.integers(0, alg.dim - 1), min_size=p, max_size=p))
    # exponents of odd y_i obey the PBW cap
    ns = [data.draw(st.integers(0, 1 if alg.parities[i] else 3)) for i in idx]
    ys = [unit(alg.dim, i) for i in idx]
    lhs = z
    for y, n in zip(ys, ns):
        lhs = lhs * from_vector(alg, y) ** n
    assert lhs == power_expansion(z, ys, ns)


def test_power_expansion_needs_odd_cap():
    # odd y with exponent 2: the plain binomial sum overcounts the middle term
    alg, _ = cat("h3c2")
    z, y = generator(alg, "c1"), unit(alg.dim, alg.index("c2"))
    lhs = z * from_vector(alg, y) ** 2
    rhs = power_expansion(z, [y], [2])
    assert lhs == 0
    assert rhs - lhs == E("h3c2", "-2*z*c2")


def test_monomials_respect_odd_cap():
    alg, _ = cat("model13")
    for m in monomials(alg, 4):
        assert all(e <= 1 for e, p in zip(m, alg.parities) if p)


@pytest.mark.skipif(kernel.CStraightener is None, reason="extension not built")
@pytest.mark.parametrize("name", SMALL)
@given(data=st.data())
def test_backends_agree(name, data):
    alg, _ = cat(name)
    n = alg.dim
    structure = [[alg.structure(i, j) for j in range(n)] for i in range(n)]
    py = kernel.PyStraightener(alg.parities, structure)
    cy = kernel.CStraightener(alg.parities, structure)
    u = data.draw(homogeneous_elements(alg))
    v = data.draw(homogeneous_elements(alg))
    assert py.multiply(u.terms, v.terms) == cy.multiply(u.terms, v.terms)


def test_backend_selected():
    assert kernel.BACKEND in ("python", "cython")
    if kernel.CStraightener is not None:
        assert kernel.Straightener is kernel.CStraightener or kernel.BACKEND == "python"


def test_pure_python_forced(tmp_path):
    import os
    import subprocess
    import sys

    env = dict(os.environ, SUPERDIXMIER_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", "from superdixmier import kernel; print(kernel.BACKEND)"],
                         env=env, capture_output=True, text=True, check=True)
    assert out.stdout.strip() == "python"
