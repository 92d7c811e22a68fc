from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superdixmier.dixmier import build_dixmier, kernel_slice
from superdixmier.induced import (
    DescentFailure,
    InducedTruncation,
    TruncationOverflow,
    ideal_component_decomposition_check,
)
from superdixmier.parsing import parse_element
from superdixmier.polarization import polarize

from conftest import cat, homogeneous_elements, small_ints


def h3_trunc(M=6, parity=0):
    alg, lams = cat("h3")
    return alg, InducedTruncation(alg, alg.span_labels(["z", "q"]), lams["lam"], M, parity)


def test_basic_action():
    alg, tr = h3_trunc()
    t = {(3,): Fraction(1)}
    assert tr.act(parse_element(alg, "1"), t) == t
    assert tr.act(parse_element(alg, "q"), t) == {(2,): 3}
    assert tr.act(parse_element(alg, "z - 1"), t) == {}
    assert tr.act(parse_element(alg, "p"), t) == {(4,): 1}
    assert tr.format(tr.act(parse_element(alg, "p^2 + q"), {(1,): Fraction(1)})) == "v + p^3*v"


@pytest.mark.parametrize("n", range(5))
def test_derivative_action(n):
    alg, tr = h3_trunc()
    got = tr.act(parse_element(alg, "q"), {(n,): Fraction(1)})
    assert got == ({(n - 1,): n} if n else {})


def test_overflow_is_reported():
    alg, tr = h3_trunc(M=3)
    with pytest.raises(TruncationOverflow):
        tr.act(parse_element(alg, "p^2"), {(2,): Fraction(1)})


@given(st.data())
def test_module_law(data):
    name = data.draw(st.sampled_from(["h3", "sheis", "h3c1", "mixed32", "model13"]))
    alg, lams = cat(name)
    lam = lams["lam"]
    tr = InducedTruncation(alg, polarize(alg, lam).h, lam, 6)
    u = data.draw(homogeneous_elements(alg, max_degree=2, max_terms=2))
    v = data.draw(homogeneous_elements(alg, max_degree=2, max_terms=2))
    m = data.draw(st.sampled_from(tr.basis(2)))
    t = {m: Fraction(1)}
    assert tr.act(u * v, t) == tr.act(u, tr.act(v, t))
    # filtration compatibility
    assert tr.degree(tr.act(u, t)) <= u.degree + tr.degree(t)


def test_basis_is_nested_and_capped():
    alg, lams = cat("model13")
    tr = InducedTruncation(alg, polarize(alg, lams["lam"]).h, lams["lam"], 4)
    assert set(tr.basis(2)) <= set(tr.basis(3))
    odd = [i for i, p in enumerate(tr._cpar) if p]
    assert all(m[i] <= 1 for m in tr.basis() for i in odd)


def test_annihilator_examples():
    alg, tr = h3_trunc()
    exps, S = tr.annihilator_truncated(1, 4)
    assert S.dim == 1
    v = dict(zip(exps, S.rows[0]))
    assert v[(0, 0, 0)] == -v[(1, 0, 0)]
    alg, lams = cat("abelian")
    tr0 = InducedTruncation(alg, alg.full_space(), lams["zero"], 3)
    exps, S = tr0.annihilator_truncated(1, 3)
    assert S.dim == 3
    alg, lams = cat("cl11")
    trc = InducedTruncation(alg, polarize(alg, lams["lam"]).h, lams["lam"], 4)
    exps, S = trc.annihilator_truncated(2, 4)
    c2 = parse_element(alg, "c^2 - 1/2")
    vec = tuple(c2.terms.get(e, 0) for e in exps)
    assert S.contains(vec)


def test_annihilator_needs_probe_degree():
    alg, tr = h3_trunc()
    with pytest.raises(ValueError):
        tr.annihilator_truncated(3, 2)


@pytest.mark.parametrize("name", ["h3", "sheis", "cl11", "sc11", "h3c1"])
def test_annihilator_decreases_to_kernel(name):
    alg, lams = cat(name)
    lam = lams["lam"]
    tr = InducedTruncation(alg, polarize(alg, lam).h, lam, 6)
    _, K = kernel_slice(build_dixmier(alg, lam), 2)
    prev = None
    for M in range(2, 7):
        _, S = tr.annihilator_truncated(2, M)
        assert K <= S
        if prev is not None:
            assert S <= prev
        prev = S
    assert prev == K


def test_parity_choice_does_not_change_annihilator():
    alg, lams = cat("sheis")
    h = polarize(alg, lams["lam"]).h
    a = InducedTruncation(alg, h, lams["lam"], 5, parity=0).annihilator_truncated(2, 5)[1]
    b = InducedTruncation(alg, h, lams["lam"], 5, parity=1).annihilator_truncated(2, 5)[1]
    assert a == b


def test_descend_examples():
    alg, tr = h3_trunc()
    k = alg.span_labels(["z", "q"])
    with pytest.raises(ValueError):
        tr.descend(tr.one(), k, 4)
    d = tr.descend({(1,): Fraction(1)}, k, 4)
    assert d.z == parse_element(alg, "q")
    assert d.image == {(0,): 1}
    assert tr.replay(d, {(1,): Fraction(1)})

    alg, lams = cat("sheis")
    tr = InducedTruncation(alg, alg.span_labels(["z", "c1"]), lams["lam"], 4)
    k = alg.span_labels(["z", "c1"])
    d = tr.descend({(1,): Fraction(1)}, k, 4)
    assert d.z == parse_element(alg, "c1")
    assert d.image in ({(0,): 1}, {(0,): -1})


def test_descend_budget_exhausted():
    alg, tr = h3_trunc()
    # U(span(z)) acts by scalars, so nothing lowers the degree
    with pytest.raises(DescentFailure):
        tr.descend({(2,): Fraction(1)}, alg.span_labels(["z"]), 3)


@given(st.lists(small_ints, min_size=4, max_size=4).filter(lambda cs: cs[-1] != 0))
def test_descend_random_h3(cs):
    alg, tr = h3_trunc(M=8)
    t = {(i,): c for i, c in enumerate(cs) if c}
    d = tr.descend(t, alg.span_labels(["z", "q"]), 4)
    assert d.image and tr.filtration_degree(d.image) < 3
    assert tr.replay(d, t)


def test_decomposition_check():
    alg, tr = h3_trunc()
    assert ideal_component_decomposition_check(tr, alg.span_labels(["z"]))
    rep = ideal_component_decomposition_check(tr, alg.span_labels(["z", "q"]))
    assert not rep and "lambda([p, q]) != 0" in rep.message
    alg, lams = cat("filiform4")
    lam = lams["lam_e3"]
    k = alg.span_labels(["e3", "e4"])
    h = polarize(alg, lam).h
    assert k <= h
    trf = InducedTruncation(alg, h, lam, 4)
    assert ideal_component_decomposition_check(trf, k)


def test_decomposition_check_with_odd_lines():
    alg, lams = cat("h3c2")
    lam = lams["lam"]
    tr = InducedTruncation(alg, polarize(alg, lam).h, lam, 4, parity=1)
    assert ideal_component_decomposition_check(tr, alg.span_labels(["z"]))


def test_json_format():
    alg, tr = h3_trunc()
    assert tr.to_json({(2,): Fraction(3, 2), (0,): Fraction(1)}) == {"1": "1", "p^2": "3/2"}
