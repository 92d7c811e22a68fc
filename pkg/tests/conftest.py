from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings, strategies as st

from superdixmier import catalogue

settings.register_profile(
    "repo", derandomize=True, deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")

PAIRS = catalogue.pairs()

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small_ints = st.integers(min_value=-3, max_value=3).map(Fraction)


def cat(name):
    return catalogue.load(name)


def pair_id(p):
    return "%s:%s" % p


@pytest.fixture(params=PAIRS, ids=pair_id)
def pair(request):
    name, lname = request.param
    alg, lams = catalogue.load(name)
    return alg, lams[lname]


@st.composite
def homogeneous_elements(draw, alg, parity=None, max_degree=3, max_terms=3):
    """Random homogeneous PBW element of the given (or a drawn) parity."""
    from superdixmier.pbw import mono_parity, monomial, monomials, zero

    monos = monomials(alg, max_degree)
    if parity is None:
        parity = draw(st.sampled_from(sorted({mono_parity(alg, m) for m in monos})))
    pool = [m for m in monos if mono_parity(alg, m) == parity]
    chosen = draw(st.lists(st.sampled_from(pool), min_size=1, max_size=max_terms, unique=True))
    out = zero(alg)
    for m in chosen:
        c = draw(small_ints.filter(bool))
        out = out + monomial(alg, m, c)
    return out


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for line in sorted(lines):
            terminalreporter.write_line(line)
