import os
import sys
from fractions import Fraction

import pytest
from hypothesis import settings, strategies as st

from qschubert.exact_algebra import Polynomial, Var
from qschubert.permutations import Permutation

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

VARS = [Var("x", 1), Var("x", 2), Var("x", 3), Var("q", 1), Var("q", 2),
        Var("t", (1, 2)), Var("t", (2, 1)), Var("y", 1)]

fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)


@st.composite
def monomials(draw, variables=VARS, max_exp=3):
    chosen = draw(st.lists(st.sampled_from(variables), max_size=3, unique=True))
    return [(v, draw(st.integers(1, max_exp))) for v in chosen]


@st.composite
def polynomials(draw, variables=VARS, max_terms=4):
    p = Polynomial()
    for _ in range(draw(st.integers(0, max_terms))):
        p = p + Polynomial.monomial(draw(monomials(variables)), draw(fractions))
    return p


def permutations_of(n):
    return st.permutations(list(range(1, n + 1))).map(Permutation)


@pytest.fixture(scope="session")
def cache_dir(tmp_path_factory):
    return tmp_path_factory.mktemp("schubert-cache")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance") or sys.modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
