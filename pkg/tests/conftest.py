"""Shared strategies and fixtures for the test suite."""

import hypothesis.strategies as st
import pytest

from unipic import FieldDesc, MPoly, RatFunc

F2T = FieldDesc(2, ("t",))
F3T = FieldDesc(3, ("t",))
F2TU = FieldDesc(2, ("t", "u"))


@pytest.fixture
def f2t():
    return F2T


@pytest.fixture
def f3t():
    return F3T


@pytest.fixture
def f2tu():
    return F2TU


def mpoly_strategy(field, max_deg=3, max_terms=3, nonzero=False):
    """Random sparse polynomial over the prime field constants of field."""
    exp = st.tuples(*[st.integers(0, max_deg) for _ in field.vars])
    coeff = st.integers(1, field.p - 1)
    terms = st.dictionaries(exp, coeff, min_size=1 if nonzero else 0,
                            max_size=max_terms)
    return terms.map(lambda d: MPoly(field, d))


def ratfunc_strategy(field, max_deg=2, max_terms=2, nonzero=False):
    num = mpoly_strategy(field, max_deg, max_terms, nonzero=nonzero)
    den = mpoly_strategy(field, max_deg, max_terms, nonzero=True)
    return st.builds(RatFunc, num, den)


def nonzero_ratfunc_strategy(field, max_deg=2, max_terms=2):
    return ratfunc_strategy(field, max_deg, max_terms, nonzero=True)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, elapsed, budget in RESULTS:
        mark = "PASS" if ok else "FAIL"
        terminalreporter.write_line(
            f"{mark} {name} ({elapsed:.2f}s, budget {budget:.0f}s)")
