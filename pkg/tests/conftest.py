import pytest
from hypothesis import strategies as st

from gpjt.ring import Polynomial, RingContext

SMALL = RingContext(2, 1, 3)


@st.composite
def polynomials(draw, ctx=SMALL, max_terms=5, max_exp=2, coeff=5):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        xs = tuple(draw(st.integers(0, max_exp)) for _ in range(ctx.d + ctx.B))
        be = draw(st.integers(0, ctx.N))
        terms[xs + (be,)] = terms.get(xs + (be,), 0) + draw(st.integers(-coeff, coeff))
    return Polynomial.from_terms(ctx, terms)


@st.composite
def units(draw, ctx=SMALL):
    q = draw(polynomials(ctx))
    return 1 + ctx.beta() * q


# one line per acceptance criterion, collected by tests/test_acceptance.py
CRITERIA: dict[str, bool] = {}


def pytest_terminal_summary(terminalreporter):
    if not CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(CRITERIA, key=lambda s: int(s.split(".")[0])):
        terminalreporter.write_line(f"{'PASS' if CRITERIA[name] else 'FAIL'}  criterion {name}")


@pytest.fixture
def record_criterion():
    def record(name, ok):
        CRITERIA[name] = CRITERIA.get(name, True) and bool(ok)
        return ok

    return record
