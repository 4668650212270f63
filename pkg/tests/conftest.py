from fractions import Fraction

import pytest
from hypothesis import strategies as st

from dmop.core import Polynomial

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


@st.composite
def polynomials(draw, max_degree=6):
    coeffs = draw(st.lists(rationals, min_size=0, max_size=max_degree + 1))
    return Polynomial(coeffs)


@pytest.fixture
def x():
    return Polynomial.x()


def F(s) -> Fraction:
    return Fraction(s)


def pytest_terminal_summary(terminalreporter):
    lines = []
    for outcome in ("passed", "failed"):
        for rep in terminalreporter.stats.get(outcome, []):
            props = dict(getattr(rep, "user_properties", ()))
            if rep.when == "call" and "criterion" in props:
                lines.append((props["criterion"], outcome, rep.duration))
    if not lines:
        return
    terminalreporter.section("acceptance criteria")
    for text, outcome, duration in sorted(lines, key=lambda t: int(t[0].split()[0])):
        terminalreporter.write_line(f"criterion {text}: {'PASS' if outcome == 'passed' else 'FAIL'} ({duration:.1f} s)")
