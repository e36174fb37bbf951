from fractions import Fraction

import sympy
from hypothesis import settings, strategies as st

from polarlib.polycore import Poly

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

VARS = ("x", "y", "z")

coefficients = st.fractions(min_value=-20, max_value=20, max_denominator=6)


@st.composite
def polys(draw, variables=VARS, max_degree=3, max_terms=5):
    k = len(variables)
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.lists(st.integers(0, max_degree), min_size=k, max_size=k)))
        if sum(e) <= max_degree:
            terms[e] = draw(coefficients)
    return Poly(variables, terms)


def to_sympy(p: Poly):
    syms = sympy.symbols(p.vars) if p.vars else ()
    if len(p.vars) == 1:
        syms = (syms,) if not isinstance(syms, tuple) else syms
    expr = sympy.Integer(0)
    for e, c in p.terms.items():
        term = sympy.Rational(Fraction(c).numerator, Fraction(c).denominator)
        for s, k in zip(syms, e):
            term *= s**k
        expr += term
    return expr


def from_sympy(expr, variables) -> Poly:
    poly = sympy.Poly(sympy.expand(expr), *sympy.symbols(variables))
    return Poly(variables, {e: Fraction(int(c.p), int(c.q)) for e, c in poly.terms()})


# lines written by the acceptance checks, echoed after the test run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
