from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from polarlib.errors import InputError, ParseError
from polarlib.polycore import LinearChange, Poly, apply_linear_change, parse_poly, rational_det

from conftest import VARS, polys, to_sympy

X, Y, Z = (Poly.var(v, VARS) for v in VARS)


# -- ring axioms ---------------------------------------------------------------


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == Poly.zero(VARS)
    assert a * 1 == a


@given(polys(), polys())
def test_leibniz_rule(a, b):
    for v in VARS:
        assert (a * b).differentiate(v) == a.differentiate(v) * b + a * b.differentiate(v)


@given(polys(), polys(), st.tuples(*(st.fractions(-5, 5, max_denominator=4) for _ in VARS)))
def test_evaluation_is_a_ring_homomorphism(a, b, pt):
    point = dict(zip(VARS, pt))
    assert (a + b).evaluate(point) == a.evaluate(point) + b.evaluate(point)
    assert (a * b).evaluate(point) == a.evaluate(point) * b.evaluate(point)


@given(polys())
def test_homogenize_round_trip(p):
    if p.is_zero():
        return
    h = p.homogenize("w")
    assert h.is_homogeneous()
    assert h.degree() == p.degree()
    assert h.substitute({"w": 1}).with_vars(VARS) == p


@given(polys())
def test_parse_print_round_trip(p):
    assert parse_poly(str(p), VARS) == p


@given(polys(), polys())
def test_exact_division_inverts_multiplication(a, b):
    if b.is_zero():
        return
    assert (a * b).exact_div(b) == a
    assert (a * b).remainder(b).is_zero()


@given(polys())
def test_arithmetic_matches_sympy(p):
    q = p * p - 3 * p
    assert sympy.expand(to_sympy(q) - (to_sympy(p) ** 2 - 3 * to_sympy(p))) == 0


# -- structure -------------------------------------------------------------------


def test_degree_of_zero_is_minus_infinity():
    assert Poly.zero(VARS).degree() == float("-inf")


def test_canonical_string_is_graded_lex():
    p = parse_poly("1/2 - 3*x + x^2*y")
    assert str(p) == "x^2*y - 3*x + 1/2"
    assert str(parse_poly("3/2*x")) == "3/2*x"


def test_equality_across_variable_sets():
    assert parse_poly("x+1", ["x"]) == parse_poly("x+1", ["x", "y"])
    assert hash(parse_poly("x+1", ["x"])) == hash(parse_poly("x+1", ["x", "y"]))


def test_top_form_and_homogeneity():
    p = parse_poly("x^2 + x*y + y - 1")
    assert p.top_form() == parse_poly("x^2 + x*y", p.vars)
    assert not p.is_homogeneous()


def test_exact_div_raises_when_not_exact():
    with pytest.raises(InputError):
        parse_poly("x^2+1").exact_div(parse_poly("x+1"))


def test_dehomogenize_requires_homogeneous():
    with pytest.raises(InputError):
        parse_poly("x+1").dehomogenize("x")


def test_evaluate_needs_every_variable():
    with pytest.raises(InputError):
        parse_poly("x+y").evaluate({"x": 1})


def test_differentiate_unknown_variable():
    with pytest.raises(InputError):
        parse_poly("x+y").differentiate("z")


def test_coefficients_round_trip():
    p = parse_poly("x^2*y + 3*x*y^2 - y + 5")
    coeffs = p.coefficients_in("y")
    back = Poly.from_coefficients(coeffs, "y", ("x",))
    assert back == p


def test_primitive_normalization():
    p = parse_poly("-4/3*x^2 + 2/3*y")
    assert str(p.primitive()) == "2*x^2 - y"


# -- parser ------------------------------------------------------------------------


@pytest.mark.parametrize(
    "text, expected",
    [
        ("x^2 + 2*y^2 - 1", {(2, 0): 1, (0, 2): 2, (0, 0): -1}),
        ("y^2 - x^2*(x+1)", {(0, 2): 1, (3, 0): -1, (2, 0): -1}),
        ("x**2/4 + y**2 - 1", {(2, 0): Fraction(1, 4), (0, 2): 1, (0, 0): -1}),
        ("0.5*x", {(1, 0): Fraction(1, 2)}),
        ("-(x - y)", {(1, 0): -1, (0, 1): 1}),
    ],
)
def test_parse_examples(text, expected):
    assert parse_poly(text, ["x", "y"]) == Poly(("x", "y"), expected)


def test_parse_with_fixed_vars_keeps_zero_support():
    p = parse_poly("3/2*x", ["x", "y"])
    assert p.vars == ("x", "y")
    assert p.degree_in("y") == 0


def test_parse_infers_first_appearance_order():
    assert parse_poly("b*a + c").vars == ("b", "a", "c")


@pytest.mark.parametrize("text", ["x +", "x ^ y", "(x + 1", "x $ 2", "x / y", "x / 0", ""])
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_poly(text)


def test_parse_error_reports_position():
    with pytest.raises(ParseError) as info:
        parse_poly("x + y $")
    assert info.value.position == 6


def test_unknown_variable_with_fixed_vars():
    with pytest.raises(ParseError):
        parse_poly("x + z", ["x", "y"])


# -- linear changes ----------------------------------------------------------------


def test_shear_substitution():
    change = LinearChange.shear(2, 0, 1, 3)
    p = parse_poly("x^2 - y", ["x", "y"])
    assert apply_linear_change(p, change) == parse_poly("(x + 3*y)^2 - y", ["x", "y"])


def test_singular_change_rejected():
    with pytest.raises(InputError, match="singular matrix"):
        LinearChange([[1, 2, 0], [2, 4, 0], [0, 0, 1]])


def test_translation_row():
    change = LinearChange([[1, 0, 0], [0, 1, 0], [2, -1, 1]])
    p = parse_poly("x*y", ["x", "y"])
    assert apply_linear_change(p, change) == parse_poly("(x+2)*(y-1)", ["x", "y"])


def test_rational_det():
    assert rational_det([[1, 2], [3, 4]]) == -2
    assert rational_det([[Fraction(1, 2), 0], [0, 4]]) == 2
