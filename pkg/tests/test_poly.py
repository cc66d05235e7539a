"""Polynomial arithmetic against brute-force oracles."""

from __future__ import annotations

import math
from fractions import Fraction
from itertools import product

import pytest

from qrees.errors import ProblemParseError
from qrees.field import QQ, FieldSpec
from qrees.poly import (
    INFINITY,
    Infinity,
    Polynomial,
    format_polynomial,
    grevlex_key,
    parse_polynomial,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text: str, variables: tuple[str, ...] = XY, field: FieldSpec = QQ) -> Polynomial:
    return parse_polynomial(text, field, variables)


def test_parse_format_round_trip() -> None:
    for text in ("x^2 + y^3", "2*x*y - 7", "x^4 - 3*x^2*y + y^2 - 1", "0", "5"):
        p = P(text)
        again = parse_polynomial(format_polynomial(p), QQ, XY)
        assert again == p


def test_parse_rational_coefficients() -> None:
    p = P("1/2*x + 3/4")
    assert p.terms[(1, 0)] == Fraction(1, 2)
    assert p.terms[(0, 0)] == Fraction(3, 4)


def test_parse_rejects_unknown_variable() -> None:
    with pytest.raises(ProblemParseError):
        P("x + w")


def test_parse_parentheses_and_powers() -> None:
    p = P("(x + y)^2")
    q = P("x^2 + 2*x*y + y^2")
    assert p == q


def test_arithmetic_matches_evaluation() -> None:
    """Ring operations commute with evaluation on a grid of points."""
    f = P("x^2 - 3*y + 1")
    g = P("x*y + 2")
    points = [
        {"x": Fraction(a), "y": Fraction(b)}
        for a, b in product((-2, -1, 0, 1, 2), repeat=2)
    ]
    for pt in points:
        assert (f + g).evaluate(pt) == f.evaluate(pt) + g.evaluate(pt)
        assert (f - g).evaluate(pt) == f.evaluate(pt) - g.evaluate(pt)
        assert (f * g).evaluate(pt) == f.evaluate(pt) * g.evaluate(pt)
        assert (f**3).evaluate(pt) == f.evaluate(pt) ** 3


def test_zero_polynomial_conventions() -> None:
    z = Polynomial.zero(QQ, XY)
    assert z.is_zero()
    assert z.total_degree() == -1
    assert isinstance(z.order(), Infinity)
    assert z + z == z
    assert z * P("x") == z


def test_order_is_minimal_term_degree() -> None:
    assert P("x^2 + y^3").order() == 2
    assert P("x*y + x^5").order() == 2
    assert P("7").order() == 0
    assert P("x^2*y + y^4", XY).order() == 3


def test_order_in_vars_counts_only_selected() -> None:
    p = P("x^2*y + y*z^3", XYZ)
    assert p.order_in_vars(("x",)) == 0  # the y*z^3 term has no x
    assert p.order_in_vars(("y",)) == 1
    assert p.order_in_vars(("x", "z")) == 2


def test_divisor_valuation() -> None:
    p = P("x^2*y^3 + x^3*y^2")
    assert p.divisor_valuation("x") == 2
    assert p.divisor_valuation("y") == 2
    assert isinstance(Polynomial.zero(QQ, XY).divisor_valuation("x"), Infinity)


def test_divide_by_variable_power() -> None:
    p = P("x^2*y + x^3")
    q = p.divide_by_variable_power("x", 2)
    assert q == P("y + x")
    with pytest.raises(ValueError):
        p.divide_by_variable_power("x", 3)


def test_restrict_zero_drops_variable_from_ring() -> None:
    p = P("x^2 + x*y + y^3")
    r = p.restrict_zero("x")
    assert r.variables == ("y",)
    assert r == parse_polynomial("y^3", QQ, ("y",))


def test_in_ring_moves_by_name() -> None:
    p = parse_polynomial("y^2 + z", QQ, XYZ)
    q = p.in_ring(("y", "z"))
    assert q.variables == ("y", "z")
    assert q == parse_polynomial("y^2 + z", QQ, ("y", "z"))
    with pytest.raises(ValueError):
        P("x + y").in_ring(("y",))


def test_substitute_matches_composition() -> None:
    f = P("x^2 + y")
    image = {"x": P("x*y"), "y": P("y + 1")}
    g = f.substitute(image)
    for a, b in product((-1, 0, 1, 2), repeat=2):
        pt = {"x": Fraction(a), "y": Fraction(b)}
        inner = {k: image[k].evaluate(pt) for k in image}
        assert g.evaluate(pt) == f.evaluate(inner)


def test_taylor_shift_oracle() -> None:
    """g = f shifted by c satisfies g(p) = f(p + c) pointwise."""
    f = P("x^3 - 2*x*y + y^2 + 5")
    shift = {"x": Fraction(2), "y": Fraction(-1)}
    g = f.taylor_shift(shift)
    for a, b in product((-2, 0, 1, 3), repeat=2):
        pt = {"x": Fraction(a), "y": Fraction(b)}
        moved = {"x": pt["x"] + shift["x"], "y": pt["y"] + shift["y"]}
        assert g.evaluate(pt) == f.evaluate(moved)


def test_order_at_point() -> None:
    f = P("x^2 + y^3")
    assert f.order_at_point({"x": 0, "y": 0}) == 2
    # (1, -1) is a smooth point of the cusp
    assert f.order_at_point({"x": 1, "y": -1}) == 1
    # a point off the curve
    assert f.order_at_point({"x": 1, "y": 1}) == 0


def hasse_oracle(p: Polynomial, alpha: tuple[int, ...]) -> Polynomial:
    """Divided-power derivative computed term by term from the definition."""
    out = Polynomial.zero(p.field, p.variables)
    for e, c in p.terms.items():
        if any(b < a for b, a in zip(e, alpha)):
            continue
        coeff = c
        for b, a in zip(e, alpha):
            coeff = p.field.mul(coeff, p.field.coerce(math.comb(b, a)))
        mono = Polynomial.monomial(
            p.field, p.variables, tuple(b - a for b, a in zip(e, alpha)), coeff
        )
        out = out + mono
    return out


def test_hasse_derivative_matches_oracle() -> None:
    p = P("x^4 + 3*x^2*y^3 - y^5 + 2*x*y")
    for alpha in product(range(4), repeat=2):
        assert p.hasse_derivative(alpha) == hasse_oracle(p, alpha)


def test_hasse_derivative_char_two() -> None:
    """In characteristic 2 the plain second derivative of x^2 vanishes but the
    divided-power derivative does not."""
    F2 = FieldSpec(2)
    p = parse_polynomial("x^2", F2, ("x",))
    assert p.hasse_derivative((1,)).is_zero()  # 2x = 0
    assert p.hasse_derivative((2,)) == parse_polynomial("1", F2, ("x",))


def test_hasse_leibniz_on_products() -> None:
    # D^alpha(fg) = sum over beta + gamma = alpha of D^beta f * D^gamma g
    f = P("x^2 + y")
    g = P("x*y + 1")
    for alpha in ((1, 0), (1, 1), (2, 0), (2, 1)):
        lhs = (f * g).hasse_derivative(alpha)
        rhs = Polynomial.zero(QQ, XY)
        for b0 in range(alpha[0] + 1):
            for b1 in range(alpha[1] + 1):
                beta = (b0, b1)
                gamma = (alpha[0] - b0, alpha[1] - b1)
                rhs = rhs + f.hasse_derivative(beta) * g.hasse_derivative(gamma)
        assert lhs == rhs


def test_grevlex_key_classic_order() -> None:
    # degree first; within a degree the smaller power of the last variable wins
    monos = [(2, 0), (1, 1), (0, 2), (1, 0), (0, 1), (0, 0)]
    ranked = sorted(monos, key=grevlex_key)
    assert ranked == [(0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0)]


def test_coefficient_in_var() -> None:
    p = P("x^2*y + x*y^2 + y^3")
    c1 = p.coefficient_in_var("x", 1)
    assert c1 == P("y^2")
    c0 = p.coefficient_in_var("x", 0)
    assert c0 == P("y^3")
    assert p.coefficient_in_var("x", 2) == P("y")


def test_formatting_signs_and_separators() -> None:
    assert format_polynomial(P("x^2 - y")) in ("x^2 - y", "-y + x^2")
    assert format_polynomial(Polynomial.zero(QQ, XY)) == "0"
