"""Problem file parsing."""

from __future__ import annotations

from fractions import Fraction

import pytest

from qrees.charts import DivisorRecord
from qrees.errors import ProblemParseError
from qrees.problem import parse_problem

GOOD = """\
# the pinch point with a named algebra
field Q
chart x y z
algebra J
gen x^2 - y^2*z : 2
algebra D
gen y^2 : 1
divisor z created 1
"""


def test_parse_full_problem() -> None:
    problem = parse_problem(GOOD)
    assert problem.field.characteristic == 0
    assert problem.variables == ("x", "y", "z")
    assert set(problem.algebras) == {"J", "D"}
    assert problem.divisors == (DivisorRecord("z", 1),)
    j = problem.algebra("J")
    assert j.generators[0][1] == Fraction(2)
    assert problem.algebra() is j  # default is the first declared


def test_parse_finite_field() -> None:
    problem = parse_problem("field F 5\nchart x y\ngen x^2 : 1\n")
    assert problem.field.characteristic == 5


def test_default_algebra_name() -> None:
    problem = parse_problem("field Q\nchart x y\ngen x : 1\n")
    assert "J" in problem.algebras


def test_fractional_weights() -> None:
    problem = parse_problem("field Q\nchart x y\ngen x : 3/2\n")
    assert problem.algebra().generators[0][1] == Fraction(3, 2)


def test_unknown_algebra_name_raises() -> None:
    problem = parse_problem(GOOD)
    with pytest.raises(ProblemParseError):
        problem.algebra("missing")


def test_error_reports_line_number() -> None:
    bad = "field Q\nchart x y\ngen x + w : 1\n"
    with pytest.raises(ProblemParseError) as info:
        parse_problem(bad)
    assert "line 3" in str(info.value)


def test_gen_before_chart_rejected() -> None:
    with pytest.raises(ProblemParseError):
        parse_problem("field Q\ngen x : 1\n")


def test_missing_field_rejected() -> None:
    with pytest.raises(ProblemParseError):
        parse_problem("chart x y\ngen x : 1\n")


def test_duplicate_divisor_rejected() -> None:
    text = "field Q\nchart x y\ngen x : 1\ndivisor x created 1\ndivisor x created 2\n"
    with pytest.raises(ProblemParseError):
        parse_problem(text)


def test_divisor_variable_must_exist() -> None:
    text = "field Q\nchart x y\ngen x : 1\ndivisor z created 1\n"
    with pytest.raises(ProblemParseError):
        parse_problem(text)


def test_comments_and_blank_lines_ignored() -> None:
    text = "# header\n\nfield Q\n  # indented comment\nchart x y\ngen x : 1\n"
    problem = parse_problem(text)
    assert problem.variables == ("x", "y")


def test_bad_weight_rejected() -> None:
    with pytest.raises(ProblemParseError):
        parse_problem("field Q\nchart x y\ngen x : frac\n")
    with pytest.raises(ProblemParseError):
        parse_problem("field Q\nchart x y\ngen x : -1\n")
