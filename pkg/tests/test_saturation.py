"""Differential saturation, grid orders, and bounded integral membership."""

from __future__ import annotations

from fractions import Fraction

import pytest

from qrees.algebra import QReesAlgebra, algebra_sample_points, format_algebra
from qrees.field import QQ, FieldSpec
from qrees.poly import Infinity, Polynomial, parse_polynomial
from qrees.saturation import (
    CAP_REACHED,
    diff_saturate,
    equivalence_check,
    is_integral_member,
    nu,
    nu_bar_estimate,
)

XY = ("x", "y")
XYZ = ("x", "y", "z")


def P(text: str, variables: tuple[str, ...] = XY) -> Polynomial:
    return parse_polynomial(text, QQ, variables)


def A(*gens: tuple[str, object], variables: tuple[str, ...] = XY) -> QReesAlgebra:
    return QReesAlgebra(
        QQ,
        variables,
        tuple((P(t, variables), Fraction(w)) for t, w in gens),
    )


def test_diff_saturate_cusp() -> None:
    sat = diff_saturate(A(("x^2 + y^3", 2)))
    pairs = {(tuple(sorted(f.terms.items())), w) for f, w in sat.generators}
    assert len(sat.generators) == 3
    weights = sorted(w for _, w in sat.generators)
    assert weights == [Fraction(1), Fraction(1), Fraction(2)]


def test_diff_saturate_weight_one_is_identity() -> None:
    alg = A(("x*y", 1), ("x + y^2", 1))
    assert diff_saturate(alg).generators == alg.generators


def test_diff_saturate_fractional_weight() -> None:
    # ceil(3/2) - 1 = 1, so first derivatives appear at weight 1/2
    sat = diff_saturate(A(("x^2", Fraction(3, 2))))
    weights = sorted(w for _, w in sat.generators)
    assert weights == [Fraction(1, 2), Fraction(3, 2)]


def test_diff_saturate_drops_zero_derivatives_and_duplicates() -> None:
    F2 = FieldSpec(2)
    f = parse_polynomial("x^2 + y^2*z", F2, XYZ)
    sat = diff_saturate(QReesAlgebra(F2, XYZ, ((f, Fraction(2)),)))
    # in characteristic 2 only the z-derivative survives: y^2 at weight 1
    assert len(sat.generators) == 2
    extra = [(f, w) for f, w in sat.generators if w == 1]
    assert len(extra) == 1
    assert extra[0][0] == parse_polynomial("y^2", F2, XYZ)


def test_saturation_preserves_order_at_singular_points() -> None:
    """Where the order is at least one, differentiating cannot lower it; below
    one the saturation exposes a unit and the order drops to zero."""
    algebras = [
        A(("x^2 + y^3", 2)),
        A(("x^2 - y^2", 2)),
        A(("x^3", 2)),
        A(("x^2 - y^2*z", 2), variables=XYZ),
    ]
    for alg in algebras:
        sat = diff_saturate(alg)
        for pt in algebra_sample_points(alg.variables):
            base = alg.ord_at_point(pt)
            after = sat.ord_at_point(pt)
            if not isinstance(base, Infinity) and base >= 1:
                assert after == base, (format_algebra(alg), pt)
            elif not isinstance(base, Infinity) and base < 1:
                assert after == 0, (format_algebra(alg), pt)


def test_saturation_preserves_singular_locus() -> None:
    for alg in (A(("x^2 + y^3", 2)), A(("x^2*y^2", 2))):
        a = alg.sing_ideal()
        b = diff_saturate(alg).sing_ideal()
        for g in a.basis():
            assert b.radical_contains(g)
        for g in b.basis():
            assert a.radical_contains(g)


def nu_oracle(alg: QReesAlgebra, f: Polynomial, cap: Fraction) -> Fraction:
    """Scan the grid values from below instead of bisecting."""
    n = alg.denominator()
    best = Fraction(0)
    m = 1
    while Fraction(m, n) <= cap:
        if alg.level_ideal(Fraction(m, n)).contains(f):
            best = Fraction(m, n)
            m += 1
        else:
            break
    return best


def test_nu_matches_linear_scan() -> None:
    alg = A(("x", 1), ("y", 2))
    for text in ("x", "y", "x*y", "x^2*y", "x + y", "y^3"):
        f = P(text)
        assert nu(alg, f, Fraction(8)) == nu_oracle(alg, f, Fraction(8))


def test_nu_of_zero_is_infinite() -> None:
    alg = A(("x", 1))
    assert isinstance(nu(alg, Polynomial.zero(QQ, XY)), Infinity)


def test_nu_cap() -> None:
    # 1 is in every level of the unit algebra, so the search never closes
    alg = A(("1", 1))
    assert nu(alg, P("1"), Fraction(4)) == CAP_REACHED


def test_nu_fractional_grid() -> None:
    alg = A(("x", Fraction(1, 2)))
    # x^3 lies in level 3/2 but not level 2
    assert nu(alg, P("x^3"), Fraction(8)) == Fraction(3, 2)


def test_is_integral_member_direct() -> None:
    alg = A(("x^2", 1), ("y^2", 1))
    v = is_integral_member(alg, P("x^2"), Fraction(1))
    assert v.status == "Member"
    assert v.holds()


def test_is_integral_member_needs_square() -> None:
    """x*y is not in the level-1 ideal of (x^2, y^2 : 1) but its square is in
    level 2: the classic witness for integral closure."""
    alg = A(("x^2", 1), ("y^2", 1))
    assert not alg.level_ideal(Fraction(1)).contains(P("x*y"))
    v = is_integral_member(alg, P("x*y"), Fraction(1))
    assert v.status == "MemberWitness"
    assert v.power == 2
    assert v.holds()


def test_is_integral_member_rejects() -> None:
    alg = A(("x^2", 1))
    v = is_integral_member(alg, P("y"), Fraction(1))
    assert v.status == "NonMemberAtCap"
    assert not v.holds()


def test_is_integral_member_trivial_cases() -> None:
    alg = A(("x", 1))
    assert is_integral_member(alg, Polynomial.zero(QQ, XY), Fraction(1)).holds()
    assert is_integral_member(alg, P("y"), Fraction(0)).holds()


def test_equivalence_of_redundant_presentation() -> None:
    f = P("x^2 + y^3")
    a = QReesAlgebra(QQ, XY, ((f, Fraction(2)),))
    b = QReesAlgebra(QQ, XY, ((f, Fraction(2)), (f, Fraction(1))))
    verdict = equivalence_check(a, b)
    assert verdict.status == "Equivalent"


def test_equivalence_detects_order_mismatch() -> None:
    a = A(("x", 1))
    b = A(("y", 1))
    verdict = equivalence_check(a, b)
    assert verdict.status == "Inequivalent"
    assert verdict.witness_point is not None


def test_equivalence_zero_algebras() -> None:
    zero = QReesAlgebra(QQ, XY, ())
    assert equivalence_check(zero, zero).status == "Equivalent"
    assert equivalence_check(zero, A(("x", 1))).status == "Inequivalent"


def test_equivalence_scaled_weights_differ() -> None:
    # same polynomial, half the weight: orders differ at the origin
    a = A(("x^2", 2))
    b = A(("x^2", 1))
    assert equivalence_check(a, b).status == "Inequivalent"


def test_nu_bar_estimate_improves_on_nu() -> None:
    alg = A(("x^2", 1), ("y^2", 1))
    f = P("x*y")
    assert nu(alg, f, Fraction(8)) == Fraction(0)
    assert nu_bar_estimate(alg, f, n_max=2, cap=Fraction(4)) == Fraction(1)
