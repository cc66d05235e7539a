"""Affine charts, exceptional-divisor bookkeeping, blowups and transforms,
plus the chart-level constructions the resolution driver leans on:
dividing out divisorial content, coefficient and elimination algebras,
and the search for a triangular maximal-contact variable."""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .algebra import QReesAlgebra
from .errors import ChartSplitRequired, PreconditionError, UnsupportedCharacteristic
from .field import FieldSpec
from .ideal import Ideal
from .poly import INFINITY, Infinity, Polynomial, format_polynomial
from .saturation import diff_saturate


@dataclass(frozen=True)
class DivisorRecord:
    """An exceptional divisor visible in this chart as a coordinate hyperplane."""

    var: str
    created: int


@dataclass(frozen=True)
class Chart:
    """One affine chart of the evolving ambient space.

    The substitution strings record how this chart maps to its parent; the
    coordinate changes record triangular renamings applied during analysis,
    newest last.  Both are kept for the trace only.
    """

    id: str
    field: FieldSpec
    variables: tuple[str, ...]
    parent: str | None = None
    substitution: tuple[tuple[str, str], ...] = ()
    divisors: tuple[DivisorRecord, ...] = ()
    changes: tuple[tuple[str, str], ...] = ()


def validate_center(chart_vars: tuple[str, ...], center_vars: tuple[str, ...], chart_var: str) -> None:
    if not center_vars:
        raise PreconditionError("blowup center needs at least one variable")
    if len(set(center_vars)) != len(center_vars):
        raise PreconditionError("blowup center variables must be distinct")
    for v in center_vars:
        if v not in chart_vars:
            raise PreconditionError(f"center variable {v} is not a chart variable")
    if chart_var not in center_vars:
        raise PreconditionError(f"chart variable {chart_var} must lie in the center")


def blowup_substitution(
    field: FieldSpec,
    variables: tuple[str, ...],
    center_vars: tuple[str, ...],
    chart_var: str,
) -> dict[str, Polynomial]:
    """Map from the chart_var-chart of the blowup back to the parent:
    v -> v * chart_var for the other center variables."""
    validate_center(variables, center_vars, chart_var)
    c = Polynomial.variable(field, variables, chart_var)
    mapping: dict[str, Polynomial] = {}
    for v in variables:
        if v in center_vars and v != chart_var:
            mapping[v] = Polynomial.variable(field, variables, v) * c
    return mapping


def blowup_chart(
    parent: Chart, center_vars: tuple[str, ...], chart_var: str, created: int
) -> Chart:
    """The chart_var-chart of blowing up V(center_vars), with divisor records
    carried by strict transform and the new exceptional appended."""
    validate_center(parent.variables, center_vars, chart_var)
    divisors = tuple(d for d in parent.divisors if d.var != chart_var)
    divisors = divisors + (DivisorRecord(chart_var, created),)
    subst = tuple(
        (v, f"{v}*{chart_var}")
        for v in parent.variables
        if v in center_vars and v != chart_var
    )
    return Chart(
        id=f"{parent.id}.{created}{chart_var}",
        field=parent.field,
        variables=parent.variables,
        parent=parent.id,
        substitution=subst,
        divisors=divisors,
    )


def transform_algebra(
    alg: QReesAlgebra,
    center_vars: tuple[str, ...],
    chart_var: str,
    *,
    world: tuple[str, ...] | None = None,
    check_center: bool = True,
) -> QReesAlgebra:
    """Controlled transform in the chart_var-chart: substitute the blowup map
    and divide each generator by chart_var^ceil(a_i).

    Passing a smaller world restricts the substitution to the variables of an
    embedded coordinate subspace; the chart variable must belong to it.
    """
    variables = alg.variables if world is None else world
    if chart_var not in variables:
        raise PreconditionError(f"chart variable {chart_var} is absent from the world")
    if check_center and not center_inside_singular_locus(alg, center_vars, variables):
        raise PreconditionError("blowup center is not inside the singular locus")
    mapping = {}
    c = Polynomial.variable(alg.field, variables, chart_var)
    for v in center_vars:
        if v in variables and v != chart_var:
            mapping[v] = Polynomial.variable(alg.field, variables, v) * c
    gens = []
    for f, a in alg.generators:
        g = f.substitute(mapping) if mapping else f
        try:
            g = g.divide_by_variable_power(chart_var, math.ceil(a))
        except ValueError as exc:
            raise PreconditionError(
                f"transform of ({format_polynomial(f)} : {a}) is not divisible by "
                f"{chart_var}^{math.ceil(a)}; the center misses the singular locus"
            ) from exc
        gens.append((g, a))
    return QReesAlgebra(alg.field, alg.variables, tuple(gens))


def center_inside_singular_locus(
    alg: QReesAlgebra, center_vars: tuple[str, ...], world: tuple[str, ...]
) -> bool:
    """V(center) lies in {ord >= 1} iff every singular-locus generator vanishes
    after setting the center variables (those present in the world) to zero."""
    zeros = {v: Polynomial.zero(alg.field, alg.variables) for v in center_vars if v in world}
    if not zeros:
        return True
    for g in alg.sing_ideal().generators:
        if not g.substitute(zeros).is_zero():
            return False
    return True


# -- divisorial content ------------------------------------------------------


def ell_value(alg: QReesAlgebra, var: str) -> Fraction | Infinity:
    """Normalized multiplicity of the algebra along V(var): min nu_var(f_i)/a_i."""
    if var not in alg.variables:
        raise PreconditionError(f"{var} is not a chart variable")
    if alg.is_zero():
        return INFINITY
    best: Fraction | Infinity = INFINITY
    for f, a in alg.generators:
        v = Fraction(f.divisor_valuation(var)) / a
        if v < best:
            best = v
    return best


def divide_by_divisor(alg: QReesAlgebra, var: str, ell) -> QReesAlgebra:
    """Strip x^ceil(a_i * ell) from each generator; ell must not exceed the
    actual multiplicity along the divisor."""
    ell = Fraction(ell)
    if ell < 0:
        raise PreconditionError("divisor multiplicity must be nonnegative")
    actual = ell_value(alg, var)
    if ell > actual:
        raise PreconditionError(
            f"cannot divide {var}^({ell} * weight): algebra only has multiplicity {actual}"
        )
    gens = []
    for f, a in alg.generators:
        gens.append((f.divide_by_variable_power(var, math.ceil(a * ell)), a))
    return QReesAlgebra(alg.field, alg.variables, tuple(gens))


def non_monomial_part(
    alg: QReesAlgebra, divisor_vars
) -> tuple[QReesAlgebra, list[Fraction | Infinity]]:
    """Divide out the full divisorial content along each listed divisor in
    order, returning the residual algebra and the stripped multiplicities."""
    current = alg
    ells: list[Fraction | Infinity] = []
    for var in divisor_vars:
        ell = ell_value(current, var)
        if isinstance(ell, Infinity):
            ells.append(INFINITY)
            continue
        ells.append(ell)
        if ell > 0:
            current = divide_by_divisor(current, var, ell)
    return current, ells


# -- descent constructions -----------------------------------------------------


def coefficient_algebra(alg: QReesAlgebra, var: str) -> QReesAlgebra:
    """Restriction of the differential saturation to the hypersurface V(var),
    living in the ring without var."""
    if var not in alg.variables:
        raise PreconditionError(f"{var} is not a chart variable")
    saturated = diff_saturate(alg)
    sub = tuple(v for v in alg.variables if v != var)
    gens = []
    for f, a in saturated.generators:
        g = f.restrict_zero(var)
        if not g.is_zero():
            gens.append((g, a))
    return QReesAlgebra(alg.field, sub, tuple(gens))


def elimination_algebra(alg: QReesAlgebra, var: str) -> QReesAlgebra:
    """Generators not involving var, moved to the smaller ring."""
    if var not in alg.variables:
        raise PreconditionError(f"{var} is not a chart variable")
    sub = tuple(v for v in alg.variables if v != var)
    gens = []
    for f, a in alg.generators:
        if var not in f.support_vars():
            gens.append((f.in_ring(sub), a))
    return QReesAlgebra(alg.field, sub, tuple(gens))


@dataclass(frozen=True)
class ContactChoice:
    var: str
    shift: Polynomial | None  # substitute var -> var + shift to straighten


def find_maximal_contact(
    alg: QReesAlgebra,
    frozen_vars: frozenset[str] = frozenset(),
    *,
    local: bool = False,
) -> ContactChoice:
    """Scan a differentially saturated algebra for a weight-1 generator of the
    form c*v + h with c a nonzero constant and h free of v.  Returns the first
    such v in generator order (then ring order), with the shift -h/c that
    recenters the contact hypersurface onto {v = 0}.

    A variable in frozen_vars (a divisor coordinate) is acceptable only when
    no shift is needed: recentering would move the divisor off its coordinate
    hyperplane and wreck the bookkeeping, so shifted candidates are skipped.

    With local=True (analysis at a single point rather than over a whole
    chart) a generator c(w)*v with no remainder also qualifies as long as the
    coefficient does not vanish at the origin: near the origin its zero set is
    exactly {v = 0}.  That reading is wrong globally, so chart-wide analysis
    must leave local unset.
    """
    if alg.field.characteristic != 0:
        raise UnsupportedCharacteristic(
            "maximal contact requires characteristic zero"
        )
    for f, a in alg.generators:
        if a != 1:
            continue
        for v in alg.variables:
            if f.degree_in(v) != 1:
                continue
            lead = f.coefficient_in_var(v, 1)
            rest = f.coefficient_in_var(v, 0)
            if not lead.is_constant():
                origin = {u: 0 for u in alg.variables}
                if (
                    local
                    and rest.is_zero()
                    and lead.evaluate(origin) != alg.field.zero()
                ):
                    return ContactChoice(v, None)
                continue
            c = lead.constant_value()
            if rest.is_zero():
                return ContactChoice(v, None)
            if v in frozen_vars:
                # recentering would move the divisor off its coordinate
                continue
            shift = rest.scale(alg.field.div(alg.field.neg(alg.field.one()), c))
            return ContactChoice(v, shift)
    raise ChartSplitRequired(
        "no triangular maximal contact among the saturated generators"
    )
