"""The resolution driver: multi-level invariant computation over a tower of
maximal-contact restrictions, center selection, and the blowup loop.

Every chart carries a persistent tower of level states.  Level 0 is the chart
itself; level k+1 lives on the hypersurface {contact variable of level k = 0}.
Each level stores its algebra in world coordinates, transformed along blowups,
together with the divisors it is allowed to see and bookkeeping for the
current run (the consecutive steps during which its order is constant).
Stored lower levels are reused while a run lasts and rebuilt from a fresh
coefficient algebra the moment the order above them moves.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from itertools import combinations

from .algebra import QReesAlgebra
from .charts import (
    Chart,
    DivisorRecord,
    blowup_chart,
    coefficient_algebra,
    find_maximal_contact,
    non_monomial_part,
    transform_algebra,
)
from .errors import (
    ChartSplitRequired,
    NotTerminated,
    PreconditionError,
    QreesError,
    UnsupportedCharacteristic,
)
from .field import FieldSpec
from .ideal import ClosedSet, Ideal, coordinate_ideal
from .invariant import (
    POINT,
    ZERO_COEFF,
    InvariantValue,
    MonomialData,
    non_singular_value,
)
from .poly import Infinity, Polynomial, format_polynomial
from .saturation import diff_saturate


@dataclass(frozen=True)
class LevelState:
    """One floor of a chart's tower, in its own world coordinates."""

    variables: tuple[str, ...]
    algebra: QReesAlgebra
    divisors: tuple[DivisorRecord, ...]
    epoch: int  # step at which this level was (re)built
    run_value: Fraction | None  # order that opened the current run, if any
    run_start: int
    contact_var: str | None  # variable dropped to reach the level below


@dataclass(frozen=True)
class Leaf:
    """A fully analyzed chart: its invariant, chosen center, and updated tower."""

    chart: Chart
    tower: tuple[LevelState, ...]
    value: InvariantValue
    center_vars: tuple[str, ...] | None  # None exactly when non-singular
    divisor_report: tuple[tuple[str, int, Fraction | None], ...]


def initial_tower(
    variables: tuple[str, ...],
    algebra: QReesAlgebra,
    divisors: tuple[DivisorRecord, ...],
    start_step: int,
) -> tuple[LevelState, ...]:
    return (
        LevelState(
            variables=variables,
            algebra=algebra,
            divisors=divisors,
            epoch=start_step,
            run_value=None,
            run_start=start_step,
            contact_var=None,
        ),
    )


# ---------------------------------------------------------------------------
# per-chart analysis


def analyze_chart(
    chart: Chart, tower: tuple[LevelState, ...], step: int, *, at_point: bool = False
) -> Leaf:
    """Compute the invariant of a chart (or of its origin, with at_point=True),
    refine the maximal stratum to a coordinate center, and update tower state.
    """
    field = chart.field
    levels = list(tower)
    top = levels[0]

    divisor_report = _divisor_report(top)

    if at_point:
        o = top.algebra.ord_at_origin()
        if isinstance(o, Infinity):
            pass  # the zero algebra is singular everywhere; fall through
        elif o < 1:
            return Leaf(chart, tuple(levels), non_singular_value(), None, divisor_report)
        incoming = coordinate_ideal(field, top.variables, top.variables)
    else:
        sing = top.algebra.sing_ideal()
        if sing.is_unit():
            return Leaf(chart, tuple(levels), non_singular_value(), None, divisor_report)
        incoming = sing

    out_levels: list[tuple[Fraction, int]] = []
    center_accum: list[str] = []
    changes: list[tuple[str, str]] = []
    k = 0

    while True:
        world = levels[k]

        if len(world.variables) == 1:
            terminator, bottom_vars = _analyze_line(
                levels, k, incoming, out_levels, changes, step
            )
            center = _assemble_center(chart, center_accum + bottom_vars)
            value = InvariantValue(tuple(out_levels), terminator)
            return Leaf(
                _chart_with_changes(chart, changes),
                tuple(levels),
                value,
                center,
                _divisor_report(levels[0]),
            )

        strippable = [d for d in world.divisors if d.created >= 1]
        residual, ells = non_monomial_part(world.algebra, [d.var for d in strippable])
        ell_of = {d.var: e for d, e in zip(strippable, ells)}

        omega, stratum = residual.max_order_within(incoming)

        if world.run_value != omega:
            world = replace(world, run_value=omega, run_start=step, contact_var=None)
            levels[k] = world
            del levels[k + 1 :]

        old = [d for d in world.divisors if d.created <= world.run_start]
        winners, stratum = _divisor_phase(field, world.variables, stratum, old)
        out_levels.append((omega, len(winners)))

        if omega == 0:
            terminator, center_vars = _monomial_center(world, winners, ell_of, stratum)
            center = _assemble_center(chart, center_accum + center_vars)
            value = InvariantValue(tuple(out_levels), terminator)
            return Leaf(
                _chart_with_changes(chart, changes),
                tuple(levels),
                value,
                center,
                _divisor_report(levels[0]),
            )

        if k + 1 < len(levels):
            # the run continues: reuse the stored lower level
            v = world.contact_var
            assert v is not None, "a stored lower level must have a contact variable"
            center_accum.append(v)
            incoming = _push_down(stratum, v)
            k += 1
            continue

        # birth of the next level
        scaled = residual.scale(Fraction(1) / omega)
        if step > world.epoch:
            scaled = scaled.odot(world.algebra)
        join = QReesAlgebra(
            field,
            world.variables,
            tuple(
                (Polynomial.variable(field, world.variables, d.var), Fraction(1))
                for d in winners
            ),
        )
        contact_input = scaled.odot(join)
        frozen = frozenset(d.var for d in world.divisors)
        choice = find_maximal_contact(
            diff_saturate(contact_input), frozen, local=at_point
        )
        v = choice.var
        if choice.shift is not None:
            stratum = _apply_shift(levels, k, changes, v, choice.shift, stratum)
            world = levels[k]
            contact_input = _shift_algebra(contact_input, v, choice.shift)

        levels[k] = replace(world, contact_var=v)
        center_accum.append(v)
        coeff = coefficient_algebra(contact_input, v)
        down = _push_down(stratum, v)

        if coeff.is_zero():
            # infinite order below: the stratum itself is the center
            bottom_vars = _coordinate_stratum_vars(down)
            center = _assemble_center(chart, center_accum + bottom_vars)
            value = InvariantValue(tuple(out_levels), ZERO_COEFF)
            return Leaf(
                _chart_with_changes(chart, changes),
                tuple(levels),
                value,
                center,
                _divisor_report(levels[0]),
            )

        sub_divisors = tuple(
            d for d in world.divisors if d.created > world.run_start and d.var != v
        )
        levels.append(
            LevelState(
                variables=coeff.variables,
                algebra=coeff,
                divisors=sub_divisors,
                epoch=step,
                run_value=None,
                run_start=step,
                contact_var=None,
            )
        )
        incoming = down
        k += 1


def _coordinate_stratum_vars(down: Ideal) -> list[str]:
    """Read a coordinate subspace off the stratum's reduced basis.

    The zero ideal describes the whole space and contributes no variables.
    Anything that is not cut out by single variables cannot serve as a
    blowup center here."""
    found = []
    for g in down.basis():
        terms = list(g.terms.items())
        if len(terms) == 1 and g.total_degree() == 1:
            exponents = terms[0][0]
            found.append(down.variables[exponents.index(1)])
        else:
            raise ChartSplitRequired(
                "the residual stratum is not a coordinate subspace"
            )
    return found


def _divisor_report(top: LevelState) -> tuple[tuple[str, int, Fraction | None], ...]:
    strippable = [d for d in top.divisors if d.created >= 1]
    _, ells = non_monomial_part(top.algebra, [d.var for d in strippable])
    ell_of = {d.var: e for d, e in zip(strippable, ells)}
    report = []
    for d in top.divisors:
        e = ell_of.get(d.var)
        report.append((d.var, d.created, None if isinstance(e, Infinity) else e))
    return tuple(report)


def _chart_with_changes(chart: Chart, changes: list[tuple[str, str]]) -> Chart:
    if not changes:
        return chart
    return replace(chart, changes=chart.changes + tuple(changes))


def _assemble_center(chart: Chart, vars_used: list[str]) -> tuple[str, ...]:
    seen = set()
    ordered = []
    for v in chart.variables:
        if v in vars_used and v not in seen:
            seen.add(v)
            ordered.append(v)
    if not ordered:
        raise ChartSplitRequired("the selected center has no coordinate description")
    return tuple(ordered)


def _push_down(stratum: Ideal, var: str) -> Ideal:
    sub = tuple(v for v in stratum.variables if v != var)
    gens = []
    for g in stratum.generators:
        r = g.restrict_zero(var)
        if not r.is_zero():
            gens.append(r)
    return Ideal(stratum.field, sub, gens)


def _divisor_phase(
    field: FieldSpec,
    variables: tuple[str, ...],
    stratum: Ideal,
    old: list[DivisorRecord],
) -> tuple[tuple[DivisorRecord, ...], Ideal]:
    """Find the largest set of old divisors still meeting the stratum, and
    refine the stratum by their intersection."""
    for size in range(len(old), 0, -1):
        feasible = []
        for subset in combinations(old, size):
            gens = list(stratum.generators) + [
                Polynomial.variable(field, variables, d.var) for d in subset
            ]
            refined = Ideal(field, variables, gens)
            if not refined.is_unit():
                feasible.append((subset, refined))
        if not feasible:
            continue
        if len(feasible) > 1:
            base = ClosedSet([feasible[0][1]])
            for _, other in feasible[1:]:
                if not base.same_as(ClosedSet([other])):
                    raise ChartSplitRequired(
                        "maximal divisor contact is attained on several distinct loci"
                    )
        return feasible[0][0], feasible[0][1]
    return (), stratum


def _monomial_center(
    world: LevelState,
    winners: tuple[DivisorRecord, ...],
    ell_of: dict,
    stratum: Ideal,
) -> tuple[MonomialData, list[str]]:
    """Center selection when the residual order is zero: first try combinations
    of old divisors whose multiplicities reach one; failing that, fall back to
    coordinate subspaces on which the stored algebra itself has order >= 1."""
    candidates = []
    for size in range(1, len(winners) + 1):
        for subset in combinations(winners, size):
            total = sum(
                (ell_of.get(d.var, Fraction(0)) for d in subset), Fraction(0)
            )
            if total >= 1:
                indices = tuple(sorted(d.created for d in subset))
                candidates.append((size, -total, indices, subset))
    if candidates:
        candidates.sort(key=lambda t: (t[0], t[1], t[2]))
        size, neg_total, indices, subset = candidates[0]
        data = MonomialData(size, -neg_total, indices)
        return data, [d.var for d in subset]

    # generalized fallback: any coordinate subspace works if every generator
    # of the (unstripped) stored algebra has enough order along it
    created_of = {d.var: d.created for d in world.divisors}
    fallback = []
    for size in range(1, len(world.variables) + 1):
        for subset in combinations(world.variables, size):
            s = _order_along(world.algebra, frozenset(subset))
            if s is not None and s >= 1:
                indices = tuple(
                    sorted(created_of[v] for v in subset if v in created_of)
                )
                fallback.append((size, -s, indices, subset))
        if fallback:
            break
    if not fallback:
        raise ChartSplitRequired(
            "monomial case without an admissible coordinate center"
        )
    fallback.sort(key=lambda t: (t[0], t[1], t[2], t[3]))
    size, neg_s, indices, subset = fallback[0]
    data = MonomialData(size, -neg_s, indices)
    return data, list(subset)


def _order_along(alg: QReesAlgebra, subset: frozenset[str]) -> Fraction | None:
    """min over generators of (order along the coordinate subspace)/weight."""
    if alg.is_zero():
        return None
    positions = [i for i, v in enumerate(alg.variables) if v in subset]
    best: Fraction | None = None
    for f, a in alg.generators:
        o = min(sum(e[i] for i in positions) for e in f.terms)
        value = Fraction(o) / a
        if best is None or value < best:
            best = value
    return best


def _analyze_line(
    levels: list[LevelState],
    k: int,
    incoming: Ideal,
    out_levels: list,
    changes: list[tuple[str, str]],
    step: int,
) -> tuple[object, list[str]]:
    """Dimension-one worlds: plain order, no divisor bookkeeping, and a point
    (or the whole line) as the deepest stratum."""
    world = levels[k]
    u = world.variables[0]
    field = world.algebra.field
    omega, stratum = world.algebra.max_order_within(incoming)
    levels[k] = replace(world, run_value=omega, run_start=step)
    out_levels.append((omega, 0))

    basis = stratum.basis()
    if not basis:
        return POINT, []  # the whole line is the stratum
    g = basis[0]
    if field.characteristic == 0:
        g = _squarefree_univariate(g, u)
    if g.degree_in(u) != 1:
        raise ChartSplitRequired(
            "the deepest stratum is not a single rational point"
        )
    lead = g.coefficient_in_var(u, 1)
    rest = g.coefficient_in_var(u, 0)
    if not lead.is_constant():
        raise ChartSplitRequired("the deepest stratum is not a single rational point")
    if not rest.is_zero():
        # the point sits at u = c with c nonzero: recenter, unless u carries a divisor
        if any(d.var == u for d in world.divisors):
            raise ChartSplitRequired(
                "the deepest point left the divisor's coordinate hyperplane"
            )
        root = rest.scale(field.div(field.neg(field.one()), lead.constant_value()))
        _apply_shift(levels, k, changes, u, root, stratum)
    return POINT, [u]


def _squarefree_univariate(g: Polynomial, u: str) -> Polynomial:
    """Reduce a univariate polynomial to its square-free part (char 0)."""
    deg = g.degree_in(u)
    if deg <= 1:
        return g
    derivative = g.hasse_derivative(tuple(1 if v == u else 0 for v in g.variables))
    gcd = _poly_gcd_univariate(g, derivative, u)
    if gcd.degree_in(u) == 0:
        return g
    quotient, rem = _poly_divmod_univariate(g, gcd, u)
    assert rem.is_zero()
    return quotient


def _poly_gcd_univariate(a: Polynomial, b: Polynomial, u: str) -> Polynomial:
    while not b.is_zero():
        _, r = _poly_divmod_univariate(a, b, u)
        a, b = b, r
    return a


def _poly_divmod_univariate(a: Polynomial, b: Polynomial, u: str) -> tuple[Polynomial, Polynomial]:
    field = a.field
    ring = a.variables
    if b.is_zero():
        raise ZeroDivisionError("univariate division by zero")
    quotient = Polynomial.zero(field, ring)
    remainder = a
    db = b.degree_in(u)
    lead_b = b.coefficient_in_var(u, db).constant_value()
    while not remainder.is_zero() and remainder.degree_in(u) >= db:
        dr = remainder.degree_in(u)
        lead_r = remainder.coefficient_in_var(u, dr).constant_value()
        c = field.div(lead_r, lead_b)
        mono = Polynomial.monomial(
            field, ring, tuple(dr - db if v == u else 0 for v in ring), c
        )
        quotient = quotient + mono
        remainder = remainder - mono * b
    return quotient, remainder


def _apply_shift(
    levels: list[LevelState],
    k: int,
    changes: list[tuple[str, str]],
    var: str,
    shift: Polynomial,
    stratum: Ideal,
) -> Ideal:
    """Triangular change of coordinates: rewrite all data on levels 0..k under
    var -> var + shift (the new coordinate is var - shift)."""
    for j in range(k + 1):
        world = levels[j]
        ring = world.variables
        image = (
            Polynomial.variable(world.algebra.field, ring, var)
            + shift.in_ring(ring)
        )
        mapping = {var: image}
        new_gens = tuple((f.substitute(mapping), a) for f, a in world.algebra.generators)
        levels[j] = replace(
            world,
            algebra=QReesAlgebra(world.algebra.field, ring, new_gens),
        )
    ring = stratum.variables
    image = Polynomial.variable(stratum.field, ring, var) + shift.in_ring(ring)
    new_stratum = Ideal(
        stratum.field,
        ring,
        [g.substitute({var: image}) for g in stratum.generators],
    )
    changes.append((var, format_polynomial(image)))
    return new_stratum


def _shift_algebra(alg: QReesAlgebra, var: str, shift: Polynomial) -> QReesAlgebra:
    image = Polynomial.variable(alg.field, alg.variables, var) + shift.in_ring(alg.variables)
    return QReesAlgebra(
        alg.field,
        alg.variables,
        tuple((f.substitute({var: image}), a) for f, a in alg.generators),
    )


# ---------------------------------------------------------------------------
# blowups


def blow_leaf(leaf: Leaf, step: int) -> list[tuple[Chart, tuple[LevelState, ...]]]:
    """All charts of the blowup of this leaf's center, with transformed towers."""
    assert leaf.center_vars, "only singular leaves are blown up"
    center = leaf.center_vars
    children = []
    for chart_var in center:
        child = blowup_chart(leaf.chart, center, chart_var, created=step + 1)
        new_levels: list[LevelState] = []
        for idx, level in enumerate(leaf.tower):
            if idx > 0 and leaf.tower[idx - 1].contact_var == chart_var:
                # this world's strict transform coincides with the exceptional
                # divisor in this chart: it vanishes from the picture
                new_levels[idx - 1] = replace(new_levels[idx - 1], contact_var=None)
                break
            transformed = transform_algebra(
                level.algebra,
                center,
                chart_var,
                world=level.variables,
                check_center=(idx == 0),
            )
            divisors = tuple(d for d in level.divisors if d.var != chart_var) + (
                DivisorRecord(chart_var, step + 1),
            )
            new_levels.append(replace(level, algebra=transformed, divisors=divisors))
        children.append((child, tuple(new_levels)))
    return children


# ---------------------------------------------------------------------------
# driver


def resolve(
    field: FieldSpec,
    variables: tuple[str, ...],
    algebra: QReesAlgebra,
    divisors: tuple[DivisorRecord, ...] = (),
    max_steps: int = 50,
) -> dict:
    """Blow up worst loci until no singular points remain; returns the trace.

    Each driver step blows up every leaf attaining the global maximum of the
    invariant (distinct leaves are distinct physical centers).  Successive
    maxima must strictly decrease; the loop stops when all leaves have empty
    singular locus or raises NotTerminated at the step budget.
    """
    if field.characteristic != 0:
        raise UnsupportedCharacteristic(
            "resolution is only implemented in characteristic zero"
        )
    if algebra.is_zero():
        raise PreconditionError("cannot resolve the zero algebra")
    seen_vars = set()
    for d in divisors:
        if d.var not in variables:
            raise PreconditionError(f"divisor variable {d.var} is not a chart variable")
        if d.var in seen_vars:
            raise PreconditionError(f"divisor variable {d.var} declared twice")
        seen_vars.add(d.var)

    start = max([0] + [d.created for d in divisors])
    root = Chart(id="0", field=field, variables=variables, divisors=tuple(divisors))
    tower = initial_tower(variables, algebra, tuple(divisors), start)
    leaves: dict[str, Leaf] = {"0": analyze_chart(root, tower, start)}

    steps_json: list[dict] = []
    previous_max: InvariantValue | None = None
    step = start
    while True:
        singular = {cid: lf for cid, lf in leaves.items() if lf.value.is_singular()}
        if not singular:
            status = "resolved"
            break
        if step - start >= max_steps:
            raise NotTerminated(
                f"no resolution after {max_steps} steps",
                trace=_trace_dict(steps_json, leaves, "not-terminated", start),
            )
        current_max = max(lf.value for lf in singular.values())
        if previous_max is not None and not (current_max < previous_max):
            raise QreesError(
                "invariant failed to decrease: "
                f"{previous_max} then {current_max} at step {step}"
            )
        previous_max = current_max
        blown = sorted(cid for cid, lf in singular.items() if lf.value == current_max)
        for cid in blown:
            leaf = leaves.pop(cid)
            record = {
                "step": step,
                "chart": cid,
                "parent": leaf.chart.parent,
                "substitution": [[v, image] for v, image in leaf.chart.substitution],
                "changes": [[v, image] for v, image in leaf.chart.changes],
                "center": list(leaf.center_vars or ()),
                "fc": leaf.value.to_json(),
                "divisors": [
                    {"var": v, "created": c, "ell": None if e is None else str(e)}
                    for v, c, e in leaf.divisor_report
                ],
                "children": [],
            }
            for child_chart, child_tower in blow_leaf(leaf, step):
                child_leaf = analyze_chart(child_chart, child_tower, step + 1)
                leaves[child_chart.id] = child_leaf
                record["children"].append(child_chart.id)
            steps_json.append(record)
        step += 1

    return _trace_dict(steps_json, leaves, status, start)


def _trace_dict(steps: list[dict], leaves: dict[str, Leaf], status: str, start: int) -> dict:
    leaf_list = []
    for cid in sorted(leaves):
        leaf = leaves[cid]
        leaf_list.append(
            {
                "chart": cid,
                "fc": leaf.value.to_json(),
                "sing": "empty" if not leaf.value.is_singular() else "nonempty",
            }
        )
    return {
        "status": status,
        "start_step": start,
        "steps": steps,
        "leaves": leaf_list,
    }


# ---------------------------------------------------------------------------
# standalone invariant queries


def fc_at_point(
    field: FieldSpec,
    variables: tuple[str, ...],
    algebra: QReesAlgebra,
    divisors: tuple[DivisorRecord, ...] = (),
    point=None,
) -> InvariantValue:
    """The invariant at one rational point, computed as a fresh run: every
    divisor through the point counts as pre-existing."""
    if algebra.is_zero():
        raise PreconditionError("the zero algebra has no finite invariant")
    if point is None:
        point = tuple(Fraction(0) for _ in variables)
    point = tuple(Fraction(c) for c in point)
    if len(point) != len(variables):
        raise PreconditionError("point has the wrong number of coordinates")
    position = {v: i for i, v in enumerate(variables)}
    kept = tuple(d for d in divisors if point[position[d.var]] == 0)
    offset = {v: point[i] for i, v in enumerate(variables) if point[i] != 0}
    shifted = QReesAlgebra(
        field,
        variables,
        tuple((f.taylor_shift(offset), a) for f, a in algebra.generators),
    )
    start = max([0] + [d.created for d in kept])
    chart = Chart(id="0", field=field, variables=variables, divisors=kept)
    tower = initial_tower(variables, shifted, kept, start)
    return analyze_chart(chart, tower, start, at_point=True).value


def max_locus_fc(
    field: FieldSpec,
    variables: tuple[str, ...],
    algebra: QReesAlgebra,
    divisors: tuple[DivisorRecord, ...] = (),
) -> tuple[InvariantValue, ClosedSet]:
    """The maximal invariant over the chart together with its center locus."""
    start = max([0] + [d.created for d in divisors])
    chart = Chart(id="0", field=field, variables=variables, divisors=tuple(divisors))
    tower = initial_tower(variables, algebra, tuple(divisors), start)
    leaf = analyze_chart(chart, tower, start)
    if leaf.center_vars is None:
        return leaf.value, ClosedSet([Ideal.unit(field, variables)])
    return leaf.value, ClosedSet([coordinate_ideal(field, variables, leaf.center_vars)])
