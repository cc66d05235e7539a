"""Polynomial ideals with Groebner-basis backed membership and elimination.

Everything here is exact arithmetic over the rationals or a prime field.
Reduced Groebner bases are unique for a fixed monomial order, which is what
makes ideal equality and the closed-set comparisons deterministic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError
from .field import Element, FieldSpec
from .poly import Exponents, Polynomial, format_polynomial


@dataclass(frozen=True)
class MonomialOrder:
    """Block order: compare total degree then graded reverse lex inside each block.

    A single block is plain grevlex.  Two blocks give an elimination order for
    the variables of the first block.
    """

    variables: tuple[str, ...]
    blocks: tuple[tuple[int, ...], ...]

    @staticmethod
    def grevlex(variables: tuple[str, ...]) -> MonomialOrder:
        return MonomialOrder(variables, (tuple(range(len(variables))),))

    @staticmethod
    def eliminating(variables: tuple[str, ...], first: tuple[str, ...]) -> MonomialOrder:
        head = tuple(i for i, v in enumerate(variables) if v in first)
        tail = tuple(i for i, v in enumerate(variables) if v not in first)
        if not head or not tail:
            return MonomialOrder.grevlex(variables)
        return MonomialOrder(variables, (head, tail))

    def key(self, exponents: Exponents):
        parts = []
        for block in self.blocks:
            parts.append(sum(exponents[i] for i in block))
            parts.append(tuple(-exponents[i] for i in reversed(block)))
        return tuple(parts)


def leading_term(p: Polynomial, order: MonomialOrder) -> tuple[Exponents, Element]:
    best: Exponents | None = None
    best_key = None
    for e in p.terms:
        k = order.key(e)
        if best is None or k > best_key:
            best, best_key = e, k
    if best is None:
        raise ValueError("zero polynomial has no leading term")
    return best, p.terms[best]


def _divides(a: Exponents, b: Exponents) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _exp_sub(a: Exponents, b: Exponents) -> Exponents:
    return tuple(x - y for x, y in zip(a, b))


def _exp_lcm(a: Exponents, b: Exponents) -> Exponents:
    return tuple(max(x, y) for x, y in zip(a, b))


def normal_form(p: Polynomial, basis: list[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of p under multivariate division by basis."""
    field = p.field
    leads = [leading_term(g, order) for g in basis]
    remainder = Polynomial.zero(field, p.variables)
    work = p
    while not work.is_zero():
        e, c = leading_term(work, order)
        for g, (ge, gc) in zip(basis, leads):
            if _divides(ge, e):
                factor = Polynomial.monomial(field, p.variables, _exp_sub(e, ge), field.div(c, gc))
                work = work - factor * g
                break
        else:
            lead = Polynomial.monomial(field, p.variables, e, c)
            remainder = remainder + lead
            work = work - lead
    return remainder


def _spoly(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    field = f.field
    fe, fc = leading_term(f, order)
    ge, gc = leading_term(g, order)
    lcm = _exp_lcm(fe, ge)
    mf = Polynomial.monomial(field, f.variables, _exp_sub(lcm, fe), field.div(field.one(), fc))
    mg = Polynomial.monomial(field, f.variables, _exp_sub(lcm, ge), field.div(field.one(), gc))
    return mf * f - mg * g


def groebner_basis(gens: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    """Reduced Groebner basis, monic generators sorted by ascending leading term."""
    field = gens[0].field if gens else None
    basis = [g for g in gens if not g.is_zero()]
    if not basis:
        return []
    assert field is not None

    def sugar(p: Polynomial) -> int:
        return p.total_degree()

    sugars = [sugar(g) for g in basis]
    pairs: list[tuple[tuple, int, int]] = []

    def push_pairs(j: int) -> None:
        ge, _ = leading_term(basis[j], order)
        for i in range(j):
            fe, _ = leading_term(basis[i], order)
            lcm = _exp_lcm(fe, ge)
            # Buchberger's coprimality criterion: disjoint leads reduce to zero.
            if lcm == tuple(a + b for a, b in zip(fe, ge)):
                continue
            deg = sum(lcm)
            pair_sugar = max(
                sugars[i] + deg - sum(fe),
                sugars[j] + deg - sum(ge),
            )
            pairs.append(((pair_sugar, order.key(lcm), i, j), i, j))

    for j in range(len(basis)):
        push_pairs(j)

    while pairs:
        pairs.sort(key=lambda t: t[0])
        key, i, j = pairs.pop(0)
        s = _spoly(basis[i], basis[j], order)
        r = normal_form(s, basis, order)
        if r.is_zero():
            continue
        basis.append(r)
        sugars.append(key[0])
        push_pairs(len(basis) - 1)

    return _interreduce(basis, order)


def _interreduce(basis: list[Polynomial], order: MonomialOrder) -> list[Polynomial]:
    field = basis[0].field
    work = [g for g in basis if not g.is_zero()]
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            others = work[:i] + work[i + 1 :]
            if not others:
                continue
            r = normal_form(work[i], others, order)
            if r != work[i]:
                changed = True
                if r.is_zero():
                    work.pop(i)
                else:
                    work[i] = r
                break
    monic = []
    for g in work:
        _, c = leading_term(g, order)
        monic.append(g.scale(field.div(field.one(), c)))
    monic.sort(key=lambda g: order.key(leading_term(g, order)[0]))
    return monic


class Ideal:
    """An ideal of a polynomial ring, with Groebner bases cached per order."""

    def __init__(self, field: FieldSpec, variables: tuple[str, ...], generators) -> None:
        self.field = field
        self.variables = tuple(variables)
        gens = []
        for g in generators:
            if g.variables != self.variables:
                g = g.in_ring(self.variables)
            if not g.is_zero():
                gens.append(g)
        self.generators: tuple[Polynomial, ...] = tuple(gens)
        self._bases: dict[MonomialOrder, list[Polynomial]] = {}

    @staticmethod
    def zero(field: FieldSpec, variables: tuple[str, ...]) -> Ideal:
        return Ideal(field, variables, [])

    @staticmethod
    def unit(field: FieldSpec, variables: tuple[str, ...]) -> Ideal:
        return Ideal(field, variables, [Polynomial.constant(field, variables, field.one())])

    def basis(self, order: MonomialOrder | None = None) -> list[Polynomial]:
        if order is None:
            order = MonomialOrder.grevlex(self.variables)
        if order not in self._bases:
            self._bases[order] = groebner_basis(list(self.generators), order)
        return self._bases[order]

    def is_zero_ideal(self) -> bool:
        return not self.generators

    def is_unit(self) -> bool:
        b = self.basis()
        return len(b) == 1 and b[0].is_constant()

    def contains(self, p: Polynomial) -> bool:
        if p.variables != self.variables:
            p = p.in_ring(self.variables)
        if p.is_zero():
            return True
        b = self.basis()
        if not b:
            return False
        return normal_form(p, b, MonomialOrder.grevlex(self.variables)).is_zero()

    def radical_contains(self, p: Polynomial) -> bool:
        """Rabinowitsch trick: p vanishes on V(I) iff 1 in I + (1 - t*p)."""
        if p.variables != self.variables:
            p = p.in_ring(self.variables)
        if p.is_zero():
            return True
        if self.contains(p):
            return True
        fresh = "t_"
        while fresh in self.variables:
            fresh += "_"
        ring = self.variables + (fresh,)
        t = Polynomial.variable(self.field, ring, fresh)
        one = Polynomial.constant(self.field, ring, self.field.one())
        gens = [g.extend_to(ring) for g in self.generators]
        gens.append(one - t * p.extend_to(ring))
        return Ideal(self.field, ring, gens).is_unit()

    def eliminate(self, drop: tuple[str, ...]) -> Ideal:
        """Intersect with the subring omitting the given variables."""
        for v in drop:
            if v not in self.variables:
                raise PreconditionError(f"cannot eliminate {v}: not a ring variable")
        keep = tuple(v for v in self.variables if v not in drop)
        order = MonomialOrder.eliminating(self.variables, tuple(drop))
        kept = []
        for g in self.basis(order):
            if all(v not in drop for v in g.support_vars()):
                kept.append(g.in_ring(keep))
        return Ideal(self.field, keep, kept)

    def same_as(self, other: Ideal) -> bool:
        if self.variables != other.variables:
            raise PreconditionError("ideal comparison across different rings")
        return self.basis() == other.basis()

    def __repr__(self) -> str:
        inner = ", ".join(format_polynomial(g) for g in self.generators) or "0"
        return f"Ideal({inner})"


class ClosedSet:
    """A closed subset of the chart, stored as a finite union of vanishing loci."""

    def __init__(self, components) -> None:
        self.components: tuple[Ideal, ...] = tuple(components)
        if not self.components:
            raise PreconditionError("closed set needs at least one component")
        ring = self.components[0].variables
        for c in self.components:
            if c.variables != ring:
                raise PreconditionError("closed-set components in different rings")
        self.variables = ring
        self.field = self.components[0].field

    def is_empty(self) -> bool:
        return all(c.is_unit() for c in self.components)

    def subset_of(self, other: ClosedSet) -> bool:
        """Containment of varieties: products of the other side's generators must
        vanish on every component of this side."""
        if self.variables != other.variables:
            raise PreconditionError("closed-set comparison across different rings")
        if any(c.is_zero_ideal() for c in other.components):
            return True
        mine = [c for c in self.components if not c.is_unit()]
        theirs = [c for c in other.components if not c.is_unit()]
        if not mine:
            return True
        if not theirs:
            return False
        for comp in mine:
            if comp.is_zero_ideal():
                return False
            for pick in itertools.product(*(c.generators for c in theirs)):
                prod = pick[0]
                for q in pick[1:]:
                    prod = prod * q
                if not comp.radical_contains(prod):
                    return False
        return True

    def same_as(self, other: ClosedSet) -> bool:
        return self.subset_of(other) and other.subset_of(self)

    def __repr__(self) -> str:
        return " ∪ ".join(f"V({', '.join(format_polynomial(g) for g in c.generators) or '0'})" for c in self.components)


def coordinate_ideal(field: FieldSpec, variables: tuple[str, ...], vanishing: tuple[str, ...]) -> Ideal:
    gens = [Polynomial.variable(field, variables, v) for v in vanishing]
    return Ideal(field, variables, gens)


def fraction_or_int(x: Element) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)
