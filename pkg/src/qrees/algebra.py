"""Weighted Rees algebras: finitely many polynomial generators with positive
rational weights, supporting level ideals, joins, rescaling, and the order
filtration used everywhere else in the package."""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import PreconditionError, ProblemParseError
from .field import FieldSpec
from .ideal import ClosedSet, Ideal
from .poly import INFINITY, Infinity, Polynomial, format_polynomial, parse_polynomial

Weight = Fraction
Generator = tuple[Polynomial, Weight]


def as_weight(value) -> Fraction:
    w = Fraction(value)
    return w


@dataclass(frozen=True)
class QReesAlgebra:
    """Generators (f_i, a_i) with f_i nonzero and a_i a positive rational.

    Zero polynomials are dropped on construction; an algebra with no
    generators is the zero algebra (order infinity everywhere).
    """

    field: FieldSpec
    variables: tuple[str, ...]
    generators: tuple[Generator, ...]

    def __post_init__(self) -> None:
        kept = []
        for f, a in self.generators:
            a = as_weight(a)
            if a <= 0:
                raise PreconditionError(f"generator weight must be positive, got {a}")
            if f.variables != self.variables:
                f = f.in_ring(self.variables)
            if not f.is_zero():
                kept.append((f, a))
        object.__setattr__(self, "generators", tuple(kept))

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.generators

    def weights(self) -> tuple[Fraction, ...]:
        return tuple(a for _, a in self.generators)

    def denominator(self) -> int:
        n = 1
        for a in self.weights():
            n = n * a.denominator // math.gcd(n, a.denominator)
        return n

    def odot(self, other: QReesAlgebra) -> QReesAlgebra:
        """Join: the smallest algebra containing both generator sets."""
        if (self.field, self.variables) != (other.field, other.variables):
            raise PreconditionError("odot of algebras over different charts")
        return QReesAlgebra(self.field, self.variables, self.generators + other.generators)

    def scale(self, b) -> QReesAlgebra:
        """Divide all weights by b (the formal b-th root of the algebra)."""
        b = Fraction(b)
        if b <= 0:
            raise PreconditionError(f"scale factor must be positive, got {b}")
        return QReesAlgebra(
            self.field, self.variables, tuple((f, a / b) for f, a in self.generators)
        )

    def with_generator(self, f: Polynomial, a) -> QReesAlgebra:
        return QReesAlgebra(self.field, self.variables, self.generators + ((f, as_weight(a)),))

    # -- level ideals --------------------------------------------------------

    def level_ideal(self, a) -> Ideal:
        """Ideal generated by the degree-a part: minimal products of generators
        whose weights sum to at least a."""
        a = Fraction(a)
        if a < 0:
            raise PreconditionError(f"level must be nonnegative, got {a}")
        if a == 0:
            return Ideal.unit(self.field, self.variables)
        if self.is_zero():
            return Ideal.zero(self.field, self.variables)
        min_weight = min(self.weights())
        max_factors = math.ceil(a / min_weight)
        products: list[Polynomial] = []

        def descend(start: int, poly: Polynomial, total: Fraction, count: int) -> None:
            for i in range(start, len(self.generators)):
                f, w = self.generators[i]
                new_total = total + w
                new_poly = poly * f
                if new_total >= a:
                    # minimal iff dropping any factor, in particular the
                    # lightest one used, lands below a
                    products.append(new_poly)
                elif count + 1 < max_factors:
                    descend(i, new_poly, new_total, count + 1)

        one = Polynomial.constant(self.field, self.variables, self.field.one())
        descend(0, one, Fraction(0), 0)
        return Ideal(self.field, self.variables, products)

    # -- orders ---------------------------------------------------------------

    def ord_at_point(self, point) -> Fraction | Infinity:
        """Order of the algebra at a rational point: min ord_p(f_i)/a_i.

        Accepts a coordinate tuple (aligned with the ring variables) or a
        mapping from variable names to values."""
        if self.is_zero():
            return INFINITY
        if not isinstance(point, dict):
            if len(point) != len(self.variables):
                raise PreconditionError("point has the wrong number of coordinates")
            point = dict(zip(self.variables, point))
        best: Fraction | Infinity = INFINITY
        for f, a in self.generators:
            o = f.order_at_point(point)
            if isinstance(o, Infinity):
                continue
            v = Fraction(o) / a
            if v < best:
                best = v
        return best

    def ord_at_origin(self) -> Fraction | Infinity:
        if self.is_zero():
            return INFINITY
        best: Fraction | Infinity = INFINITY
        for f, a in self.generators:
            o = f.order()
            if isinstance(o, Infinity):
                continue
            v = Fraction(o) / a
            if v < best:
                best = v
        return best

    def order_ge_ideal(self, omega) -> Ideal:
        """Ideal cutting out the locus where the algebra has order >= omega,
        via vanishing of Hasse derivatives below the threshold."""
        omega = Fraction(omega)
        if omega <= 0:
            return Ideal.zero(self.field, self.variables)
        gens: list[Polynomial] = []
        for f, a in self.generators:
            bound = math.ceil(a * omega) - 1
            for alpha in _multi_indices(len(self.variables), bound):
                d = f.hasse_derivative(alpha)
                if not d.is_zero():
                    gens.append(d)
        if not gens:
            # no generator constrains anything: order is infinite everywhere
            return Ideal.zero(self.field, self.variables)
        return Ideal(self.field, self.variables, gens)

    def sing_ideal(self) -> Ideal:
        return self.order_ge_ideal(Fraction(1))

    def sing_locus(self) -> ClosedSet:
        return ClosedSet([self.sing_ideal()])

    def max_order_stratum(self) -> tuple[Fraction, ClosedSet]:
        """Largest omega whose order-at-least-omega locus is nonempty, with it."""
        if self.is_zero():
            raise PreconditionError("max order of the zero algebra is infinite")
        omega, ideal = self.max_order_within(Ideal.zero(self.field, self.variables))
        return omega, ClosedSet([ideal])

    def max_order_within(self, inside: Ideal) -> tuple[Fraction, Ideal]:
        """Largest omega with {ord >= omega} meeting V(inside), and the ideal
        of that intersection.  Candidate orders are m/a_i for integer m."""
        if self.is_zero():
            raise PreconditionError("max order of the zero algebra is infinite")
        candidates = {Fraction(0)}
        for f, a in self.generators:
            for m in range(f.total_degree() + 1):
                candidates.add(Fraction(m) / a)
        for omega in sorted(candidates, reverse=True):
            if omega == 0:
                return omega, inside
            gens = list(self.order_ge_ideal(omega).generators) + list(inside.generators)
            stratum = Ideal(self.field, self.variables, gens)
            if not stratum.is_unit():
                return omega, stratum
        return Fraction(0), inside

    # -- gradings ---------------------------------------------------------------

    def to_integer_grading(self) -> tuple[QReesAlgebra, int]:
        """Clear weight denominators: weights become a_i * N, N = lcm of them."""
        n = self.denominator()
        return (
            QReesAlgebra(self.field, self.variables, tuple((f, a * n) for f, a in self.generators)),
            n,
        )

    def monotone_closure(self) -> QReesAlgebra:
        """For integer weights, add (f, m) for every 1 <= m < n below each (f, n)."""
        gens: list[Generator] = []
        for f, a in self.generators:
            if a.denominator != 1:
                raise PreconditionError("monotone closure needs integer weights")
            gens.append((f, a))
            for m in range(int(a) - 1, 0, -1):
                gens.append((f, Fraction(m)))
        return QReesAlgebra(self.field, self.variables, tuple(gens))

    def __repr__(self) -> str:
        if self.is_zero():
            return "QReesAlgebra(0)"
        inner = ", ".join(f"({format_polynomial(f)} : {a})" for f, a in self.generators)
        return f"QReesAlgebra({inner})"


def _multi_indices(k: int, bound: int):
    """All exponent tuples of length k with |alpha| <= bound, by ascending total
    degree and lexicographically descending within one degree."""
    for m in range(bound + 1):
        batch = [alpha for alpha in _compositions(k, m)]
        batch.sort(reverse=True)
        yield from batch


def _compositions(k: int, total: int):
    if k == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(k - 1, total - head):
            yield (head,) + rest


def format_algebra(alg: QReesAlgebra) -> str:
    if alg.is_zero():
        return "0"
    return "; ".join(f"{format_polynomial(f)} : {a}" for f, a in alg.generators)


def parse_generator_list(
    text: str, field: FieldSpec, variables: tuple[str, ...]
) -> QReesAlgebra:
    """Parse the display syntax 'POLY : WEIGHT; POLY : WEIGHT; ...' (the same
    form format_algebra emits).  '0' denotes the zero algebra."""
    text = text.strip()
    if text in ("", "0"):
        return QReesAlgebra(field, variables, ())
    gens = []
    for piece in text.split(";"):
        piece = piece.strip()
        if not piece:
            continue
        if ":" not in piece:
            raise ProblemParseError(f"generator {piece!r} lacks ': WEIGHT'")
        poly_text, weight_text = piece.rsplit(":", 1)
        poly = parse_polynomial(poly_text.strip(), field, variables)
        gens.append((poly, as_weight(Fraction(weight_text.strip()))))
    return QReesAlgebra(field, variables, tuple(gens))


def algebra_sample_points(variables: tuple[str, ...], values=(0, 1, -1, 2)) -> list[tuple]:
    """Small deterministic grid of rational points, for order comparisons."""
    return [tuple(Fraction(v) for v in combo) for combo in itertools.product(values, repeat=len(variables))]
