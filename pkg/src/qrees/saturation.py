"""Differential saturation and the order-saturation (integral closure) side:
valuative order of elements against an algebra, membership testing, and an
equivalence check between two algebras on a common integer grading."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .algebra import QReesAlgebra, algebra_sample_points
from .errors import PreconditionError
from .field import FieldSpec
from .poly import INFINITY, Infinity, Polynomial

CAP_REACHED = "CAP_REACHED"


def diff_saturate(alg: QReesAlgebra) -> QReesAlgebra:
    """Close under Hasse derivatives: D^alpha f_i enters at weight a_i - |alpha|
    whenever that weight stays positive.  Hasse (divided-power) derivatives keep
    this correct in positive characteristic."""
    gens = []
    seen = set()
    k = len(alg.variables)
    for f, a in alg.generators:
        # |alpha| = m is allowed while a - m > 0
        top = math.ceil(a) - 1
        for m in range(top + 1):
            for alpha in _indices_of_degree(k, m):
                d = f.hasse_derivative(alpha)
                if d.is_zero():
                    continue
                key = (d, a - m)
                if key in seen:
                    continue
                seen.add(key)
                gens.append((d, a - m))
    return QReesAlgebra(alg.field, alg.variables, tuple(gens))


def _indices_of_degree(k: int, m: int):
    out = list(_compositions(k, m))
    out.sort(reverse=True)
    return out


def _compositions(k: int, total: int):
    if k == 1:
        yield (total,)
        return
    for head in range(total, -1, -1):
        for rest in _compositions(k - 1, total - head):
            yield (head,) + rest


def nu(alg: QReesAlgebra, f: Polynomial, cap=Fraction(32)) -> Fraction | Infinity | str:
    """Largest grid value a = m/N with f in the level ideal at a.

    The zero element has infinite order.  If f still sits inside the level
    ideal at the cap, returns CAP_REACHED instead of a number.
    """
    cap = Fraction(cap)
    if f.variables != alg.variables:
        f = f.in_ring(alg.variables)
    if f.is_zero():
        return INFINITY
    n = alg.denominator()
    hi = math.floor(cap * n)
    if hi < 0:
        raise PreconditionError("nu cap must be nonnegative")

    def member(m: int) -> bool:
        return alg.level_ideal(Fraction(m, n)).contains(f)

    if member(hi):
        return CAP_REACHED
    lo = 0
    # invariant: member(lo) holds (level 0 is the unit ideal), member(hi) fails
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if member(mid):
            lo = mid
        else:
            hi = mid
    return Fraction(lo, n)


def nu_bar_estimate(alg: QReesAlgebra, f: Polynomial, n_max: int = 4, cap=Fraction(32)):
    """Lower bound for the saturated order: max over n <= n_max of nu(f^n)/n."""
    if f.variables != alg.variables:
        f = f.in_ring(alg.variables)
    if f.is_zero():
        return INFINITY
    if n_max < 1:
        raise PreconditionError("n_max must be at least 1")
    best = Fraction(0)
    capped = False
    for n in range(1, n_max + 1):
        v = nu(alg, f**n, Fraction(cap) * n)
        if v == CAP_REACHED:
            capped = True
            continue
        assert not isinstance(v, Infinity)
        best = max(best, v / n)
    if capped:
        return CAP_REACHED
    return best


@dataclass(frozen=True)
class MembershipVerdict:
    status: str  # "Member" | "MemberWitness" | "NonMemberAtCap"
    power: int | None = None
    level: Fraction | None = None

    def holds(self) -> bool:
        return self.status in ("Member", "MemberWitness")


def is_integral_member(
    alg: QReesAlgebra, f: Polynomial, a, n_max: int = 4, cap=Fraction(32)
) -> MembershipVerdict:
    """Does f belong to the saturation at weight a?  Tests f^n against the
    level ideal at n*a for n up to n_max (or until n*a passes the cap)."""
    a = Fraction(a)
    cap = Fraction(cap)
    if a < 0:
        raise PreconditionError("membership weight must be nonnegative")
    if f.variables != alg.variables:
        f = f.in_ring(alg.variables)
    if f.is_zero() or a == 0:
        return MembershipVerdict("Member", 1, a)
    for n in range(1, n_max + 1):
        if a * n > cap:
            break
        if alg.level_ideal(a * n).contains(f**n):
            if n == 1:
                return MembershipVerdict("Member", 1, a)
            return MembershipVerdict("MemberWitness", n, a)
    return MembershipVerdict("NonMemberAtCap", None, a)


@dataclass(frozen=True)
class EquivalenceVerdict:
    status: str  # "Equivalent" | "Inequivalent" | "Unknown"
    witness_point: tuple | None = None
    detail: str = ""


def equivalence_check(
    left: QReesAlgebra, right: QReesAlgebra, n_max: int = 4, cap=Fraction(32)
) -> EquivalenceVerdict:
    """Mutual integral containment on a common integer grading.

    Both inclusions verified gives Equivalent.  Otherwise a disagreement of
    orders at some small rational point certifies Inequivalent; failing both,
    the bounded search is inconclusive and the verdict is Unknown.
    """
    if (left.field, left.variables) != (right.field, right.variables):
        raise PreconditionError("equivalence check across different charts")
    if left.is_zero() and right.is_zero():
        return EquivalenceVerdict("Equivalent")
    if left.is_zero() != right.is_zero():
        return EquivalenceVerdict("Inequivalent", None, "exactly one side is the zero algebra")

    n = 1
    for a in left.weights() + right.weights():
        n = n * a.denominator // math.gcd(n, a.denominator)
    lg = QReesAlgebra(left.field, left.variables, tuple((f, a * n) for f, a in left.generators))
    rg = QReesAlgebra(right.field, right.variables, tuple((f, a * n) for f, a in right.generators))

    def contained(src: QReesAlgebra, dst: QReesAlgebra) -> bool:
        for f, a in src.generators:
            if not is_integral_member(dst, f, a, n_max, cap).holds():
                return False
        return True

    if contained(lg, rg) and contained(rg, lg):
        return EquivalenceVerdict("Equivalent")

    if left.field.is_rational:
        for point in algebra_sample_points(left.variables):
            lo = left.ord_at_point(point)
            ro = right.ord_at_point(point)
            if lo != ro:
                return EquivalenceVerdict(
                    "Inequivalent",
                    point,
                    f"orders {lo} and {ro} disagree",
                )
    return EquivalenceVerdict("Unknown")
