"""Sparse multivariate polynomials with exact coefficients.

A polynomial lives in a named coordinate ring: a tuple of variable names over
a FieldSpec.  Terms are stored as a dict from exponent tuples to nonzero
coefficients.  Instances are immutable by convention; every operation returns
a fresh polynomial.

The module also owns the order-at-infinity sentinel used by valuations, and
the parser/formatter for the textual polynomial syntax accepted by problem
files and the CLI.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterator

from .errors import ProblemParseError
from .field import Element, FieldSpec


class Infinity:
    """Sentinel that compares greater than every number (and equal to itself)."""

    _instance: Infinity | None = None

    def __new__(cls) -> Infinity:
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Infinity)

    def __hash__(self) -> int:
        return hash("qrees-infinity")

    def __lt__(self, other: object) -> bool:
        return False

    def __le__(self, other: object) -> bool:
        return isinstance(other, Infinity)

    def __gt__(self, other: object) -> bool:
        return not isinstance(other, Infinity)

    def __ge__(self, other: object) -> bool:
        return True

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = Infinity()

Exponents = tuple[int, ...]


def grevlex_key(exps: Exponents) -> tuple:
    """Sort key realizing graded reverse lexicographic order (ascending)."""
    return (sum(exps), tuple(-e for e in reversed(exps)))


class Polynomial:
    """An element of field[variables], stored sparsely."""

    __slots__ = ("field", "variables", "terms", "_hash")

    def __init__(
        self,
        field: FieldSpec,
        variables: tuple[str, ...],
        terms: dict[Exponents, Element],
    ) -> None:
        self.field = field
        self.variables = variables
        self.terms = {e: c for e, c in terms.items() if c != field.zero()}
        self._hash: int | None = None

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: FieldSpec, variables: tuple[str, ...]) -> Polynomial:
        return Polynomial(field, variables, {})

    @staticmethod
    def constant(
        field: FieldSpec, variables: tuple[str, ...], value: int | Fraction
    ) -> Polynomial:
        c = field.coerce(value)
        return Polynomial(field, variables, {(0,) * len(variables): c})

    @staticmethod
    def variable(
        field: FieldSpec, variables: tuple[str, ...], name: str
    ) -> Polynomial:
        i = variables.index(name)
        exps = tuple(1 if j == i else 0 for j in range(len(variables)))
        return Polynomial(field, variables, {exps: field.one()})

    @staticmethod
    def monomial(
        field: FieldSpec,
        variables: tuple[str, ...],
        exps: Exponents,
        coeff: int | Fraction = 1,
    ) -> Polynomial:
        return Polynomial(field, variables, {tuple(exps): field.coerce(coeff)})

    # -- basic structure ---------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(sum(e) == 0 for e in self.terms)

    def constant_value(self) -> Element:
        if self.is_zero():
            return self.field.zero()
        if not self.is_constant():
            raise ValueError(f"{self} is not constant")
        return next(iter(self.terms.values()))

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def total_degree(self) -> int:
        """Maximal term degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(e) for e in self.terms)

    def order(self) -> int | Infinity:
        """Minimal term degree (the order of vanishing at the origin)."""
        if not self.terms:
            return INFINITY
        return min(sum(e) for e in self.terms)

    def degree_in(self, var: str) -> int:
        i = self.variables.index(var)
        if not self.terms:
            return -1
        return max(e[i] for e in self.terms)

    def order_in_vars(self, vars: tuple[str, ...]) -> int | Infinity:
        """Minimal combined exponent of the given variables over all terms."""
        if not self.terms:
            return INFINITY
        idx = [self.variables.index(v) for v in vars]
        return min(sum(e[i] for i in idx) for e in self.terms)

    def divisor_valuation(self, var: str) -> int | Infinity:
        return self.order_in_vars((var,))

    def support_vars(self) -> set[str]:
        out: set[str] = set()
        for e in self.terms:
            for i, k in enumerate(e):
                if k > 0:
                    out.add(self.variables[i])
        return out

    # -- arithmetic ---------------------------------------------------------

    def _check_ring(self, other: Polynomial) -> None:
        if self.variables != other.variables or self.field != other.field:
            raise ValueError("polynomials live in different rings")

    def __add__(self, other: Polynomial) -> Polynomial:
        self._check_ring(other)
        f = self.field
        terms = dict(self.terms)
        for e, c in other.terms.items():
            terms[e] = f.add(terms.get(e, f.zero()), c)
        return Polynomial(f, self.variables, terms)

    def __sub__(self, other: Polynomial) -> Polynomial:
        return self + (-other)

    def __neg__(self) -> Polynomial:
        f = self.field
        return Polynomial(
            f, self.variables, {e: f.neg(c) for e, c in self.terms.items()}
        )

    def __mul__(self, other: Polynomial) -> Polynomial:
        self._check_ring(other)
        f = self.field
        terms: dict[Exponents, Element] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                prod = f.mul(c1, c2)
                if e in terms:
                    terms[e] = f.add(terms[e], prod)
                else:
                    terms[e] = prod
        return Polynomial(f, self.variables, terms)

    def __pow__(self, n: int) -> Polynomial:
        if n < 0:
            raise ValueError("negative power of a polynomial")
        out = Polynomial.constant(self.field, self.variables, 1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base if n > 1 else base
            n >>= 1
        return out

    def scale(self, c: int | Fraction | Element) -> Polynomial:
        f = self.field
        cc = f.coerce(c) if isinstance(c, (int, Fraction)) else c
        return Polynomial(
            f, self.variables, {e: f.mul(v, cc) for e, v in self.terms.items()}
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Polynomial):
            return NotImplemented
        return (
            self.field == other.field
            and self.variables == other.variables
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(
                (self.field, self.variables, frozenset(self.terms.items()))
            )
        return self._hash

    # -- ring moves ----------------------------------------------------------

    def restrict_zero(self, var: str) -> Polynomial:
        """Set var = 0 and drop it from the coordinate ring."""
        i = self.variables.index(var)
        new_vars = self.variables[:i] + self.variables[i + 1 :]
        terms: dict[Exponents, Element] = {}
        f = self.field
        for e, c in self.terms.items():
            if e[i] != 0:
                continue
            ne = e[:i] + e[i + 1 :]
            if ne in terms:
                terms[ne] = f.add(terms[ne], c)
            else:
                terms[ne] = c
        return Polynomial(f, new_vars, terms)

    def extend_to(self, variables: tuple[str, ...]) -> Polynomial:
        """Reinterpret in a larger (or reordered) ring containing all my vars."""
        index = [variables.index(v) for v in self.variables]
        terms: dict[Exponents, Element] = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for old_i, new_i in enumerate(index):
                ne[new_i] = e[old_i]
            terms[tuple(ne)] = c
        return Polynomial(self.field, variables, terms)

    def in_ring(self, variables: tuple[str, ...]) -> Polynomial:
        """Move to another ring by variable name; dropped names must be unused."""
        position = {v: i for i, v in enumerate(variables)}
        terms: dict[Exponents, Element] = {}
        for e, c in self.terms.items():
            ne = [0] * len(variables)
            for i, k in enumerate(e):
                if k == 0:
                    continue
                v = self.variables[i]
                if v not in position:
                    raise ValueError(f"{self} involves {v}, absent from target ring")
                ne[position[v]] = k
            terms[tuple(ne)] = c
        return Polynomial(self.field, variables, terms)

    def divide_by_variable_power(self, var: str, k: int) -> Polynomial:
        if k == 0:
            return self
        i = self.variables.index(var)
        terms: dict[Exponents, Element] = {}
        for e, c in self.terms.items():
            if e[i] < k:
                raise ValueError(f"{self} is not divisible by {var}^{k}")
            terms[e[:i] + (e[i] - k,) + e[i + 1 :]] = c
        return Polynomial(self.field, self.variables, terms)

    def coefficient_in_var(self, var: str, k: int) -> Polynomial:
        """Coefficient of var^k, as a polynomial in the same ring without var."""
        i = self.variables.index(var)
        terms = {
            e[:i] + (0,) + e[i + 1 :]: c
            for e, c in self.terms.items()
            if e[i] == k
        }
        return Polynomial(self.field, self.variables, terms)

    def substitute(self, mapping: dict[str, Polynomial]) -> Polynomial:
        """Replace variables by polynomials of the same ring."""
        f = self.field
        images: list[Polynomial] = []
        for v in self.variables:
            img = mapping.get(v)
            if img is None:
                img = Polynomial.variable(f, self.variables, v)
            else:
                img._check_ring(self)
            images.append(img)
        powers: list[dict[int, Polynomial]] = [
            {0: Polynomial.constant(f, self.variables, 1)} for _ in images
        ]

        def power(i: int, k: int) -> Polynomial:
            cache = powers[i]
            if k not in cache:
                cache[k] = power(i, k - 1) * images[i]
            return cache[k]

        out = Polynomial.zero(f, self.variables)
        for e, c in self.terms.items():
            term = Polynomial.constant(f, self.variables, 1).scale(c)
            for i, k in enumerate(e):
                if k:
                    term = term * power(i, k)
            out = out + term
        return out

    def evaluate(self, point: dict[str, Element]) -> Element:
        f = self.field
        vals = [f.coerce(point[v]) for v in self.variables]
        total = f.zero()
        for e, c in self.terms.items():
            acc = c
            for i, k in enumerate(e):
                if k:
                    acc = f.mul(acc, pow(vals[i], k) if f.characteristic == 0
                                else pow(int(vals[i]), k, f.characteristic))
            total = f.add(total, acc)
        return total

    def taylor_shift(self, point: dict[str, Element]) -> Polynomial:
        """Recentre at the given point: returns g with g(x) = f(x + point)."""
        f = self.field
        mapping = {}
        for v, c in point.items():
            mapping[v] = Polynomial.variable(f, self.variables, v) + (
                Polynomial.constant(f, self.variables, c)
            )
        return self.substitute(mapping)

    def order_at_point(self, point: dict[str, Element]) -> int | Infinity:
        if all(self.field.coerce(c) == self.field.zero() for c in point.values()):
            return self.order()
        return self.taylor_shift(point).order()

    def hasse_derivative(self, alpha: Exponents) -> Polynomial:
        """Divided-power derivative: x^b maps to C(b, alpha) x^(b - alpha)."""
        f = self.field
        terms: dict[Exponents, Element] = {}
        for e, c in self.terms.items():
            if any(b < a for b, a in zip(e, alpha)):
                continue
            binom = 1
            for b, a in zip(e, alpha):
                binom *= math.comb(b, a)
            coeff = f.mul(c, f.coerce(binom))
            if coeff == f.zero():
                continue
            ne = tuple(b - a for b, a in zip(e, alpha))
            if ne in terms:
                terms[ne] = f.add(terms[ne], coeff)
            else:
                terms[ne] = coeff
        return Polynomial(f, self.variables, terms)

    # -- display -------------------------------------------------------------

    def sorted_terms(self) -> list[tuple[Exponents, Element]]:
        """Terms ordered leading-first under grevlex."""
        return sorted(
            self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True
        )

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(p: Polynomial) -> str:
    if p.is_zero():
        return "0"
    parts: list[str] = []
    for e, c in p.sorted_terms():
        factors = [
            v if k == 1 else f"{v}^{k}"
            for v, k in zip(p.variables, e)
            if k > 0
        ]
        mono = "*".join(factors)
        if not mono:
            body = p.field.format(c)
        elif c == p.field.one():
            body = mono
        elif p.field.characteristic == 0 and c == -p.field.one():
            body = f"-{mono}"
        else:
            body = f"{p.field.format(c)}*{mono}"
        if not parts:
            parts.append(body)
        elif body.startswith("-"):
            parts.append(f" - {body[1:]}")
        else:
            parts.append(f" + {body}")
    return "".join(parts)


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|([()^*/+-]))")


def _tokenize(text: str) -> list[str]:
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None or m.end() == pos:
            rest = text[pos:].strip()
            if not rest:
                break
            raise ProblemParseError(f"unexpected character {rest[0]!r} in polynomial")
        tokens.append(m.group(1) or m.group(2) or m.group(3))
        pos = m.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[str], field: FieldSpec,
                 variables: tuple[str, ...]) -> None:
        self.tokens = tokens
        self.pos = 0
        self.field = field
        self.variables = variables

    def peek(self) -> str | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def take(self) -> str:
        tok = self.peek()
        if tok is None:
            raise ProblemParseError("polynomial ended unexpectedly")
        self.pos += 1
        return tok

    def parse_expr(self) -> Polynomial:
        sign = 1
        tok = self.peek()
        if tok in ("+", "-"):
            self.take()
            sign = -1 if tok == "-" else 1
        out = self.parse_term()
        if sign < 0:
            out = -out
        while self.peek() in ("+", "-"):
            op = self.take()
            term = self.parse_term()
            out = out + term if op == "+" else out - term
        return out

    def parse_term(self) -> Polynomial:
        out = self.parse_factor()
        while True:
            tok = self.peek()
            if tok == "*":
                self.take()
                out = out * self.parse_factor()
            elif tok == "/":
                self.take()
                den = self.take()
                if not den.isdigit() or int(den) == 0:
                    raise ProblemParseError("'/' must be followed by a nonzero integer")
                out = out.scale(Fraction(1, int(den)))
            elif tok is not None and (tok.isdigit() or tok.isidentifier() or tok == "("):
                out = out * self.parse_factor()
            else:
                return out

    def parse_factor(self) -> Polynomial:
        tok = self.take()
        if tok == "(":
            inner = self.parse_expr()
            if self.take() != ")":
                raise ProblemParseError("missing ')' in polynomial")
            base = inner
        elif tok.isdigit():
            base = Polynomial.constant(self.field, self.variables, int(tok))
        elif tok.isidentifier():
            if tok not in self.variables:
                raise ProblemParseError(f"unknown variable {tok!r}")
            base = Polynomial.variable(self.field, self.variables, tok)
        elif tok == "-":
            return -self.parse_factor()
        else:
            raise ProblemParseError(f"unexpected token {tok!r} in polynomial")
        if self.peek() == "^":
            self.take()
            exp = self.take()
            if not exp.isdigit():
                raise ProblemParseError("'^' must be followed by an integer")
            base = base ** int(exp)
        return base


def parse_polynomial(
    text: str, field: FieldSpec, variables: tuple[str, ...]
) -> Polynomial:
    """Parse the textual syntax: integers, variables, + - * / ^ and parentheses."""
    parser = _Parser(_tokenize(text), field, variables)
    out = parser.parse_expr()
    if parser.peek() is not None:
        raise ProblemParseError(f"trailing tokens in polynomial: {parser.peek()!r}")
    return out
