"""Exact multivariate polynomial arithmetic over the rationals.

A polynomial is a dictionary mapping exponent tuples to nonzero Fraction
coefficients, attached to a fixed, ordered variable table.  The ambient
ring is read as the localization of Q[x1,...,xp] at the origin: units are
exactly the elements with nonzero constant term, and series-style
operations (truncation, square roots) treat a polynomial together with an
explicit order bound as a jet.

Variable tables are immutable; "extending the ring by new variables"
creates a fresh table with the old names as a prefix, and polynomials are
lifted into it by zero-padding their exponents.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Iterable, Iterator, Mapping

Rational = Fraction
Monomial = tuple[int, ...]

BASE = "base"
EXT = "ext"


class RingError(Exception):
    pass


class TableMismatchError(RingError):
    """Operands live over different variable tables."""


class ParseError(RingError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.message = message
        self.position = position


class NonDivisibleError(RingError):
    pass


class SeriesSqrtError(RingError):
    """No square root exists with the requested shape."""


class InvariantError(RingError):
    """An internally produced certificate failed its own re-check; this
    always indicates a bug, never bad input."""


class VarTable:
    """Ordered list of variable names, each tagged base-ring or extension.

    The order is fixed at creation; extensions always append.  Two tables
    compare equal iff names and tags agree, so lifted polynomials from
    independently built but identical extensions interoperate.
    """

    __slots__ = ("names", "kinds", "_index")

    def __init__(self, names: Iterable[str], kinds: Iterable[str] | None = None):
        names = tuple(names)
        if kinds is None:
            kinds = (BASE,) * len(names)
        else:
            kinds = tuple(kinds)
        if len(kinds) != len(names):
            raise RingError("one kind tag per variable required")
        if len(set(names)) != len(names):
            raise RingError("variable names must be unique")
        for name in names:
            if not _VAR_NAME.fullmatch(name):
                raise RingError(f"invalid variable name {name!r}")
        self.names = names
        self.kinds = kinds
        self._index = {name: i for i, name in enumerate(names)}

    def __len__(self) -> int:
        return len(self.names)

    def __contains__(self, name: str) -> bool:
        return name in self._index

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, VarTable)
            and self.names == other.names
            and self.kinds == other.kinds
        )

    def __hash__(self) -> int:
        return hash((self.names, self.kinds))

    def __repr__(self) -> str:
        return f"VarTable({list(self.names)})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise RingError(f"undeclared variable {name!r}") from None

    def extend(self, names: Iterable[str], kind: str = EXT) -> "VarTable":
        """New table with `names` appended; existing names keep their slots."""
        names = tuple(names)
        for name in names:
            if name in self._index:
                raise RingError(f"variable {name!r} already declared")
        return VarTable(self.names + names, self.kinds + (kind,) * len(names))

    def fresh_name(self, stem: str) -> str:
        """Deterministic name not present in the table: stem, stem0, stem1, ..."""
        if stem not in self._index:
            return stem
        k = 0
        while f"{stem}{k}" in self._index:
            k += 1
        return f"{stem}{k}"


_VAR_NAME = re.compile(r"[A-Za-z][A-Za-z0-9_]*")


def _grevlex_key(mono: Monomial):
    return (sum(mono), tuple(-e for e in reversed(mono)))


class TermOrder:
    """Monomial order: grevlex, lex, or a block-elimination order.

    A block order compares the restriction to the eliminated variables
    first (by grevlex), so any monomial containing an eliminated variable
    beats every monomial free of them.
    """

    __slots__ = ("kind", "block")

    def __init__(self, kind: str, block: tuple[int, ...] = ()):
        if kind not in ("grevlex", "lex", "block"):
            raise RingError(f"unknown term order {kind!r}")
        self.kind = kind
        self.block = tuple(block)

    @staticmethod
    def grevlex() -> "TermOrder":
        return TermOrder("grevlex")

    @staticmethod
    def lex() -> "TermOrder":
        return TermOrder("lex")

    @staticmethod
    def elimination(block: Iterable[int]) -> "TermOrder":
        """Block order with the given variable indices in the leading block."""
        return TermOrder("block", tuple(sorted(block)))

    def key(self, mono: Monomial):
        if self.kind == "grevlex":
            return _grevlex_key(mono)
        if self.kind == "lex":
            return mono
        inside = set(self.block)
        head = tuple(mono[i] for i in self.block)
        tail = tuple(e for i, e in enumerate(mono) if i not in inside)
        return (_grevlex_key(head), _grevlex_key(tail))

    def descriptor(self) -> str:
        if self.kind == "block":
            return f"block{list(self.block)}"
        return self.kind

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, TermOrder)
            and self.kind == other.kind
            and self.block == other.block
        )

    def __hash__(self) -> int:
        return hash((self.kind, self.block))

    def __repr__(self) -> str:
        return f"TermOrder({self.descriptor()})"


GREVLEX = TermOrder.grevlex()
LEX = TermOrder.lex()


def _mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def _mono_divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def _mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


class Poly:
    """An exact polynomial: {exponent tuple -> nonzero Fraction} over a table."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: Mapping[Monomial, Rational] | None = None):
        self.table = table
        clean: dict[Monomial, Fraction] = {}
        if terms:
            width = len(table)
            for mono, coeff in terms.items():
                coeff = Fraction(coeff)
                if coeff == 0:
                    continue
                if len(mono) != width:
                    raise RingError("exponent tuple does not match variable table")
                clean[tuple(mono)] = coeff
        self.terms = clean

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(table: VarTable) -> "Poly":
        return Poly(table)

    @staticmethod
    def const(table: VarTable, value) -> "Poly":
        return Poly(table, {(0,) * len(table): Fraction(value)})

    @staticmethod
    def var(table: VarTable, name: str, power: int = 1) -> "Poly":
        mono = [0] * len(table)
        mono[table.index(name)] = power
        return Poly(table, {tuple(mono): Fraction(1)})

    def lift(self, target: VarTable) -> "Poly":
        """Reinterpret over an extended table (old names must be a prefix)."""
        if target == self.table:
            return self
        if target.names[: len(self.table)] != self.table.names:
            raise TableMismatchError("target table does not extend this one")
        pad = len(target) - len(self.table)
        return Poly(target, {mono + (0,) * pad: c for mono, c in self.terms.items()})

    # -- predicates and views ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.table), Fraction(0))

    def total_degree(self) -> int:
        """Max total degree; -1 for the zero polynomial."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def order(self) -> int | None:
        """Min total degree of a term (the vanishing order); None if zero."""
        if not self.terms:
            return None
        return min(sum(m) for m in self.terms)

    def homogeneous_part(self, degree: int) -> "Poly":
        return Poly(self.table, {m: c for m, c in self.terms.items() if sum(m) == degree})

    def lowest_form(self) -> "Poly":
        d = self.order()
        return self if d is None else self.homogeneous_part(d)

    def degree_in(self, name: str) -> int:
        i = self.table.index(name)
        if not self.terms:
            return -1
        return max(m[i] for m in self.terms)

    def coeffs_in(self, name: str) -> dict[int, "Poly"]:
        """Coefficients w.r.t. one variable, as polynomials with it removed."""
        i = self.table.index(name)
        split: dict[int, dict[Monomial, Fraction]] = {}
        for mono, coeff in self.terms.items():
            stripped = mono[:i] + (0,) + mono[i + 1 :]
            split.setdefault(mono[i], {})[stripped] = coeff
        return {p: Poly(self.table, t) for p, t in split.items()}

    def leading(self, order: TermOrder = GREVLEX) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise RingError("zero polynomial has no leading term")
        mono = max(self.terms, key=order.key)
        return mono, self.terms[mono]

    def trailing(self, order: TermOrder = GREVLEX) -> tuple[Monomial, Fraction]:
        if not self.terms:
            raise RingError("zero polynomial has no trailing term")
        mono = min(self.terms, key=order.key)
        return mono, self.terms[mono]

    def key(self) -> tuple:
        """Hashable canonical form (table-independent content)."""
        return tuple(sorted(self.terms.items()))

    # -- arithmetic ----------------------------------------------------------

    def _check(self, other: "Poly") -> None:
        if self.table != other.table:
            raise TableMismatchError("polynomials over different variable tables")

    def __eq__(self, other) -> bool:
        if not isinstance(other, Poly):
            return NotImplemented
        return self.table == other.table and self.terms == other.terms

    def __hash__(self) -> int:
        return hash((self.table, self.key()))

    def __neg__(self) -> "Poly":
        return Poly(self.table, {m: -c for m, c in self.terms.items()})

    def __add__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.table, other)
        self._check(other)
        out = dict(self.terms)
        for mono, coeff in other.terms.items():
            s = out.get(mono, Fraction(0)) + coeff
            if s == 0:
                out.pop(mono, None)
            else:
                out[mono] = s
        return Poly(self.table, out)

    __radd__ = __add__

    def __sub__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            other = Poly.const(self.table, other)
        return self + (-other)

    def __rsub__(self, other) -> "Poly":
        return (-self) + other

    def __mul__(self, other) -> "Poly":
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return Poly.zero(self.table)
            return Poly(self.table, {m: c * other for m, c in self.terms.items()})
        self._check(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                mono = _mono_mul(m1, m2)
                s = out.get(mono, Fraction(0)) + c1 * c2
                if s == 0:
                    out.pop(mono, None)
                else:
                    out[mono] = s
        return Poly(self.table, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise RingError("exponent must be a nonnegative integer")
        result = Poly.const(self.table, 1)
        square = self
        while n:
            if n & 1:
                result = result * square
            n >>= 1
            if n:
                square = square * square
        return result

    def scale_to_monic(self, order: TermOrder = GREVLEX) -> "Poly":
        _, c = self.leading(order)
        return self * (1 / c)

    # -- formatting ----------------------------------------------------------

    def __str__(self) -> str:
        return format_poly(self)

    def __repr__(self) -> str:
        return f"Poly({format_poly(self)})"


def _format_term(names: tuple[str, ...], mono: Monomial, coeff: Fraction) -> str:
    vars_part = "*".join(
        name if e == 1 else f"{name}^{e}" for name, e in zip(names, mono) if e
    )
    mag = abs(coeff)
    if not vars_part:
        return str(mag)
    if mag == 1:
        return vars_part
    return f"{mag}*{vars_part}"


def format_poly(f: Poly) -> str:
    """Canonical text form: grevlex-descending terms, '^' powers, '/' rationals."""
    if not f.terms:
        return "0"
    monos = sorted(f.terms, key=GREVLEX.key, reverse=True)
    pieces = []
    for i, mono in enumerate(monos):
        coeff = f.terms[mono]
        body = _format_term(f.table.names, mono, coeff)
        if i == 0:
            pieces.append(body if coeff > 0 else f"-{body}")
        else:
            pieces.append(f" + {body}" if coeff > 0 else f" - {body}")
    return "".join(pieces)


class _Parser:
    """Recursive-descent parser for the polynomial expression grammar.

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' nat)*
    atom   := rational | var | '(' expr ')'
    """

    def __init__(self, text: str, table: VarTable):
        self.text = text
        self.table = table
        self.pos = 0

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.pos)

    def skip_ws(self) -> None:
        while self.pos < len(self.text) and self.text[self.pos].isspace():
            self.pos += 1

    def peek(self) -> str:
        self.skip_ws()
        return self.text[self.pos] if self.pos < len(self.text) else ""

    def take(self, char: str) -> None:
        if self.peek() != char:
            raise self.error(f"expected {char!r}")
        self.pos += 1

    def parse(self) -> Poly:
        result = self.expr()
        if self.peek():
            raise self.error(f"unexpected {self.peek()!r}")
        return result

    def expr(self) -> Poly:
        sign = 1
        if self.peek() in ("+", "-"):
            if self.peek() == "-":
                sign = -1
            self.pos += 1
        result = self.term() * sign
        while self.peek() in ("+", "-"):
            negative = self.peek() == "-"
            self.pos += 1
            t = self.term()
            result = result - t if negative else result + t
        return result

    def term(self) -> Poly:
        result = self.factor()
        while self.peek() == "*":
            self.pos += 1
            result = result * self.factor()
        return result

    def factor(self) -> Poly:
        result = self.atom()
        while self.peek() == "^":
            self.pos += 1
            result = result ** self.nat()
        return result

    def atom(self) -> Poly:
        ch = self.peek()
        if ch == "(":
            self.pos += 1
            inner = self.expr()
            self.take(")")
            return inner
        if ch.isdigit():
            num = self.nat()
            if self.peek() == "/":
                self.pos += 1
                den = self.nat()
                if den == 0:
                    raise self.error("zero denominator")
                return Poly.const(self.table, Fraction(num, den))
            return Poly.const(self.table, num)
        if ch.isalpha():
            start = self.pos
            match = _VAR_NAME.match(self.text, self.pos)
            name = match.group(0)
            self.pos = match.end()
            if name not in self.table:
                self.pos = start
                raise self.error(f"undeclared variable {name!r}")
            return Poly.var(self.table, name)
        if ch == "":
            raise self.error("unexpected end of input")
        raise self.error(f"unexpected {ch!r}")

    def nat(self) -> int:
        self.skip_ws()
        start = self.pos
        while self.pos < len(self.text) and self.text[self.pos].isdigit():
            self.pos += 1
        if self.pos == start:
            raise self.error("expected a number")
        return int(self.text[start : self.pos])


def parse_poly(text: str, table: VarTable) -> Poly:
    """Parse an expression into canonical (expanded) form."""
    return _Parser(text, table).parse()


def divide_exact(f: Poly, g: Poly) -> Poly:
    """Quotient q with q*g == f exactly; raises NonDivisibleError otherwise."""
    f._check(g)
    if g.is_zero():
        raise NonDivisibleError("division by the zero polynomial")
    if f.is_zero():
        return Poly.zero(f.table)
    lm_g, lc_g = g.leading()
    quotient: dict[Monomial, Fraction] = {}
    rest = f
    while not rest.is_zero():
        lm_r, lc_r = rest.leading()
        if not _mono_divides(lm_g, lm_r):
            raise NonDivisibleError("not divisible")
        mono = _mono_div(lm_r, lm_g)
        coeff = lc_r / lc_g
        quotient[mono] = coeff
        rest = rest - g * Poly(f.table, {mono: coeff})
    return Poly(f.table, quotient)


def local_unit_test(f: Poly) -> bool:
    """Unit in the local ring at the origin = nonzero constant term."""
    return f.constant_term() != 0


def truncate(f: Poly, bound: int) -> Poly:
    """Drop every term of total degree >= bound."""
    if bound < 0:
        raise RingError("order bound must be nonnegative")
    return Poly(f.table, {m: c for m, c in f.terms.items() if sum(m) < bound})


def _sqrt_fraction(c: Fraction) -> Fraction | None:
    if c < 0:
        return None
    num = math.isqrt(c.numerator)
    den = math.isqrt(c.denominator)
    if num * num != c.numerator or den * den != c.denominator:
        return None
    return Fraction(num, den)


def _normalize_sign(g: Poly) -> Poly:
    if g.is_zero():
        return g
    _, c = g.trailing()
    return -g if c < 0 else g


def sqrt_exact(f: Poly) -> Poly | None:
    """Polynomial square root over Q, or None.

    Peels terms off the top: the leading monomial of the root is forced,
    and every later term is forced by the highest uncancelled term of the
    residual.  Candidate monomials must strictly decrease (grevlex), which
    bounds the search; the result is verified by squaring.  Sign is fixed
    so the trailing term is positive.
    """
    if f.is_zero():
        return Poly.zero(f.table)
    lm, lc = f.leading()
    if any(e % 2 for e in lm):
        return None
    root_lc = _sqrt_fraction(lc)
    if root_lc is None:
        return None
    half = tuple(e // 2 for e in lm)
    g = Poly(f.table, {half: root_lc})
    rest = f - g * g
    last_key = GREVLEX.key(half)
    while not rest.is_zero():
        lm_r, lc_r = rest.leading()
        if not _mono_divides(half, lm_r):
            return None
        mono = _mono_div(lm_r, half)
        key = GREVLEX.key(mono)
        if key >= last_key:
            return None
        last_key = key
        t = Poly(f.table, {mono: lc_r / (2 * root_lc)})
        g = g + t
        rest = f - g * g
    if not (g * g == f):
        return None
    return _normalize_sign(g)


def sqrt_series(f: Poly, bound: int) -> Poly:
    """Series square root to the given order, built degree by degree.

    Requires the lowest homogeneous part of f to be a perfect square (even
    vanishing order).  Returns g with deg g < bound + ord(f)/2 and
    g**2 == f modulo terms of total degree >= bound + ord(f); raises
    SeriesSqrtError when no such series exists.
    """
    if bound < 0:
        raise RingError("order bound must be nonnegative")
    if f.is_zero():
        return Poly.zero(f.table)
    d = f.order()
    if d % 2:
        raise SeriesSqrtError("vanishing order is odd")
    base = sqrt_exact(f.lowest_form())
    if base is None:
        raise SeriesSqrtError("lowest homogeneous part is not a perfect square")
    s = d // 2
    g = base
    for j in range(1, bound):
        # Forced correction: the degree d+j part of f - g^2, divided by 2*base.
        residual = (f - g * g).homogeneous_part(d + j)
        if residual.is_zero():
            continue
        try:
            g = g + divide_exact(residual, base) * Fraction(1, 2)
        except NonDivisibleError:
            raise SeriesSqrtError(
                f"no series square root: obstruction at degree {d + j}"
            ) from None
    return _normalize_sign(g)


def y_profile(f: Poly, ynames: Iterable[str]) -> set[tuple[int, ...]]:
    """Exponent restrictions of the monomials supported entirely on `ynames`.

    A monomial contributes iff its exponents vanish on every variable
    outside the chosen subset; the restriction keeps the subset's order.
    """
    idx = [f.table.index(name) for name in ynames]
    inside = set(idx)
    out: set[tuple[int, ...]] = set()
    for mono in f.terms:
        if all(e == 0 for i, e in enumerate(mono) if i not in inside):
            out.add(tuple(mono[i] for i in idx))
    return out


def iter_monomials(nvars: int, below: int) -> Iterator[Monomial]:
    """All exponent tuples with total degree < below, grevlex-ascending."""
    monos: list[Monomial] = []

    def rec(prefix: list[int], budget: int, slots: int) -> None:
        if slots == 0:
            monos.append(tuple(prefix))
            return
        for e in range(budget + 1):
            prefix.append(e)
            rec(prefix, budget - e, slots - 1)
            prefix.pop()

    if below > 0:
        rec([], below - 1, nvars)
    monos.sort(key=_grevlex_key)
    return iter(monos)
