"""Ideal arithmetic over Q[x1..xp]: Groebner bases with cofactor tracking,
normal forms, intersection, colon, and membership tests both in the
polynomial ring and in its localization at the origin.

Every positive membership answer carries a MembershipWitness whose
re-expansion reproduces the tested element exactly; callers are expected
to re-check witnesses before trusting them.  Local questions (f in I at
the origin) are reduced to global ones through the colon trick:

    f in I_loc  <=>  (I : f) contains a polynomial with nonzero constant
                     term, i.e. 1 in (I : f) + m.

Pair handling in Buchberger follows the Gebauer-Moeller installation
(both classical criteria), with deterministic tie-breaking so repeated
runs produce identical bases.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .ring import (
    GREVLEX,
    InvariantError,
    Monomial,
    Poly,
    RingError,
    TermOrder,
    VarTable,
    _mono_div,
    _mono_divides,
    _mono_lcm,
    _mono_mul,
    divide_exact,
    local_unit_test,
)


class MembershipWitness:
    """Certificate for a membership claim: unit*f == sum(cofactor_i * g_i).

    `cofactors` is aligned with the generator list of the ideal the claim
    was made against.  For polynomial-ring membership the unit is 1; for
    local membership it is any polynomial with nonzero constant term.
    """

    __slots__ = ("cofactors", "unit")

    def __init__(self, cofactors: Iterable[Poly], unit: Poly):
        self.cofactors = tuple(cofactors)
        self.unit = unit

    def verify(self, f: Poly, generators: Iterable[Poly]) -> bool:
        generators = tuple(generators)
        if len(generators) != len(self.cofactors):
            return False
        if not local_unit_test(self.unit):
            return False
        rhs = Poly.zero(f.table)
        for c, g in zip(self.cofactors, generators):
            rhs = rhs + c * g
        return self.unit * f == rhs

    def __repr__(self) -> str:
        return f"MembershipWitness(unit={self.unit}, cofactors={list(self.cofactors)})"


class _Gen:
    """One tracked basis element: poly == sum(vec[j] * original_gen[j])."""

    __slots__ = ("poly", "lm", "lc", "vec", "seq")

    def __init__(self, poly: Poly, order: TermOrder, vec, seq: int):
        self.poly = poly
        self.lm, self.lc = poly.leading(order)
        self.vec = vec
        self.seq = seq


def _term(table: VarTable, mono: Monomial, coeff: Fraction) -> Poly:
    return Poly(table, {mono: coeff})


def _vec_add(a, b):
    return tuple(x + y for x, y in zip(a, b))


def _vec_scale(vec, factor: Poly):
    return tuple(factor * x for x in vec)


def _reduce(f: Poly, basis: list[_Gen], order: TermOrder):
    """Full normal form of f modulo basis.

    Returns (remainder, quotients) with quotients keyed by basis index and
    f == sum(q_i * basis[i].poly) + remainder; no remainder term is
    divisible by any basis leading monomial.
    """
    table = f.table
    p = f
    remainder = Poly.zero(table)
    quotients: dict[int, Poly] = {}
    while not p.is_zero():
        lm, lc = p.leading(order)
        for i, g in enumerate(basis):
            if _mono_divides(g.lm, lm):
                t = _term(table, _mono_div(lm, g.lm), lc / g.lc)
                p = p - t * g.poly
                quotients[i] = quotients.get(i, Poly.zero(table)) + t
                break
        else:
            lt = _term(table, lm, lc)
            remainder = remainder + lt
            p = p - lt
    return remainder, quotients


def _combine(quotients: dict[int, Poly], basis: list[_Gen], ngens: int, table: VarTable):
    """Cofactor vector (per original generator) from per-basis quotients."""
    vec = [Poly.zero(table)] * ngens
    for i, q in quotients.items():
        for j, component in enumerate(basis[i].vec):
            if not component.is_zero():
                vec[j] = vec[j] + q * component
    return tuple(vec)


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _update(G: list[_Gen], B: list[tuple[_Gen, _Gen]], h: _Gen, order: TermOrder):
    """Gebauer-Moeller pair update: fold h into (G, B) applying both
    Buchberger criteria.  Deterministic: all queues are ordered lists."""
    C = [(h, g) for g in G]
    D: list[tuple[_Gen, _Gen]] = []
    while C:
        _, g = C.pop(0)
        lcm_hg = _mono_lcm(h.lm, g.lm)
        survives = _coprime(h.lm, g.lm) or not any(
            _mono_divides(_mono_lcm(h.lm, other.lm), lcm_hg)
            for _, other in C + D
        )
        if survives:
            D.append((h, g))
    E = [(a, b) for a, b in D if not _coprime(a.lm, b.lm)]
    B_new: list[tuple[_Gen, _Gen]] = []
    for g1, g2 in B:
        lcm12 = _mono_lcm(g1.lm, g2.lm)
        if (
            not _mono_divides(h.lm, lcm12)
            or _mono_lcm(g1.lm, h.lm) == lcm12
            or _mono_lcm(h.lm, g2.lm) == lcm12
        ):
            B_new.append((g1, g2))
    B_new.extend(E)
    G_new = [g for g in G if not _mono_divides(h.lm, g.lm)]
    G_new.append(h)
    return G_new, B_new


def _spoly(a: _Gen, b: _Gen, order: TermOrder):
    table = a.poly.table
    lcm = _mono_lcm(a.lm, b.lm)
    ta = _term(table, _mono_div(lcm, a.lm), Fraction(1) / a.lc)
    tb = _term(table, _mono_div(lcm, b.lm), Fraction(1) / b.lc)
    poly = ta * a.poly - tb * b.poly
    vec = None
    if a.vec is not None:
        vec = tuple(ta * x - tb * y for x, y in zip(a.vec, b.vec))
    return poly, vec


def _buchberger(inputs: list[_Gen], order: TermOrder, track: bool):
    table = inputs[0].poly.table
    ngens = len(inputs)
    seq = len(inputs)
    G: list[_Gen] = []
    B: list[tuple[_Gen, _Gen]] = []
    for gen in inputs:
        remainder, quotients = _reduce(gen.poly, G, order)
        if remainder.is_zero():
            continue
        vec = None
        if track:
            vec = _vec_add(
                gen.vec,
                tuple(-c for c in _combine(quotients, G, ngens, table)),
            )
        G, B = _update(G, B, _Gen(remainder, order, vec, gen.seq), order)
    while B:
        pair = min(
            B,
            key=lambda ab: (
                order.key(_mono_lcm(ab[0].lm, ab[1].lm)),
                ab[0].seq,
                ab[1].seq,
            ),
        )
        B.remove(pair)
        s, svec = _spoly(pair[0], pair[1], order)
        remainder, quotients = _reduce(s, G, order)
        if remainder.is_zero():
            continue
        vec = None
        if track:
            vec = _vec_add(
                svec,
                tuple(-c for c in _combine(quotients, G, ngens, table)),
            )
        G, B = _update(G, B, _Gen(remainder, order, vec, seq), order)
        seq += 1
    return _interreduce(G, order, track, ngens, table, seq)


def _interreduce(G: list[_Gen], order: TermOrder, track: bool, ngens: int,
                 table: VarTable, seq: int) -> list[_Gen]:
    """Minimal generators, tail-reduced against each other, leading
    coefficient 1; sorted by descending leading monomial."""
    minimal: list[_Gen] = []
    for g in sorted(G, key=lambda g: order.key(g.lm)):
        if not any(_mono_divides(h.lm, g.lm) for h in minimal):
            minimal.append(g)
    reduced: list[_Gen] = []
    for i, g in enumerate(minimal):
        others = minimal[:i] + minimal[i + 1:]
        remainder, quotients = _reduce(g.poly, others, order)
        vec = None
        if track:
            vec = _vec_add(
                g.vec,
                tuple(-c for c in _combine(quotients, others, ngens, table)),
            )
        scale = Fraction(1) / remainder.leading(order)[1]
        poly = remainder * scale
        if track:
            vec = tuple(scale * c for c in vec)
        reduced.append(_Gen(poly, order, vec, g.seq))
    reduced.sort(key=lambda g: order.key(g.lm), reverse=True)
    return reduced


class Ideal:
    """Finitely generated ideal, with per-order cached Groebner bases.

    The zero ideal is represented by the single generator 0; otherwise
    zero generators are dropped.  The cache is write-once per (order,
    tracking) key so concurrent readers see either nothing or a finished
    basis.
    """

    __slots__ = ("table", "generators", "_cache")

    def __init__(self, table: VarTable, generators: Iterable[Poly]):
        gens = tuple(generators)
        if not gens:
            raise RingError("an ideal needs at least one generator")
        for g in gens:
            if g.table != table:
                raise RingError("generator declared over a different VarTable")
        nonzero = tuple(g for g in gens if not g.is_zero())
        self.table = table
        self.generators = nonzero if nonzero else (Poly.zero(table),)
        self._cache: dict = {}

    def is_zero(self) -> bool:
        return len(self.generators) == 1 and self.generators[0].is_zero()

    def basis(self, order: TermOrder = GREVLEX, track: bool = False) -> list[_Gen]:
        if self.is_zero():
            return []
        if (order, True) in self._cache:
            return self._cache[(order, True)]
        key = (order, track)
        if key not in self._cache:
            inputs = []
            for j, g in enumerate(self.generators):
                vec = None
                if track:
                    vec = tuple(
                        Poly.const(self.table, 1 if i == j else 0)
                        for i in range(len(self.generators))
                    )
                inputs.append(_Gen(g, order, vec, j))
            self._cache[key] = _buchberger(inputs, order, track)
        return self._cache[key]

    def __repr__(self) -> str:
        return "Ideal(" + ", ".join(str(g) for g in self.generators) + ")"


def groebner_basis(I: Ideal, order: TermOrder = GREVLEX) -> list[Poly]:
    """Reduced Groebner basis of I under the given order (cached on I)."""
    return [g.poly for g in I.basis(order)]


def normal_form(f: Poly, I: Ideal, order: TermOrder = GREVLEX):
    """Remainder of f modulo I plus a witness: f = sum(c_i g_i) + remainder."""
    if I.is_zero():
        return f, MembershipWitness((Poly.zero(f.table),), Poly.const(f.table, 1))
    basis = I.basis(order, track=True)
    remainder, quotients = _reduce(f, basis, order)
    cofactors = _combine(quotients, basis, len(I.generators), f.table)
    return remainder, MembershipWitness(cofactors, Poly.const(f.table, 1))


def member_global(f: Poly, I: Ideal, order: TermOrder = GREVLEX):
    """Does f lie in I inside the polynomial ring?  (answer, witness or None)."""
    remainder, witness = normal_form(f, I, order)
    if remainder.is_zero():
        return True, witness
    return False, None


def _drop_slot(f: Poly, target: VarTable, slot: int) -> Poly:
    terms = {}
    for mono, coeff in f.terms.items():
        terms[mono[:slot] + mono[slot + 1:]] = coeff
    return Poly(target, terms)


def intersect(I: Ideal, J: Ideal) -> Ideal:
    """I cap J, by eliminating a fresh t from t*I + (1-t)*J."""
    table = I.table
    if J.table != table:
        raise RingError("ideal intersection needs a common VarTable")
    if I.is_zero() or J.is_zero():
        return Ideal(table, (Poly.zero(table),))
    tname = table.fresh_name("t")
    ext = table.extend([tname])
    slot = ext.index(tname)
    t = Poly.var(ext, tname)
    one_minus_t = Poly.const(ext, 1) - t
    gens = [t * g.lift(ext) for g in I.generators]
    gens += [one_minus_t * h.lift(ext) for h in J.generators]
    order = TermOrder.elimination([slot])
    basis = Ideal(ext, gens).basis(order)
    kept = [g.poly for g in basis if g.poly.degree_in(tname) == 0]
    if not kept:
        return Ideal(table, (Poly.zero(table),))
    return Ideal(table, [_drop_slot(p, table, slot) for p in kept])


def colon(I: Ideal, f: Poly) -> Ideal:
    """I : f = {g : g*f in I}, via (I cap (f)) with each generator divided by f."""
    if f.is_zero():
        raise RingError("colon by zero")
    meet = intersect(I, Ideal(I.table, (f,)))
    if meet.is_zero():
        return meet
    return Ideal(I.table, [divide_exact(g, f) for g in meet.generators])


def member_local(f: Poly, I: Ideal, order: TermOrder = GREVLEX):
    """Does f lie in I after localizing at the origin?

    Decided through 1 in (I : f) + m: the colon ideal reaches outside the
    maximal ideal exactly when one of its generators has nonzero constant
    term, and that generator is the certifying unit u with u*f in I.
    """
    if f.is_zero():
        gens = I.generators
        zeros = tuple(Poly.zero(f.table) for _ in gens)
        return True, MembershipWitness(zeros, Poly.const(f.table, 1))
    if I.is_zero():
        return False, None
    ok, witness = member_global(f, I, order)
    if ok:
        return True, witness
    quot = colon(I, f)
    for candidate in quot.generators:
        if candidate.constant_term() != 0:
            unit = candidate
            inside, inner = member_global(unit * f, I, order)
            if not inside:
                raise InvariantError("colon certificate failed to re-verify")
            return True, MembershipWitness(inner.cofactors, unit)
    return False, None


def subset_local(I: Ideal, J: Ideal, order: TermOrder = GREVLEX):
    """Is every generator of I in J locally?

    Returns (True, [witness per generator]) or (False, first failing
    generator)."""
    witnesses = []
    for g in I.generators:
        ok, witness = member_local(g, J, order)
        if not ok:
            return False, g
        witnesses.append(witness)
    return True, witnesses


def ideal_sum(I: Ideal, J: Ideal) -> Ideal:
    if I.table != J.table:
        raise RingError("ideal sum needs a common VarTable")
    if I.is_zero():
        return J
    if J.is_zero():
        return I
    return Ideal(I.table, I.generators + J.generators)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    if I.table != J.table:
        raise RingError("ideal product needs a common VarTable")
    gens = []
    seen = set()
    for g in I.generators:
        for h in J.generators:
            p = g * h
            if p.key() not in seen:
                seen.add(p.key())
                gens.append(p)
    return Ideal(I.table, gens)


def coprime_local(I: Ideal, J: Ideal) -> bool:
    """Local coprimality: I cap J subseteq I*J at the origin (the reverse
    inclusion always holds)."""
    meet = intersect(I, J)
    ok, _ = subset_local(meet, ideal_product(I, J))
    return ok


def contains_local_unit(I: Ideal) -> bool:
    """Is I the whole local ring?  True iff some generator is a unit at 0."""
    return any(g.constant_term() != 0 for g in I.generators)
