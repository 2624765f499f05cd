"""Independent brute-force verification layer.

Ideal membership modulo m^N is a finite-dimensional linear-algebra
question: f lies in I + m^N iff the truncation of f is a rational linear
combination of truncated monomial multiples of the generators.  The row
reduction here is exact (Fraction pivots, no tolerances) and shares no
code with the Groebner engine, so the two can referee each other.

A jet answer is one-sided evidence: true at order N means "consistent
with local membership up to degree N", never a proof of membership.

The module also hosts the deterministic random-instance generator used
by the property-test harness.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Iterable

from .ring import (
    Monomial,
    Poly,
    RingError,
    VarTable,
    iter_monomials,
    truncate,
)
from .groebner import Ideal
from .matrix import PolyMatrix


class JetSpace:
    """Monomial basis of R/m^N: all monomials of total degree < N."""

    __slots__ = ("table", "bound", "monomials", "_index")

    def __init__(self, table: VarTable, bound: int):
        if bound < 1:
            raise RingError("jet order must be at least 1")
        self.table = table
        self.bound = bound
        self.monomials = tuple(iter_monomials(len(table), bound))
        self._index = {mono: i for i, mono in enumerate(self.monomials)}

    def dim(self) -> int:
        return len(self.monomials)

    def vector(self, f: Poly) -> dict[int, Fraction]:
        """Sparse coordinate vector of f mod m^N."""
        vec = {}
        for mono, coeff in f.terms.items():
            if sum(mono) < self.bound:
                vec[self._index[mono]] = coeff
        return vec


def _eliminate(row: dict[int, Fraction], comb: dict, pivots: dict):
    """Reduce row against current pivot rows, carrying the combination.

    Eliminating one column can introduce entries in later pivot columns,
    so this loops until no pivot column is left in the row."""
    while True:
        hit = min((c for c in row if c in pivots), default=None)
        if hit is None:
            return row, comb
        factor = row[hit]
        prow, pcomb = pivots[hit]
        for c, v in prow.items():
            new = row.get(c, Fraction(0)) - factor * v
            if new:
                row[c] = new
            else:
                row.pop(c, None)
        for k, v in pcomb.items():
            new = comb.get(k, Fraction(0)) - factor * v
            if new:
                comb[k] = new
            else:
                comb.pop(k, None)


def _insert(row: dict[int, Fraction], comb: dict, pivots: dict) -> None:
    row, comb = _eliminate(row, comb, pivots)
    if not row:
        return
    col = min(row)
    scale = row[col]
    row = {c: v / scale for c, v in row.items()}
    comb = {k: v / scale for k, v in comb.items()}
    pivots[col] = (row, comb)


def jet_member_witness(f: Poly, generators: Iterable[Poly], N: int):
    """Decide f in (generators) + m^N; on success return cofactors c_i
    with f = sum(c_i * g_i) modulo m^N (a unit-free congruence witness)."""
    generators = tuple(generators)
    space = JetSpace(f.table, N)
    pivots: dict = {}
    for gi, g in enumerate(generators):
        o = g.order()
        if o is None or o >= N:
            continue
        for mono in space.monomials:
            if sum(mono) + o >= N:
                continue
            shifted = truncate(Poly(f.table, {mono: Fraction(1)}) * g, N)
            if shifted.is_zero():
                continue
            _insert(space.vector(shifted), {(gi, mono): Fraction(1)}, pivots)
    row, comb = _eliminate(space.vector(f), {}, pivots)
    if row:
        return False, None
    cofactors = [Poly.zero(f.table) for _ in generators]
    for (gi, mono), coeff in comb.items():
        cofactors[gi] = cofactors[gi] + Poly(f.table, {mono: -coeff})
    return True, tuple(cofactors)


def jet_member(f: Poly, I: Ideal, N: int) -> bool:
    """Truncated membership test; exact linear algebra, no Groebner."""
    ok, _ = jet_member_witness(f, I.generators, N)
    return ok


class InstanceProfile:
    """Bounds for random instances: variable count, degree, term count,
    coefficient magnitude, and (for matrices) the shape."""

    __slots__ = ("kind", "nvars", "degree", "terms", "coeff_bound", "rows", "cols")

    def __init__(self, kind: str, nvars: int, degree: int, terms: int = 3,
                 coeff_bound: int = 5, rows: int = 2, cols: int = 2):
        if kind not in ("poly", "matrix", "quiver"):
            raise RingError(f"unknown instance kind {kind!r}")
        self.kind = kind
        self.nvars = nvars
        self.degree = degree
        self.terms = terms
        self.coeff_bound = coeff_bound
        self.rows = rows
        self.cols = cols


def _random_poly(rng: random.Random, table: VarTable, degree: int, terms: int,
                 coeff_bound: int, nonzero: bool = False) -> Poly:
    pool = list(iter_monomials(len(table), degree + 1))
    acc = {}
    for _ in range(terms):
        mono = pool[rng.randrange(len(pool))]
        coeff = rng.randint(-coeff_bound, coeff_bound)
        if coeff:
            acc[mono] = acc.get(mono, Fraction(0)) + coeff
    f = Poly(table, acc)
    if nonzero and f.is_zero():
        mono = pool[rng.randrange(len(pool))]
        f = Poly(table, {mono: Fraction(rng.randint(1, coeff_bound))})
    return f


def _instance_table(nvars: int) -> VarTable:
    return VarTable([f"x{i + 1}" for i in range(nvars)])


def random_instance(seed: int, profile: InstanceProfile):
    """Reproducible pseudo-random Poly / PolyMatrix / QuiverRep."""
    rng = random.Random(seed)
    table = _instance_table(profile.nvars)
    if profile.kind == "poly":
        return _random_poly(rng, table, profile.degree, profile.terms,
                            profile.coeff_bound, nonzero=True)
    if profile.kind == "matrix":
        rows = [
            [
                _random_poly(rng, table, profile.degree, profile.terms,
                             profile.coeff_bound)
                for _ in range(profile.cols)
            ]
            for _ in range(profile.rows)
        ]
        return PolyMatrix(table, rows)
    from .quiver import Arrow, QuiverRep, Vertex

    nv = max(2, min(3, profile.rows))
    vertices = [Vertex(f"v{i + 1}", rng.randint(1, profile.rows)) for i in range(nv)]
    arrows = []
    for a in range(rng.randint(1, nv)):
        src = vertices[rng.randrange(nv)]
        tgt = vertices[rng.randrange(nv)]
        entries = [
            [
                Poly.const(table, rng.randint(-profile.coeff_bound, profile.coeff_bound))
                for _ in range(src.rank)
            ]
            for _ in range(tgt.rank)
        ]
        arrows.append(Arrow(src.id, tgt.id, PolyMatrix(table, entries)))
    return QuiverRep(table, vertices, arrows)


def random_unimodular(rng: random.Random, table: VarTable, n: int,
                      degree: int = 1, steps: int = 3) -> PolyMatrix:
    """Product of elementary transvections: determinant exactly 1."""
    M = PolyMatrix.identity(table, n)
    for _ in range(steps):
        i = rng.randrange(n)
        j = rng.randrange(n)
        if i == j:
            continue
        p = _random_poly(rng, table, degree, 2, 2)
        E = [[Poly.const(table, 1 if r == c else 0) for c in range(n)]
             for r in range(n)]
        E[i][j] = p
        M = M * PolyMatrix(table, E)
    return M
