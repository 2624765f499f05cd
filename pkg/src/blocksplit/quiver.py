"""Quiver representations over the ring: completion/reduction, the
Kronecker block embedding, and the decomposability checks built on it.

A representation assigns to each vertex a free module of finite rank and
to each arrow a matrix over the ring (target rank x source rank).  After
complete_reduce every ordered vertex pair carries exactly one arrow; the
Kronecker form then is the square block matrix

    block(i, j) = x_i_j * A_ij + (y_i * identity  if i == j)

over the table extended by one fresh x per ordered pair and one fresh y
per vertex.  Decomposability of the representation is decided through
the Fitting-ideal criterion on that single square matrix, relative to a
supplied splitting det = f1 * f2.

The 2x2 conjugation check is a self-contained fast path: it classifies
the discriminant tr(A)^2 - 4 det(A) (polynomial square / square only
after extending coefficients / square only as a power series / provably
no square root at all) and only claims a verdict in the provable cases.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable

from .ring import (
    GREVLEX,
    Poly,
    RingError,
    TermOrder,
    SeriesSqrtError,
    VarTable,
    sqrt_exact,
    sqrt_series,
    truncate,
    y_profile,
)
from .groebner import Ideal, member_local
from .matrix import PolyMatrix, det, fitting_ideal
from .decompose import (
    DECOMPOSABLE,
    INCONCLUSIVE,
    NOT_DECOMPOSABLE,
    HypothesisCheck,
    Identity,
    Inclusion,
    Verdict,
    _coprime_witnessed,
    _subset_witnessed,
)


class Vertex:
    __slots__ = ("id", "rank")

    def __init__(self, vid: str, rank: int):
        if rank < 1:
            raise RingError(f"vertex {vid!r} needs positive rank")
        self.id = vid
        self.rank = rank

    def __repr__(self) -> str:
        return f"Vertex({self.id!r}, rank={self.rank})"


class Arrow:
    __slots__ = ("source", "target", "matrix")

    def __init__(self, source: str, target: str, matrix: PolyMatrix):
        self.source = source
        self.target = target
        self.matrix = matrix

    def __repr__(self) -> str:
        return f"Arrow({self.source!r} -> {self.target!r})"


class QuiverRep:
    """Ordered vertices with ranks, arrows with shape-checked matrices.

    Parallel arrows between the same ordered pair are allowed; they
    disappear after complete_reduce."""

    __slots__ = ("table", "vertices", "arrows", "_rank")

    def __init__(self, table: VarTable, vertices: Iterable[Vertex],
                 arrows: Iterable[Arrow]):
        self.table = table
        self.vertices = tuple(vertices)
        self.arrows = tuple(arrows)
        if not self.vertices:
            raise RingError("quiver needs at least one vertex")
        self._rank = {}
        for v in self.vertices:
            if v.id in self._rank:
                raise RingError(f"duplicate vertex id {v.id!r}")
            self._rank[v.id] = v.rank
        for a in self.arrows:
            if a.source not in self._rank:
                raise RingError(f"arrow source {a.source!r} not a vertex")
            if a.target not in self._rank:
                raise RingError(f"arrow target {a.target!r} not a vertex")
            want = (self._rank[a.target], self._rank[a.source])
            if (a.matrix.rows, a.matrix.cols) != want:
                raise RingError(
                    f"arrow {a.source!r} -> {a.target!r} matrix must be "
                    f"{want[0]} x {want[1]}")
            if a.matrix.table != table:
                raise RingError("arrow matrix declared over a different VarTable")

    def rank(self, vid: str) -> int:
        return self._rank[vid]

    def is_complete_reduced(self) -> bool:
        seen = set()
        for a in self.arrows:
            key = (a.target, a.source)
            if key in seen:
                return False
            seen.add(key)
        return len(seen) == len(self.vertices) ** 2


def complete_reduce(Q: QuiverRep) -> QuiverRep:
    """One arrow per ordered vertex pair: missing arrows become zero
    matrices, parallel tuples merge into sum(x_k * A^(k)) with fresh
    variables x_1, x_2, ... appended to the table.  Idempotent."""
    groups: dict[tuple[str, str], list[PolyMatrix]] = {}
    for a in Q.arrows:
        groups.setdefault((a.target, a.source), []).append(a.matrix)
    merge_names: list[str] = []
    counter = 1
    for t in Q.vertices:
        for s in Q.vertices:
            bunch = groups.get((t.id, s.id), [])
            if len(bunch) > 1:
                for _ in bunch:
                    merge_names.append(Q.table.fresh_name(f"x_{counter}"))
                    counter += 1
    if not merge_names and Q.is_complete_reduced():
        return Q
    table = Q.table.extend(merge_names) if merge_names else Q.table
    arrows = []
    pos = 0
    for t in Q.vertices:
        for s in Q.vertices:
            bunch = groups.get((t.id, s.id), [])
            if not bunch:
                merged = PolyMatrix.zeros(table, t.rank, s.rank)
            elif len(bunch) == 1:
                merged = bunch[0].lift(table)
            else:
                merged = PolyMatrix.zeros(table, t.rank, s.rank)
                for mat in bunch:
                    factor = Poly.var(table, merge_names[pos])
                    pos += 1
                    merged = merged + mat.lift(table).scale(factor)
            arrows.append(Arrow(s.id, t.id, merged))
    return QuiverRep(table, Q.vertices, arrows)


class KroneckerForm:
    """Square block matrix over the extended table, plus the bookkeeping
    needed to read it: block offsets/sizes per vertex, the fresh-variable
    roles, and the y names in vertex order."""

    __slots__ = ("matrix", "base_table", "offsets", "sizes", "var_roles",
                 "y_names")

    def __init__(self, matrix: PolyMatrix, base_table: VarTable,
                 offsets, sizes, var_roles, y_names):
        self.matrix = matrix
        self.base_table = base_table
        self.offsets = tuple(offsets)
        self.sizes = tuple(sizes)
        self.var_roles = dict(var_roles)
        self.y_names = tuple(y_names)

    @property
    def table(self) -> VarTable:
        return self.matrix.table


def build_kronecker(Q: QuiverRep) -> KroneckerForm:
    """Kronecker embedding of a complete reduced quiver representation."""
    if not Q.is_complete_reduced():
        raise RingError("build_kronecker needs a complete reduced quiver")
    K = len(Q.vertices)
    pair_names = [
        f"x_{i + 1}_{j + 1}" for i in range(K) for j in range(K)
    ]
    y_names = [f"y_{i + 1}" for i in range(K)]
    table = Q.table.extend(pair_names + y_names)
    roles = {}
    for i in range(K):
        for j in range(K):
            roles[f"x_{i + 1}_{j + 1}"] = f"pair({Q.vertices[i].id}, {Q.vertices[j].id})"
        roles[f"y_{i + 1}"] = f"vertex({Q.vertices[i].id})"
    index = {v.id: i for i, v in enumerate(Q.vertices)}
    sizes = [v.rank for v in Q.vertices]
    offsets = []
    acc = 0
    for m in sizes:
        offsets.append(acc)
        acc += m
    total = acc
    grid = [[Poly.zero(table) for _ in range(total)] for _ in range(total)]
    for i in range(K):
        y = Poly.var(table, y_names[i])
        for d in range(sizes[i]):
            grid[offsets[i] + d][offsets[i] + d] = y
    for a in Q.arrows:
        i, j = index[a.target], index[a.source]
        x = Poly.var(table, f"x_{i + 1}_{j + 1}")
        block = a.matrix.lift(table).scale(x)
        for r in range(sizes[i]):
            for c in range(sizes[j]):
                grid[offsets[i] + r][offsets[j] + c] = (
                    grid[offsets[i] + r][offsets[j] + c] + block[r, c]
                )
    return KroneckerForm(PolyMatrix(table, grid), Q.table, offsets, sizes,
                         roles, y_names)


def conj_pencil(mats: list[PolyMatrix]) -> KroneckerForm:
    """One-vertex pencil sum(x_i * A_i) + y * identity for the
    simultaneous-conjugation problem."""
    if not mats:
        raise RingError("conjugation pencil needs at least one matrix")
    size = mats[0].rows
    base = mats[0].table
    for A in mats:
        if A.rows != A.cols or A.rows != size:
            raise RingError("conjugation pencil needs equal square matrices")
        if A.table != base:
            raise RingError("matrices declared over different VarTables")
    x_names = [f"x_{k + 1}" for k in range(len(mats))]
    table = base.extend(x_names + ["y"])
    acc = PolyMatrix.identity(table, size).scale(Poly.var(table, "y"))
    for name, A in zip(x_names, mats):
        acc = acc + A.lift(table).scale(Poly.var(table, name))
    roles = {name: f"loop({k + 1})" for k, name in enumerate(x_names)}
    roles["y"] = "vertex(1)"
    return KroneckerForm(acc, base, (0,), (size,), roles, ("y",))


def _quiver_scope() -> str:
    return (
        "relative to the split (f1, f2) of the Kronecker-form determinant: "
        "NotDecomposable rules out exactly the vertex-wise splittings with "
        "det = f1 * f2"
    )


def check_quiver(Q: QuiverRep, f1: Poly, f2: Poly,
                 jet_order: int | None = None,
                 order: TermOrder = GREVLEX) -> Verdict:
    """Decomposability of a complete reduced representation, relative to
    the supplied splitting of det of its Kronecker form.

    The pure-y monomial bound is the strict one (0 < l_i < m_i for every
    vertex), which is recorded in the hypothesis detail."""
    form = build_kronecker(Q)
    A = form.matrix
    total = sum(form.sizes)
    if f1.table != form.table or f2.table != form.table:
        raise RingError("factors must live over the Kronecker-extended table")
    exact = jet_order is None
    scope = _quiver_scope()
    hyps: list[HypothesisCheck] = []
    identities: list[Identity] = []
    inclusions: list[Inclusion] = []

    def inconclusive(name: str) -> Verdict:
        return Verdict(INCONCLUSIVE, hyps, identities, inclusions, scope,
                       failed_hypothesis=name, exact=exact, order=jet_order)

    d = det(A)
    diff = d - f1 * f2
    ok = diff.is_zero() if exact else truncate(diff, jet_order).is_zero()
    relation = "=" if exact else f"= (mod m^{jet_order})"
    hyps.append(HypothesisCheck(
        "determinant-factorization", ok,
        f"det of the Kronecker form {relation} (f1)*(f2)"))
    if not ok:
        return inconclusive("determinant-factorization")
    identities.append(Identity("determinant-factorization", d, (f1, f2),
                               None if exact else jet_order))

    ok = True
    detail = ("each factor contains a pure-y monomial with 0 < l_i < m_i "
              "at every vertex (strict bound)")
    for label, f in (("f1", f1), ("f2", f2)):
        profiles = y_profile(f, form.y_names)
        good = any(
            all(0 < l < m for l, m in zip(profile, form.sizes))
            for profile in profiles
        )
        if not good:
            ok = False
            detail = (f"{label} has no pure-y monomial with 0 < l_i < m_i "
                      f"at every vertex (strict bound)")
            break
    hyps.append(HypothesisCheck("y-profile", ok, detail))
    if not ok:
        return inconclusive("y-profile")

    I1 = Ideal(form.table, (f1,))
    I2 = Ideal(form.table, (f2,))
    ok, _, entries = _coprime_witnessed(I1, I2, jet_order, order)
    hyps.append(HypothesisCheck(
        "factor-coprimality", ok, "(f1) cap (f2) <= (f1*f2) at the origin"))
    if not ok:
        return inconclusive("factor-coprimality")
    inclusions.extend(entries)

    minors = fitting_ideal(A, total - 1)
    target = Ideal(form.table, (f1, f2))
    ok, failing, entries = _subset_witnessed(minors, target, jet_order, order)
    if ok:
        inclusions.extend(entries)
        return Verdict(DECOMPOSABLE, hyps, identities, inclusions, scope,
                       exact=exact, order=jet_order)
    return Verdict(NOT_DECOMPOSABLE, hyps, identities, inclusions, scope,
                   failing=failing, exact=exact, order=jet_order)


def _conj_scope() -> str:
    return ("diagonalizability of a 2x2 matrix under conjugation; the "
            "verdict is absolute (not relative to a factor pair)")


def check_conj_2x2(A: PolyMatrix, probe_order: int = 8,
                   order: TermOrder = GREVLEX) -> Verdict:
    """Conjugation-diagonalizability of a 2x2 matrix over the local ring.

    Decomposable iff the discriminant tr^2 - 4 det is a polynomial square
    and a12, a21, a11 - a22 all lie in (sqrt) locally.  When the
    discriminant only becomes a square after extending the coefficient
    field, or only as a power series, the verdict is Inconclusive with
    that reason; when it provably has no square root in any of those
    senses, NotDecomposable."""
    if A.rows != 2 or A.cols != 2:
        raise RingError("conjugation check needs a 2x2 matrix")
    table = A.table
    tr = A.trace()
    disc = tr * tr - det(A) * 4
    scope = _conj_scope()
    hyps: list[HypothesisCheck] = []
    identities: list[Identity] = []
    inclusions: list[Inclusion] = []

    nondegenerate = not disc.is_zero()
    hyps.append(HypothesisCheck(
        "nondegenerate-discriminant", nondegenerate,
        "tr(A)^2 - 4 det(A) is nonzero"))
    if not nondegenerate:
        return Verdict(INCONCLUSIVE, hyps, identities, inclusions, scope,
                       failed_hypothesis="nondegenerate-discriminant")

    root = sqrt_exact(disc)
    if root is not None:
        identities.append(Identity("discriminant-square", disc, (root, root)))
        target = Ideal(table, (root,))
        entries = []
        for element in (A[0, 1], A[1, 0], A[0, 0] - A[1, 1]):
            ok, w = member_local(element, target, order)
            if not ok:
                return Verdict(NOT_DECOMPOSABLE, hyps, identities, inclusions,
                               scope, failing=element)
            entries.append(Inclusion(element, target.generators, w.unit,
                                     w.cofactors))
        inclusions.extend(entries)
        return Verdict(DECOMPOSABLE, hyps, identities, inclusions, scope)

    # No polynomial square root; classify how badly that fails.
    def provably_nonsquare(reason: str) -> Verdict:
        hyps.append(HypothesisCheck(
            "discriminant-nonsquare-established", True,
            f"no square root exists over any coefficient extension or "
            f"power-series completion: {reason}"))
        return Verdict(NOT_DECOMPOSABLE, hyps, identities, inclusions, scope,
                       failing=disc)

    order = disc.order()
    if order % 2 == 1:
        return provably_nonsquare("the lowest-degree part has odd degree")
    low = disc.lowest_form()
    lead = low.leading()[1]
    unit_scaled = disc * (Fraction(1) / lead)
    if sqrt_exact(low * (Fraction(1) / lead)) is None:
        return provably_nonsquare(
            "the lowest-degree form is not a square even up to a constant")
    try:
        sqrt_series(unit_scaled, probe_order)
    except SeriesSqrtError:
        return provably_nonsquare(
            "the forced power-series root hits a division obstruction")
    if sqrt_exact(unit_scaled) is not None:
        reason = "square-root-needs-coefficient-extension"
    else:
        reason = "square-root-only-as-power-series"
    hyps.append(HypothesisCheck(
        reason, False,
        "the discriminant has no square root in the polynomial ring, but "
        "one cannot be ruled out after extension/completion"))
    return Verdict(INCONCLUSIVE, hyps, identities, inclusions, scope,
                   failed_hypothesis=reason)
