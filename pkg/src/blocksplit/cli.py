"""Command-line surface.

One JSON job document per invocation describes the ring, the target
(matrix, quiver, or tuple of matrices), optional candidate factors or
ideals, and options.  Every verdict-producing command re-verifies its
certificate before emitting anything, and every emitted report is
accepted by ``verify-cert``, which re-checks the witnesses using plain
ring arithmetic only.

Exit codes: 0 = a verdict or result was produced (any status),
1 = input error, 2 = internal invariant violation (or, for
``verify-cert``, a certificate that fails re-verification).
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

from . import __version__
from .decompose import check_rect_lr, check_square_lr
from .groebner import Ideal
from .matrix import PolyMatrix, det, fitting_ideal
from .quiver import (
    Arrow,
    KroneckerForm,
    QuiverRep,
    Vertex,
    build_kronecker,
    check_conj_2x2,
    check_quiver,
    complete_reduce,
    conj_pencil,
)
from .ring import (
    GREVLEX,
    LEX,
    InvariantError,
    ParseError,
    Poly,
    RingError,
    TermOrder,
    VarTable,
    format_poly,
    local_unit_test,
    parse_poly,
    truncate,
)

TOOL = "blocksplit"

ORDERS = {"grevlex": GREVLEX, "lex": LEX}

# commands whose math is plain arithmetic; a jet order would be ignored,
# and ignoring an option silently is worse than refusing it
EXACT_ONLY = ("det", "fitting", "build-kronecker", "check-rect", "check-conj")

TOP_KEYS = ("ring", "matrix", "quiver", "matrices", "factors", "ideals",
            "index", "options")
OPTION_KEYS = ("order", "jet_order", "format", "probe_order")


class InputError(Exception):
    """Malformed job document; the message names the offending field."""


def _expect(cond: bool, message: str) -> None:
    if not cond:
        raise InputError(message)


def _load_json(path: str, what: str) -> Any:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(
            f"cannot read the {what} file: {exc.strerror or exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"the {what} file is not valid JSON: {exc.msg}") from exc


def _parse_ring(doc: dict) -> VarTable:
    ring = doc.get("ring")
    _expect(isinstance(ring, dict),
            "field 'ring' must be an object with a 'vars' list")
    names = ring.get("vars")
    _expect(isinstance(names, list)
            and all(isinstance(n, str) for n in names),
            "field 'ring.vars' must be a list of variable names")
    try:
        return VarTable(names)
    except RingError as exc:
        raise InputError(f"field 'ring.vars': {exc}") from exc


def _parse_poly_field(text: Any, table: VarTable, field: str) -> Poly:
    _expect(isinstance(text, str),
            f"field '{field}' must be a polynomial string")
    try:
        return parse_poly(text, table)
    except ParseError as exc:
        raise InputError(f"field '{field}': {exc.message}") from exc


def _parse_matrix(rows: Any, table: VarTable, field: str) -> PolyMatrix:
    _expect(isinstance(rows, list) and rows,
            f"field '{field}' must be a non-empty list of rows")
    width = None
    parsed = []
    for i, row in enumerate(rows):
        _expect(isinstance(row, list) and row,
                f"field '{field}[{i}]' must be a non-empty list of "
                "polynomial strings")
        if width is None:
            width = len(row)
        _expect(len(row) == width,
                f"field '{field}[{i}]' has {len(row)} entries, expected {width}")
        parsed.append(tuple(
            _parse_poly_field(entry, table, f"{field}[{i}][{j}]")
            for j, entry in enumerate(row)))
    return PolyMatrix(table, tuple(parsed))


def _parse_quiver(doc: Any, table: VarTable) -> QuiverRep:
    _expect(isinstance(doc, dict),
            "field 'quiver' must be an object with 'vertices' and 'arrows'")
    verts = doc.get("vertices")
    _expect(isinstance(verts, list) and verts,
            "field 'quiver.vertices' must be a non-empty list")
    vertices = []
    for i, v in enumerate(verts):
        _expect(isinstance(v, dict) and "id" in v,
                f"field 'quiver.vertices[{i}]' must be an object with "
                "'id' and 'rank'")
        rank = v.get("rank")
        _expect(isinstance(rank, int) and not isinstance(rank, bool)
                and rank > 0,
                f"field 'quiver.vertices[{i}].rank' must be a positive integer")
        vertices.append(Vertex(str(v["id"]), rank))
    arrows_doc = doc.get("arrows", [])
    _expect(isinstance(arrows_doc, list), "field 'quiver.arrows' must be a list")
    arrows = []
    for i, a in enumerate(arrows_doc):
        _expect(isinstance(a, dict),
                f"field 'quiver.arrows[{i}]' must be an object")
        for key in ("from", "to", "matrix"):
            _expect(key in a, f"field 'quiver.arrows[{i}].{key}' is required")
        mat = _parse_matrix(a["matrix"], table, f"quiver.arrows[{i}].matrix")
        arrows.append(Arrow(str(a["from"]), str(a["to"]), mat))
    try:
        return QuiverRep(table, vertices, arrows)
    except RingError as exc:
        raise InputError(f"field 'quiver': {exc}") from exc


class Job:
    """Parsed job document plus resolved options (flags win over the
    document's ``options`` block)."""

    __slots__ = ("doc", "table", "order_name", "order", "jet_order", "fmt")

    def __init__(self, doc: dict, table: VarTable, order_name: str,
                 order: TermOrder, jet_order: int | None, fmt: str):
        self.doc = doc
        self.table = table
        self.order_name = order_name
        self.order = order
        self.jet_order = jet_order
        self.fmt = fmt


def _load_job(args: argparse.Namespace) -> Job:
    doc = _load_json(args.input, "input")
    _expect(isinstance(doc, dict), "the input document must be a JSON object")
    for key in sorted(doc):
        _expect(key in TOP_KEYS, f"field '{key}' is not recognized")
    options = doc.get("options", {})
    _expect(isinstance(options, dict), "field 'options' must be an object")
    for key in sorted(options):
        _expect(key in OPTION_KEYS, f"field 'options.{key}' is not recognized")

    order_name = args.order or options.get("order") or "grevlex"
    _expect(order_name in ORDERS,
            "field 'options.order' must be 'grevlex' or 'lex'")
    jet = args.jet_order if args.jet_order is not None \
        else options.get("jet_order")
    if jet is not None:
        _expect(isinstance(jet, int) and not isinstance(jet, bool) and jet >= 1,
                "field 'options.jet_order' (or --jet-order) must be an "
                "integer >= 1")
        _expect(args.command not in EXACT_ONLY,
                f"the '{args.command}' command is exact only; "
                "remove 'jet_order'")
    fmt = args.format or options.get("format") or "json"
    _expect(fmt in ("json", "text"),
            "field 'options.format' must be 'json' or 'text'")
    table = _parse_ring(doc)
    return Job(doc, table, order_name, ORDERS[order_name], jet, fmt)


def _require_matrix(job: Job) -> PolyMatrix:
    _expect("matrix" in job.doc, "field 'matrix' is required for this command")
    return _parse_matrix(job.doc["matrix"], job.table, "matrix")


def _parse_factors(doc: dict, table: VarTable) -> tuple[Poly, Poly]:
    _expect("factors" in doc, "field 'factors' is required for this command")
    factors = doc["factors"]
    _expect(isinstance(factors, list) and len(factors) == 2,
            "field 'factors' must be a list of exactly two polynomial strings")
    return (_parse_poly_field(factors[0], table, "factors[0]"),
            _parse_poly_field(factors[1], table, "factors[1]"))


def _parse_ideals(doc: dict, table: VarTable) -> tuple[Ideal, Ideal]:
    ideals = doc.get("ideals")
    _expect(isinstance(ideals, dict),
            "field 'ideals' must be an object with lists 'J1' and 'J2'")
    out = []
    for key in ("J1", "J2"):
        gens = ideals.get(key)
        _expect(isinstance(gens, list) and gens,
                f"field 'ideals.{key}' must be a non-empty list of "
                "polynomial strings")
        out.append(Ideal(table, tuple(
            _parse_poly_field(g, table, f"ideals.{key}[{i}]")
            for i, g in enumerate(gens))))
    return out[0], out[1]


def _target_form(job: Job, field_hint: str) -> KroneckerForm:
    doc = job.doc
    present = [k for k in ("quiver", "matrices") if k in doc]
    _expect(len(present) == 1,
            f"exactly one of the fields 'quiver', 'matrices' is required "
            f"for '{field_hint}'")
    if present[0] == "quiver":
        Q = complete_reduce(_parse_quiver(doc["quiver"], job.table))
        return build_kronecker(Q)
    mats = doc["matrices"]
    _expect(isinstance(mats, list) and mats,
            "field 'matrices' must be a non-empty list of matrices")
    parsed = [_parse_matrix(m, job.table, f"matrices[{i}]")
              for i, m in enumerate(mats)]
    return conj_pencil(parsed)


def _target_matrix(job: Job, command: str) -> PolyMatrix:
    present = [k for k in ("matrix", "quiver", "matrices") if k in job.doc]
    _expect(len(present) == 1,
            "exactly one of the fields 'matrix', 'quiver', 'matrices' "
            f"is required for '{command}'")
    if present[0] == "matrix":
        return _parse_matrix(job.doc["matrix"], job.table, "matrix")
    return _target_form(job, command).matrix


# ---------------------------------------------------------------------------
# report assembly


def _provenance(job: Job, exact: bool, jet_order: int | None) -> dict:
    out = {"tool": TOOL, "version": __version__,
           "order": job.order_name, "exact": exact}
    if jet_order is not None:
        out["jet_order"] = jet_order
    return out


def _matrix_json(M: PolyMatrix) -> list[list[str]]:
    return [[format_poly(M[i, j]) for j in range(M.cols)]
            for i in range(M.rows)]


def _certificate_json(verdict) -> dict:
    identities = []
    for ident in verdict.identities:
        entry = {
            "label": ident.label,
            "lhs": format_poly(ident.lhs),
            "factors": [format_poly(f) for f in ident.factors],
        }
        if ident.modulo_order is not None:
            entry["modulo_order"] = ident.modulo_order
        identities.append(entry)
    inclusions = []
    for inc in verdict.inclusions:
        entry = {
            "element": format_poly(inc.element),
            "ideal": [format_poly(g) for g in inc.ideal_gens],
            "unit": format_poly(inc.unit),
            "cofactors": [format_poly(c) for c in inc.cofactors],
        }
        if inc.modulo_order is not None:
            entry["modulo_order"] = inc.modulo_order
        inclusions.append(entry)
    return {"identities": identities, "inclusions": inclusions}


def _verdict_report(command: str, table: VarTable, verdict, job: Job) -> dict:
    if not verdict.verify():
        raise InvariantError(
            "the verdict failed its pre-emission certificate re-check")
    report = {
        "command": command,
        "ring": {"vars": list(table.names)},
        "verdict": verdict.status,
        "scope": verdict.scope,
        "hypotheses": [
            {"name": h.name, "passed": h.passed, "detail": h.detail}
            for h in verdict.hypotheses
        ],
        "certificate": _certificate_json(verdict),
        "provenance": _provenance(job, verdict.exact, verdict.order),
    }
    if verdict.failing is not None:
        report["failing"] = format_poly(verdict.failing)
    if verdict.failed_hypothesis is not None:
        report["failed_hypothesis"] = verdict.failed_hypothesis
    return report


def _render_text(report: dict) -> str:
    lines = [f"{TOOL} {report['command']}"]
    ring = report.get("ring")
    if ring is not None:
        names = ", ".join(ring["vars"])
        lines.append(f"ring: Q[{names}] localized at the origin"
                     if names else "ring: Q (no variables)")
    hyps = report.get("hypotheses")
    if hyps is not None:
        lines.append("hypotheses:")
        for h in hyps:
            mark = "pass" if h["passed"] else "FAIL"
            lines.append(f"  [{mark}] {h['name']}: {h['detail']}")
    cert = report.get("certificate")
    if cert is not None:
        identities = cert.get("identities", [])
        if identities:
            lines.append("identities:")
            for d in identities:
                rhs = " * ".join(f"({f})" for f in d["factors"])
                tail = (f"   (mod m^{d['modulo_order']})"
                        if "modulo_order" in d else "")
                lines.append(f"  {d['label']}: {d['lhs']} = {rhs}{tail}")
        inclusions = cert.get("inclusions", [])
        if inclusions:
            lines.append("inclusions:")
            for d in inclusions:
                tail = (f"   (mod m^{d['modulo_order']})"
                        if "modulo_order" in d else "")
                lines.append(
                    f"  {d['element']} in ({', '.join(d['ideal'])})"
                    f"  [unit: {d['unit']}; cofactors: "
                    f"{', '.join(d['cofactors'])}]{tail}")
    if "determinant" in report:
        lines.append(f"determinant: {report['determinant']}")
    if "index" in report:
        lines.append(f"fitting index: {report['index']}")
    if "generators" in report:
        lines.append("generators:")
        for g in report["generators"]:
            lines.append(f"  {g}")
    if "matrix" in report:
        lines.append("matrix:")
        for row in report["matrix"]:
            lines.append("  [" + ", ".join(row) + "]")
    if "block_sizes" in report:
        sizes = ", ".join(str(s) for s in report["block_sizes"])
        lines.append(f"block sizes: {sizes}")
    if "variable_roles" in report:
        lines.append("variable roles:")
        for name in sorted(report["variable_roles"]):
            lines.append(f"  {name}: {report['variable_roles'][name]}")
    if "failing" in report:
        lines.append(f"failing element: {report['failing']}")
    if "failed_hypothesis" in report:
        lines.append(f"failed hypothesis: {report['failed_hypothesis']}")
    if "verdict" in report:
        lines.append(f"verdict: {report['verdict']}")
        lines.append(f"scope: {report['scope']}")
    if "valid" in report:
        lines.append(f"certificate valid: {'yes' if report['valid'] else 'NO'}")
        for msg in report.get("failures", []):
            lines.append(f"  {msg}")
    prov = report.get("provenance")
    if prov is not None and "order" in prov:
        mode = ("exact" if prov["exact"]
                else f"jet, order {prov['jet_order']}")
        lines.append(f"order: {prov['order']}; mode: {mode}")
    return "\n".join(lines) + "\n"


def _emit(report: dict, fmt: str) -> None:
    if fmt == "json":
        sys.stdout.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        sys.stdout.write(_render_text(report))


# ---------------------------------------------------------------------------
# commands


def _cmd_det(args: argparse.Namespace, job: Job) -> int:
    M = _target_matrix(job, "det")
    report = {
        "command": "det",
        "ring": {"vars": list(M.table.names)},
        "determinant": format_poly(det(M)),
        "provenance": _provenance(job, True, None),
    }
    _emit(report, job.fmt)
    return 0


def _cmd_fitting(args: argparse.Namespace, job: Job) -> int:
    M = _target_matrix(job, "fitting")
    j = args.index if args.index is not None else job.doc.get("index")
    _expect(j is not None, "field 'index' (or --index) is required for "
            "'fitting'")
    _expect(isinstance(j, int) and not isinstance(j, bool),
            "field 'index' must be an integer")
    I = fitting_ideal(M, j)
    report = {
        "command": "fitting",
        "ring": {"vars": list(M.table.names)},
        "index": j,
        "generators": [format_poly(g) for g in I.generators],
        "provenance": _provenance(job, True, None),
    }
    _emit(report, job.fmt)
    return 0


def _cmd_build_kronecker(args: argparse.Namespace, job: Job) -> int:
    form = _target_form(job, "build-kronecker")
    report = {
        "command": "build-kronecker",
        "ring": {"vars": list(form.table.names)},
        "base_vars": list(form.base_table.names),
        "matrix": _matrix_json(form.matrix),
        "block_offsets": list(form.offsets),
        "block_sizes": list(form.sizes),
        "variable_roles": dict(form.var_roles),
        "provenance": _provenance(job, True, None),
    }
    _emit(report, job.fmt)
    return 0


def _cmd_check_square(args: argparse.Namespace, job: Job) -> int:
    A = _require_matrix(job)
    f1, f2 = _parse_factors(job.doc, job.table)
    verdict = check_square_lr(A, f1, f2, jet_order=job.jet_order,
                              order=job.order)
    _emit(_verdict_report("check-square", A.table, verdict, job), job.fmt)
    return 0


def _cmd_check_rect(args: argparse.Namespace, job: Job) -> int:
    A = _require_matrix(job)
    J1, J2 = _parse_ideals(job.doc, job.table)
    verdict = check_rect_lr(A, J1, J2, order=job.order)
    _emit(_verdict_report("check-rect", A.table, verdict, job), job.fmt)
    return 0


def _cmd_check_conj(args: argparse.Namespace, job: Job) -> int:
    A = _require_matrix(job)
    _expect(A.rows == 2 and A.cols == 2,
            "field 'matrix' must be 2x2 for 'check-conj'")
    options = job.doc.get("options", {})
    probe = args.probe_order if args.probe_order is not None \
        else options.get("probe_order", 8)
    _expect(isinstance(probe, int) and not isinstance(probe, bool)
            and probe >= 1,
            "field 'options.probe_order' (or --probe-order) must be an "
            "integer >= 1")
    verdict = check_conj_2x2(A, probe_order=probe, order=job.order)
    _emit(_verdict_report("check-conj", A.table, verdict, job), job.fmt)
    return 0


def _cmd_check_quiver(args: argparse.Namespace, job: Job) -> int:
    _expect("quiver" in job.doc,
            "field 'quiver' is required for 'check-quiver'")
    Q = complete_reduce(_parse_quiver(job.doc["quiver"], job.table))
    form = build_kronecker(Q)
    # the factors may mention the fresh x_i_j / y_i variables
    f1, f2 = _parse_factors(job.doc, form.table)
    verdict = check_quiver(Q, f1, f2, jet_order=job.jet_order,
                           order=job.order)
    _emit(_verdict_report("check-quiver", form.table, verdict, job), job.fmt)
    return 0


# ---------------------------------------------------------------------------
# certificate re-verification (ring arithmetic only; no Groebner bases)


def _recheck_identity(d: Any, table: VarTable, i: int,
                      failures: list[str]) -> None:
    field = f"certificate.identities[{i}]"
    _expect(isinstance(d, dict), f"field '{field}' must be an object")
    label = d.get("label", f"#{i}")
    _expect(isinstance(label, str), f"field '{field}.label' must be a string")
    lhs = _parse_poly_field(d.get("lhs"), table, f"{field}.lhs")
    factors = d.get("factors")
    _expect(isinstance(factors, list) and factors,
            f"field '{field}.factors' must be a non-empty list of "
            "polynomial strings")
    product = Poly.const(table, 1)
    for k, f in enumerate(factors):
        product = product * _parse_poly_field(f, table,
                                              f"{field}.factors[{k}]")
    N = d.get("modulo_order")
    if N is not None:
        _expect(isinstance(N, int) and not isinstance(N, bool) and N >= 1,
                f"field '{field}.modulo_order' must be an integer >= 1")
    diff = lhs - product
    if N is not None:
        diff = truncate(diff, N)
    if not diff.is_zero():
        where = f" modulo m^{N}" if N is not None else ""
        failures.append(f"identity '{label}': the left side does not equal "
                        f"the product of the factors{where}")


def _recheck_inclusion(d: Any, table: VarTable, i: int,
                       failures: list[str]) -> None:
    field = f"certificate.inclusions[{i}]"
    _expect(isinstance(d, dict), f"field '{field}' must be an object")
    element = _parse_poly_field(d.get("element"), table, f"{field}.element")
    gens_doc = d.get("ideal")
    _expect(isinstance(gens_doc, list) and gens_doc,
            f"field '{field}.ideal' must be a non-empty list of "
            "polynomial strings")
    gens = [_parse_poly_field(g, table, f"{field}.ideal[{k}]")
            for k, g in enumerate(gens_doc)]
    unit = _parse_poly_field(d.get("unit"), table, f"{field}.unit")
    cof_doc = d.get("cofactors")
    _expect(isinstance(cof_doc, list),
            f"field '{field}.cofactors' must be a list of polynomial strings")
    cofactors = [_parse_poly_field(c, table, f"{field}.cofactors[{k}]")
                 for k, c in enumerate(cof_doc)]
    N = d.get("modulo_order")
    if N is not None:
        _expect(isinstance(N, int) and not isinstance(N, bool) and N >= 1,
                f"field '{field}.modulo_order' must be an integer >= 1")
    if len(cofactors) != len(gens):
        failures.append(f"inclusion {i}: {len(cofactors)} cofactors for "
                        f"{len(gens)} generators")
        return
    if not local_unit_test(unit):
        failures.append(f"inclusion {i}: the unit has zero constant term")
        return
    diff = unit * element
    for c, g in zip(cofactors, gens):
        diff = diff - c * g
    if N is not None:
        diff = truncate(diff, N)
    if not diff.is_zero():
        where = f" modulo m^{N}" if N is not None else ""
        failures.append(f"inclusion {i}: unit * element does not re-expand "
                        f"to the cofactor combination{where}")


def _recheck_shape(doc: dict, table: VarTable, failures: list[str]) -> None:
    """Status-shape constraints, mirroring the library's own verdict check."""
    verdict = doc.get("verdict")
    if verdict is None:
        return
    _expect(isinstance(verdict, str), "field 'verdict' must be a string")
    hyps = doc.get("hypotheses", [])
    _expect(isinstance(hyps, list), "field 'hypotheses' must be a list")
    named = {}
    for i, h in enumerate(hyps):
        _expect(isinstance(h, dict) and isinstance(h.get("name"), str)
                and isinstance(h.get("passed"), bool),
                f"field 'hypotheses[{i}]' must be an object with 'name' "
                "and boolean 'passed'")
        named[h["name"]] = h["passed"]
    if "failing" in doc:
        _parse_poly_field(doc["failing"], table, "failing")
    if verdict == "Inconclusive":
        failed = doc.get("failed_hypothesis")
        if not (isinstance(failed, str) and named.get(failed) is False):
            failures.append("verdict shape: Inconclusive must name a failed "
                            "hypothesis from the checklist")
        return
    if not all(named.values()):
        failures.append(f"verdict shape: {verdict} with a failed hypothesis")
    if verdict == "NotDecomposable" and "failing" not in doc:
        failures.append("verdict shape: NotDecomposable without a "
                        "failing element")


def _cmd_verify_cert(args: argparse.Namespace) -> int:
    doc = _load_json(args.cert, "certificate")
    _expect(isinstance(doc, dict),
            "the certificate document must be a JSON object")
    table = _parse_ring(doc)
    cert = doc.get("certificate")
    _expect(isinstance(cert, dict), "field 'certificate' must be an object")
    identities = cert.get("identities", [])
    inclusions = cert.get("inclusions", [])
    _expect(isinstance(identities, list),
            "field 'certificate.identities' must be a list")
    _expect(isinstance(inclusions, list),
            "field 'certificate.inclusions' must be a list")

    failures: list[str] = []
    for i, d in enumerate(identities):
        _recheck_identity(d, table, i, failures)
    for i, d in enumerate(inclusions):
        _recheck_inclusion(d, table, i, failures)
    _recheck_shape(doc, table, failures)

    report = {
        "command": "verify-cert",
        "valid": not failures,
        "checked": {"identities": len(identities),
                    "inclusions": len(inclusions)},
        "failures": failures,
        "provenance": {"tool": TOOL, "version": __version__},
    }
    _emit(report, args.format or "json")
    return 0 if not failures else 2


# ---------------------------------------------------------------------------
# argument parsing and dispatch


class _Parser(argparse.ArgumentParser):
    # argparse exits with status 2 on bad usage; per the exit-code
    # contract that status is reserved for invariant violations
    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"error: {message}\n")
        raise SystemExit(1)


_COMMAND_HELP = {
    "det": "determinant of the target matrix (or of a quiver's "
           "Kronecker form)",
    "fitting": "generators of the j-th Fitting ideal of the target",
    "check-square": "left-right decomposability of a square matrix "
                    "against a factor pair",
    "check-rect": "left-right decomposability of a rectangular matrix "
                  "against an ideal pair",
    "check-conj": "conjugation diagonalizability of a 2x2 matrix",
    "build-kronecker": "Kronecker form of a quiver representation or "
                       "matrix tuple",
    "check-quiver": "decomposability of a quiver representation via its "
                    "Kronecker form",
}


def _build_parser() -> _Parser:
    parser = _Parser(
        prog=TOOL,
        description="decide block-diagonalizability of matrices and quiver "
                    "representations over the local ring at the origin, "
                    "with independently checkable certificates")
    parser.add_argument("--version", action="version",
                        version=f"{TOOL} {__version__}")
    sub = parser.add_subparsers(dest="command", required=True,
                                metavar="command")
    for name in ("det", "fitting", "check-square", "check-rect",
                 "check-conj", "build-kronecker", "check-quiver"):
        sp = sub.add_parser(name, help=_COMMAND_HELP[name])
        sp.add_argument("--input", required=True, metavar="PATH",
                        help="job document (JSON)")
        sp.add_argument("--order", choices=("grevlex", "lex"),
                        help="monomial order for Groebner computations")
        sp.add_argument("--jet-order", dest="jet_order", type=int,
                        metavar="N",
                        help="decide modulo m^N instead of exactly")
        sp.add_argument("--format", choices=("json", "text"),
                        help="output format (default json)")
        if name == "fitting":
            sp.add_argument("--index", type=int, metavar="J",
                            help="Fitting ideal index")
        if name == "check-conj":
            sp.add_argument("--probe-order", dest="probe_order", type=int,
                            metavar="N",
                            help="series depth for the square-root probe "
                                 "(default 8)")
    sp = sub.add_parser("verify-cert",
                        help="re-check an emitted certificate using plain "
                             "ring arithmetic")
    sp.add_argument("--cert", required=True, metavar="PATH",
                    help="previously emitted report (JSON)")
    sp.add_argument("--format", choices=("json", "text"),
                    help="output format (default json)")
    return parser


_HANDLERS = {
    "det": _cmd_det,
    "fitting": _cmd_fitting,
    "build-kronecker": _cmd_build_kronecker,
    "check-square": _cmd_check_square,
    "check-rect": _cmd_check_rect,
    "check-conj": _cmd_check_conj,
    "check-quiver": _cmd_check_quiver,
}


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "verify-cert":
        return _cmd_verify_cert(args)
    job = _load_job(args)
    return _HANDLERS[args.command](args, job)


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _dispatch(args)
    except InputError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except InvariantError as exc:
        sys.stderr.write(f"internal error: {exc}\n")
        return 2
    except RingError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return 1
    except Exception as exc:  # contract: never a stack trace
        sys.stderr.write(f"internal error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
