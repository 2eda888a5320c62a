"""
Command line front end.

Subcommands: hecke-verify, hecke-mul, truncate, steinberg, dlc, dg-formality,
schemas. Output goes to stdout as JSON (--format json) or aligned text
(--format text, default); diagnostics go to stderr. Exit codes: 0 all checks
pass, 1 a mathematical verification failed (nonzero residual, unequal totals,
purity/validation failure; the output then carries a machine-readable
witness), 2 input or usage error. Identical invocations produce byte-identical
output.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from ._jsonutil import dumps
from .combinat import SemisimplePoint
from .dgformality import formality_zigzag, validate_dg_algebra
from .errors import (
    DgValidationError,
    FormalityObstruction,
    InputError,
    PurityError,
    SpectralError,
)
from .hecke import HeckeElement, _engine, truncated_algebra, verify_defining_relations
from .schemas import SCHEMAS
from .steinberg import (
    cell_inventory_and_poincare,
    dlc_report,
    ext_graded_dims,
    fixed_point_datum,
    frobenius_weight_table,
    nilpotent_datum,
    validate_b_stable,
)

__all__ = ["main", "build_parser"]


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"not a rational: {text!r}") from exc


def _rational_list(text: str) -> tuple[Fraction, ...]:
    return tuple(_rational(part) for part in text.split(","))


def _point(args) -> SemisimplePoint:
    if args.s is None:
        raise InputError("--s is required")
    s = _rational_list(args.s)
    if getattr(args, "n", None) is not None and args.n != len(s):
        raise InputError(f"--n {args.n} does not match --s of rank {len(s)}")
    if args.q is None:
        raise InputError("--q is required")
    sqrt_q = _rational(args.sqrt_q) if getattr(args, "sqrt_q", None) else None
    return SemisimplePoint.of(s, _rational(args.q), sqrt_q)


def _emit(args, doc: dict, text: str) -> None:
    if args.format == "json":
        sys.stdout.write(dumps(doc))
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _witness_line(doc) -> str:
    return "witness: " + json.dumps(doc, sort_keys=True)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def _cmd_hecke_verify(args) -> int:
    report = verify_defining_relations(args.n, args.bound, mutate=args.mutate)
    obj = report.to_obj()
    lines = [f"defining relations for n={args.n}, weight bound {args.bound}"]
    for kind, stats in sorted(obj["by_kind"].items()):
        lines.append(
            f"  {kind:<10} checked {stats['checked']:>5}   nonzero {stats['nonzero']}"
        )
    lines.append(f"all residuals zero: {report.all_zero}")
    if not report.all_zero:
        lines.append(_witness_line(obj["failures"][0]))
    _emit(args, obj, "\n".join(lines))
    return 0 if report.all_zero else 1


def _parse_element(n: int, text: str) -> HeckeElement:
    alg = _engine(n)
    text = text.strip()
    if text == "unit":
        return alg.one()
    if text == "q":
        return alg.qvar()
    if text.startswith("theta:"):
        return alg.theta([int(v) for v in text[6:].split(",")])
    if text.startswith("tee:"):
        return alg.tee([int(v) - 1 for v in text[4:].split(",")])
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"element is neither a shorthand nor JSON: {exc}") from exc
    return HeckeElement.from_obj(n, obj)


def _cmd_hecke_mul(args) -> int:
    if args.input:
        doc = _read_json(args.input)
        try:
            n = int(doc["n"])
            lhs = HeckeElement.from_obj(n, doc["lhs"])
            rhs = HeckeElement.from_obj(n, doc["rhs"])
        except (KeyError, TypeError) as exc:
            raise InputError(f"input document needs n, lhs, rhs: {exc}") from exc
    else:
        if args.n is None or args.lhs is None or args.rhs is None:
            raise InputError("provide --input, or --n with --lhs and --rhs")
        n = args.n
        lhs = _parse_element(n, args.lhs)
        rhs = _parse_element(n, args.rhs)
    product = _engine(n).multiply(lhs, rhs)
    obj = {"n": n, "product": product.to_obj()}
    lines = [f"normal form of the product ({len(product.terms)} terms):"]
    for term in obj["product"]:
        coeff = " + ".join(
            (f"{c}*q^{e}" if e else str(c)) for e, c in term["coeff"]
        )
        lines.append(f"  theta{tuple(term['x'])} T{tuple(term['w'])} * [{coeff}]")
    _emit(args, obj, "\n".join(lines))
    return 0


def _cmd_truncate(args) -> int:
    point = _point(args)
    algebra = truncated_algebra(point)
    obj = algebra.to_obj()
    text = "\n".join(
        [
            f"truncated algebra at s=({args.s}), q0={args.q}",
            f"  dimension {algebra.dimension} = ({len(set(a for a, _ in algebra.basis))} staircase) x (|W|)",
            f"  unit laws hold: {algebra.check_unit_laws()}",
            f"  nonzero structure rows: {sum(1 for v in algebra.structure.values() if v)}",
        ]
    )
    _emit(args, obj, text)
    return 0


def _build_datum(args):
    if args.nilpotent is not None:
        if args.s is not None:
            raise InputError("--nilpotent and --s are mutually exclusive")
        datum = nilpotent_datum(args.nilpotent)
        point = None
        if args.sqrt_q or args.q:
            if args.q is None:
                raise InputError("--sqrt-q needs --q")
            point = SemisimplePoint.of(
                (1,) * args.nilpotent,
                _rational(args.q),
                _rational(args.sqrt_q) if args.sqrt_q else None,
            )
        return datum, point
    point = _point(args)
    return fixed_point_datum(point), point


def _cmd_steinberg(args) -> int:
    datum, point = _build_datum(args)
    violations = validate_b_stable(datum)
    table = ext_graded_dims(datum)
    poincare = []
    for i in range(datum.piece_count):
        for j in range(datum.piece_count):
            _, poin = cell_inventory_and_poincare(datum, i, j)
            poincare.append([i, j, {str(m): c for m, c in poin.items()}])
    obj = {
        "datum": datum.to_obj(),
        "b_stable": not violations,
        "violations": [
            {"piece": i, "alpha": [a + 1, b + 1], "beta": [c + 1, d + 1]}
            for i, (a, b), (c, d) in violations
        ],
        "poincare": poincare,
        "ext": table.to_obj(),
    }
    frobenius_bad = False
    if point is not None and point.sqrt_q is not None:
        frob = frobenius_weight_table(datum, point)
        obj["frobenius"] = frob.to_obj()
        frobenius_bad = not frob.all_consistent

    lines = [
        f"pieces: {datum.piece_count}   |W(s)|: {len(datum.group)}   dims: {list(datum.component_dims)}",
        f"B-stable: {not violations}",
        f"Ext totals by degree: { {str(k): v for k, v in table.graded_totals().items()} }",
        f"Ext total: {table.total}",
    ]
    if "frobenius" in obj:
        lines.append(f"Frobenius weights consistent: {obj['frobenius']['all_consistent']}")
    if violations:
        lines.append(_witness_line(obj["violations"][0]))
    _emit(args, obj, "\n".join(lines))
    return 1 if violations or frobenius_bad else 0


def _cmd_dlc(args) -> int:
    point = _point(args)
    report = dlc_report(point)
    obj = report.to_obj()
    ok = (
        report.equal
        and report.kernel_totals_agree
        and report.b_stable
        and (report.frobenius is None or report.frobenius.all_consistent)
    )
    lines = [
        f"components |J| = {report.component_count}   |W(s)| = {report.subgroup_order}",
        f"geometric graded totals: { {str(k): v for k, v in sorted(report.geometric_graded.items())} }",
        f"geometric total: {report.geometric_total}",
        f"algebraic total: {report.algebraic_total}",
        f"totals equal: {report.equal}",
    ]
    if report.frobenius is not None:
        lines.append(f"Frobenius weights consistent: {report.frobenius.all_consistent}")
    if not ok:
        lines.append(_witness_line({
            "geometric_total": report.geometric_total,
            "algebraic_total": report.algebraic_total,
            "equal": report.equal,
            "kernel_totals_agree": report.kernel_totals_agree,
            "b_stable": report.b_stable,
        }))
    _emit(args, obj, "\n".join(lines))
    return 0 if ok else 1


def _read_json(path: str):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, "r", encoding="utf-8") as fh:
            return json.load(fh)
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def _cmd_dg_formality(args) -> int:
    doc = _read_json(args.input)
    if not isinstance(doc, dict):
        raise InputError("dg-algebra document must be a JSON object")
    r_text = args.r if args.r is not None else doc.get("r")
    if r_text is None:
        raise InputError("supply --r or an 'r' field in the document")
    r = _rational(str(r_text))

    try:
        algebra = validate_dg_algebra(doc)
    except DgValidationError as exc:
        obj = {"valid": False, "check": exc.check, "witness": exc.witness}
        _emit(args, obj, f"invalid dg-algebra: {exc.check}\n{_witness_line(exc.witness)}")
        return 1

    try:
        zigzag = formality_zigzag(algebra, r)
    except PurityError as exc:
        obj = {
            "valid": True,
            "formal": False,
            "failure": "purity",
            "degree": exc.degree,
            "action": exc.action,
        }
        _emit(args, obj, f"purity failure in degree {exc.degree}\n{_witness_line(obj)}")
        return 1
    except SpectralError as exc:
        obj = {
            "valid": True,
            "formal": False,
            "failure": "spectral",
            "degree": exc.degree,
            "missing_dimensions": exc.missing_dim,
            "witness": exc.witness,
        }
        _emit(args, obj, f"spectral failure in degree {exc.degree}\n{_witness_line(obj)}")
        return 1
    except FormalityObstruction as exc:
        obj = {
            "valid": True,
            "formal": False,
            "failure": "off-diagonal-cohomology",
            "bidegree": list(exc.bidegree),
        }
        _emit(args, obj, f"cohomology off the diagonal at {exc.bidegree}\n{_witness_line(obj)}")
        return 1

    certs = zigzag.certificates
    obj = {"valid": True, "formal": True, "zigzag": zigzag.to_obj()}
    dims = {k: alg.dim for k, alg in sorted(zigzag.algebras.items())}
    lines = [
        f"formal: dims H/B/Rtilde/R = {dims['H']}/{dims['B']}/{dims['Rtilde']}/{dims['R']}",
        f"certificates all pass: {certs.all_ok}",
    ]
    _emit(args, obj, "\n".join(lines))
    return 0 if certs.all_ok else 1


def _cmd_schemas(args) -> int:
    if args.type not in SCHEMAS:
        raise InputError(
            f"unknown schema type {args.type!r}; choose from {sorted(SCHEMAS)}"
        )
    _emit(args, SCHEMAS[args.type], dumps(SCHEMAS[args.type]))
    return 0


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="heckespringer",
        description="Exact affine Hecke / Steinberg / formality workbench",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--format", choices=["json", "text"], default="text")

    p = sub.add_parser("hecke-verify", help="check the defining relations")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--bound", type=int, required=True, help="weight box half-width")
    p.add_argument("--mutate", action="store_true", help="corrupt the engine (mutation test)")
    common(p)
    p.set_defaults(func=_cmd_hecke_verify)

    p = sub.add_parser("hecke-mul", help="normal form of a product")
    p.add_argument("--n", type=int)
    p.add_argument("--lhs", help="'theta:1,0', 'tee:2,1', 'unit', 'q', or JSON terms")
    p.add_argument("--rhs", help="same syntax as --lhs")
    p.add_argument("--input", help="JSON document {n, lhs, rhs}; '-' for stdin")
    common(p)
    p.set_defaults(func=_cmd_hecke_mul)

    p = sub.add_parser("truncate", help="finite-dimensional algebra at a central character")
    p.add_argument("--n", type=int)
    p.add_argument("--s", required=True, help="comma-separated rationals")
    p.add_argument("--q", required=True)
    common(p)
    p.set_defaults(func=_cmd_truncate)

    p = sub.add_parser("steinberg", help="cells, Poincare vectors, graded Ext dims")
    p.add_argument("--nilpotent", type=int, help="full nilpotent-cone datum for GL_n")
    p.add_argument("--n", type=int)
    p.add_argument("--s", help="comma-separated rationals (fixed-point datum)")
    p.add_argument("--q")
    p.add_argument("--sqrt-q", dest="sqrt_q")
    common(p)
    p.set_defaults(func=_cmd_steinberg)

    p = sub.add_parser("dlc", help="geometric vs algebraic dimension cross-check")
    p.add_argument("--n", type=int)
    p.add_argument("--s", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--sqrt-q", dest="sqrt_q")
    common(p)
    p.set_defaults(func=_cmd_dlc)

    p = sub.add_parser("dg-formality", help="validate, bigrade and certify formality")
    p.add_argument("--input", required=True, help="dg-algebra JSON; '-' for stdin")
    p.add_argument("--r", help="rational eigenweight base (overrides the document)")
    common(p)
    p.set_defaults(func=_cmd_dg_formality)

    p = sub.add_parser("schemas", help="print a document schema")
    p.add_argument("--type", required=True)
    common(p)
    p.set_defaults(func=_cmd_schemas)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse uses 2 for usage errors, 0 for --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
