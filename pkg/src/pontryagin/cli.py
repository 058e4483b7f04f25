"""Command-line interface: ``pontryagin <verb> [options]``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .algebra import FieldTag, HomogeneityError, ParseError, graded_commutator
from .hopf import HopfError, coproduct, cup, dual, ensure_valid, pair, standard_hopf
from .identities import series_of
from .oracle import DEFAULT_MAX_WORDS, ResourceCapError
from .presentations import (PRESET_DESCRIPTIONS, SIGN_POLICIES, STRICT, BasisSchema, Presentation,
                            PresentationError, UnknownPresetError, glambda, preset)
from .report import PASS
from .rewrite import compile_presentation
from .series import PowerSeries, SeriesDivisionError, evaluate_expression
from .verify import run_suite

DEGREE_NOTES = {
    0: "connected: H_0 is the ground field",
    1: "rank of H_1 is 3 (t, x1, y1)",
    2: "rank of H_2 is 6 (w1, t*x1, t*y1, x2, x1*y1, y2)",
}


class UsageError(Exception):
    """Bad input from the command line; exit status 2."""


def _load(args):
    field = FieldTag.parse(args.field)
    if args.presentation:
        try:
            data = Path(args.presentation).read_text()
        except OSError as exc:
            raise UsageError(f"cannot read presentation file: {exc}") from None
        return Presentation.from_json(data)
    if args.preset == "glambda":
        return glambda(field, args.sign_policy)
    return preset(args.preset, field)


def _algebra(args) -> Presentation:
    p = _load(args)
    if not isinstance(p, Presentation):
        raise UsageError(f"preset {args.preset!r} is a series model with no multiplication; "
                         f"use `dims` or `series` instead")
    return p


def _system(args):
    return compile_presentation(_algebra(args))


# -- verbs -------------------------------------------------------------------

def cmd_dims(args):
    source = _load(args)
    route = "oracle" if args.oracle else "rewrite"
    n = args.max_degree if args.max_degree is not None else (8 if args.oracle else 16)
    if isinstance(source, PowerSeries):
        dims, route, name, field = source.truncate(n).to_list(), "series", args.preset, args.field
    elif isinstance(source, BasisSchema):
        dims, route, name, field = source.series(n).to_list(), "schema", source.name, source.field.name
    else:
        dims = series_of(source, n, route, args.max_words).to_list()
        name, field = source.name, source.field.name
    out = {"presentation": name, "field": field, "route": route, "max_degree": n, "dimensions": dims}
    if source is not None and getattr(source, "family", None) == "glambda" and field == "F2":
        out["anchors"] = {str(d): note for d, note in DEGREE_NOTES.items() if d <= n}
    rows = [[d, c, out.get("anchors", {}).get(str(d), "")] for d, c in enumerate(dims)]
    return out, (["degree", "dimension", "note"], rows)


def cmd_nf(args):
    rs = _system(args)
    e = rs.element(args.expr)
    nf = rs.normal_form(e)
    return {"input": args.expr, "normal_form": str(nf)}, str(nf)


def cmd_mul(args):
    rs = _system(args)
    prod = rs.normal_form(rs.element(args.left) * rs.element(args.right))
    return {"left": args.left, "right": args.right, "product": str(prod)}, str(prod)


def cmd_comm(args):
    rs = _system(args)
    c = rs.normal_form(graded_commutator(rs.element(args.left), rs.element(args.right)))
    return {"left": args.left, "right": args.right, "commutator": str(c)}, str(c)


def cmd_basis(args):
    rs = _system(args)
    words = [rs.table.format_word(w) for w in rs.basis_words(args.degree)]
    return ({"degree": args.degree, "count": len(words), "basis": words},
            (["word"], [[w] for w in words]))


def cmd_pair(args):
    rs = _system(args)
    value = pair(dual(rs, args.dual), rs.element(args.expr), rs)
    return {"dual": args.dual, "element": args.expr, "value": str(value)}, str(value)


def cmd_cup(args):
    p = _algebra(args)
    rs, h = compile_presentation(p), standard_hopf(p)
    c = cup(dual(rs, args.left), dual(rs, args.right), h, rs)
    out = {"left": args.left, "right": args.right, "degree": c.degree, "cup": str(c)}
    if args.evaluate:
        out["evaluate"] = args.evaluate
        out["value"] = str(pair(c, rs.element(args.evaluate), rs))
        return out, f"{c}\n<{args.evaluate}> = {out['value']}"
    return out, str(c)


def cmd_coproduct(args):
    p = _algebra(args)
    rs, h = compile_presentation(p), standard_hopf(p)
    ensure_valid(h, rs)
    t = coproduct(h, rs, rs.element(args.expr))
    return {"input": args.expr, "coproduct": str(t)}, str(t)


def cmd_series(args):
    n = args.max_degree if args.max_degree is not None else 16
    field = FieldTag.parse(args.field)
    route = "oracle" if args.oracle else "rewrite"

    def algebra(name: str) -> PowerSeries:
        try:
            src = glambda(field, args.sign_policy) if name == "glambda" else preset(name, field)
        except UnknownPresetError as exc:
            raise UsageError(str(exc).strip('"')) from None
        if isinstance(src, PowerSeries):
            return src.truncate(n)
        if isinstance(src, BasisSchema):
            return src.series(n)
        return series_of(src, n, route, args.max_words)

    s = evaluate_expression(args.expr, n, algebra)
    return s.to_list(), (["degree", "coefficient"], [[d, c] for d, c in enumerate(s)])


def cmd_verify(args):
    n = args.max_degree if args.max_degree is not None else 16
    results = run_suite(args.suite, args.seed, n, args.oracle_max_degree)
    out = {"suite": args.suite, "seed": args.seed, "max_degree": n,
           "oracle_max_degree": args.oracle_max_degree,
           "ok": all(r.status == PASS for r in results),
           "checks": [vars(r) for r in results]}
    rows = [[r.name, r.status, r.basis, r.anchor] for r in results]
    return out, (["check", "status", "basis", "anchor"], rows), (not out["ok"])


def cmd_presets(args):
    out = [{"name": k, "description": v} for k, v in PRESET_DESCRIPTIONS.items()]
    return out, (["preset", "description"], [[o["name"], o["description"]] for o in out])


# -- plumbing -----------------------------------------------------------------

def _table(header, rows) -> str:
    cells = [[str(c) for c in header]] + [[str(c) for c in r] for r in rows]
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    lines = ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in cells]
    lines.insert(1, "  ".join("-" * w for w in widths))
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--preset", default="glambda", help="built-in presentation (see `presets`)")
    common.add_argument("--presentation", metavar="PATH", help="JSON presentation file")
    common.add_argument("--field", default="F2", help="F2, F<p> for a prime p, or Q")
    common.add_argument("--sign-policy", choices=SIGN_POLICIES, default=STRICT,
                        help="commutation sign for central generators of glambda")
    common.add_argument("--max-degree", type=int, default=None)
    common.add_argument("--oracle", action="store_true", help="use exact linear algebra")
    common.add_argument("--max-words", type=int, default=DEFAULT_MAX_WORDS,
                        help="word-count cap per oracle degree slice")
    common.add_argument("--seed", type=int, default=7)
    common.add_argument("--format", choices=("json", "table"), default="json")

    parser = argparse.ArgumentParser(prog="pontryagin", description=__doc__)
    sub = parser.add_subparsers(dest="verb", required=True)

    def verb(name, fn, help_text, *positionals):
        sp = sub.add_parser(name, parents=[common], help=help_text)
        for pos, kw in positionals:
            sp.add_argument(pos, **kw)
        sp.set_defaults(fn=fn)
        return sp

    verb("dims", cmd_dims, "dimension of each degree")
    verb("nf", cmd_nf, "normal form of an element", ("expr", {}))
    verb("mul", cmd_mul, "normal form of a product", ("left", {}), ("right", {}))
    verb("comm", cmd_comm, "graded commutator", ("left", {}), ("right", {}))
    verb("basis", cmd_basis, "normal-form basis words of one degree", ("degree", {"type": int}))
    verb("pair", cmd_pair, "evaluate a dual class on an element", ("dual", {}), ("expr", {}))
    sp = verb("cup", cmd_cup, "cup product of dual classes", ("left", {}), ("right", {}))
    sp.add_argument("--evaluate", metavar="ELEMENT", help="also pair the product with ELEMENT")
    verb("coproduct", cmd_coproduct, "coproduct of an element", ("expr", {}))
    verb("series", cmd_series, "evaluate a series expression", ("expr", {}))
    sp = verb("verify", cmd_verify, "run a named verification suite")
    sp.add_argument("--suite", default="paper")
    sp.add_argument("--oracle-max-degree", type=int, default=8)
    verb("presets", cmd_presets, "list built-in presets")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.fn(args)
    except HopfError as exc:
        hint = ""
        if args.field != "F2" and args.sign_policy == STRICT:
            hint = " (odd-degree primitives need --sign-policy koszul)"
        print(f"pontryagin {args.verb}: coproduct check failed: {exc}{hint}", file=sys.stderr)
        return 1
    except (UsageError, ParseError, PresentationError, UnknownPresetError, ResourceCapError,
            HomogeneityError, SeriesDivisionError, ValueError, KeyError) as exc:
        msg = exc.args[0] if exc.args else str(exc)
        print(f"pontryagin {args.verb}: {msg}", file=sys.stderr)
        return 2
    payload, text = result[0], result[1]
    failed = len(result) > 2 and result[2]
    if args.format == "json":
        print(json.dumps(payload, default=str, ensure_ascii=False))
    elif isinstance(text, tuple):
        print(_table(*text))
    else:
        print(text)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
