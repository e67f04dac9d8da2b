"""Command-line front end.

Every verb builds one JSON-able payload and renders text from it, so the two
output formats always carry the same numbers. Exit codes: 0 when every check
passes, 1 on a mathematical mismatch, 2 on bad input.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .catalog import CatalogEntry, catalog, get, names, run_regressions
from .coframe import AlgebraError, check_integrability_d, invariant_betti
from .diamonds import FLAVORS, DiamondError, TopologicalData, aeppli_diamond, bc_diamond, ddc_totals, hodge_diamond
from .exterior import format_form
from .harmonic import (FAMILIES, SINGLE, Verdict, dimension_table, duality_report, harmonic_space,
                       laplacian_kernel_agrees, normalize_label, verify_ddc_decomposition,
                       verify_ddlambda_decomposition, verify_inclusion_theorems)
from .identities import identity_suite
from .modelfile import ModelParseError, dump_model, load_model
from .operators import OPERATOR_NAMES, build
from .scalars import format_scalar
from .triple import TripleError, make_triple, predicates

SCHEMA = 1
OK, MISMATCH, BAD_INPUT = 0, 1, 2

CAVEAT = ("dimensions are computed on the invariant complex; in general they are lower bounds "
          "for the manifold values, and they agree with the published values for the catalog models")


class InputError(Exception):
    pass


# model resolution -----------------------------------------------------------


def _resolve(source: str | None, need_structure: bool = True):
    """Return (name, algebra, jmat, catalog entry or None) for a catalog name or a file."""
    if not source:
        raise InputError("--model is required (a catalog name or a model file)")
    path = Path(source)
    if path.is_file():
        spec = load_model(path)
        return spec.name, spec.algebra, spec.jmat, None
    try:
        entry = get(source)
    except KeyError:
        raise InputError(f"{source!r} is neither a file nor a catalog model; catalog: {', '.join(names())}") from None
    if need_structure and entry.is_stub:
        raise InputError(f"catalog model {source!r} is a stub without structure equations")
    return entry.name, entry.algebra, entry.jmat, entry


def _triple(source):
    name, alg, jmat, entry = _resolve(source)
    try:
        return name, make_triple(alg, jmat), entry
    except (AlgebraError, TripleError) as exc:
        raise InputError(f"model {name!r} is not valid: {exc}; run 'validate' for details") from None


def _verdict_dict(v: Verdict) -> dict:
    return {"name": v.name, "status": v.status(), "detail": v.detail}


def _verdict_lines(vs) -> list[str]:
    width = max((len(v["name"]) for v in vs), default=0)
    return [f"[{v['status']:>4}] {v['name']:<{width}}  {v['detail']}".rstrip() for v in vs]


def _code(verdicts) -> int:
    return MISMATCH if any(v["status"] == "FAIL" for v in verdicts) else OK


# verbs -------------------------------------------------------------------------


def cmd_validate(args):
    name, alg, jmat, _ = _resolve(args.model)
    doc = {"schema": SCHEMA, "command": "validate", "model": name, "dim": alg.dim}
    lines = [f"model {name} (2m = {alg.dim})"]
    dd = check_integrability_d(alg)
    doc["d_squared_zero"] = dd.ok
    if dd.ok:
        lines.append("d^2 = 0: yes")
    else:
        doc["witness"] = {"generator": dd.generator, "dd": format_form(dd.witness)}
        lines.append(f"d^2 = 0: no, d(d e{dd.generator}) = {format_form(dd.witness)}")
        doc["valid"] = False
        lines.append("valid: no")
        return doc, lines, MISMATCH
    try:
        t = make_triple(alg, jmat)
    except TripleError as exc:
        doc["triple_error"] = str(exc)
        doc["valid"] = False
        lines += [f"triple: invalid, {exc}", "valid: no"]
        return doc, lines, MISMATCH
    doc["triple_valid"] = True
    doc["omega"] = format_form(t.omega)
    doc["predicates"] = predicates(t).as_dict()
    doc["invariant_betti"] = invariant_betti(alg)
    doc["note"] = CAVEAT
    doc["valid"] = True
    lines.append("triple: valid")
    lines.append(f"omega = {doc['omega']}")
    for k, v in doc["predicates"].items():
        lines.append(f"{k} = {str(v).lower()}")
    lines.append("invariant betti: " + " ".join(map(str, doc["invariant_betti"])))
    lines.append("valid: yes")
    return doc, lines, OK


def _families(sel: str) -> list[str]:
    if sel == "all":
        return list(FAMILIES)
    try:
        lab = normalize_label(sel)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return [lab]


def _degrees(sel, dim: int) -> list[int]:
    if sel is None:
        return list(range(dim + 1))
    if not 0 <= sel <= dim:
        raise InputError(f"degree {sel} out of range 0..{dim}")
    return [sel]


def _table_lines(dims: dict[str, list[int]], degrees: list[int]) -> list[str]:
    width = max([len("family")] + [len(f) for f in dims])
    lines = [f"{'family':<{width}}  " + " ".join(f"k={k:<2}" for k in degrees).rstrip()]
    for fam, vals in dims.items():
        lines.append(f"{fam:<{width}}  " + " ".join(f"{v:<4}" for v in vals).rstrip())
    return lines


def cmd_harmonic(args):
    fams = _families(args.family)
    name, t, _ = _triple(args.model)
    degrees = _degrees(args.degree, t.dim)
    dims = {f: [harmonic_space(t, f, k).dim for k in degrees] for f in fams}
    doc = {"schema": SCHEMA, "command": "harmonic", "model": name, "dim": t.dim,
           "degrees": degrees, "dimensions": dims, "note": CAVEAT}
    lines = [f"model {name} (2m = {t.dim})"] + _table_lines(dims, degrees)
    if args.bases:
        doc["bases"] = {}
        lines.append("")
        for f in fams:
            doc["bases"][f] = {}
            for k in degrees:
                forms = [format_form(b) for b in harmonic_space(t, f, k).basis]
                doc["bases"][f][str(k)] = forms
                lines.append(f"{f} degree {k}: " + ("; ".join(forms) if forms else "none"))
    lines.append(f"note: {CAVEAT}")
    return doc, lines, OK


def cmd_theorems(args):
    name, t, _ = _triple(args.model)
    vs = list(identity_suite(t))
    rep = duality_report(t)
    for chain, ok in rep.chains.items():
        vs.append(Verdict(f"duality chain of {chain}", True, ok,
                          " ".join(map(str, rep.table[chain]))))
    for arrow, ok in rep.maps.items():
        vs.append(Verdict(f"isomorphism {arrow}", True, ok))
    vs.append(verify_ddc_decomposition(t))
    vs.append(verify_ddlambda_decomposition(t))
    vs += verify_inclusion_theorems(t)
    if t.dim == 4:
        for lab in ("d+dc", "d+dL"):
            vs.append(Verdict(f"kernel of the {lab} Laplacian equals the joint kernel", True,
                              laplacian_kernel_agrees(t, lab)))
    verdicts = [_verdict_dict(v) for v in vs]
    doc = {"schema": SCHEMA, "command": "theorems", "model": name, "dim": t.dim,
           "predicates": predicates(t).as_dict(), "verdicts": verdicts, "note": CAVEAT}
    flags = " ".join(f"{k}={str(v).lower()}" for k, v in doc["predicates"].items())
    lines = [f"model {name} (2m = {t.dim}); {flags}"] + _verdict_lines(verdicts)
    counts = {s: sum(v["status"] == s for v in verdicts) for s in ("pass", "FAIL", "n/a")}
    lines.append(f"{counts['pass']} pass, {counts['FAIL']} fail, {counts['n/a']} not applicable")
    return doc, lines, _code(verdicts)


def cmd_diamond(args):
    try:
        td = TopologicalData(args.b1, args.bplus, args.bminus)
    except DiamondError as exc:
        raise InputError(str(exc)) from None
    dm = {"hodge": hodge_diamond, "bc": bc_diamond, "aeppli": aeppli_diamond}[args.flavor](td)
    doc = {"schema": SCHEMA, "command": "diamond", "b1": td.b1, "bplus": td.bplus, "bminus": td.bminus}
    doc.update(dm.as_dict())
    lines = [f"{args.flavor} diamond for b1 = {td.b1}, b+ = {td.bplus}, b- = {td.bminus}", dm.render()]
    if args.flavor == "bc":
        doc["ddc_totals"] = ddc_totals(dm)
        lines.append("h_(d+dc): " + " ".join(map(str, doc["ddc_totals"])))
    return doc, lines, OK


def cmd_dump_operator(args):
    name, t, _ = _triple(args.model)
    op = build(t, args.operator)
    degrees = _degrees(args.degree, t.dim)
    blocks = []
    lines = [f"# operator {args.operator} on {name} (2m = {t.dim})"]
    for k in degrees:
        blk = op.block(k)
        rows = [[format_scalar(x) for x in r] for r in blk.rows]
        blocks.append({"degree": k, "target": op.target(k), "shape": list(blk.shape), "rows": rows})
        lines.append(f"# degree {k}")
        lines.append(f"# target {op.target(k)}, {blk.nrows}x{blk.ncols}")
        lines += [" ".join(r) for r in rows]
    doc = {"schema": SCHEMA, "command": "dump-operator", "model": name, "dim": t.dim,
           "operator": args.operator, "blocks": blocks}
    return doc, lines, OK


def cmd_export(args):
    name, alg, jmat, _ = _resolve(args.model)
    text = dump_model(name, alg, jmat)
    doc = {"schema": SCHEMA, "command": "export", "model": name, "text": text}
    return doc, text.rstrip("\n").split("\n"), OK


# tables ------------------------------------------------------------------------

TABLES = (
    ("complex torus, hyperelliptic surface, Inoue surface S_M", ("torus", "hyperelliptic", "inoue-sm")),
    ("primary and secondary Kodaira surface, Inoue surface S^+-", ("kodaira", "secondary-kodaira", "inoue-spm")),
    ("Hopf surface", ("hopf",)),
    ("Kodaira-Thurston manifold (almost Kahler, not integrable)", ("kodaira-thurston",)),
)

LEGEND = {
    "R": "recomputed from the structure equations",
    "D": "derived from the Bott-Chern diamond of (b1, b+, b-)",
    "P": "published value, not recomputed",
    "-": "no published value",
    "!": "disagrees with the published value",
}


def _cells(entry: CatalogEntry, fam: str) -> list[dict]:
    exp = entry.expected(fam)
    stated = list(exp.values) if exp else [None] * 5
    if not entry.is_stub:
        got = dimension_table(entry.triple(), (fam,))[fam]
        src = "R"
    elif fam == "d+dc":
        got = ddc_totals(bc_diamond(entry.topology))
        src = "D"
    else:
        got = [None] * len(stated)
        src = "P"
    cells = []
    for k, want in enumerate(stated):
        value = got[k] if got[k] is not None else want
        cells.append({"k": k, "value": value, "published": want,
                      "source": src if value is not None else "-",
                      "agrees": None if want is None or got[k] is None else got[k] == want})
    return cells


def cmd_tables(args):
    tables = []
    lines = []
    bad = 0
    for title, models in TABLES:
        cols = []
        for mname in models:
            e = get(mname)
            for fam in ("d+dc", "d+dL"):
                cells = _cells(e, fam)
                bad += sum(c["agrees"] is False for c in cells)
                cols.append({"model": mname, "class": e.klass, "family": fam, "cells": cells})
        tables.append({"title": title, "columns": cols})

        lines.append(title)
        heads = [f"({col['class']}) " * bool(col["class"]) + f"{col['model']} {col['family']}" for col in cols]
        widths = [max(len(h), 4) for h in heads]
        lines.append("k  " + "  ".join(h.rjust(w) for h, w in zip(heads, widths)))
        for k in range(5):
            row = []
            for col, w in zip(cols, widths):
                c = col["cells"][k]
                mark = "!" if c["agrees"] is False else c["source"]
                txt = "" if c["value"] is None else str(c["value"])
                row.append(f"{txt}{mark}".rjust(w))
            lines.append(f"{k}  " + "  ".join(row))
        lines.append("")
    lines.append("legend: " + "; ".join(f"{k} {v}" for k, v in LEGEND.items()))
    lines.append(f"note: {CAVEAT}")
    lines.append(f"disagreements: {bad}")
    doc = {"schema": SCHEMA, "command": "tables", "legend": LEGEND, "tables": tables,
           "disagreements": bad, "note": CAVEAT}
    return doc, lines, MISMATCH if bad else OK


def cmd_regress(args):
    verdicts = []
    for e in catalog():
        verdicts += [_verdict_dict(v) for v in run_regressions(e, args.samples)]
    doc = {"schema": SCHEMA, "command": "regress", "verdicts": verdicts, "note": CAVEAT}
    return doc, _verdict_lines(verdicts), _code(verdicts)


# entry point -------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="invharmonic",
                                description="Exact P-harmonic invariant forms on Lie group quotients.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, model=True):
        if model:
            sp.add_argument("--model", help="catalog name or path to a model file")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", help="write output here instead of stdout")

    sp = sub.add_parser("validate", help="check d^2 = 0, the triple and predicate flags")
    common(sp)
    sp.set_defaults(func=cmd_validate)

    sp = sub.add_parser("harmonic", help="dimension table of harmonic spaces")
    common(sp)
    sp.add_argument("--family", default="all",
                    help="'all' or one of " + ", ".join(FAMILIES + SINGLE))
    sp.add_argument("--degree", type=int, help="single degree (default: all)")
    sp.add_argument("--bases", action="store_true", help="also print bases")
    sp.set_defaults(func=cmd_harmonic)

    sp = sub.add_parser("theorems", help="identity suite and theorem verdicts")
    common(sp)
    sp.set_defaults(func=cmd_theorems)

    sp = sub.add_parser("tables", help="reproduce the published tables with provenance")
    common(sp, model=False)
    sp.set_defaults(func=cmd_tables)

    sp = sub.add_parser("diamond", help="Hodge, Bott-Chern or Aeppli diamond of a surface")
    common(sp, model=False)
    sp.add_argument("--b1", type=int, required=True)
    sp.add_argument("--bplus", type=int, required=True)
    sp.add_argument("--bminus", type=int, required=True)
    sp.add_argument("--flavor", choices=FLAVORS, default="bc")
    sp.set_defaults(func=cmd_diamond)

    sp = sub.add_parser("dump-operator", help="print the blocks of an operator")
    common(sp)
    sp.add_argument("--operator", choices=OPERATOR_NAMES, default="d")
    sp.add_argument("--degree", type=int, help="single source degree (default: all)")
    sp.set_defaults(func=cmd_dump_operator)

    sp = sub.add_parser("export", help="write a catalog model as a model file")
    common(sp)
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("regress", help="catalog regressions including triple sampling")
    common(sp, model=False)
    sp.add_argument("--samples", type=int, default=3)
    sp.set_defaults(func=cmd_regress)
    return p


def render(doc: dict, lines: list[str], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, lines, code = args.func(args)
    except (InputError, ModelParseError, DiamondError, AlgebraError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    out = render(doc, lines, args.format)
    if args.out:
        Path(args.out).write_text(out, encoding="utf-8")
    else:
        sys.stdout.write(out)
    return code


if __name__ == "__main__":
    sys.exit(main())
