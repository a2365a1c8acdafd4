"""Command-line entry point: build groups, enumerate generating data, build
maps and run verification sweeps."""

from __future__ import annotations

import argparse
import json
import sys
from collections import Counter
from pathlib import Path

from .analysis import automorphism_group, is_indecomposable, is_sylow_cyclic_or_dihedral
from .errors import ArcmapsError, ResourceLimit
from .families import FAMILIES, FamilySpec, auto_exponents, build_family, validate_family_spec
from .generators import (RELABEL_MODES, EnumOptions, classify_orbits, enumerate_reversing_triples,
                         enumerate_rotary_pairs)
from .groups import GroupTable, make_cyclic, make_dihedral, parse_cycles, permutation_group
from .maps import (CLI_CONSTRUCTIONS, build_map, census_csv, census_row, check_divisibility,
                   check_group_constraints, handshake_ok, map_census, underlying_graph)
from .verify import CensusReport, VerifyOptions, export_report, load_default_grid, sweep, verify_family

EXIT_OK, EXIT_ERROR, EXIT_THEOREM, EXIT_LIMIT = 0, 1, 2, 3
SPEC_FIELDS = ("g", "g_u", "g_v", "h", "c", "e", "r", "r_u", "r_v", "s")
EXPONENT_FIELDS = ("r", "r_u", "r_v", "s")


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _dump(obj) -> str:
    return json.dumps(obj, indent=1) + "\n"


def _enum_opts(args) -> EnumOptions:
    return EnumOptions(allow_loops=args.allow_loops, allow_valency_2=args.allow_valency_2,
                       cap=args.cap_order)


def _spec_from_args(args) -> FamilySpec:
    kw, auto = {}, []
    for name in SPEC_FIELDS:
        v = getattr(args, name)
        if v is None:
            continue
        if v == "auto" and name in EXPONENT_FIELDS:
            auto.append(name)
            continue
        kw[name] = int(v)
    spec = FamilySpec(args.family, **kw)
    if auto:
        found = auto_exponents(spec, auto)
        if found is None:
            raise ArcmapsError("no admissible action exponent: "
                               + "; ".join(map(str, validate_family_spec(spec))))
        spec = found
    return spec


def _load_group(path: str, cap: int) -> GroupTable:
    return GroupTable.from_json(Path(path).read_text(), cap=cap)


def _elements(G: GroupTable, words: list[str]) -> list[int]:
    return [G.word(w) for w in words]


# ---------------------------------------------------------------------------
# group


def cmd_group_build(args) -> int:
    if args.family:
        G = build_family(_spec_from_args(args), cap=args.cap_order).group
    elif args.cyclic:
        G = make_cyclic(args.cyclic)
    elif args.dihedral:
        G = make_dihedral(args.dihedral)
    elif args.perm:
        degree = args.degree or max((int(t) for p in args.perm for t in p.replace("(", " ").replace(")", " ")
                                     .replace(",", " ").split() if t.isdigit()), default=1)
        perms = [parse_cycles(p, degree) for p in args.perm]
        G = permutation_group(perms, cap=args.cap_order)
        G = G.with_names({f"p{i + 1}": G.element(p) for i, p in enumerate(perms)})
    else:
        raise ArcmapsError("give --family, --cyclic, --dihedral or --perm")
    _emit(G.to_json() + "\n", args.output)
    return EXIT_OK


def cmd_group_inspect(args) -> int:
    G = _load_group(args.group, args.cap_order)
    info = {
        "order": G.order,
        "abelian": G.is_abelian(),
        "named": dict(G.named),
        "involutions": len(G.involutions),
        "element_orders": {str(k): v for k, v in sorted(Counter(G.element_orders).items())},
        "sylow_cyclic_or_dihedral": is_sylow_cyclic_or_dihedral(G).ok,
    }
    try:
        info["indecomposable"] = is_indecomposable(G).ok
    except ResourceLimit:
        info["indecomposable"] = None
    try:
        info["aut_order"] = automorphism_group(G, cap=args.cap_order).order
    except ResourceLimit:
        info["aut_order"] = None
    _emit(_dump(info), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# pairs / triples


def cmd_pairs_enumerate(args) -> int:
    G = _load_group(args.group, args.cap_order)
    opts = _enum_opts(args)
    if args.kind == "rotary":
        items = enumerate_rotary_pairs(G, opts)
        relabel = "none"
    else:
        items = enumerate_reversing_triples(G, opts)
        relabel = args.relabel
    doc = {"kind": args.kind, "item_count": len(items)}
    if args.classify:
        aut = automorphism_group(G, cap=args.cap_order)
        cls = classify_orbits(G, items, aut, relabel=relabel, mirror=args.mirror_equiv)
        doc.update(cls.to_dict())
    if args.list:
        doc["items"] = [list(t) for t in items]
    if args.format == "csv":
        cols = ("a", "z") if args.kind == "rotary" else ("x", "y", "z")
        text = ",".join(cols) + "\n" + "".join(",".join(map(str, t)) + "\n" for t in items)
        _emit(text, args.output)
    else:
        _emit(_dump(doc), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# maps


def _build(args):
    G = _load_group(args.group, args.cap_order)
    data = _elements(G, args.elements)
    return G, build_map(G, args.construction, data, _enum_opts(args))


def cmd_map_build(args) -> int:
    G, m = _build(args)
    if args.format == "dot":
        _emit(underlying_graph(m).to_dot(), args.output)
    elif args.format == "csv":
        _emit(census_csv([census_row(Path(args.group).stem, m)]), args.output)
    else:
        _emit(_dump(m.to_dict()), args.output)
    return EXIT_OK


def cmd_map_report(args) -> int:
    G, m = _build(args)
    c = map_census(m)
    graph = underlying_graph(m)
    div = check_divisibility(c)
    grp = check_group_constraints(G, c, m)
    ok = handshake_ok(c) and (div.ok or not div.applicable) and (grp.ok or not grp.applicable)
    if args.format == "csv":
        _emit(census_csv([census_row(Path(args.group).stem, m)]), args.output)
    elif args.format == "dot":
        _emit(graph.to_dot(), args.output)
    else:
        _emit(_dump({
            "construction": m.construction,
            "census": c.to_dict(),
            "graph": {"tag": graph.tag, "vertices": graph.n, "loops": graph.loops},
            "handshake": handshake_ok(c),
            "divisibility": div.to_dict(),
            "group_constraints": grp.to_dict(),
        }), args.output)
    return EXIT_OK if ok else EXIT_THEOREM


# ---------------------------------------------------------------------------
# verification


def _verify_opts(args) -> VerifyOptions:
    return VerifyOptions(enum=_enum_opts(args), relabel=args.relabel, mirror=args.mirror_equiv,
                         aut_cap=args.cap_order)


def _report_exit(report: CensusReport) -> int:
    if not report.all_passed and any(r.complete and not r.passed for r in report.rows):
        return EXIT_THEOREM
    if report.incomplete:
        return EXIT_LIMIT
    return EXIT_OK


def cmd_verify_family(args) -> int:
    spec = _spec_from_args(args)
    diags = validate_family_spec(spec)
    if diags:
        for d in diags:
            print(f"invalid: {d}", file=sys.stderr)
        return EXIT_ERROR
    kinds = [args.kind] if args.kind else ["rotary", "reversing"]
    report = CensusReport(verify_family(spec, kinds, _verify_opts(args)))
    _emit(export_report(report, args.format), args.output)
    return _report_exit(report)


def cmd_verify_sweep(args) -> int:
    grid = json.loads(Path(args.grid).read_text()) if args.grid else load_default_grid()
    report = sweep(grid, opts=_verify_opts(args), jobs=args.jobs)
    _emit(export_report(report, args.format), args.output)
    s = report.summary()
    print(" ".join(f"{k}={v}" for k, v in s.items()), file=sys.stderr)
    return _report_exit(report)


def cmd_export(args) -> int:
    report = CensusReport.from_dict(json.loads(Path(args.report).read_text()))
    _emit(export_report(report, args.format), args.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--allow-loops", action="store_true", help="admit edge involutions inside the vertex stabilizer")
    p.add_argument("--allow-valency-2", action="store_true", help="admit rotary pairs with |a| = 2")
    p.add_argument("--mirror-equiv", action="store_true", help="identify (a, z) with (a^-1, z)")
    p.add_argument("--relabel", choices=RELABEL_MODES, default="xy", help="relabelings identified for triples")
    p.add_argument("--cap-order", type=int, default=1024, metavar="N", help="largest group order handled")
    p.add_argument("-o", "--output", "--out", dest="output", help="write to a file instead of stdout")


def _spec_args(p: argparse.ArgumentParser, required: bool) -> None:
    p.add_argument("--family", choices=FAMILIES, required=required)
    for name in SPEC_FIELDS:
        flags = ["--" + name.replace("_", "-")] + (["--action"] if name == "r" else [])
        p.add_argument(*flags, dest=name, default=None,
                       help="'auto' picks the least admissible value" if name in EXPONENT_FIELDS else None)


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="arcmaps", description=__doc__)
    sub = ap.add_subparsers(dest="area", required=True)

    grp = sub.add_parser("group").add_subparsers(dest="verb", required=True)
    p = grp.add_parser("build", help="build a group table as JSON")
    _common(p)
    _spec_args(p, required=False)
    p.add_argument("--cyclic", type=int, metavar="N")
    p.add_argument("--dihedral", type=int, metavar="N", help="dihedral group of order 2N")
    p.add_argument("--perm", nargs="+", metavar="CYCLES", help='permutation generators, e.g. "(1,2,3)" "(1,4)"')
    p.add_argument("--degree", type=int)
    p.set_defaults(func=cmd_group_build)
    p = grp.add_parser("inspect", help="structural summary of a group file")
    _common(p)
    p.add_argument("group")
    p.set_defaults(func=cmd_group_inspect)

    pairs = sub.add_parser("pairs").add_subparsers(dest="verb", required=True)
    p = pairs.add_parser("enumerate", help="enumerate rotary pairs or reversing triples")
    _common(p)
    p.add_argument("group")
    p.add_argument("--kind", choices=("rotary", "reversing"), default="rotary")
    p.add_argument("--classify", action="store_true", help="also split into Aut-orbits")
    p.add_argument("--list", action="store_true", help="include every item in JSON output")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_pairs_enumerate)

    maps = sub.add_parser("map").add_subparsers(dest="verb", required=True)
    for verb, func, fmt in (("build", cmd_map_build, "json"), ("report", cmd_map_report, "json")):
        p = maps.add_parser(verb)
        _common(p)
        p.add_argument("group")
        p.add_argument("--construction", choices=sorted(CLI_CONSTRUCTIONS), required=True)
        p.add_argument("--elements", nargs="+", required=True,
                       help="generating data as words in named elements or #index")
        p.add_argument("--format", choices=("json", "csv", "dot"), default=fmt)
        p.set_defaults(func=func)

    ver = sub.add_parser("verify").add_subparsers(dest="verb", required=True)
    p = ver.add_parser("family", help="verify one family realization")
    _common(p)
    _spec_args(p, required=True)
    p.add_argument("--kind", choices=("rotary", "reversing"))
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify_family)
    p = ver.add_parser("sweep", help="verify every spec of a grid file")
    _common(p)
    p.add_argument("--grid", help="grid JSON (default: the bundled grid)")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_verify_sweep)

    p = sub.add_parser("export", help="convert a census JSON report")
    p.add_argument("report")
    p.add_argument("--format", choices=("json", "csv"), default="csv")
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_export)
    return ap


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ResourceLimit as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_LIMIT
    except (ArcmapsError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(main())
