"""Sweep family grids: brute-force orbit counts against the closed formulas,
plus the theorem assertions that must hold on every map built along the way."""

from __future__ import annotations

import csv
import io
import itertools
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, fields, replace
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Iterable, Sequence

from .analysis import automorphism_group
from .errors import ArcmapsError, InvalidParameter, ResourceLimit
from .families import (FAMILIES, KINDS, NOT_COVERED, FamilySpec, alternative_count,
                       auto_exponents, build_family, canonical_representatives, formula_label,
                       predicted_class_count, validate_family_spec)
from .generators import (DEFAULT_OPTIONS, EnumOptions, classify_orbits, enumerate_reversing_triples,
                         enumerate_rotary_pairs)
from .maps import (bi_rev_map, bi_rota_map, check_divisibility, check_group_constraints,
                   handshake_ok, map_census, rev_map, rota_map, underlying_graph)

CENSUS_SCHEMA = "arcmaps.census"
CENSUS_VERSION = 1
CSV_FIELDS = ("family", "params", "order", "kind", "items", "aut_order", "aut_orbits", "orbits",
              "relabel", "predicted", "formula", "match", "alt_count", "alt_label", "alt_match",
              "reps_stated", "reps_cover", "indecomposable", "maps", "assertions", "status")


@dataclass(frozen=True)
class VerifyOptions:
    enum: EnumOptions = DEFAULT_OPTIONS
    relabel: str = "xy"  # applies to triples only
    mirror: bool = False
    aut_cap: int = 1024


def _num(v):
    if isinstance(v, Fraction):
        return str(v)
    return v


@dataclass
class CensusRow:
    family: str
    params: dict
    kind: str
    order: int = 0
    items: int = 0
    aut_order: int = 0
    aut_orbits: int = 0
    orbits: int = 0
    relabel: str = "none"
    predicted: object = NOT_COVERED
    formula: str = ""
    match: bool | None = None
    alt_count: int | None = None
    alt_label: str | None = None
    alt_match: bool | None = None
    representatives: list = field(default_factory=list)
    reps_stated: int = 0
    reps_cover: str = ""
    indecomposable: bool | None = None
    lemma_scope: str = "n/a"
    maps: list = field(default_factory=list)
    assertions: list = field(default_factory=list)
    complete: bool = True
    error: str = ""

    @property
    def passed(self) -> bool:
        return all(a["passed"] for a in self.assertions)

    @property
    def status(self) -> str:
        if not self.complete:
            return "incomplete"
        return "pass" if self.passed else "fail"

    def sort_key(self):
        return (FAMILIES.index(self.family), tuple(sorted(self.params.items())), KINDS.index(self.kind))

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self)}
        d["predicted"] = _num(self.predicted)
        d["status"] = self.status
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "CensusRow":
        d = {k: v for k, v in d.items() if k != "status"}
        p = d.get("predicted")
        if isinstance(p, str) and "/" in p:
            d["predicted"] = Fraction(p)
        return cls(**d)

    def csv_row(self) -> list:
        params = ";".join(f"{k}={v}" for k, v in self.params.items())
        fails = [a["name"] for a in self.assertions if not a["passed"]]
        return [self.family, params, self.order, self.kind, self.items, self.aut_order,
                self.aut_orbits, self.orbits, self.relabel, _num(self.predicted), self.formula,
                _tri(self.match), _blank(self.alt_count), _blank(self.alt_label), _tri(self.alt_match),
                self.reps_stated, self.reps_cover, _tri(self.indecomposable), len(self.maps),
                f"{len(self.assertions) - len(fails)}/{len(self.assertions)}", self.status]


def _tri(v) -> str:
    return "" if v is None else ("true" if v else "false")


def _blank(v):
    return "" if v is None else v


@dataclass
class CensusReport:
    rows: list[CensusRow] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)

    def summary(self) -> dict:
        s = {"rows": len(self.rows), "pass": 0, "fail": 0, "incomplete": 0,
             "match": 0, "mismatch": 0, "not_covered": 0, "skipped": len(self.skipped)}
        for r in self.rows:
            s[r.status] += 1
            if r.predicted == NOT_COVERED:
                s["not_covered"] += 1
            elif r.match:
                s["match"] += 1
            elif r.match is False:
                s["mismatch"] += 1
        return s

    @property
    def all_passed(self) -> bool:
        return all(r.status == "pass" for r in self.rows)

    @property
    def incomplete(self) -> bool:
        return any(not r.complete for r in self.rows)

    def to_dict(self) -> dict:
        return {"schema": CENSUS_SCHEMA, "version": CENSUS_VERSION,
                "rows": [r.to_dict() for r in self.rows],
                "skipped": self.skipped, "summary": self.summary()}

    @classmethod
    def from_dict(cls, doc: dict) -> "CensusReport":
        if doc.get("schema") != CENSUS_SCHEMA:
            raise InvalidParameter("not a census document")
        return cls([CensusRow.from_dict(r) for r in doc["rows"]], list(doc.get("skipped", [])))


def export_report(r: CensusReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(r.to_dict(), indent=1, sort_keys=False, ensure_ascii=False) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(CSV_FIELDS)
        for row in r.rows:
            w.writerow(row.csv_row())
        return buf.getvalue()
    raise InvalidParameter(f"unsupported report format {fmt!r}")


# ---------------------------------------------------------------------------
# one family


def _assert(row: CensusRow, name: str, passed: bool, detail: str = "") -> None:
    row.assertions.append({"name": name, "passed": bool(passed), "detail": detail})


def _map_checks(G, item: tuple, kind: str, opts: EnumOptions) -> list[dict]:
    builders = (rota_map, bi_rota_map) if kind == "rotary" else (rev_map, bi_rev_map)
    out = []
    for b in builders:
        m = b(G, *item, opts=opts)
        c = map_census(m)
        div = check_divisibility(c)
        grp = check_group_constraints(G, c, m)
        out.append({
            "item": list(item),
            "construction": m.construction,
            "census": list(c.as_tuple()),
            "flags": c.flags,
            "valency": c.valency,
            "face_lengths": sorted(set(c.face_lengths)),
            "graph": underlying_graph(m).tag,
            "handshake": handshake_ok(c),
            "divisibility": ("pass" if div.ok else "fail") if div.applicable else "n/a",
            "group_constraints": ("pass" if grp.ok else "fail") if grp.applicable else "n/a",
        })
    return out


def verify_family(spec: FamilySpec, kinds: Sequence[str] = KINDS,
                  opts: VerifyOptions = VerifyOptions()) -> list[CensusRow]:
    diags = validate_family_spec(spec)
    if diags:
        raise InvalidParameter("; ".join(map(str, diags)))
    rows = []
    try:
        real = build_family(spec)
        G = real.group
        aut = automorphism_group(G, cap=opts.aut_cap)
        try:
            indec = real.indecomposable().ok
        except ResourceLimit:
            indec = None
    except ResourceLimit as exc:
        return [CensusRow(spec.family, spec.params(), k, complete=False, error=str(exc)) for k in kinds]

    for kind in kinds:
        row = CensusRow(spec.family, spec.params(), kind, order=G.order, aut_order=aut.order,
                        indecomposable=indec)
        try:
            _fill_row(row, real, aut, kind, opts)
        except ResourceLimit as exc:
            row.complete, row.error = False, str(exc)
        rows.append(row)
    return rows


def _fill_row(row: CensusRow, real, aut, kind: str, opts: VerifyOptions) -> None:
    spec, G = real.spec, real.group
    if kind == "rotary":
        items = enumerate_rotary_pairs(G, opts.enum)
        relabel = "none"
    else:
        items = enumerate_reversing_triples(G, opts.enum)
        relabel = opts.relabel
    row.items, row.relabel = len(items), relabel
    plain = classify_orbits(G, items, aut)
    cls = classify_orbits(G, items, aut, relabel=relabel, mirror=opts.mirror)
    row.aut_orbits, row.orbits = plain.count, cls.count
    row.representatives = [list(t) for t in cls.representatives]

    _assert(row, "semiregular: trivial Aut-stabilizers", plain.stabilizers_trivial)
    _assert(row, "orbit count x |Aut| = item count", plain.count * aut.order == len(items),
            f"{plain.count} x {aut.order} vs {len(items)}")

    row.predicted = predicted_class_count(spec, kind)
    row.formula = formula_label(spec, kind)
    if row.predicted != NOT_COVERED:
        row.match = row.predicted == cls.count
    alt = alternative_count(spec, kind)
    if alt is not None:
        row.alt_count, row.alt_label = alt
        row.alt_match = row.alt_count == cls.count

    reps = canonical_representatives(real, kind, opts.enum)
    row.reps_stated = len(reps)
    item_set = set(map(tuple, items))
    _assert(row, "stated representatives are enumerated", all(r.item in item_set for r in reps))
    orbit_of = {t: k for k, orb in enumerate(cls.orbits) for t in orb}
    hit = {orbit_of[r.item] for r in reps if r.item in orbit_of}
    row.reps_cover = f"{len(hit)}/{cls.count}"
    covered = len(hit) == cls.count

    for rep in cls.representatives:
        row.maps.extend(_map_checks(G, rep, kind, opts.enum))
    _assert(row, "handshake and flag count", all(m["handshake"] for m in row.maps))
    _assert(row, "edge-count divisibilities", all(m["divisibility"] != "fail" for m in row.maps))
    _assert(row, "group constraints", all(m["group_constraints"] != "fail" for m in row.maps))

    _lemma_assertions(row, spec, kind, covered)


def _lemma_assertions(row: CensusRow, spec: FamilySpec, kind: str, covered: bool) -> None:
    f = spec.family
    if f not in ("I", "IV"):
        return
    # the structural assertions presuppose an indecomposable group
    if row.indecomposable is not True:
        row.lemma_scope = "skipped: decomposable" if row.indecomposable is False else "skipped: too large"
        return
    row.lemma_scope = "applied"
    graphs = {m["graph"] for m in row.maps}
    if f == "I" and spec.h >= 3:
        if kind == "reversing":
            _assert(row, "type I with |h| >= 3 has no reversing triples", row.items == 0, f"{row.items} items")
        else:
            _assert(row, "stated rotary representatives cover every orbit", covered, row.reps_cover)
    elif f == "I":
        m = spec.g
        _assert(row, "stated representatives cover every orbit", covered, row.reps_cover)
        allowed = {f"K_2^({m})", f"C_{m}^(1)"} if kind == "rotary" else {"multiloop", f"C_{m // 2}^(2)"}
        if m // 2 == 2 and kind == "reversing":
            allowed.add("K_2^(4)")  # C_2^(2) has two vertices
        _assert(row, "dihedral underlying graphs", graphs <= allowed, ", ".join(sorted(graphs)))
    elif f == "IV":
        if spec.g != 1 or kind == "reversing":
            _assert(row, "type IV items exist only as rotary pairs with g = 1", row.items == 0,
                    f"{row.items} items")
        else:
            _assert(row, "stated rotary representatives cover every orbit", covered, row.reps_cover)
            want = f"K_4^({spec.h // 3})"
            _assert(row, "type IV underlying graph", graphs == {want}, ", ".join(sorted(graphs)))


# ---------------------------------------------------------------------------
# grids


def load_default_grid() -> dict:
    return json.loads(resources.files("arcmaps").joinpath("data/default_grid.json").read_text())


def expand_grid(doc: dict) -> tuple[list[FamilySpec], list[dict]]:
    """Admissible specs in canonical order, plus skipped entries with diagnostics."""
    if not doc:
        return [], []
    if doc.get("version") != 1:
        raise InvalidParameter("grid version must be 1")
    names = [f.name for f in fields(FamilySpec) if f.name != "family"]
    max_order = doc.get("max_order")
    specs, skipped, seen = [], [], set()
    for entry in doc.get("families", []):
        fam = entry.get("family")
        unknown = set(entry) - set(names) - {"family"}
        if unknown:
            raise InvalidParameter(f"unknown grid keys {sorted(unknown)}")
        keys = [k for k in names if k in entry]
        values = [v if isinstance(v, list) else [v] for v in (entry[k] for k in keys)]
        for combo in itertools.product(*values):
            kw = dict(zip(keys, combo))
            auto = [k for k, v in kw.items() if v == "auto"]
            base = FamilySpec(fam, **{k: (1 if v == "auto" else v) for k, v in kw.items()})
            if fam not in FAMILIES:
                skipped.append({"family": fam, "params": kw, "diagnostics": [f"unknown family {fam!r}"]})
                continue
            spec = base
            if auto:
                spec = auto_exponents(base, auto)
                if spec is None:
                    skipped.append({"family": fam, "params": kw,
                                    "diagnostics": ["no admissible action exponent"]
                                    + [str(d) for d in validate_family_spec(base)]})
                    continue
            diags = validate_family_spec(spec)
            if diags:
                skipped.append({"family": fam, "params": spec.params(), "diagnostics": [str(d) for d in diags]})
                continue
            if max_order is not None and spec.expected_order() > max_order:
                skipped.append({"family": fam, "params": spec.params(),
                                "diagnostics": [f"order {spec.expected_order()} exceeds max_order {max_order}"]})
                continue
            if spec not in seen:
                seen.add(spec)
                specs.append(spec)
    specs.sort(key=lambda s: (FAMILIES.index(s.family), tuple(sorted(s.params().items()))))
    return specs, skipped


def _verify_task(args):
    spec, kinds, opts = args
    return verify_family(spec, kinds, opts)


def sweep(grid: dict | str | Path, kinds: Sequence[str] = KINDS, opts: VerifyOptions = VerifyOptions(),
          jobs: int = 1) -> CensusReport:
    if isinstance(grid, (str, Path)):
        with open(grid) as fh:
            grid = json.load(fh)
    specs, skipped = expand_grid(grid)
    tasks = [(s, tuple(kinds), opts) for s in specs]
    if jobs > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_verify_task, tasks))
    else:
        results = [_verify_task(t) for t in tasks]
    rows = sorted((r for rs in results for r in rs), key=CensusRow.sort_key)
    return CensusReport(rows, skipped)
