"""Coset maps built from rotary pairs and reversing triples.

A map is stored as three families of right cosets of G: vertices (cosets of
the vertex stabilizer), edges (cosets of <z>) and faces (cosets of one or two
face subgroups).  Incidence is non-empty intersection.  Each group element is
an arc, so every edge cell has two elements.

Face length counts edge sides: an edge meets a face in |e & f| elements, and
when the faces come in two families (RevMap) each family sees every edge
twice, so the side count is |e & f| divided by the number of families.  This
makes both handshake identities exact for all four constructions.
"""

from __future__ import annotations

import csv
import io
import json
import math
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from .analysis import is_sylow_cyclic_or_dihedral
from .errors import InvalidInput, InvalidParameter
from .generators import DEFAULT_OPTIONS, EnumOptions, is_reversing_triple, is_rotary_pair
from .groups import GroupTable, Subgroup, coset_partition, subgroup_closure

CONSTRUCTIONS = ("RotaMap", "BiRotaMap", "RevMap", "BiRevMap")
CLI_CONSTRUCTIONS = {"rotamap": "RotaMap", "birotamap": "BiRotaMap",
                     "revmap": "RevMap", "birevmap": "BiRevMap"}
MAP_SCHEMA = "arcmaps.map"
CSV_HEADER = ("group_id", "construction", "nV", "nE", "nF", "chi", "gcd_chi_E", "graph_class")


@dataclass(eq=False)
class CosetMap:
    group: GroupTable
    construction: str
    data: tuple[int, ...]
    vertex_subgroup: Subgroup
    edge_subgroup: Subgroup
    face_subgroups: tuple[Subgroup, ...]
    vertices: list[tuple[int, ...]] = field(init=False)
    edges: list[tuple[int, ...]] = field(init=False)
    faces: list[tuple[int, tuple[int, ...]]] = field(init=False)

    def __post_init__(self):
        G = self.group
        self.vertices = coset_partition(G, self.vertex_subgroup)
        self.edges = coset_partition(G, self.edge_subgroup)
        self.faces = [(fam, cell) for fam, K in enumerate(self.face_subgroups)
                      for cell in coset_partition(G, K)]

    @cached_property
    def vertex_of(self) -> np.ndarray:
        return _cell_index(self.group.order, self.vertices)

    @cached_property
    def edge_of(self) -> np.ndarray:
        return _cell_index(self.group.order, self.edges)

    @cached_property
    def face_of(self) -> list[np.ndarray]:
        """Per face family, the face index of each element."""
        out = []
        for fam in range(len(self.face_subgroups)):
            idx = np.full(self.group.order, -1, dtype=np.int64)
            for k, (f, cell) in enumerate(self.faces):
                if f == fam:
                    idx[list(cell)] = k
            out.append(idx)
        return out

    @property
    def degenerate_faces(self) -> bool:
        """Face subgroups that are tiny, or swallow <z> where they need not."""
        z = self.data[-1]
        if any(K.order <= 2 for K in self.face_subgroups):
            return True
        return self.construction in ("RotaMap", "BiRevMap") and z in self.face_subgroups[0]

    def to_dict(self) -> dict:
        return {
            "schema": MAP_SCHEMA,
            "version": 1,
            "construction": self.construction,
            "data": list(self.data),
            "vertex_subgroup": list(self.vertex_subgroup.members),
            "edge_subgroup": list(self.edge_subgroup.members),
            "face_subgroups": [list(K.members) for K in self.face_subgroups],
            "vertices": [list(c) for c in self.vertices],
            "edges": [list(c) for c in self.edges],
            "faces": [{"family": f, "cell": list(c)} for f, c in self.faces],
            "census": map_census(self).to_dict(),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _cell_index(n: int, cells: Sequence[Sequence[int]]) -> np.ndarray:
    idx = np.empty(n, dtype=np.int64)
    for k, cell in enumerate(cells):
        idx[list(cell)] = k
    return idx


def _sub(G: GroupTable, gens: Sequence[int]) -> Subgroup:
    return subgroup_closure(G, list(gens))


def rota_map(G: GroupTable, a: int, z: int, opts: EnumOptions = DEFAULT_OPTIONS) -> CosetMap:
    if not is_rotary_pair(G, a, z, opts):
        raise InvalidInput(f"({a}, {z}) is not a rotary pair")
    return CosetMap(G, "RotaMap", (a, z), _sub(G, [a]), _sub(G, [z]), (_sub(G, [G.prod(a, z)]),))


def bi_rota_map(G: GroupTable, a: int, z: int, opts: EnumOptions = DEFAULT_OPTIONS) -> CosetMap:
    if not is_rotary_pair(G, a, z, opts):
        raise InvalidInput(f"({a}, {z}) is not a rotary pair")
    return CosetMap(G, "BiRotaMap", (a, z), _sub(G, [a]), _sub(G, [z]), (_sub(G, [z, G.conj(z, a)]),))


def rev_map(G: GroupTable, x: int, y: int, z: int, opts: EnumOptions = DEFAULT_OPTIONS) -> CosetMap:
    if not is_reversing_triple(G, x, y, z, opts):
        raise InvalidInput(f"({x}, {y}, {z}) is not a reversing triple")
    return CosetMap(G, "RevMap", (x, y, z), _sub(G, [x, y]), _sub(G, [z]),
                    (_sub(G, [x, z]), _sub(G, [y, z])))


def bi_rev_map(G: GroupTable, x: int, y: int, z: int, opts: EnumOptions = DEFAULT_OPTIONS) -> CosetMap:
    if not is_reversing_triple(G, x, y, z, opts):
        raise InvalidInput(f"({x}, {y}, {z}) is not a reversing triple")
    return CosetMap(G, "BiRevMap", (x, y, z), _sub(G, [x, y]), _sub(G, [z]),
                    (_sub(G, [x, G.conj(y, z)]),))


def build_map(G: GroupTable, construction: str, data: Sequence[int],
              opts: EnumOptions = DEFAULT_OPTIONS) -> CosetMap:
    construction = CLI_CONSTRUCTIONS.get(construction.lower(), construction)
    fn = {"RotaMap": rota_map, "BiRotaMap": bi_rota_map, "RevMap": rev_map, "BiRevMap": bi_rev_map}
    if construction not in fn:
        raise InvalidParameter(f"unknown construction {construction!r}")
    width = 2 if construction in ("RotaMap", "BiRotaMap") else 3
    if len(data) != width:
        raise InvalidInput(f"{construction} needs {width} elements, got {len(data)}")
    return fn[construction](G, *data, opts=opts)


# ---------------------------------------------------------------------------
# census


@dataclass(frozen=True)
class MapCensus:
    nV: int
    nE: int
    nF: int
    valencies: tuple[int, ...]
    face_lengths: tuple[int, ...]
    flags: int

    @property
    def chi(self) -> int:
        return self.nV - self.nE + self.nF

    @property
    def gcd_chi_E(self) -> int:
        return math.gcd(self.chi, self.nE)

    @property
    def valency(self) -> int | None:
        return self.valencies[0] if len(set(self.valencies)) == 1 else None

    @property
    def face_length(self) -> int | None:
        return self.face_lengths[0] if len(set(self.face_lengths)) == 1 else None

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.nV, self.nE, self.nF, self.chi)

    def to_dict(self) -> dict:
        return {
            "nV": self.nV, "nE": self.nE, "nF": self.nF, "chi": self.chi,
            "valency": self.valency,
            "face_lengths": {str(k): v for k, v in sorted(Counter(self.face_lengths).items())},
            "flags": self.flags, "gcd_chi_E": self.gcd_chi_E,
        }


def map_census(m: CosetMap) -> MapCensus:
    nfam = len(m.face_subgroups)
    vertex_of, edge_of = m.vertex_of, m.edge_of
    # |e & v| and |e & f| via element counting
    valency = np.bincount(vertex_of, minlength=len(m.vertices))
    face_count = np.zeros(len(m.faces), dtype=np.int64)
    for idx in m.face_of:
        np.add.at(face_count, idx, 1)
    if np.any(face_count % nfam):
        raise AssertionError("face cell sizes are not divisible by the family count")
    lengths = face_count // nfam
    # per edge: endpoint sides times face sides
    ends = np.bincount(edge_of, minlength=len(m.edges))
    sides = np.zeros(len(m.edges), dtype=np.int64)
    for _ in m.face_of:
        np.add.at(sides, edge_of, 1)
    sides //= nfam
    flags = int(np.sum(ends * sides))
    return MapCensus(len(m.vertices), len(m.edges), len(m.faces),
                     tuple(int(v) for v in valency), tuple(sorted(int(k) for k in lengths)), flags)


# ---------------------------------------------------------------------------
# underlying graph


@dataclass(frozen=True)
class UnderlyingGraph:
    n: int
    multiplicity: dict[tuple[int, int], int]
    loops: int
    tag: str
    params: dict

    @property
    def edge_total(self) -> int:
        return sum(self.multiplicity.values()) + self.loops

    def to_dot(self, name: str = "map") -> str:
        lines = [f"graph {name} {{"]
        for v in range(self.n):
            lines.append(f"  v{v};")
        for (i, j), mult in sorted(self.multiplicity.items()):
            lines.append(f'  v{i} -- v{j} [label="{mult}", multiplicity={mult}];')
        lines.append(f'  label="{self.tag}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def _is_multicycle(n: int, mult: dict) -> int | None:
    """lambda if the graph is C_n^(lambda), else None."""
    if len(mult) != n or len(set(mult.values())) != 1:
        return None
    nbrs: dict[int, set] = {v: set() for v in range(n)}
    for i, j in mult:
        nbrs[i].add(j)
        nbrs[j].add(i)
    if any(len(s) != 2 for s in nbrs.values()):
        return None
    seen, stack = {0}, [0]
    while stack:
        for w in nbrs[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return next(iter(mult.values())) if len(seen) == n else None


def _is_complete(n: int, mult: dict) -> int | None:
    if len(mult) != n * (n - 1) // 2 or len(set(mult.values())) != 1:
        return None
    return next(iter(mult.values()))


def underlying_graph(m: CosetMap) -> UnderlyingGraph:
    vertex_of = m.vertex_of
    mult: Counter = Counter()
    loops = 0
    for cell in m.edges:
        a, b = (int(vertex_of[t]) for t in cell)
        if a == b:
            loops += 1
        else:
            mult[(min(a, b), max(a, b))] += 1
    n = len(m.vertices)
    mult = dict(mult)
    if n == 1:
        tag, params = "multiloop", {"loops": loops}
    elif loops:
        tag, params = "other", {"loops": loops}
    elif n == 2:
        tag, params = f"K_2^({mult.get((0, 1), 0)})", {"family": "K2", "m": mult.get((0, 1), 0)}
    elif (lam := _is_multicycle(n, mult)) is not None:
        tag, params = f"C_{n}^({lam})", {"family": "C", "n": n, "lambda": lam}
    elif (lam := _is_complete(n, mult)) is not None:
        tag, params = f"K_{n}^({lam})", {"family": "K", "n": n, "lambda": lam}
    else:
        tag, params = "other", {}
    return UnderlyingGraph(n, mult, loops, tag, params)


# ---------------------------------------------------------------------------
# theorem checks


class Check(NamedTuple):
    name: str
    passed: bool
    detail: str = ""


@dataclass
class CheckReport:
    applicable: bool
    checks: list[Check] = field(default_factory=list)
    reason: str = ""

    @property
    def ok(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_dict(self) -> dict:
        return {
            "applicable": self.applicable,
            "reason": self.reason,
            "checks": [{"name": c.name, "passed": c.passed, "detail": c.detail} for c in self.checks],
        }


def check_divisibility(c: MapCensus) -> CheckReport:
    if c.gcd_chi_E != 1:
        return CheckReport(False, reason=f"gcd(chi, |E|) = {c.gcd_chi_E}")
    l, k = c.valency, c.face_length
    if l is None:
        return CheckReport(False, reason=f"valency not constant: {sorted(set(c.valencies))}")
    if k is None:
        return CheckReport(False, reason=f"face length not constant: {sorted(set(c.face_lengths))}")
    return CheckReport(True, [
        Check("|E| divides k*l", (k * l) % c.nE == 0, f"|E|={c.nE}, k={k}, l={l}"),
        Check("|V| divides 2k", (2 * k) % c.nV == 0, f"|V|={c.nV}, k={k}"),
        Check("|F| divides 2l", (2 * l) % c.nF == 0, f"|F|={c.nF}, l={l}"),
    ])


def check_group_constraints(G: GroupTable, c: MapCensus, m: CosetMap) -> CheckReport:
    if c.gcd_chi_E != 1:
        return CheckReport(False, reason=f"gcd(chi, |E|) = {c.gcd_chi_E}")
    d = math.gcd(c.chi, G.order)
    sylow = is_sylow_cyclic_or_dihedral(G)
    stab_orders = [m.vertex_subgroup.order, m.edge_subgroup.order] + [K.order for K in m.face_subgroups]
    lcm = math.lcm(*stab_orders)
    return CheckReport(True, [
        Check("gcd(chi, |G|) divides 4, and is 1 unless |E| is odd",
              4 % d == 0 and (d == 1 or c.nE % 2 == 1), f"gcd={d}, |E|={c.nE}"),
        Check("Sylow subgroups cyclic or dihedral", sylow.ok,
              "" if sylow.ok else f"prime {sylow.witness['prime']}"),
        Check("|G| = lcm of stabilizer orders", lcm == G.order, f"lcm{tuple(stab_orders)}={lcm}"),
    ])


def handshake_ok(c: MapCensus) -> bool:
    return sum(c.valencies) == 2 * c.nE == sum(c.face_lengths) and c.flags == 4 * c.nE


def census_csv(rows: Sequence[tuple]) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow(r)
    return buf.getvalue()


def census_row(group_id: str, m: CosetMap) -> tuple:
    c = map_census(m)
    return (group_id, m.construction, c.nV, c.nE, c.nF, c.chi, c.gcd_chi_E, underlying_graph(m).tag)
