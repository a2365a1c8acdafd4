"""Brute-force rotary pairs and reversing triples, and their Aut-orbits."""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import NamedTuple, Sequence

import numpy as np

from .analysis import AutGroup
from .errors import InvalidInput, InvalidParameter, ResourceLimit
from .groups import GroupTable, closure, generates

ENUM_ORDER_CAP = 1024
RELABEL_MODES = ("none", "xy", "full")


class RotaryPair(NamedTuple):
    a: int
    z: int


class ReversingTriple(NamedTuple):
    x: int
    y: int
    z: int


@dataclass(frozen=True)
class EnumOptions:
    allow_loops: bool = False
    allow_valency_2: bool = False
    allow_degenerate: bool = False
    cap: int = ENUM_ORDER_CAP


DEFAULT_OPTIONS = EnumOptions()


def _check_cap(G: GroupTable, opts: EnumOptions) -> None:
    if G.order > opts.cap:
        raise ResourceLimit(f"group order {G.order} exceeds the enumeration cap {opts.cap}")


def is_rotary_pair(G: GroupTable, a: int, z: int, opts: EnumOptions = DEFAULT_OPTIONS) -> bool:
    orders = G.element_orders
    if orders[z] != 2 or orders[a] < 2 or (orders[a] == 2 and not opts.allow_valency_2):
        return False
    cyc = closure(G, [a])
    if z in cyc and not opts.allow_loops:
        return False
    return generates(G, [a, z])


def is_reversing_triple(G: GroupTable, x: int, y: int, z: int,
                        opts: EnumOptions = DEFAULT_OPTIONS) -> bool:
    orders = G.element_orders
    if any(orders[t] != 2 for t in (x, y, z)):
        return False
    if x == y and not opts.allow_degenerate:
        return False
    if z in closure(G, [x, y]) and not opts.allow_loops:
        return False
    return generates(G, [x, y, z])


def enumerate_rotary_pairs(G: GroupTable, opts: EnumOptions = DEFAULT_OPTIONS) -> list[RotaryPair]:
    _check_cap(G, opts)
    orders = G.element_orders
    invols = G.involutions
    min_order = 2 if opts.allow_valency_2 else 3
    # <a, z> depends on a only through <a>
    gen_cache: dict[tuple[frozenset[int], int], bool] = {}
    out = []
    for a in range(G.order):
        if orders[a] < min_order:
            continue
        cyc = frozenset(closure(G, [a]))
        for z in invols:
            if z in cyc and not opts.allow_loops:
                continue
            key = (cyc, z)
            ok = gen_cache.get(key)
            if ok is None:
                ok = gen_cache[key] = generates(G, [a, z])
            if ok:
                out.append(RotaryPair(a, z))
    return out


def enumerate_reversing_triples(G: GroupTable,
                                opts: EnumOptions = DEFAULT_OPTIONS) -> list[ReversingTriple]:
    _check_cap(G, opts)
    invols = G.involutions
    sub_cache: dict[tuple[int, int], frozenset[int]] = {}
    gen_cache: dict[tuple[frozenset[int], int], bool] = {}
    out = []
    for x in invols:
        for y in invols:
            if x == y and not opts.allow_degenerate:
                continue
            key = (min(x, y), max(x, y))
            S = sub_cache.get(key)
            if S is None:
                S = sub_cache[key] = frozenset(closure(G, [x, y]))
            for z in invols:
                if z in S:
                    if not opts.allow_loops:
                        continue
                    if len(S) == G.order:
                        out.append(ReversingTriple(x, y, z))
                    continue
                gk = (S, z)
                ok = gen_cache.get(gk)
                if ok is None:
                    ok = gen_cache[gk] = len(closure(G, list(S) + [z])) == G.order
                if ok:
                    out.append(ReversingTriple(x, y, z))
    return out


def is_regular_triple(G: GroupTable, x: int, y: int, z: int) -> bool:
    """True when <x, z> is a Klein four-group."""
    return x != z and G.commutes(x, z)


# ---------------------------------------------------------------------------
# orbits


@dataclass
class OrbitClassification:
    items: list[tuple]
    orbits: list[list[tuple]]
    relabel: str = "none"
    mirror: bool = False
    aut_order: int = 0
    stabilizers_trivial: bool = True
    representatives: list[tuple] = field(init=False)

    def __post_init__(self):
        self.representatives = [orb[0] for orb in self.orbits]

    @property
    def count(self) -> int:
        return len(self.orbits)

    def orbit_sizes(self) -> list[int]:
        return [len(o) for o in self.orbits]

    def to_dict(self) -> dict:
        return {
            "relabel": self.relabel,
            "mirror": self.mirror,
            "aut_order": self.aut_order,
            "item_count": len(self.items),
            "orbit_count": self.count,
            "orbit_sizes": self.orbit_sizes(),
            "stabilizers_trivial": self.stabilizers_trivial,
            "representatives": [list(r) for r in self.representatives],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))


def _symmetries(width: int, relabel: str, mirror: bool):
    """Extra identifications on tuples, beyond the Aut action."""
    if relabel not in RELABEL_MODES:
        raise InvalidParameter(f"relabel must be one of {RELABEL_MODES}")
    perms: list[tuple[int, ...]] = [tuple(range(width))]
    if width == 3 and relabel == "xy":
        perms.append((1, 0, 2))
    elif width == 3 and relabel == "full":
        perms = list(itertools.permutations(range(3)))
    return perms, (mirror and width == 2)


def classify_orbits(G: GroupTable, items: Sequence[tuple], aut: AutGroup, *,
                    relabel: str = "none", mirror: bool = False) -> OrbitClassification:
    items = sorted(tuple(int(v) for v in it) for it in items)
    if not items:
        return OrbitClassification([], [], relabel, mirror, aut.order)
    width = len(items[0])
    for it in items:
        if len(it) != width or not generates(G, it):
            raise InvalidInput(f"item {it} does not generate the group")
    perms, use_mirror = _symmetries(width, relabel, mirror)
    index = {it: k for k, it in enumerate(items)}
    P = aut.perms
    inv = G.inv
    seen = [False] * len(items)
    orbits = []
    trivial = True
    for k, it in enumerate(items):
        if seen[k]:
            continue
        images = P[:, list(it)]  # |Aut| x width
        base = {tuple(row) for row in images.tolist()}
        if len(base) != aut.order:
            trivial = False
        variants = set(base)
        if use_mirror:
            variants |= {(int(inv[a]), z) for a, z in base}
        for p in perms[1:]:
            variants |= {t for t in (tuple(v[i] for i in p) for v in list(variants)) if t in index}
        orbit = sorted(t for t in variants if t in index)
        for t in orbit:
            seen[index[t]] = True
        orbits.append(orbit)
    orbits.sort(key=lambda o: o[0])
    return OrbitClassification(items, orbits, relabel, mirror, aut.order, trivial)
