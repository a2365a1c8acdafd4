"""Structural queries on table groups: Sylow subgroups, centralizers,
Frattini subgroups of cyclic groups, automorphism groups by exhaustive search,
and the number theory the counting formulas need."""

from __future__ import annotations

import json
import math
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

import numpy as np
from sympy import factorint, isprime, n_order, primefactors
from sympy import totient as _totient

from .errors import InvalidParameter, ResourceLimit
from .groups import GroupTable, Subgroup, closure, subgroup_closure

AUT_ORDER_CAP = 1024
DECOMPOSE_ORDER_CAP = 512

AUT_SCHEMA = "arcmaps.aut"


class Verdict(NamedTuple):
    ok: bool
    witness: object = None


# ---------------------------------------------------------------------------
# number theory


def totient(n: int) -> int:
    if n < 1:
        raise InvalidParameter("totient needs a positive integer")
    return int(_totient(n))


def prime_divisors(n: int) -> list[int]:
    """pi(n): the sorted prime divisors of n."""
    if n < 1:
        raise InvalidParameter("prime_divisors needs a positive integer")
    return [int(p) for p in primefactors(n)]


def p_part(n: int, p: int) -> int:
    """Largest power of the prime p dividing n."""
    if not isprime(p):
        raise InvalidParameter(f"{p} is not prime")
    if n < 1:
        raise InvalidParameter("p_part needs a positive integer")
    return p ** int(factorint(n).get(p, 0))


def radical(n: int) -> int:
    return math.prod(prime_divisors(n)) if n > 1 else 1


def mult_order(r: int, n: int) -> int:
    """Multiplicative order of r modulo n (1 when n == 1)."""
    if n == 1:
        return 1
    if math.gcd(r, n) != 1:
        raise InvalidParameter(f"{r} is not a unit modulo {n}")
    return int(n_order(r % n, n))


def tau_order(n: int, d: int) -> int:
    """Order of the group of automorphisms of Z_n that act trivially on the
    quotient by its subgroup of order d.

    These are the units u with u = 1 mod n/d, i.e. the kernel of the
    (surjective) reduction (Z/n)^x -> (Z/(n/d))^x.
    """
    if n < 1 or d < 1 or n % d:
        raise InvalidParameter(f"{d} does not divide {n}")
    return totient(n) // totient(n // d)


# ---------------------------------------------------------------------------
# subgroups


def centralizer(G: GroupTable, S: Iterable[int]) -> Subgroup:
    S = list(S)
    if not S:
        raise InvalidParameter("centralizer needs a non-empty set")
    cols = np.asarray(S)
    mask = np.all(G.mul[:, cols] == G.mul[cols, :].T, axis=1)
    return Subgroup(members=tuple(int(x) for x in np.flatnonzero(mask)))


def is_p_power(n: int, p: int) -> bool:
    while n % p == 0:
        n //= p
    return n == 1


def sylow(G: GroupTable, p: int) -> Subgroup:
    """One Sylow p-subgroup, grown greedily from p-elements in index order."""
    target = p_part(G.order, p)
    orders = G.element_orders
    p_elems = [x for x in range(G.order) if orders[x] > 1 and is_p_power(orders[x], p)]
    members = {G.identity}
    gens: list[int] = []
    changed = True
    while len(members) < target and changed:
        changed = False
        for x in p_elems:
            if x in members:
                continue
            grown = closure(G, gens + [x])
            if is_p_power(len(grown), p):
                members, gens = grown, gens + [x]
                changed = True
                if len(members) == target:
                    break
    if len(members) != target:
        raise AssertionError("maximal p-subgroup is not Sylow; table is inconsistent")
    return Subgroup(members=tuple(sorted(members)), gens=tuple(gens))


def is_cyclic(G: GroupTable, S: Subgroup) -> bool:
    orders = G.element_orders
    return any(orders[x] == S.order for x in S.members)


def frattini_cyclic(G: GroupTable, C: Subgroup) -> Subgroup:
    """Frattini subgroup of a cyclic subgroup: its subgroup of index rad(|C|)."""
    orders = G.element_orders
    gen = next((x for x in C.members if orders[x] == C.order), None)
    if gen is None:
        raise InvalidParameter("frattini_cyclic needs a cyclic subgroup")
    return subgroup_closure(G, [G.power(gen, radical(C.order))])


def is_dihedral_or_cyclic_2group(G: GroupTable, P: Subgroup) -> bool:
    """Cyclic, or dihedral (Klein counted as dihedral of order 4)."""
    if is_cyclic(G, P):
        return True
    orders = G.element_orders
    half = P.order // 2
    for r in P.members:
        if orders[r] != half:
            continue
        rot = closure(G, [r])
        if all(orders[x] == 2 for x in P.members if x not in rot):
            return True
    return False


def is_sylow_cyclic_or_dihedral(G: GroupTable) -> Verdict:
    for p in prime_divisors(G.order):
        P = sylow(G, p)
        if not is_dihedral_or_cyclic_2group(G, P):
            return Verdict(False, {"prime": p, "subgroup": list(P.members)})
    return Verdict(True)


def conjugacy_classes(G: GroupTable) -> list[tuple[int, ...]]:
    n = G.order
    seen = [False] * n
    inv = G.inv
    classes = []
    for x in range(n):
        if seen[x]:
            continue
        cls = sorted(set(G.mul[G.mul[inv, x], np.arange(n)].tolist()))
        for y in cls:
            seen[y] = True
        classes.append(tuple(cls))
    return classes


def normal_subgroups(G: GroupTable) -> list[frozenset[int]]:
    """All normal subgroups, as joins of normal closures of classes."""
    bases = {frozenset(closure(G, cls)) for cls in conjugacy_classes(G)}
    found = set(bases) | {frozenset([G.identity])}
    frontier = list(found)
    while frontier:
        nxt = []
        for A in frontier:
            for B in bases:
                if B <= A:
                    continue
                J = frozenset(closure(G, A | B))
                if J not in found:
                    found.add(J)
                    nxt.append(J)
        frontier = nxt
    return sorted(found, key=lambda s: (len(s), sorted(s)))


def is_indecomposable(G: GroupTable, cap: int = DECOMPOSE_ORDER_CAP) -> Verdict:
    """False with witness (N, M) when G = N x M for proper normal N, M."""
    if G.order > cap:
        raise ResourceLimit(f"group order {G.order} exceeds the decomposition cap {cap}")
    n = G.order
    proper = [N for N in normal_subgroups(G) if 1 < len(N) < n]
    for N in sorted(proper, key=lambda s: (-len(s), sorted(s))):
        for M in proper:
            if len(N) * len(M) == n and len(N & M) == 1:
                return Verdict(False, (Subgroup(tuple(sorted(N))), Subgroup(tuple(sorted(M)))))
    return Verdict(True)


# ---------------------------------------------------------------------------
# automorphisms


@dataclass(frozen=True, eq=False)
class AutGroup:
    """All automorphisms of one group, as rows of element-index images."""

    perms: np.ndarray

    @property
    def order(self) -> int:
        return int(self.perms.shape[0])

    def __len__(self) -> int:
        return self.order

    @cached_property
    def rows(self) -> list[list[int]]:
        return self.perms.tolist()

    def to_json(self) -> str:
        return json.dumps({"schema": AUT_SCHEMA, "version": 1, "perms": self.rows},
                          separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> "AutGroup":
        doc = json.loads(text)
        if doc.get("schema") != AUT_SCHEMA:
            raise InvalidParameter("not an automorphism-group document")
        return cls(perms=np.asarray(doc["perms"], dtype=np.int64))


def small_generating_set(G: GroupTable) -> list[int]:
    """A short generating set, preferring elements of large order."""
    orders = G.element_orders
    ranked = sorted(range(G.order), key=lambda x: (-orders[x], x))
    gens: list[int] = []
    current = {G.identity}
    while len(current) < G.order:
        best, best_size = None, -1
        tried = 0
        for x in ranked:
            if x in current:
                continue
            size = len(closure(G, gens + [x]))
            if size > best_size:
                best, best_size = x, size
            tried += 1
            if tried >= 48 or best_size == G.order:
                break
        gens.append(best)
        current = closure(G, gens)
    return gens


def _class_sizes(G: GroupTable) -> list[int]:
    n = G.order
    mul = G.mul
    return [n // int(np.count_nonzero(mul[x] == mul[:, x])) for x in range(n)]


def _extend_hom(G: GroupTable, gens: Sequence[int], H: GroupTable, images: Sequence[int]):
    """Extend gens -> images to a map G -> H, or None if it is not a
    well-defined injective homomorphism."""
    gm, hm = G.rows, H.rows
    img = [-1] * G.order
    img[G.identity] = H.identity
    queue = deque([G.identity])
    pairs = list(zip(gens, images))
    while queue:
        x = queue.popleft()
        ix = img[x]
        grow, hrow = gm[x], hm[ix]
        for s, t in pairs:
            y = grow[s]
            iy = hrow[t]
            cur = img[y]
            if cur < 0:
                img[y] = iy
                queue.append(y)
            elif cur != iy:
                return None
    if len(set(img)) != G.order:
        return None
    return img


def _hom_search(G: GroupTable, H: GroupTable, *, first_only: bool):
    if G.order != H.order:
        return []
    gens = small_generating_set(G)
    go, ho = G.element_orders, H.element_orders
    gc, hc = _class_sizes(G), _class_sizes(H)
    cands = [[y for y in range(H.order) if ho[y] == go[s] and hc[y] == gc[s]] for s in gens]
    # orders of pairwise products are invariants too; prune partial tuples with them
    pair_orders = {(i, j): go[G.prod(gens[i], gens[j])] for i in range(len(gens)) for j in range(i)}
    found = []

    def rec(prefix: list[int]):
        k = len(prefix)
        if k == len(gens):
            img = _extend_hom(G, gens, H, prefix)
            if img is not None:
                found.append(img)
            return
        for y in cands[k]:
            if any(ho[H.prod(prefix[j], y)] != pair_orders[(k, j)] for j in range(k)):
                continue
            rec(prefix + [y])
            if first_only and found:
                return

    rec([])
    return found


def automorphism_group(G: GroupTable, cap: int = AUT_ORDER_CAP) -> AutGroup:
    if G.order > cap:
        raise ResourceLimit(f"group order {G.order} exceeds the automorphism cap {cap}")
    perms = _hom_search(G, G, first_only=False)
    arr = np.array(sorted(perms), dtype=np.int64).reshape(len(perms), G.order)
    return AutGroup(perms=arr)


def find_isomorphism(G: GroupTable, H: GroupTable, cap: int = AUT_ORDER_CAP) -> list[int] | None:
    """An isomorphism G -> H as an image list, or None."""
    if G.order > cap:
        raise ResourceLimit(f"group order {G.order} exceeds the automorphism cap {cap}")
    found = _hom_search(G, H, first_only=True)
    return found[0] if found else None
