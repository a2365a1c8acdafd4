"""Dense multiplication-table groups.

Elements are integer indices into an immutable Cayley table.  Products are
read left to right (``mul[x, y]`` is ``x`` then ``y``), and conjugation is the
right action ``x ** y == y^-1 x y``.  Constructed groups carry exponent-tuple
labels; element indices follow the lexicographic order of those labels, so
every construction is bit-reproducible.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidAction, InvalidParameter, InvalidSubgroup, ResourceLimit

DEFAULT_ORDER_CAP = 5000
FULL_ASSOC_LIMIT = 512
ASSOC_SAMPLES = 100_000

GROUP_SCHEMA = "arcmaps.group"
GROUP_SCHEMA_VERSION = 1

Label = tuple


@dataclass(frozen=True, eq=False)
class GroupTable:
    """A finite group given by its full multiplication table.

    Build instances with :meth:`from_table` (or the ``make_*`` helpers), which
    validate the group axioms.  The table is read-only after construction.
    """

    mul: np.ndarray
    inv: np.ndarray
    identity: int
    labels: tuple[Label, ...] | None = None
    named: Mapping[str, int] = field(default_factory=dict)

    @classmethod
    def from_table(
        cls,
        mul,
        labels: Sequence[Label] | None = None,
        named: Mapping[str, int] | None = None,
        *,
        full_check: bool = False,
        cap: int = DEFAULT_ORDER_CAP,
    ) -> "GroupTable":
        mul = np.array(mul, dtype=np.int64)
        if mul.ndim != 2 or mul.shape[0] != mul.shape[1] or mul.shape[0] == 0:
            raise InvalidParameter("multiplication table must be a non-empty square array")
        n = mul.shape[0]
        if n > cap:
            raise ResourceLimit(f"group order {n} exceeds the table cap {cap}")
        ref = np.arange(n)
        if mul.min() < 0 or mul.max() >= n:
            raise InvalidParameter("table entries must be element indices")
        if not (np.array_equal(np.sort(mul, axis=1), np.broadcast_to(ref, (n, n)))
                and np.array_equal(np.sort(mul, axis=0), np.broadcast_to(ref[:, None], (n, n)))):
            raise InvalidParameter("table is not a Latin square")
        ids = [x for x in range(n) if np.array_equal(mul[x], ref) and np.array_equal(mul[:, x], ref)]
        if len(ids) != 1:
            raise InvalidParameter("table has no two-sided identity")
        e = ids[0]
        inv = np.argmax(mul == e, axis=1)
        if not np.all(mul[ref, inv] == e) or not np.all(mul[inv, ref] == e):
            raise InvalidParameter("inverses are not two-sided")
        _check_associative(mul, full=full_check or n <= FULL_ASSOC_LIMIT)
        if labels is not None:
            labels = tuple(tuple(lab) for lab in labels)
            if len(labels) != n or len(set(labels)) != n:
                raise InvalidParameter("labels must be distinct, one per element")
        mul.setflags(write=False)
        inv = np.asarray(inv, dtype=np.int64)
        inv.setflags(write=False)
        named = dict(named or {})
        for name, idx in named.items():
            if not 0 <= idx < n:
                raise InvalidParameter(f"named element {name!r} out of range")
        return cls(mul=mul, inv=inv, identity=int(e), labels=labels, named=named)

    # -- basic access ---------------------------------------------------

    @property
    def order(self) -> int:
        return int(self.mul.shape[0])

    def __len__(self) -> int:
        return self.order

    def __repr__(self) -> str:
        return f"GroupTable(order={self.order})"

    @cached_property
    def rows(self) -> list[list[int]]:
        """The table as nested Python lists, for fast scalar lookups."""
        return self.mul.tolist()

    @cached_property
    def inverses(self) -> list[int]:
        return self.inv.tolist()

    @cached_property
    def _label_index(self) -> dict[Label, int]:
        if self.labels is None:
            return {}
        return {lab: i for i, lab in enumerate(self.labels)}

    def element(self, label: Label) -> int:
        """Index of the element carrying ``label``."""
        try:
            return self._label_index[tuple(label)]
        except KeyError:
            raise InvalidParameter(f"no element labelled {label!r}") from None

    def prod(self, *xs: int) -> int:
        m = self.rows
        acc = self.identity
        for x in xs:
            acc = m[acc][x]
        return acc

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inverses[x], -k
        m = self.rows
        acc, base = self.identity, x
        while k:
            if k & 1:
                acc = m[acc][base]
            base = m[base][base]
            k >>= 1
        return acc

    def conj(self, x: int, y: int) -> int:
        """``x`` conjugated by ``y``: y^-1 x y."""
        m = self.rows
        return m[m[self.inverses[y]][x]][y]

    def commutes(self, x: int, y: int) -> bool:
        m = self.rows
        return m[x][y] == m[y][x]

    @cached_property
    def element_orders(self) -> list[int]:
        n = self.order
        m = self.rows
        e = self.identity
        orders = [0] * n
        for x in range(n):
            if orders[x]:
                continue
            k, y = 1, x
            while y != e:
                y = m[y][x]
                k += 1
            orders[x] = k
        return orders

    @cached_property
    def involutions(self) -> list[int]:
        return [x for x, k in enumerate(self.element_orders) if k == 2]

    def is_abelian(self) -> bool:
        return bool(np.array_equal(self.mul, self.mul.T))

    def word(self, text: str) -> int:
        """Evaluate a product of named elements such as ``"g*h^2*u"``.

        Tokens are named elements (optionally ``^k``, negative allowed) or
        ``#i`` for a raw index; ``1`` denotes the identity.
        """
        acc = self.identity
        for token in (t.strip() for t in text.split("*")):
            if not token:
                raise InvalidParameter(f"empty factor in {text!r}")
            base, _, exp = token.partition("^")
            k = int(exp) if exp else 1
            if base == "1":
                x = self.identity
            elif base.startswith("#"):
                x = int(base[1:])
                if not 0 <= x < self.order:
                    raise InvalidParameter(f"index {x} out of range")
            elif base in self.named:
                x = self.named[base]
            else:
                raise InvalidParameter(f"unknown element {base!r}")
            acc = self.rows[acc][self.power(x, k)]
        return acc

    def with_names(self, named: Mapping[str, int]) -> "GroupTable":
        merged = {**self.named, **named}
        return GroupTable(mul=self.mul, inv=self.inv, identity=self.identity,
                          labels=self.labels, named=merged)

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "schema": GROUP_SCHEMA,
            "version": GROUP_SCHEMA_VERSION,
            "order": self.order,
            "mul": self.mul.reshape(-1).tolist(),
            "labels": None if self.labels is None else [list(lab) for lab in self.labels],
            "named": dict(self.named),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":"))

    @classmethod
    def from_dict(cls, doc: Mapping, *, cap: int = DEFAULT_ORDER_CAP) -> "GroupTable":
        if doc.get("schema") != GROUP_SCHEMA:
            raise InvalidParameter("not a group document")
        if doc.get("version") != GROUP_SCHEMA_VERSION:
            raise InvalidParameter(f"unsupported group document version {doc.get('version')}")
        n = int(doc["order"])
        mul = np.asarray(doc["mul"], dtype=np.int64)
        if mul.size != n * n:
            raise InvalidParameter("mul has the wrong length for the stated order")
        labels = doc.get("labels")
        return cls.from_table(mul.reshape(n, n), labels=labels, named=doc.get("named") or {}, cap=cap)

    @classmethod
    def from_json(cls, text: str, **kw) -> "GroupTable":
        return cls.from_dict(json.loads(text), **kw)


def _check_associative(mul: np.ndarray, *, full: bool, seed: int = 0) -> None:
    n = mul.shape[0]
    if full:
        for a in range(n):
            # (a b) c  vs  a (b c), all b, c at once
            if not np.array_equal(mul[mul[a]], mul[a][mul]):
                raise InvalidParameter(f"table is not associative (witness a={a})")
        return
    rng = np.random.default_rng(seed)
    a, b, c = rng.integers(0, n, size=(3, ASSOC_SAMPLES))
    bad = mul[mul[a, b], c] != mul[a, mul[b, c]]
    if bad.any():
        i = int(np.argmax(bad))
        raise InvalidParameter(f"table is not associative (witness {a[i]}, {b[i]}, {c[i]})")


# ---------------------------------------------------------------------------
# subgroups and cosets


@dataclass(frozen=True)
class Subgroup:
    members: tuple[int, ...]
    gens: tuple[int, ...] = ()

    @property
    def order(self) -> int:
        return len(self.members)

    def __len__(self) -> int:
        return len(self.members)

    @cached_property
    def member_set(self) -> frozenset[int]:
        return frozenset(self.members)

    def __contains__(self, x: int) -> bool:
        return x in self.member_set


def closure(G: GroupTable, gens: Iterable[int]) -> set[int]:
    """Element set of the subgroup generated by ``gens``."""
    m = G.rows
    gens = list(dict.fromkeys(gens))
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        x = queue.popleft()
        row = m[x]
        for s in gens:
            y = row[s]
            if y not in seen:
                seen.add(y)
                queue.append(y)
    return seen


def generates(G: GroupTable, gens: Iterable[int]) -> bool:
    """True iff ``gens`` generates the whole group (stops as soon as it does)."""
    m = G.rows
    n = G.order
    gens = list(dict.fromkeys(gens))
    seen = {G.identity}
    queue = deque([G.identity])
    while queue:
        row = m[queue.popleft()]
        for s in gens:
            y = row[s]
            if y not in seen:
                seen.add(y)
                if len(seen) == n:
                    return True
                queue.append(y)
    return len(seen) == n


def subgroup_closure(G: GroupTable, gens: Sequence[int]) -> Subgroup:
    """Smallest subgroup containing ``gens``; the generators are kept verbatim."""
    for x in gens:
        if not 0 <= x < G.order:
            raise InvalidParameter(f"element {x} out of range")
    return Subgroup(members=tuple(sorted(closure(G, gens))), gens=tuple(gens))


def is_subgroup(G: GroupTable, members: Iterable[int]) -> bool:
    s = set(members)
    if G.identity not in s:
        return False
    m = G.rows
    inv = G.inverses
    return all(inv[x] in s for x in s) and all(m[x][y] in s for x in s for y in s)


def coset_partition(G: GroupTable, S: Subgroup) -> list[tuple[int, ...]]:
    """Right cosets ``S g`` as sorted cells, ordered by least element."""
    if not is_subgroup(G, S.members):
        raise InvalidSubgroup("coset_partition needs a subgroup")
    m = G.rows
    n = G.order
    cell_of = [-1] * n
    cells = []
    for g in range(n):
        if cell_of[g] >= 0:
            continue
        cell = sorted(m[s][g] for s in S.members)
        for x in cell:
            cell_of[x] = len(cells)
        cells.append(tuple(cell))
    return cells


def element_order(G: GroupTable, a: int) -> int:
    if not 0 <= a < G.order:
        raise InvalidParameter(f"element {a} out of range")
    return G.element_orders[a]


# ---------------------------------------------------------------------------
# constructors


def make_cyclic(n: int) -> GroupTable:
    """Z_n with element i labelled (i,), i.e. g^i."""
    if n < 1:
        raise InvalidParameter("cyclic group order must be positive")
    i = np.arange(n)
    return GroupTable.from_table((i[:, None] + i[None, :]) % n, labels=[(k,) for k in range(n)],
                                 named={"g": 1 % n})


def make_dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n: rotation r of order n, reflection s.

    Element r^i s^j is labelled (i, j).  For n = 2 this is the Klein group.
    """
    if n < 1:
        raise InvalidParameter("dihedral parameter must be positive")
    size = 2 * n
    mul = np.empty((size, size), dtype=np.int64)
    for i in range(n):
        for j in range(2):
            for k in range(n):
                for l in range(2):
                    # r^i s^j r^k s^l = r^(i + (-1)^j k) s^(j + l)
                    ri = (i + (k if j == 0 else -k)) % n
                    mul[2 * i + j, 2 * k + l] = 2 * ri + (j + l) % 2
    labels = [(i, j) for i in range(n) for j in range(2)]
    return GroupTable.from_table(mul, labels=labels, named={"r": 2 % size, "s": 1})


def direct_product(A: GroupTable, B: GroupTable, *, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """A x B; element (a, b) has index a*|B| + b and the concatenated label."""
    na, nb = A.order, B.order
    if na * nb > cap:
        raise ResourceLimit(f"product order {na * nb} exceeds the table cap {cap}")
    mul = (A.mul[:, None, :, None] * nb + B.mul[None, :, None, :]).reshape(na * nb, na * nb)
    labels = None
    if A.labels is not None and B.labels is not None:
        labels = [la + lb for la in A.labels for lb in B.labels]
    return GroupTable.from_table(mul, labels=labels, cap=cap)


@dataclass
class ActionHom:
    """A homomorphism H -> Aut(N), given on generators of H.

    ``images`` maps an element index of H to a permutation of N's element
    indices.  The semidirect product uses the left-action convention
    ``h n h^-1 = act(h)(n)``.
    """

    images: dict[int, np.ndarray]

    def extend(self, N: GroupTable, H: GroupTable) -> np.ndarray:
        """Full table ``phi[h, n]``; raises InvalidAction if not a homomorphism."""
        n = N.order
        ref = np.arange(n)
        gens = []
        for h, perm in self.images.items():
            perm = np.asarray(perm, dtype=np.int64)
            if perm.shape != (n,) or not np.array_equal(np.sort(perm), ref):
                raise InvalidAction(f"image of {h} is not a permutation of N")
            if not np.array_equal(perm[N.mul], N.mul[perm][:, perm]):
                raise InvalidAction(f"image of {h} is not an automorphism of N")
            gens.append((h, perm))
        phi = np.full((H.order, n), -1, dtype=np.int64)
        phi[H.identity] = ref
        done = {H.identity}
        queue = deque([H.identity])
        hm = H.rows
        while queue:
            x = queue.popleft()
            for h, perm in gens:
                y = hm[x][h]
                img = phi[x][perm]  # act(xh) = act(x) o act(h)
                if y in done:
                    if not np.array_equal(phi[y], img):
                        raise InvalidAction("generator images violate a relation of H")
                else:
                    phi[y] = img
                    done.add(y)
                    queue.append(y)
        if len(done) != H.order:
            raise InvalidAction("action images are not given on a generating set of H")
        return phi


def semidirect_product(N: GroupTable, H: GroupTable, act: ActionHom, *,
                       cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """N : H with (n1, h1)(n2, h2) = (n1 * act(h1)(n2), h1 h2)."""
    nn, nh = N.order, H.order
    if nn * nh > cap:
        raise ResourceLimit(f"product order {nn * nh} exceeds the table cap {cap}")
    phi = act.extend(N, H)
    npart = N.mul[np.arange(nn)[:, None, None], phi[None, :, :]]  # [n1, h1, n2]
    mul = (npart[:, :, :, None] * nh + H.mul[None, :, None, :]).reshape(nn * nh, nn * nh)
    labels = None
    if N.labels is not None and H.labels is not None:
        labels = [ln + lh for ln in N.labels for lh in H.labels]
    return GroupTable.from_table(mul, labels=labels, cap=cap)


# ---------------------------------------------------------------------------
# permutation groups


def parse_cycles(text: str, degree: int) -> tuple[int, ...]:
    """Image tuple (0-based) of a cycle-notation permutation on 1..degree."""
    img = list(range(degree))
    for cyc in re.findall(r"\(([^)]*)\)", text):
        tokens = re.findall(r"\d+", cyc) if re.search(r"[,\s]", cyc.strip()) else list(cyc.strip())
        pts = [int(p) - 1 for p in tokens]
        if any(not 0 <= p < degree for p in pts) or len(set(pts)) != len(pts):
            raise InvalidParameter(f"bad cycle ({cyc}) for degree {degree}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            img[a] = b
    if text.strip() and not re.fullmatch(r"\s*(\([^)]*\)\s*)+", text):
        raise InvalidParameter(f"cannot parse permutation {text!r}")
    return tuple(img)


def permutation_group(gens: Sequence[Sequence[int]], *, cap: int = DEFAULT_ORDER_CAP) -> GroupTable:
    """Group generated by image-tuple permutations, acting on the right.

    Labels are the image tuples, sorted lexicographically; ``mul[p, q]`` is
    "p then q", matching the usual product of cycles read left to right.
    """
    gens = [tuple(p) for p in gens]
    if not gens:
        raise InvalidParameter("need at least one generator")
    degree = len(gens[0])
    ident = tuple(range(degree))
    seen = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for q in gens:
            r = tuple(q[i] for i in p)
            if r not in seen:
                if len(seen) >= cap:
                    raise ResourceLimit(f"permutation group exceeds the cap {cap}")
                seen.add(r)
                queue.append(r)
    elems = sorted(seen)
    index = {p: i for i, p in enumerate(elems)}
    n = len(elems)
    arr = np.array(elems, dtype=np.int64)
    mul = np.empty((n, n), dtype=np.int64)
    for i, p in enumerate(elems):
        # p then q: i -> q[p[i]]
        prods = arr[:, list(p)]
        mul[i] = [index[tuple(row)] for row in prods.tolist()]
    return GroupTable.from_table(mul, labels=elems, cap=cap)
