"""Independent brute-force oracles shared by the test modules.

These deliberately avoid the package's own closure, enumeration and orbit
code: plain Python loops over the multiplication table only.
"""

import itertools

import pytest

from arcmaps.families import FamilySpec, build_family
from arcmaps.groups import make_dihedral, parse_cycles, permutation_group


def naive_closure(G, gens):
    rows = G.mul.tolist()
    seen = {G.identity}
    frontier = [G.identity]
    while frontier:
        nxt = []
        for x in frontier:
            for s in gens:
                y = rows[x][s]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def naive_order(G, x):
    k, y = 1, x
    while y != G.identity:
        y = int(G.mul[y, x])
        k += 1
    return k


def brute_rotary(G, *, valency_2=False, loops=False):
    out = []
    n = G.order
    for a in range(n):
        oa = naive_order(G, a)
        if oa < 2 or (oa == 2 and not valency_2):
            continue
        cyc = naive_closure(G, [a])
        for z in range(n):
            if naive_order(G, z) != 2 or (z in cyc and not loops):
                continue
            if len(naive_closure(G, [a, z])) == n:
                out.append((a, z))
    return out


def brute_reversing(G):
    n = G.order
    invols = [x for x in range(n) if naive_order(G, x) == 2]
    out = []
    for x, y in itertools.permutations(invols, 2):
        S = naive_closure(G, [x, y])
        for z in invols:
            if z not in S and len(naive_closure(G, [x, y, z])) == n:
                out.append((x, y, z))
    return out


def brute_automorphisms(G):
    """Every bijection fixing the identity, filtered by the hom property.
    Only feasible for order <= 8."""
    n = G.order
    rows = G.mul.tolist()
    rest = [x for x in range(n) if x != G.identity]
    found = []
    for perm in itertools.permutations(rest):
        f = [0] * n
        f[G.identity] = G.identity
        for x, y in zip(rest, perm):
            f[x] = y
        if all(f[rows[a][b]] == rows[f[a]][f[b]] for a in range(n) for b in range(n)):
            found.append(f)
    return found


def brute_orbit_count(items, auts, swap=False):
    items = set(items)
    seen = set()
    count = 0
    for it in sorted(items):
        if it in seen:
            continue
        count += 1
        for f in auts:
            img = tuple(f[t] for t in it)
            seen.add(img)
            if swap:
                seen.add((img[1], img[0]) + img[2:])
    return count


@pytest.fixture(scope="session")
def dih3():
    return make_dihedral(3)


@pytest.fixture(scope="session")
def f20():
    return build_family(FamilySpec("I", g=5, h=4, r=2))


@pytest.fixture(scope="session")
def a4():
    return build_family(FamilySpec("IV", g=1, h=3, r=1))


@pytest.fixture(scope="session")
def s4():
    return build_family(FamilySpec("V", h=3))


@pytest.fixture(scope="session")
def s4perm():
    gens = [parse_cycles("(1,2,3)", 4), parse_cycles("(1,4)", 4)]
    G = permutation_group(gens)
    return G, G.element(gens[0]), G.element(gens[1])


@pytest.fixture(scope="session")
def default_report():
    from arcmaps.verify import load_default_grid, sweep
    return sweep(load_default_grid())


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, detail in sorted(RESULTS):
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}: {detail}")
