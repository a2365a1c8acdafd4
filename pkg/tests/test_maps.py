import math

import pytest
from hypothesis import given, settings, strategies as st

from arcmaps.errors import InvalidInput, InvalidParameter
from arcmaps.families import FamilySpec, build_family
from arcmaps.generators import (EnumOptions, enumerate_reversing_triples, enumerate_rotary_pairs,
                                is_regular_triple)
from arcmaps.groups import make_dihedral
from arcmaps.maps import (CSV_HEADER, bi_rev_map, bi_rota_map, build_map, census_csv, census_row,
                          check_divisibility, check_group_constraints, handshake_ok, map_census, rev_map,
                          rota_map, underlying_graph)

V2 = EnumOptions(allow_valency_2=True)


def census(m):
    return map_census(m).as_tuple()


def test_dih3_rota(dih3):
    r, s = dih3.named["r"], dih3.named["s"]
    m = rota_map(dih3, r, s)
    assert census(m) == (2, 3, 3, 2)
    c = map_census(m)
    assert c.valency == 3 and set(c.face_lengths) == {2} and c.gcd_chi_E == 1
    assert underlying_graph(m).tag == "K_2^(3)"
    assert census(bi_rota_map(dih3, r, s)) == (2, 3, 1, 0)


def test_dih3_reflection_pair_is_cycle(dih3):
    x, z = dih3.involutions[:2]
    assert underlying_graph(rota_map(dih3, x, z, V2)).tag == "C_3^(1)"
    with pytest.raises(InvalidInput):
        rota_map(dih3, x, z)


def test_tetrahedron(a4):
    G = a4.group
    m = rota_map(G, a4["h"], a4["u"])
    assert census(m) == (4, 6, 4, 2)
    c = map_census(m)
    assert c.valency == 3 and set(c.face_lengths) == {3} and c.flags == 24
    assert underlying_graph(m).tag == "K_4^(1)"
    assert census(bi_rota_map(G, a4["h"], a4["u"])) == (4, 6, 3, 1)
    assert not check_divisibility(c).applicable


def test_cube(s4perm):
    G, a, z = s4perm
    m = rota_map(G, a, z)
    assert census(m) == (8, 12, 6, 2)
    c = map_census(m)
    assert c.valency == 3 and set(c.face_lengths) == {4} and c.gcd_chi_E == 2
    assert census(bi_rota_map(G, a, z)) == (8, 12, 4, 0)


def test_dih6_reversing():
    G = make_dihedral(6)
    r, s0 = G.named["r"], G.named["s"]
    s2 = G.prod(G.power(r, 2), s0)
    r3 = G.power(r, 3)
    m = rev_map(G, s0, s2, r3)
    assert census(m) == (2, 6, 6, 2)
    assert census(bi_rev_map(G, s0, s2, r3)) == (2, 6, 2, -2)
    assert is_regular_triple(G, s0, s2, r3)
    # x and z commute: the x-family faces have length 2
    c = map_census(m)
    assert set(c.face_lengths) == {2}
    assert not check_group_constraints(G, c, m).applicable


def test_type_II_representative_maps():
    real = build_family(FamilySpec("II", g_v=3, e=2))
    G = real.group
    x, y, z = real["u"], G.word("g_v*w^2*v"), real["v"]
    for build in (rev_map, bi_rev_map):
        assert handshake_ok(map_census(build(G, x, y, z)))


def test_degenerate_bi_rev():
    G = make_dihedral(6)
    r, s = G.named["r"], G.named["s"]
    z = G.prod(r, s)
    m = bi_rev_map(G, s, G.conj(s, z), z)  # y^z = x, so the face subgroup is <x>
    c = map_census(m)
    assert c.nF == G.order // 2 == c.nE and c.chi == c.nV
    assert m.degenerate_faces


def test_build_map_dispatch(dih3):
    r, s = dih3.named["r"], dih3.named["s"]
    assert build_map(dih3, "rotamap", [r, s]).construction == "RotaMap"
    with pytest.raises(InvalidParameter):
        build_map(dih3, "hexmap", [r, s])
    with pytest.raises(InvalidInput):
        build_map(dih3, "revmap", [r, s])


def test_census_csv(dih3):
    m = rota_map(dih3, dih3.named["r"], dih3.named["s"])
    text = census_csv([census_row("dih3", m)])
    lines = text.splitlines()
    assert lines[0] == ",".join(CSV_HEADER)
    assert lines[1] == "dih3,RotaMap,2,3,3,2,1,K_2^(3)"


def test_checks_pass_on_dih3(dih3):
    m = rota_map(dih3, dih3.named["r"], dih3.named["s"])
    c = map_census(m)
    assert check_divisibility(c).ok and check_group_constraints(dih3, c, m).ok


def test_dot_output(a4):
    dot = underlying_graph(rota_map(a4.group, a4["h"], a4["u"])).to_dot()
    assert dot.startswith("graph") and dot.count("--") == 6


CASES = {
    "F20": FamilySpec("I", g=5, h=4, r=2),
    "D18": FamilySpec("I", g=9, h=2, r=8),
    "II12": FamilySpec("II", g_v=3, e=2),
    "II24": FamilySpec("II", g_v=3, e=3),
    "S4": FamilySpec("V", h=3),
    "III60": FamilySpec("III", g_u=3, g=5),
}
_items = {}


def _load(name):
    if name not in _items:
        real = build_family(CASES[name])
        G = real.group
        _items[name] = (G, enumerate_rotary_pairs(G, V2), enumerate_reversing_triples(G))
    return _items[name]


def _pair_graph_oracle(G, m):
    """Edge multiplicities between vertex cells, recomputed from the cells."""
    where = {}
    for k, cell in enumerate(m.vertices):
        for x in cell:
            where[x] = k
    mult = {}
    for e in m.edges:
        ends = tuple(sorted(where[x] for x in e))
        mult[ends] = mult.get(ends, 0) + 1
    return mult


@settings(max_examples=80, deadline=None)
@given(st.sampled_from(sorted(CASES)), st.integers(0, 10**6), st.booleans())
def test_handshake_and_counts(name, k, bi):
    G, pairs, triples = _load(name)
    pool = [("rot", p) for p in pairs] + [("rev", t) for t in triples]
    kind, item = pool[k % len(pool)]
    if kind == "rot":
        m = (bi_rota_map if bi else rota_map)(G, *item, opts=V2)
    else:
        m = (bi_rev_map if bi else rev_map)(G, *item)
    c = map_census(m)
    assert c.nE == G.order // 2 and c.flags == 4 * c.nE
    assert c.chi == c.nV - c.nE + c.nF
    assert sum(c.valencies) == 2 * c.nE == sum(c.face_lengths)
    assert handshake_ok(c)
    assert math.gcd(c.chi, c.nE) == c.gcd_chi_E
    g = underlying_graph(m)
    assert sum(g.multiplicity.values()) + g.loops == c.nE
    oracle = _pair_graph_oracle(G, m)
    assert sum(v for (i, j), v in oracle.items() if i == j) == g.loops
    if c.gcd_chi_E == 1 and c.valency and c.face_length:
        assert check_divisibility(c).ok
        assert check_group_constraints(G, c, m).ok
