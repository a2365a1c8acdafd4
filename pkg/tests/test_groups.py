import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arcmaps.errors import InvalidAction, InvalidParameter, InvalidSubgroup, ResourceLimit
from arcmaps.groups import (ActionHom, GroupTable, Subgroup, closure, coset_partition, direct_product,
                            element_order, generates, make_cyclic, make_dihedral, parse_cycles,
                            permutation_group, semidirect_product, subgroup_closure)

from conftest import naive_closure, naive_order


def _auto_power(n, k):
    """Automorphism x -> k x of Z_n as an index permutation."""
    return np.array([(k * i) % n for i in range(n)])


def test_cyclic_examples():
    assert make_cyclic(1).order == 1
    z6 = make_cyclic(6)
    assert element_order(z6, 1) == 6 and element_order(z6, 3) == 2
    assert element_order(make_cyclic(12), 4) == 3
    with pytest.raises(InvalidParameter):
        make_cyclic(0)


def test_dihedral_examples(dih3):
    assert dih3.order == 6 and not dih3.is_abelian()
    assert len(dih3.involutions) == 3
    klein = make_dihedral(2)
    assert klein.order == 4 and klein.is_abelian()
    assert all(naive_order(klein, x) == 2 for x in range(4) if x != klein.identity)
    d8 = make_dihedral(4)
    center = [x for x in range(8) if all(d8.mul[x, y] == d8.mul[y, x] for y in range(8))]
    r = d8.named["r"]
    assert sorted(center) == sorted({d8.identity, d8.power(r, 2)})
    with pytest.raises(InvalidParameter):
        make_dihedral(0)


def test_direct_product_examples(dih3):
    klein = direct_product(make_cyclic(2), make_cyclic(2))
    assert klein.order == 4 and all(naive_order(klein, x) <= 2 for x in range(4))
    copy = direct_product(make_cyclic(1), dih3)
    assert np.array_equal(copy.mul, dih3.mul)
    d6z2 = direct_product(dih3, make_cyclic(2))
    assert d6z2.order == 12
    assert sum(naive_order(d6z2, x) == 2 for x in range(12)) == 7
    with pytest.raises(ResourceLimit):
        direct_product(make_cyclic(80), make_cyclic(80))


def test_semidirect_examples():
    z3, z2 = make_cyclic(3), make_cyclic(2)
    d = semidirect_product(z3, z2, ActionHom({1: _auto_power(3, 2)}))
    assert d.order == 6 and not d.is_abelian()
    assert len(d.involutions) == 3
    ab = semidirect_product(z3, z2, ActionHom({1: np.arange(3)}))
    assert ab.is_abelian() and max(ab.element_orders) == 6
    # Z5 : Z4 with h acting as squaring
    z5, z4 = make_cyclic(5), make_cyclic(4)
    f = semidirect_product(z5, z4, ActionHom({1: _auto_power(5, 2)}))
    g, h = 1 * 4, 1  # index n*|K| + k
    assert naive_order(f, g) == 5 and naive_order(f, h) == 4
    h2 = f.power(h, 2)
    assert f.conj(g, h2) == f.inv[g]
    assert naive_order(f, f.prod(g, h)) == 4


def test_semidirect_rejects_bad_action():
    z5, z4 = make_cyclic(5), make_cyclic(4)
    with pytest.raises(InvalidAction):
        ActionHom({1: np.array([0, 2, 1, 3, 4])}).extend(z5, z4)  # not an automorphism
    z3 = make_cyclic(3)
    with pytest.raises(InvalidAction):
        ActionHom({1: _auto_power(3, 2)}).extend(z3, make_cyclic(3))  # order 2 image of order 3 generator


def test_semidirect_injections():
    z7, z3 = make_cyclic(7), make_cyclic(3)
    G = semidirect_product(z7, z3, ActionHom({1: _auto_power(7, 2)}))
    N = [n * 3 for n in range(7)]
    H = list(range(3))
    for a in range(7):
        for b in range(7):
            assert G.mul[N[a], N[b]] == N[z7.mul[a, b]]
    for a in range(3):
        for b in range(3):
            assert G.mul[H[a], H[b]] == H[z3.mul[a, b]]
    assert all(G.conj(n, x) in N for n in N for x in range(G.order))
    assert set(N) & set(H) == {G.identity}


def test_element_order_examples(dih3, f20):
    assert element_order(dih3, dih3.identity) == 1
    assert element_order(dih3, dih3.named["r"]) == 3


def test_subgroup_closure_examples(dih3, s4perm):
    assert subgroup_closure(dih3, [dih3.identity]).order == 1
    S = subgroup_closure(dih3, [dih3.named["r"]])
    assert S.order == 3 and S.gens == (dih3.named["r"],)
    G, a, z = s4perm
    assert subgroup_closure(G, [a, z]).order == 24


def test_coset_partition_examples(dih3):
    G = Subgroup(tuple(range(6)))
    assert len(coset_partition(dih3, G)) == 1
    assert len(coset_partition(dih3, Subgroup((dih3.identity,)))) == 6
    cells = coset_partition(dih3, subgroup_closure(dih3, [dih3.named["r"]]))
    assert [len(c) for c in cells] == [3, 3]
    with pytest.raises(InvalidSubgroup):
        coset_partition(dih3, Subgroup((0, 1, 2)))


def test_rejects_non_groups():
    with pytest.raises(InvalidParameter):
        GroupTable.from_table([[0, 1], [1, 1]])
    # Latin square with identity that is not associative (order 5 loop)
    loop = [[0, 1, 2, 3, 4], [1, 0, 3, 4, 2], [2, 4, 0, 1, 3], [3, 2, 4, 0, 1], [4, 3, 1, 2, 0]]
    with pytest.raises(InvalidParameter):
        GroupTable.from_table(loop)


def test_json_round_trip_bit_exact(f20):
    G = f20.group
    text = G.to_json()
    back = GroupTable.from_json(text)
    assert back.to_json() == text
    assert np.array_equal(back.mul, G.mul) and back.named == G.named and back.labels == G.labels


def test_word_evaluation(f20):
    G = f20.group
    g, h = f20["g"], f20["h"]
    assert G.word("g*h^2") == G.prod(g, G.power(h, 2))
    assert G.word("h^-1") == G.inv[h]
    assert G.word("1") == G.identity
    assert G.word("#3") == 3
    with pytest.raises(InvalidParameter):
        G.word("q")


def test_parse_cycles():
    assert parse_cycles("(1,2,3)", 4) == (1, 2, 0, 3)
    assert parse_cycles("(123)", 3) == (1, 2, 0)
    assert parse_cycles("(1 4)(2 3)", 4) == (3, 2, 1, 0)
    with pytest.raises(InvalidParameter):
        parse_cycles("(1,5)", 4)


def test_permutation_group_sizes():
    assert permutation_group([parse_cycles("(1,2,3,4)", 4), parse_cycles("(1,2)", 4)]).order == 24
    assert permutation_group([parse_cycles("(1,2,3)", 4), parse_cycles("(1,2)(3,4)", 4)]).order == 12
    with pytest.raises(ResourceLimit):
        permutation_group([parse_cycles("(1,2,3,4,5,6)", 6), parse_cycles("(1,2)", 6)], cap=100)


def test_closure_matches_oracle(f20):
    G = f20.group
    for gens in ([1], [4], [1, 4], [5, 2], [G.identity]):
        assert closure(G, gens) == naive_closure(G, gens)
    assert generates(G, [f20["g"], f20["h"]])


group_strategy = st.sampled_from([
    ("cyclic", 12), ("dihedral", 5), ("dihedral", 6), ("perm", "s4"), ("perm", "a4"), ("f20", None),
])


def _make(kind, arg):
    if kind == "cyclic":
        return make_cyclic(arg)
    if kind == "dihedral":
        return make_dihedral(arg)
    if kind == "f20":
        return semidirect_product(make_cyclic(5), make_cyclic(4), ActionHom({1: _auto_power(5, 2)}))
    second = "(1,2)" if arg == "s4" else "(1,2)(3,4)"
    return permutation_group([parse_cycles("(1,2,3)", 4), parse_cycles(second, 4)])


@settings(max_examples=60, deadline=None)
@given(group_strategy, st.lists(st.integers(0, 10_000), min_size=1, max_size=3))
def test_closure_is_subgroup_and_lagrange(spec, raw):
    G = _make(*spec)
    gens = [x % G.order for x in raw]
    S = subgroup_closure(G, gens)
    members = set(S.members)
    assert G.order % S.order == 0
    assert all(G.mul[a, b] in members for a in members for b in members)
    cells = coset_partition(G, S)
    assert sorted(x for c in cells for x in c) == list(range(G.order))
    assert all(len(c) == S.order for c in cells)


@settings(max_examples=60, deadline=None)
@given(group_strategy, st.integers(0, 10_000), st.integers(0, 10_000), st.integers(-7, 7))
def test_table_axioms(spec, i, j, k):
    G = _make(*spec)
    a, b = i % G.order, j % G.order
    assert G.prod(a, G.inv[a]) == G.identity
    assert G.conj(a, b) == G.prod(G.inv[b], a, b)
    assert G.power(a, k) == G.power(G.inv[a], -k)
    assert naive_order(G, a) == G.element_orders[a]
