import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from arcmaps.analysis import (AutGroup, automorphism_group, centralizer, find_isomorphism,
                              frattini_cyclic, is_indecomposable, is_sylow_cyclic_or_dihedral,
                              mult_order, p_part, prime_divisors, radical, sylow, tau_order, totient)
from arcmaps.errors import InvalidParameter, ResourceLimit
from arcmaps.groups import (direct_product, make_cyclic, make_dihedral, parse_cycles, permutation_group,
                            subgroup_closure)

from conftest import brute_automorphisms, naive_closure


def units_filter_tau(n, d):
    """|{u in (Z/n)^x : u = 1 mod n/d}| by direct filtering."""
    m = n // d
    return sum(1 for u in range(n) if math.gcd(u, n) == 1 and u % m == 1 % m)


def test_number_theory_examples():
    assert (totient(1), totient(4), totient(20)) == (1, 2, 8)
    assert (p_part(12, 2), p_part(12, 5), p_part(24, 3)) == (4, 1, 3)
    with pytest.raises(InvalidParameter):
        p_part(12, 4)
    assert prime_divisors(60) == [2, 3, 5]
    assert radical(72) == 6 and radical(1) == 1
    assert mult_order(2, 5) == 4 and mult_order(3, 1) == 1
    assert (tau_order(4, 1), tau_order(4, 2), tau_order(9, 3)) == (1, 2, 3)
    with pytest.raises(InvalidParameter):
        tau_order(12, 5)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 400), st.data())
def test_tau_matches_unit_filter(n, data):
    divisors = [d for d in range(1, n + 1) if n % d == 0]
    d = data.draw(st.sampled_from(divisors))
    assert tau_order(n, d) == units_filter_tau(n, d)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 2000))
def test_totient_matches_gcd_count(n):
    assert totient(n) == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)


def test_centralizer_examples(dih3, f20):
    assert centralizer(dih3, [dih3.identity]).order == 6
    C = centralizer(dih3, [dih3.named["r"]])
    assert set(C.members) == naive_closure(dih3, [dih3.named["r"]])
    G = f20.group
    brute = {x for x in range(G.order) if G.commutes(x, f20["g"])}
    assert set(centralizer(G, [f20["g"]]).members) == brute == naive_closure(G, [f20["g"]])


def test_sylow_examples(f20):
    d12 = make_dihedral(6)
    P = sylow(d12, 2)
    assert P.order == 4 and all(d12.element_orders[x] <= 2 for x in P.members)
    G = f20.group
    assert set(sylow(G, 5).members) == naive_closure(G, [f20["g"]])
    assert sylow(make_cyclic(6), 7).order == 1


def _frattini_oracle(n):
    """Intersection of the maximal subgroups of Z_n: those of prime index."""
    members = set(range(n))
    for p in prime_divisors(n):
        members &= {x for x in range(n) if x % p == 0}
    return members


@pytest.mark.parametrize("n", [1, 2, 7, 9, 12, 36, 60, 64])
def test_frattini_cyclic_oracle(n):
    Z = make_cyclic(n)
    F = frattini_cyclic(Z, subgroup_closure(Z, [1 % n]))
    assert set(F.members) == _frattini_oracle(n)


def test_frattini_examples():
    Z = make_cyclic(12)
    assert frattini_cyclic(Z, subgroup_closure(Z, [1])).order == 2
    assert frattini_cyclic(make_cyclic(7), subgroup_closure(make_cyclic(7), [1])).order == 1
    assert frattini_cyclic(make_cyclic(9), subgroup_closure(make_cyclic(9), [1])).order == 3
    klein = make_dihedral(2)
    with pytest.raises(InvalidParameter):
        frattini_cyclic(klein, subgroup_closure(klein, list(range(4))))


def _q8():
    i = parse_cycles("(1,2,3,4)(5,6,7,8)", 8)
    j = parse_cycles("(1,5,3,7)(2,8,4,6)", 8)
    return permutation_group([i, j])


def test_sylow_structure(f20, s4):
    assert is_sylow_cyclic_or_dihedral(f20.group).ok
    assert is_sylow_cyclic_or_dihedral(s4.group).ok
    z2cubed = direct_product(direct_product(make_cyclic(2), make_cyclic(2)), make_cyclic(2))
    v = is_sylow_cyclic_or_dihedral(z2cubed)
    assert not v.ok and v.witness["prime"] == 2
    q8 = _q8()
    assert q8.order == 8 and not is_sylow_cyclic_or_dihedral(q8).ok
    assert not is_sylow_cyclic_or_dihedral(direct_product(make_cyclic(3), make_cyclic(3))).ok
    assert is_sylow_cyclic_or_dihedral(make_dihedral(2)).ok


def test_indecomposable_examples(dih3):
    assert is_indecomposable(dih3).ok
    v = is_indecomposable(make_cyclic(6))
    assert not v.ok and sorted(S.order for S in v.witness) == [2, 3]
    v = is_indecomposable(direct_product(dih3, make_cyclic(2)))
    assert not v.ok and sorted(S.order for S in v.witness) == [2, 6]
    assert is_indecomposable(make_cyclic(4)).ok
    with pytest.raises(ResourceLimit):
        is_indecomposable(make_cyclic(600))


@pytest.mark.parametrize("G", [make_cyclic(6), make_cyclic(8), make_dihedral(2), make_dihedral(3),
                               make_dihedral(4), _q8()], ids=["Z6", "Z8", "Klein", "D6", "D8", "Q8"])
def test_automorphisms_match_bijection_search(G):
    brute = sorted(brute_automorphisms(G))
    assert automorphism_group(G).rows == brute


def test_automorphism_orders(f20, s4, a4):
    assert automorphism_group(make_cyclic(12)).order == 4
    assert automorphism_group(make_dihedral(3)).order == 6
    assert automorphism_group(make_dihedral(2)).order == 6
    assert automorphism_group(f20.group).order == 20
    assert automorphism_group(s4.group).order == 24
    assert automorphism_group(a4.group).order == 24
    for n in (5, 7, 9, 10):  # Aut(D_2n) = Hol(Z_n)
        assert automorphism_group(make_dihedral(n)).order == n * totient(n)
    with pytest.raises(ResourceLimit):
        automorphism_group(make_cyclic(2000))


def test_automorphisms_are_homomorphisms(f20):
    G = f20.group
    for f in automorphism_group(G).rows:
        assert sorted(f) == list(range(G.order))
        assert all(f[G.mul[a, b]] == G.mul[f[a], f[b]] for a in range(G.order) for b in range(G.order))


def test_aut_json_round_trip(dih3):
    A = automorphism_group(dih3)
    assert AutGroup.from_json(A.to_json()).rows == A.rows


def test_find_isomorphism(s4, s4perm):
    P, _, _ = s4perm
    iso = find_isomorphism(s4.group, P)
    G = s4.group
    assert iso is not None
    assert all(iso[G.mul[a, b]] == P.mul[iso[a], iso[b]] for a in range(24) for b in range(24))
    assert find_isomorphism(make_cyclic(6), make_dihedral(3)) is None
