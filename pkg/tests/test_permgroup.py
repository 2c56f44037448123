import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tclab.permgroup import (
    CapabilityError,
    CosetSpace,
    DimensionError,
    InvalidResidueError,
    Permutation,
    all_subgroups,
    brute_force_conjugate_search,
    closure,
    compose,
    cyc_power,
    enumerate_available_colors,
    is_conjugate_avoiding,
    si_available,
    subgroup_classes,
    symmetric_group,
    transposition_partition,
    young_subgroup,
)

# subgroup and conjugacy-class counts of S_1..S_5 (standard tables)
SUBGROUPS = [1, 2, 6, 30, 156]
CLASSES = [1, 2, 4, 11, 19]


def perms(r):
    return st.permutations(list(range(1, r + 1))).map(lambda p: Permutation(tuple(p)))


def test_parse_and_print():
    p = Permutation.parse(5, "(1 2 3)(4 5)")
    assert p.images == (2, 3, 1, 5, 4)
    assert str(p) == "(123)(45)"
    assert Permutation.parse(5, "(123)(45)") == p
    assert Permutation.parse(3, "()").is_identity()
    with pytest.raises(ValueError):
        Permutation.parse(3, "(1 2")
    with pytest.raises(ValueError):
        Permutation((1, 1, 2))


def test_compose_applies_right_factor_first():
    p = Permutation.parse(3, "(123)")
    q = Permutation.parse(3, "(12)")
    assert (p * q)(1) == p(q(1)) == 3
    with pytest.raises(DimensionError):
        compose(p, Permutation.identity(4))


def test_rank_is_lexicographic():
    sym = symmetric_group(4)
    assert Permutation.identity(4).rank == 0
    assert Permutation((4, 3, 2, 1)).rank == 23
    lex = sorted(itertools.permutations(range(4)))
    assert list(sym.rank(np.array(lex))) == list(range(24))


@given(st.integers(2, 6).flatmap(lambda r: st.tuples(perms(r), perms(r), perms(r))))
def test_group_axioms(triple):
    p, q, s = triple
    assert (p * q) * s == p * (q * s)
    assert p * p.inverse() == Permutation.identity(p.r)
    assert symmetric_group(p.r).compose(p.rank, q.rank) == (p * q).rank
    assert (p ** p.order()).is_identity()


def test_cyc_power():
    assert cyc_power(4, 1).images == (2, 3, 4, 1)
    assert cyc_power(6, 2).cycle_type() == (3, 3)
    with pytest.raises(InvalidResidueError):
        cyc_power(4, 8)


def test_closure_orders():
    assert closure(4, [Permutation.parse(4, "(12)"), Permutation.parse(4, "(1234)")]).order == 24
    assert closure(4, [Permutation.parse(4, "(123)"), Permutation.parse(4, "(12)(34)")]).order == 12
    assert closure(5, []).order == 1


@pytest.mark.parametrize("r,i", [(r, i) for r in range(2, 8) for i in range(1, r)])
def test_young_subgroup_order(r, i):
    G = young_subgroup(r, i)
    assert G.order == math.factorial(i) * math.factorial(r - i)
    blocks = {frozenset(range(1, i + 1)), frozenset(range(i + 1, r + 1))}
    assert set(transposition_partition(G)) == blocks


def test_young_subgroup_support_validation():
    G = young_subgroup(5, 2, support=(2, 5))
    assert Permutation.parse(5, "(25)") in G
    assert Permutation.parse(5, "(12)") not in G
    with pytest.raises(ValueError):
        young_subgroup(5, 2, support=(1, 1))
    with pytest.raises(ValueError):
        young_subgroup(5, 0)


@pytest.mark.parametrize("r", range(1, 6))
def test_subgroup_counts(r):
    assert len(all_subgroups(r)) == SUBGROUPS[r - 1]
    assert len(subgroup_classes(r)) == CLASSES[r - 1]


def test_conjugate_avoiding_matches_brute_force_on_s4_lattice():
    for k in (1, 2, 3):
        pi = cyc_power(4, k)
        for G in all_subgroups(4):
            assert is_conjugate_avoiding(G, pi) == (not brute_force_conjugate_search(G, pi))


def test_si_available_spot_values():
    assert not si_available(6, 2, 3)
    assert not si_available(4, 2, 2)
    assert si_available(4, 2, 1)
    assert si_available(6, 1, 3)
    with pytest.raises(InvalidResidueError):
        si_available(4, 4, 1)


@settings(max_examples=60)
@given(st.integers(2, 8).flatmap(lambda r: st.tuples(st.just(r), st.integers(1, r - 1), st.integers(1, r - 1))))
def test_si_available_symmetric_in_blocks(rki):
    r, k, i = rki
    assert si_available(r, k, i) == si_available(r, k, r - i)
    assert si_available(r, k, i) == si_available(r, r - k, i)


def test_coset_space_action():
    G = young_subgroup(4, 2)
    cs = CosetSpace(G)
    assert len(cs) == 6
    sym = symmetric_group(4)
    for c in range(len(cs)):
        for g, h in [(5, 7), (11, 23), (0, 3)]:
            assert cs.act(sym.compose(g, h), c) == cs.act(g, cs.act(h, c))
    assert all(cs.coset_of(g) == 0 for g in G.ranks)


def test_young_only_colors():
    sys42 = enumerate_available_colors(4, 2)
    assert [G.order for G in sys42.base_groups] == [6]
    sys62 = enumerate_available_colors(6, 2)
    assert [sys62.young_type(j) for j in range(sys62.m)] == [1, 2]
    assert sys62.dump().splitlines()[0] == "6 2 2"


def test_full_mode_finds_non_young_classes():
    # frozen from the lattice sweep: the alternating groups avoid odd cyclic shifts
    s41 = enumerate_available_colors(4, 1, "full")
    assert sorted(G.order for G in s41.base_groups) == [4, 6, 12]
    assert s41.young_type(2) is None
    s61 = enumerate_available_colors(6, 1, "full")
    assert sorted(G.order for G in s61.base_groups) == [24, 36, 48, 120, 360]
    s63 = enumerate_available_colors(6, 3, "full")
    assert sorted(G.order for G in s63.base_groups) == [36, 120, 360]
    assert [G.order for G in enumerate_available_colors(6, 2, "full").base_groups] == [120, 48]


def test_capability_caps():
    with pytest.raises(CapabilityError):
        enumerate_available_colors(7, 1, "full")
    with pytest.raises(CapabilityError):
        symmetric_group(9)
    with pytest.raises(ValueError):
        enumerate_available_colors(4, 1, "bogus")
