import itertools
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tclab.hypergraph import (
    Hypergraph,
    OrientedEdge,
    blowup,
    colex_rank,
    colex_unrank,
    complete,
    contains_injective,
    format_hypergraph,
    parse_hypergraph,
    read_hypergraph,
    tight_cycle,
    write_hypergraph,
)
from tclab.permgroup import CapabilityError


@st.composite
def hypergraphs(draw, r_values=(2, 3, 4), max_n=7):
    r = draw(st.sampled_from(r_values))
    n = draw(st.integers(r, max_n))
    universe = list(itertools.combinations(range(1, n + 1), r))
    chosen = draw(st.lists(st.sampled_from(universe), unique=True, max_size=len(universe)))
    return Hypergraph(r, n, chosen)


def test_edges_are_normalized():
    H = Hypergraph(3, 5, [(3, 1, 2), (5, 4, 1)])
    assert H.edge_list == [(1, 2, 3), (1, 4, 5)]
    assert (2, 1, 3) in H
    with pytest.raises(ValueError):
        Hypergraph(3, 5, [(1, 1, 2)])
    with pytest.raises(ValueError):
        Hypergraph(3, 4, [(1, 2, 5)])
    with pytest.raises(ValueError):
        Hypergraph(3, 4, [(1, 2)])


def test_colex_bijection():
    for r in (1, 2, 3, 4):
        subsets = sorted(itertools.combinations(range(1, 9), r), key=lambda s: s[::-1])
        assert [colex_rank(s) for s in subsets] == list(range(len(subsets)))
        assert all(colex_unrank(i, r) == s for i, s in enumerate(subsets))


def test_codegrees_of_complete_graph():
    K = complete(3, 6)
    assert K.min_codegree() == 4
    assert K.codegrees() == {4: math.comb(6, 2)}
    assert K.codegree((1, 2)) == 4
    with pytest.raises(ValueError):
        K.codegree((1, 2, 3))
    with pytest.raises(ValueError):
        Hypergraph(3, 2).min_codegree()


def test_missing_sets_count_as_zero():
    H = Hypergraph(3, 4, [(1, 2, 3)])
    assert H.min_codegree() == 0
    assert H.codegrees() == {1: 3, 0: 3}
    assert H.link((1, 2)) == {3}


def test_tight_cycle():
    C = tight_cycle(3, 7)
    assert len(C) == 7
    assert (6, 7, 1) in C and (7, 1, 2) in C
    assert tight_cycle(3, 4) == complete(3, 4)
    with pytest.raises(ValueError):
        tight_cycle(3, 3)


def test_blowup():
    K = complete(3, 4)
    B = blowup(K, 2)
    assert B.n == 8 and len(B) == 4 * 8
    # vertices 1 and 3 sit in different classes; classes 3 and 4 complete them
    assert B.codegree((1, 3)) == 4
    assert B.codegree((1, 2)) == 0
    single = blowup(Hypergraph(3, 3, [(1, 2, 3)]), 2)
    assert len(single) == 8


def test_embedding():
    assert contains_injective(complete(3, 5), tight_cycle(3, 5))
    assert not contains_injective(complete(3, 4), tight_cycle(3, 5))
    # C_5^3 has no copy in its own blowup minus a class? sanity on a sparse host
    host = tight_cycle(3, 7)
    assert contains_injective(host, tight_cycle(3, 7))
    assert not contains_injective(host, tight_cycle(3, 5))
    with pytest.raises(CapabilityError):
        contains_injective(complete(3, 14), tight_cycle(3, 13), cap=12)
    with pytest.raises(ValueError):
        contains_injective(complete(3, 5), tight_cycle(4, 5))


def _brute_embeds(H, F):
    for image in itertools.permutations(range(1, H.n + 1), F.n):
        if all(tuple(image[v - 1] for v in e) in H for e in F.edges):
            return True
    return False


@settings(max_examples=80, deadline=None)
@given(hypergraphs(r_values=(3,), max_n=6), st.integers(4, 5))
def test_embedding_matches_brute_force(H, ell):
    F = tight_cycle(3, ell)
    assert contains_injective(H, F) == _brute_embeds(H, F)


@given(hypergraphs())
def test_text_round_trip(H):
    text = format_hypergraph(H, ["note"])
    again = parse_hypergraph(text)
    assert again == H
    assert format_hypergraph(again, ["note"]) == text


@given(hypergraphs())
def test_mask_round_trip(H):
    assert Hypergraph.from_mask(H.r, H.n, H.to_mask()) == H


@given(hypergraphs(), st.randoms(use_true_random=False))
def test_codegree_histogram_invariant_under_relabeling(H, rnd):
    perm = list(range(1, H.n + 1))
    rnd.shuffle(perm)
    G = H.relabel(perm)
    assert G.codegrees() == H.codegrees()
    if H.n >= H.r:
        assert G.min_codegree() == H.min_codegree()


def test_parse_errors():
    with pytest.raises(ValueError, match="announces"):
        parse_hypergraph("3 4 2\n1 2 3\n")
    with pytest.raises(ValueError, match="increasing"):
        parse_hypergraph("3 4 1\n2 1 3\n")
    with pytest.raises(ValueError, match="duplicate"):
        parse_hypergraph("3 4 2\n1 2 3\n1 2 3\n")
    with pytest.raises(ValueError, match="header"):
        parse_hypergraph("three 4 1\n1 2 3\n")
    with pytest.raises(ValueError):
        parse_hypergraph("# only a comment\n")


def test_file_round_trip(tmp_path):
    H = complete(4, 6)
    path = tmp_path / "k64.txt"
    write_hypergraph(H, path, ["complete"])
    assert read_hypergraph(path) == H
    assert path.read_text().startswith("# complete\n4 6 15\n1 2 3 4\n")


def test_oriented_edge():
    H = complete(3, 4)
    x = OrientedEdge((3, 1, 2))
    assert x.support == (1, 2, 3)
    x.check(H)
    with pytest.raises(ValueError):
        OrientedEdge((1, 1, 2))
    with pytest.raises(ValueError):
        OrientedEdge((1, 2, 5)).check(H)
