"""Extremal constructions and partial Steiner machinery."""

import pytest

from tighthyp import (
    BlockDesign,
    build_pattern,
    clique_plus_link,
    complete,
    contains_pattern,
    find_hamcycle,
    greedy_partial_steiner,
    kk_lower,
    ore_graph,
    triangle_packing,
    tuza_construction,
)
from tighthyp.hypercore import nck

P4 = build_pattern("path", 2, 1, 4)


def test_ore_graph():
    for n in range(5, 10):
        g = ore_graph(n)
        assert g.edge_count() == nck(n - 1, 2) + 1
        assert g.degree((n - 1,)) == 1
        assert find_hamcycle(g, 1).status == "refuted"
    with pytest.raises(ValueError):
        ore_graph(3)


def test_clique_plus_link_validation():
    link = triangle_packing(6)
    g = clique_plus_link(7, 3, link)
    assert g.edge_count() == nck(6, 3) + link.edge_count() == 26
    assert all(g.has_edge(e) for e in complete(6, 3).edges())
    with pytest.raises(ValueError):
        clique_plus_link(7, 3, triangle_packing(5))  # wrong vertex count
    with pytest.raises(ValueError):
        clique_plus_link(7, 4, triangle_packing(6))  # link must be (k-1)-uniform


def test_clique_plus_link_refuted():
    g = clique_plus_link(7, 3, triangle_packing(6))
    assert find_hamcycle(g, 2).status == "refuted"


def test_kk_lower_counts_and_refutation():
    g = kk_lower(7, 3)
    assert g.edge_count() == nck(6, 3) + nck(5, 1) == 25
    assert find_hamcycle(g, 2).status == "refuted"
    assert kk_lower(9, 4).edge_count() == nck(8, 4) + nck(7, 2) == 91


def test_kk_star_link_shape():
    g = kk_lower(8, 3)
    lk = g.link(7)
    center_edges = [e for e in lk.edges() if 0 in e]
    assert len(center_edges) == lk.edge_count() == nck(6, 1)


def test_triangle_packing_sizes():
    assert triangle_packing(6).edge_count() == 6
    assert triangle_packing(7).edge_count() == 6
    assert triangle_packing(8).edge_count() == 7
    assert triangle_packing(9).edge_count() == 9
    for m in range(4, 10):
        assert contains_pattern(triangle_packing(m), P4) is None
    with pytest.raises(ValueError):
        triangle_packing(1)


def test_block_design_validity():
    d = BlockDesign(9, 3, 3, ((0, 1, 2), (3, 4, 5), (6, 7, 8)))
    assert d.t == 1
    assert d.is_valid()
    bad = BlockDesign(9, 3, 2, ((0, 1, 2), (1, 2, 3)))  # blocks share points
    assert not bad.is_valid()
    miscounted = BlockDesign(9, 3, 2, ((0, 1, 2), (3, 4, 5), (6, 7, 8)))
    assert not miscounted.is_valid()


def test_greedy_partial_steiner():
    d = greedy_partial_steiner(9, 3, 3, seed=0)
    assert d.is_valid()
    assert len(d.blocks) == 3
    # size-3 blocks must be pairwise disjoint, so 7 points cap out at 2
    d = greedy_partial_steiner(7, 3, 7, seed=1)
    assert d.is_valid()
    assert len(d.blocks) == 2


def test_tuza_construction():
    g = tuza_construction(10, 3)
    assert g.edge_count() == 93
    assert all(g.has_edge(e) for e in complete(9, 3).edges())
    # explicit design path, and a broken design is rejected
    d = greedy_partial_steiner(9, 3, 3, seed=5)
    g2 = tuza_construction(10, 3, design=d)
    assert g2.edge_count() == nck(9, 3) + d.b * nck(3, 2) == 93
    with pytest.raises(ValueError):
        tuza_construction(10, 3, design=BlockDesign(9, 3, 2, ((0, 1, 2), (1, 2, 3))))
    with pytest.raises(ValueError):
        tuza_construction(10, 3, design=greedy_partial_steiner(8, 3, 2, seed=0))
