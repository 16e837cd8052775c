"""Patterns, overlap-path shapes, cycle validation, and the good-tuple test."""

from fractions import Fraction

import pytest

from tighthyp import (
    GoodTupleParams,
    build_P,
    build_pattern,
    complete,
    contains_pattern,
    empty,
    is_good_tuple,
    is_l_pancyclic,
    is_l_tight_ham_cycle,
    random_graph,
)
from tighthyp.motifs import PatternError, read_pattern, write_pattern


def test_path_pattern_shape():
    p = build_pattern("path", 3, 2, 6)
    assert p.stride == 1
    assert p.edge_count == 4
    assert p.edges() == [(0, 1, 2), (1, 2, 3), (2, 3, 4), (3, 4, 5)]


def test_cycle_pattern_shape():
    p = build_pattern("cycle", 3, 2, 6)
    assert p.edge_count == 6
    assert (0, 1, 2) in p.edges() and (0, 4, 5) in p.edges()
    loose = build_pattern("cycle", 3, 1, 6)
    assert loose.edge_count == 3
    assert loose.edges() == [(0, 1, 2), (2, 3, 4), (0, 4, 5)]


def test_pattern_validation():
    with pytest.raises(PatternError):
        build_pattern("path", 3, 1, 6)  # (t - l) not divisible by stride
    with pytest.raises(PatternError):
        build_pattern("cycle", 3, 1, 5)  # t not divisible by stride
    with pytest.raises(PatternError):
        build_pattern("cycle", 3, 2, 3)  # windows collapse to one 3-set
    with pytest.raises(PatternError):
        build_pattern("path", 3, 3, 6)  # l must stay below k
    with pytest.raises(PatternError):
        build_pattern("ring", 3, 2, 6)
    # smallest legal tight cycle is on k+1 vertices
    p = build_pattern("cycle", 3, 2, 4)
    assert p.edge_count == 4


def test_overlap_path_shapes():
    p = build_P(3, 2)
    assert (p.k, p.l, p.t) == (2, 1, 4)
    assert p.edges() == [(0, 1), (1, 2), (2, 3)]
    p = build_P(3, 1)
    assert (p.k, p.t, p.edge_count) == (2, 2, 1)
    p = build_P(2, 1)
    assert (p.k, p.t, p.edge_count) == (1, 2, 2)
    assert p.edges() == [(0,), (1,)]
    p = build_P(4, 2)
    assert (p.k, p.l, p.t, p.edge_count) == (3, 1, 5, 2)
    p = build_P(4, 3)
    assert (p.k, p.l, p.t, p.edge_count) == (3, 2, 6, 4)
    p = build_P(3, 0)
    assert (p.k, p.t, p.edge_count) == (2, 2, 1)


def test_describe_and_serialization_roundtrip(tmp_path):
    p = build_pattern("cycle", 4, 2, 8)
    assert p.describe().split() == ["cycle", "4", "2", "8"]
    f = tmp_path / "p.txt"
    write_pattern(p, f)
    q = read_pattern(f)
    assert q == p
    f.write_text("path 3 2\n")
    with pytest.raises((PatternError, ValueError)):
        read_pattern(f)


def test_is_l_tight_ham_cycle():
    h = complete(6, 3)
    assert is_l_tight_ham_cycle(h, tuple(range(6)), 2)
    assert is_l_tight_ham_cycle(h, tuple(range(6)), 1)
    h.remove_edge((0, 1, 5))
    assert not is_l_tight_ham_cycle(h, tuple(range(6)), 2)
    assert is_l_tight_ham_cycle(h, tuple(range(6)), 1)  # windows skip that triple
    assert not is_l_tight_ham_cycle(complete(5, 3), tuple(range(5)), 1)  # 2 | 5 fails
    assert not is_l_tight_ham_cycle(complete(6, 3), (0, 1, 2, 3, 4, 4), 2)
    assert not is_l_tight_ham_cycle(complete(6, 3), (0, 1, 2, 3, 4), 2)


def test_contains_pattern_finds_and_respects_forbidden():
    p4 = build_pattern("path", 2, 1, 4)
    h = empty(6, 2)
    for e in [(0, 1), (1, 2), (2, 3), (3, 4)]:
        h.add_edge(e)
    emb = contains_pattern(h, p4)
    assert emb is not None
    for w in p4.edges():
        assert h.has_edge(tuple(sorted(emb[v] for v in w)))
    # the only copies are 0-1-2-3 and 1-2-3-4
    assert contains_pattern(h, p4, forbidden=(0,)) is not None
    assert contains_pattern(h, p4, forbidden=(2,)) is None
    assert contains_pattern(h, p4, forbidden=()) == emb


def test_contains_pattern_in_complete():
    assert contains_pattern(complete(6, 3), build_pattern("cycle", 3, 2, 6)) is not None
    assert contains_pattern(complete(5, 3), build_pattern("cycle", 3, 2, 6)) is None


def test_pattern_free_constructions():
    from tighthyp import triangle_packing

    p4 = build_pattern("path", 2, 1, 4)
    for m in (6, 7, 9):
        assert contains_pattern(triangle_packing(m), p4) is None


def test_good_tuple_on_complete():
    params = GoodTupleParams(3, Fraction(1, 100), Fraction(1, 10))
    h = complete(12, 3)
    assert is_good_tuple(h, (0, 11), params)
    assert is_good_tuple(h, (3, 2), params)
    assert not is_good_tuple(h, (0, 0), params)  # repeats never qualify
    with pytest.raises(ValueError):
        is_good_tuple(h, (0, 1, 2), params)  # ends have exactly k-1 entries


def test_good_tuple_sparse_failure():
    # rho loose enough that undamaged vertices still clear the bar
    params = GoodTupleParams(3, Fraction(1, 100), Fraction(1, 2))
    h = complete(12, 3)
    for e in list(h.edges()):
        if 0 in e:
            h.remove_edge(e)
    h.add_edge((0, 1, 2))
    assert not is_good_tuple(h, (0, 1), params)
    assert is_good_tuple(h, (5, 6), params)


def test_good_tuple_float_params_match_exact():
    h = random_graph(15, 3, 0.9, seed=4)
    exact = GoodTupleParams(3, Fraction(1, 50), Fraction(1, 8))
    approx = GoodTupleParams(3, 0.02, 0.125)
    for x in [(0, 3), (3, 7), (14, 2), (1, 2)]:
        assert is_good_tuple(h, x, exact) == is_good_tuple(h, x, approx)


def test_pancyclicity():
    assert is_l_pancyclic(complete(8, 2), 1)
    cyc = empty(8, 2)
    for i in range(8):
        cyc.add_edge(tuple(sorted((i, (i + 1) % 8))))
    assert not is_l_pancyclic(cyc, 1)  # no triangle
    assert is_l_pancyclic(complete(7, 3), 2)
