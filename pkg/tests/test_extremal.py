"""Extremal numbers: hitting-set search, sweeps, the closed formula, bounds,
and degree thresholds."""

from fractions import Fraction

import pytest

from tighthyp import (
    BudgetError,
    ResultCache,
    brute_force_ex,
    build_P,
    build_pattern,
    contains_pattern,
    exact_ex,
    exact_h,
    formula_ex,
    known_bounds,
    sampled_h,
)
from tighthyp.hypercore import nck

P4 = build_pattern("path", 2, 1, 4)


def test_forbidden_path_values():
    # m if 3 | m else m - 1: disjoint triangles, plus one edge for remainder 2
    want = {4: 3, 5: 4, 6: 6, 7: 6, 8: 7, 9: 9}
    for m, v in want.items():
        r = exact_ex(m, P4)
        assert r.value == v
        assert r.witness.edge_count() == v
        assert contains_pattern(r.witness, P4) is None


def test_sweep_agrees_with_search():
    for m in (4, 5, 6):
        v, w = brute_force_ex(m, P4)
        assert v == exact_ex(m, P4).value
        assert w.edge_count() == v
        assert contains_pattern(w, P4) is None
    with pytest.raises(ValueError):
        brute_force_ex(8, build_pattern("path", 3, 2, 4))  # C(8,3) > 24


def test_spanning_cycle_extremal_n6():
    for l, want in [(1, 10), (2, 14)]:
        p = build_pattern("cycle", 3, l, 6)
        r = exact_ex(6, p)
        v, _ = brute_force_ex(6, p)
        assert r.value == want and v == want


def test_budget_error():
    with pytest.raises(BudgetError) as ei:
        exact_ex(9, P4, budget=5)
    assert ei.value.nodes >= 5
    assert ei.value.best is None or ei.value.best >= 0


def test_certificate_fields():
    r = exact_ex(6, P4)
    assert r.certificate["nodes"] > 0
    assert r.certificate["tau"] == nck(6, 2) - r.value
    assert r.certificate["copies"] > 0
    assert r.n == 6 and r.k == 2


def test_formula_values():
    assert formula_ex(7, 3, 2) == 26
    assert formula_ex(10, 3, 2) == 93
    assert formula_ex(9, 3, 2) == 63
    assert formula_ex(8, 3, 1) == 35
    assert formula_ex(6, 2, 1) == 11
    with pytest.raises(ValueError):
        formula_ex(7, 3, 1)  # 2 does not divide 7


def test_known_bounds_eligibility():
    b = known_bounds(7, 3, 2)
    assert b["kk_general"] == 25
    assert b["kk_k3"] == 26
    assert b["tuza_steiner"] == 26
    assert b["gkl_upper"] == 32
    b = known_bounds(11, 3, 2, p=0.5)
    assert b["kk_general"] == 129
    assert b["tuza_steiner"] == 130
    assert b["tuza_partial"] == 125
    assert b["gkl_upper"] == 140
    b = known_bounds(8, 3, 2)  # (n-1) % 3 != 0 drops the k=3 refinement
    assert "kk_k3" not in b
    b = known_bounds(9, 4, 2)  # only the always-on upper bound survives l < k-1
    assert set(b) == {"gkl_upper"}


def test_exact_h_dirac():
    for n, want in [(4, 2), (5, 3), (6, 3)]:
        assert exact_h(n, 2, 1, 1).value == want


def test_exact_h_edge_threshold():
    r = exact_h(6, 3, 2, 0)
    assert r.value == 15
    assert r.d == 0 and r.mode == "exact"
    assert exact_h(6, 3, 1, 1).value == 5


def test_exact_h_cap():
    with pytest.raises(ValueError):
        exact_h(8, 3, 2, 1)


def test_sampled_h_brackets_truth():
    r = sampled_h(6, 2, 1, 1, samples=8, seed=3)
    assert r.mode == "sampled"
    assert r.ci_low == r.value <= r.ci_high == 6
    assert 1 <= r.value <= 3  # the exact answer is 3; sampling under-estimates


def test_result_cache(tmp_path):
    cache = ResultCache(str(tmp_path / "ex.json"))
    r1 = exact_ex(6, P4, cache=cache)
    assert (tmp_path / "ex.json").exists()
    r2 = exact_ex(6, P4, cache=cache)
    assert r2.value == r1.value
    assert r2.witness == r1.witness
    assert r2.certificate["tau"] == r1.certificate["tau"]


def test_overlap_path_extremal_matches_singleton_logic():
    # forbidding the 1-uniform two-singleton path caps a 1-graph at one edge
    p = build_P(2, 1)
    assert exact_ex(5, p).value == 1
    assert formula_ex(5, 2, 1) == nck(4, 2) + 1 == 7
