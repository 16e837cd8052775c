"""Exact extremal numbers for small pattern-free hypergraphs.

ex(n, P) is computed as C(n,k) minus a minimum hitting set of the copies of
P in the complete graph: every copy must lose an edge, and a smallest set of
lost edges leaves a maximum P-free graph. The hitting set is found by
branch and bound with a disjoint-copy packing lower bound; a 2^C(n,k) numpy
sweep serves as an independent check at very small sizes.
"""
from __future__ import annotations

import json
import math
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from .hypercore import Hypergraph, complete, nck, rank_set, unrank_set
from .motifs import TightPattern, build_P, build_pattern, contains_pattern
from .solver import enumerate_copies, find_hamcycle, SearchConfig

SWEEP_CAP = 24  # largest C(n,k) for the exhaustive subgraph sweeps
PACKING_REFRESH = 64  # nodes between packing lower-bound recomputations


class BudgetError(RuntimeError):
    def __init__(self, nodes: int, best: Optional[int] = None):
        super().__init__(f"node budget exhausted after {nodes} nodes")
        self.nodes = nodes
        self.best = best


@dataclass
class ExtremalResult:
    n: int
    k: int
    pattern: TightPattern
    value: int
    witness: Hypergraph
    certificate: dict


@dataclass
class ThresholdResult:
    n: int
    k: int
    l: int
    d: int
    mode: str  # "exact" | "sampled"
    value: int
    ci_low: int
    ci_high: int
    witness: Optional[Hypergraph] = None
    meta: dict = field(default_factory=dict)


# -- minimum hitting set over pattern copies -----------------------------------


class _HittingSearch:
    def __init__(self, copies: list[tuple[int, ...]], budget: Optional[int]):
        self.copies = [tuple(c) for c in copies]
        self.budget = budget
        self.nodes = 0
        self.edge_to: dict[int, list[int]] = {}
        for cid, c in enumerate(self.copies):
            for e in c:
                self.edge_to.setdefault(e, []).append(cid)
        self.freq = {e: len(cids) for e, cids in self.edge_to.items()}
        ncop = len(self.copies)
        self.hits = [0] * ncop  # deletions landing in each copy
        self.cand: list[set[int]] = [set(c) for c in self.copies]
        self.deleted: list[int] = []
        self.best_set: Optional[list[int]] = None
        self.best_size = 0
        self.packing: list[int] = []
        self.packing_alive = 0

    # greedy max-coverage hitting set, used as the initial incumbent
    def _greedy_upper(self) -> list[int]:
        unhit = set(range(len(self.copies)))
        out = []
        while unhit:
            e = max(
                self.edge_to,
                key=lambda e: (sum(1 for c in self.edge_to[e] if c in unhit), -e),
            )
            out.append(e)
            for c in self.edge_to[e]:
                unhit.discard(c)
        return out

    # pairwise edge-disjoint unhit copies: each forces one more deletion
    def _refresh_packing(self) -> None:
        used: set[int] = set()
        packing = []
        order = sorted(
            (cid for cid in range(len(self.copies)) if self.hits[cid] == 0),
            key=lambda cid: (len(self.cand[cid]), cid),
        )
        for cid in order:
            if any(e in used for e in self.copies[cid]):
                continue
            packing.append(cid)
            used.update(self.copies[cid])
        self.packing = packing
        self.packing_alive = len(packing)

    def _delete(self, e: int) -> list[int]:
        self.deleted.append(e)
        newly = []
        for cid in self.edge_to[e]:
            self.hits[cid] += 1
            if self.hits[cid] == 1:
                newly.append(cid)
                if cid in self._packing_set:
                    self.packing_alive -= 1
        return newly

    def _undelete(self, e: int, newly: list[int]) -> None:
        self.deleted.pop()
        for cid in self.edge_to[e]:
            self.hits[cid] -= 1
        for cid in newly:
            if cid in self._packing_set:
                self.packing_alive += 1

    def run(self) -> tuple[int, list[int], dict]:
        if not self.copies:
            return 0, [], {"nodes": 0, "greedy_upper": 0, "root_packing": 0}
        greedy = self._greedy_upper()
        self.best_set = list(greedy)
        self.best_size = len(greedy)
        self._refresh_packing()
        self._packing_set = set(self.packing)
        root_packing = self.packing_alive
        self._dfs()
        cert = {
            "nodes": self.nodes,
            "greedy_upper": len(greedy),
            "root_packing": root_packing,
        }
        return self.best_size, sorted(self.best_set), cert

    def _dfs(self) -> None:
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            raise BudgetError(self.nodes, self.best_size)
        if self.nodes % PACKING_REFRESH == 0:
            self._refresh_packing()
            self._packing_set = set(self.packing)
        if len(self.deleted) + self.packing_alive >= self.best_size:
            return
        # pick the unhit copy with the fewest surviving candidate edges
        pick = -1
        pick_len = None
        for cid in range(len(self.copies)):
            if self.hits[cid] == 0:
                m = len(self.cand[cid])
                if pick_len is None or m < pick_len:
                    pick, pick_len = cid, m
                    if m <= 1:
                        break
        if pick == -1:
            # every copy hit: incumbent improved (bound check above ensures it)
            self.best_size = len(self.deleted)
            self.best_set = list(self.deleted)
            return
        if pick_len == 0:
            return  # copy can no longer be hit under current exclusions
        order = sorted(self.cand[pick], key=lambda e: (self.freq[e], e))
        excluded_here: list[tuple[int, list[int]]] = []
        for e in order:
            newly = self._delete(e)
            self._dfs()
            self._undelete(e, newly)
            # sibling branches must hit this copy elsewhere
            removed_from = []
            for cid in self.edge_to[e]:
                if e in self.cand[cid]:
                    self.cand[cid].discard(e)
                    removed_from.append(cid)
            excluded_here.append((e, removed_from))
        for e, removed_from in reversed(excluded_here):
            for cid in removed_from:
                self.cand[cid].add(e)


def exact_ex(
    n: int,
    p: TightPattern,
    budget: Optional[int] = None,
    cache: Optional["ResultCache"] = None,
) -> ExtremalResult:
    """Maximum edges of a p-free k-graph on n vertices, with a witness.

    The witness is rebuilt from the optimal hit set and re-checked to be
    p-free before returning; maximality is what the branch and bound proves.
    """
    if p.edge_count < 1:
        raise ValueError("pattern has no edges")
    key = f"ex:n={n}:{p.describe()}"
    if cache is not None:
        got = cache.get(key)
        if got is not None:
            w = Hypergraph.from_ranks(n, p.k, got["witness_ranks"])
            return ExtremalResult(n, p.k, p, got["value"], w, got["certificate"])
    copies = enumerate_copies(n, p)
    m = nck(n, p.k)
    copy_ranks = [tuple(rank_set(e) for e in c) for c in copies]
    tau, hit, cert = _HittingSearch(copy_ranks, budget).run()
    value = m - tau
    # patterns of uniformity 1 arise as links of 2-graphs, so build the
    # witness directly instead of through the k >= 2 public constructor
    hit_set = set(hit)
    w = Hypergraph.from_ranks(n, p.k, [r for r in range(m) if r not in hit_set])
    if contains_pattern(w, p) is not None:
        raise AssertionError("hitting set left a pattern copy intact")
    cert = dict(cert, tau=tau, copies=len(copies))
    res = ExtremalResult(n, p.k, p, value, w, cert)
    if cache is not None:
        cache.put(
            key,
            {
                "value": value,
                "witness_ranks": [int(r) for r in w.edge_ranks()],
                "certificate": cert,
            },
        )
    return res


def brute_force_ex(n: int, p: TightPattern) -> tuple[int, Hypergraph]:
    """Independent maximum by sweeping all 2^C(n,k) subgraphs; tiny n only."""
    m = nck(n, p.k)
    if m > SWEEP_CAP:
        raise ValueError(f"C({n},{p.k})={m} exceeds the sweep cap {SWEEP_CAP}")
    masks = np.arange(1 << m, dtype=np.uint32)
    alive = np.ones(len(masks), dtype=bool)
    for c in enumerate_copies(n, p):
        cm = np.uint32(0)
        for e in c:
            cm |= np.uint32(1 << rank_set(e))
        alive &= (masks & cm) != cm
    if not alive.any():
        raise AssertionError("even the empty graph contains the pattern?")
    pop = np.bitwise_count(masks)
    pop_alive = np.where(alive, pop, 0)
    best = int(pop_alive.max())
    wmask = int(masks[int(pop_alive.argmax())])
    ranks = [r for r in range(m) if (wmask >> r) & 1]
    return best, Hypergraph.from_ranks(n, p.k, ranks)


# -- extremal numbers for spanning cycles ---------------------------------------


def formula_ex(
    n: int,
    k: int,
    l: int,
    budget: Optional[int] = None,
    cache: Optional["ResultCache"] = None,
) -> int:
    """C(n-1,k) plus the link part ex(n-1, P): the clique-plus-vertex value.

    This equals the extremal number for spanning cycles with overlap l once n
    is large; at small n it is still the exact edge count of the construction
    built by clique_plus_link.
    """
    if not (0 <= l < k):
        raise ValueError(f"need 0 <= l < k, got l={l}, k={k}")
    if n % (k - l) != 0:
        raise ValueError(f"need (k-l) | n, got n={n}, k={k}, l={l}")
    part = exact_ex(n - 1, build_P(k, l), budget=budget, cache=cache)
    return nck(n - 1, k) + part.value


def known_bounds(n: int, k: int, l: int, p: Optional[float] = None) -> dict:
    """Published lower/upper bounds applicable to (n, k, l); inapplicable omitted.

    tuza_steiner assumes the needed partial Steiner system exists, so it is a
    conditional bound; tuza_partial scales with the supplied achievable
    fraction p of block coverage. gkl_upper holds for every overlap l.
    """
    if not (0 <= l < k) or k < 2 or n < k + 1:
        raise ValueError(f"bad parameters n={n}, k={k}, l={l}")
    out: dict = {}
    if l == k - 1 and n >= 2 * k - 1:
        out["kk_general"] = nck(n - 1, k) + nck(n - 2, k - 2)
    if k == 3 and l == 2 and n >= 7 and (n - 1) % 3 == 0:
        out["kk_k3"] = nck(n - 1, 3) + (n - 1)
    if l == k - 1:
        out["tuza_steiner"] = nck(n - 1, k) + nck(n - 1, k - 2)
        if p is not None:
            frac = Fraction(str(p)) * nck(n - 1, k - 2)
            val = nck(n - 1, k) + frac
            out["tuza_partial"] = int(val) if frac.denominator == 1 else val
    out["gkl_upper"] = nck(n - 1, k) + (k - 1) * nck(n - 1, k - 2)
    return out


# -- degree thresholds ------------------------------------------------------------


def exact_h(n: int, k: int, l: int, d: int) -> ThresholdResult:
    """Smallest min-d-degree forcing a spanning cycle with overlap l.

    Sweeps all subgraphs (guarded to C(n,k) <= SWEEP_CAP), so the value is
    1 + the largest delta_d over cycle-free graphs; the d = 0 case is
    cross-checked against exact_ex on the spanning cycle pattern.
    """
    if not (0 <= d <= k - 1):
        raise ValueError(f"need 0 <= d <= k-1, got d={d}")
    m = nck(n, k)
    if m > SWEEP_CAP:
        raise ValueError(f"C({n},{k})={m} exceeds the sweep cap {SWEEP_CAP}")
    cyc = build_pattern("cycle", k, l, n)  # raises PatternError when degenerate
    masks = np.arange(1 << m, dtype=np.uint32)
    ham = np.zeros(len(masks), dtype=bool)
    for c in enumerate_copies(n, cyc):
        cm = np.uint32(0)
        for e in c:
            cm |= np.uint32(1 << rank_set(e))
        ham |= (masks & cm) == cm
    if d == 0:
        delta = np.bitwise_count(masks).astype(np.int64)
    else:
        delta = np.full(len(masks), np.iinfo(np.int64).max, dtype=np.int64)
        import itertools

        for S in itertools.combinations(range(n), d):
            sm = np.uint32(0)
            for rest in itertools.combinations(
                [v for v in range(n) if v not in S], k - d
            ):
                sm |= np.uint32(1 << rank_set(sorted(S + rest)))
            deg = np.bitwise_count(masks & sm).astype(np.int64)
            np.minimum(delta, deg, out=delta)
    nonham = ~ham
    hi = int(delta[nonham].max())
    value = hi + 1
    cand = np.flatnonzero(nonham & (delta == hi))
    wmask = int(masks[cand[0]])
    witness = Hypergraph.from_ranks(
        n, k, [r for r in range(m) if (wmask >> r) & 1]
    )
    if d == 0:
        check = exact_ex(n, cyc)
        assert value == check.value + 1, (value, check.value)
    return ThresholdResult(n, k, l, d, "exact", value, value, value, witness)


def sampled_h(
    n: int,
    k: int,
    l: int,
    d: int,
    samples: int,
    seed: int,
    node_budget: int = 200_000,
) -> ThresholdResult:
    """Sampling estimate of the threshold when the exhaustive sweep is out.

    For a target m, random greedy deletions from the complete graph keep
    delta_d >= m; a cycle-solver refutation on any sample proves h > m.
    Bisection over m gives value = largest proven m + 1, which is a certified
    lower bound (ci_low); ci_high is only the trivial degree cap.
    """
    if not (1 <= d <= k - 1):
        raise ValueError(f"sampled mode needs 1 <= d <= k-1, got d={d}")
    rng = np.random.default_rng(seed)
    cap = nck(n - d, k - d)

    def attempt(m: int) -> bool:
        import itertools

        for _ in range(samples):
            h = complete(n, k)
            table = {d: h.degree_table(d)}
            tab = table[d]
            ranks = rng.permutation(h.max_edges())
            for r in ranks:
                e = unrank_set(int(r), k)
                subs = [rank_set(s) for s in itertools.combinations(e, d)]
                if all(tab[sr] - 1 >= m for sr in subs):
                    h.remove_edge(e)
                    for sr in subs:
                        tab[sr] -= 1
            res = find_hamcycle(h, l, SearchConfig(node_budget=node_budget))
            if res.status == "refuted":
                return True
        return False

    lo, hi = -1, cap  # attempt(lo) trivially true via the empty-ish extreme
    if not attempt(0):
        return ThresholdResult(
            n, k, l, d, "sampled", 0, 0, cap + 1, None,
            {"samples": samples, "seed": seed},
        )
    best = 0
    lo = 0
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if attempt(mid):
            lo = mid
            best = mid
        else:
            hi = mid - 1
    return ThresholdResult(
        n, k, l, d, "sampled", best + 1, best + 1, cap + 1, None,
        {"samples": samples, "seed": seed},
    )


# -- result cache --------------------------------------------------------------------


class ResultCache:
    """A flat JSON file of computed values, keyed by printable descriptors."""

    def __init__(self, path: str):
        self.path = path
        self._data: Optional[dict] = None

    def _load(self) -> dict:
        if self._data is None:
            if os.path.exists(self.path):
                with open(self.path) as f:
                    self._data = json.load(f)
            else:
                self._data = {}
        return self._data

    def get(self, key: str) -> Optional[dict]:
        return self._load().get(key)

    def put(self, key: str, value: dict) -> None:
        data = self._load()
        data[key] = value
        fd, tmp = tempfile.mkstemp(dir=os.path.dirname(self.path) or ".")
        try:
            with os.fdopen(fd, "w") as f:
                json.dump(data, f, indent=1, sort_keys=True)
            os.replace(tmp, self.path)
        except BaseException:
            if os.path.exists(tmp):
                os.unlink(tmp)
            raise
