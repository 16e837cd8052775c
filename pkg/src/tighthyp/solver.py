"""Exact search for spanning cycles with a given window overlap.

The solver fills a cyclic ordering position by position and tests each
width-k window the moment its last position is placed, so dead branches die
at the first broken window. Candidate masks for completed windows are cached
per (k-1)-set; everything is integer bitmask arithmetic.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

from .hypercore import Hypergraph
from .motifs import TightPattern, is_l_tight_ham_cycle

ENUMERATION_CAP = 5_000_000


@dataclass
class SearchConfig:
    node_budget: Optional[int] = None
    determinism: bool = True
    symmetry_reduction: bool = True


@dataclass
class SearchResult:
    status: str  # "found" | "refuted" | "exhausted"
    ordering: Optional[tuple[int, ...]]
    nodes: int


class _Search:
    def __init__(self, h: Hypergraph, l: int, cfg: SearchConfig):
        n, k = h.n, h.k
        self.h = h
        self.n = n
        self.k = k
        self.s = k - l
        self.cfg = cfg
        self.nodes = 0
        self.budget = cfg.node_budget
        # window starts are the multiples of the stride; a window is checked
        # once its last position (cyclically) is filled
        self.check_at: list[list[tuple[int, ...]]] = [[] for _ in range(n)]
        for a in range(0, n, self.s):
            w = tuple((a + i) % n for i in range(k))
            wrapped = a + k > n
            last = n - 1 if wrapped else a + k - 1
            self.check_at[last].append(w)
        self.mask_cache: dict[tuple[int, ...], int] = {}
        if cfg.determinism:
            self.order = list(range(n))
        else:
            deg = [0] * n
            for row in h.edge_matrix():
                for v in row:
                    deg[int(v)] += 1
            self.order = sorted(range(n), key=lambda v: (deg[v], v))

    def candidate_mask(self, known: tuple[int, ...]) -> int:
        m = self.mask_cache.get(known)
        if m is None:
            m = 0
            has = self.h.has_edge
            for v in range(self.n):
                if v not in known and has(known + (v,)):
                    m |= 1 << v
            self.mask_cache[known] = m
        return m

    def run(self) -> SearchResult:
        n = self.n
        assign = [-1] * n
        if self.cfg.symmetry_reduction:
            # cyclic shifts by the stride preserve the window family, so
            # vertex 0 can be forced into the first stride block
            status = self._place(assign, 0, (1 << n) - 1, anchored=True)
        else:
            status = self._place(assign, 0, (1 << n) - 1, anchored=False)
        if status == "found":
            ordering = tuple(assign)
            assert is_l_tight_ham_cycle(self.h, ordering, self.k - self.s)
            return SearchResult("found", ordering, self.nodes)
        return SearchResult(status, None, self.nodes)

    def _place(self, assign: list[int], pos: int, avail: int, anchored: bool) -> str:
        if pos == self.n:
            return "found"
        self.nodes += 1
        if self.budget is not None and self.nodes > self.budget:
            return "exhausted"
        mask = avail
        if anchored:
            if pos == self.s - 1 and (avail >> 0) & 1:
                mask = 1  # vertex 0 unplaced and this is its last allowed slot
            elif pos >= self.s:
                mask &= ~1
        for w in self.check_at[pos]:
            known = tuple(sorted(assign[q] for q in w if q != pos))
            mask &= self.candidate_mask(known)
            if not mask:
                return "refuted"
        reflect = (
            anchored and self.s == 1 and pos == self.n - 1 and self.n >= 3
        )
        for v in self.order:
            bit = 1 << v
            if not (mask & bit):
                continue
            if reflect and v < assign[1]:
                continue  # mirror image already visited
            assign[pos] = v
            sub = self._place(assign, pos + 1, avail & ~bit, anchored)
            if sub != "refuted":
                return sub
        assign[pos] = -1
        return "refuted"


def find_hamcycle(h: Hypergraph, l: int, cfg: Optional[SearchConfig] = None) -> SearchResult:
    """Search for a spanning cycle with overlap l.

    Returns status "found" with a witness ordering, "refuted" after a full
    (symmetry-reduced) search, or "exhausted" when the node budget ran out.
    """
    if cfg is None:
        cfg = SearchConfig()
    n, k = h.n, h.k
    if not (0 <= l < k):
        raise ValueError(f"need 0 <= l < k, got l={l}, k={k}")
    if n % (k - l) != 0:
        return SearchResult("refuted", None, 0)
    return _Search(h, l, cfg).run()


def enumerate_copies(n: int, p: TightPattern) -> list[tuple[tuple[int, ...], ...]]:
    """All labeled copies of p on vertices of range(n), as sorted edge tuples.

    Walks the t-permutations of range(n) and dedupes edge sets, so it is for
    desk-scale patterns only; guarded by an operation cap.
    """
    t = p.t
    if t > n:
        return []
    count = 1
    for i in range(t):
        count *= n - i
    if count > ENUMERATION_CAP:
        raise ValueError(f"{count} orderings exceed the enumeration cap")
    pat_edges = p.edges()
    seen: set[frozenset] = set()
    out: list[tuple[tuple[int, ...], ...]] = []
    for perm in itertools.permutations(range(n), t):
        copy = frozenset(tuple(sorted(perm[q] for q in w)) for w in pat_edges)
        if len(copy) == len(pat_edges) and copy not in seen:
            seen.add(copy)
            out.append(tuple(sorted(copy)))
    out.sort()
    return out


def count_extensions(h: Hypergraph, partial: Sequence[int], l: int) -> int:
    """How many vertices can legally fill the next position of the ordering.

    Window semantics match find_hamcycle: only windows whose last position is
    the next position are tested, wrapping windows wait for the final slot.
    """
    n, k = h.n, h.k
    s = k - l
    if n % s != 0:
        raise ValueError(f"need (k-l) | n, got n={n}, k={k}, l={l}")
    pos = len(partial)
    if pos >= n:
        raise ValueError("ordering already complete")
    if len(set(partial)) != pos:
        raise ValueError("repeated vertices in partial ordering")
    cand = 0
    for v in range(n):
        if v in partial:
            continue
        ok = True
        for a in range(0, n, s):
            w = [(a + i) % n for i in range(k)]
            wrapped = a + k > n
            last = n - 1 if wrapped else a + k - 1
            if last != pos:
                continue
            if not h.has_edge([v if q == pos else partial[q] for q in w]):
                ok = False
                break
        if ok:
            cand += 1
    return cand
