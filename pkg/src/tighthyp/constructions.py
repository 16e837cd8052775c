"""Extremal and near-extremal constructions.

The common shape is a complete graph on all but one vertex, plus a special
vertex whose link is engineered to block every spanning cycle while keeping
as many edges as possible.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .hypercore import Hypergraph, complete, nck


def clique_plus_link(n: int, k: int, link: Hypergraph) -> Hypergraph:
    """Complete k-graph on vertices 0..n-2, vertex n-1 attached through link.

    link must be (k-1)-uniform on n-1 vertices; each of its edges S becomes
    the edge S + {n-1}.
    """
    if link.k != k - 1 or link.n != n - 1:
        raise ValueError(
            f"link must be ({k - 1})-uniform on {n - 1} vertices, "
            f"got k={link.k}, n={link.n}"
        )
    h = Hypergraph(n, k)
    for e in itertools.combinations(range(n - 1), k):
        h.add_edge(e)
    for s in link.edges():
        h.add_edge(tuple(s) + (n - 1,))
    return h


def ore_graph(n: int) -> Hypergraph:
    """K_(n-1) plus a pendant vertex: C(n-1,2)+1 edges, no spanning cycle."""
    if n < 4:
        raise ValueError(f"need n >= 4, got {n}")
    link = Hypergraph(n - 1, 1, [(0,)])
    return clique_plus_link(n, 2, link)


def star_link(m: int, k: int) -> Hypergraph:
    """(k-1)-sets through vertex 0 on m vertices: C(m-1, k-2) edges."""
    if k < 2 or m < k - 1:
        raise ValueError(f"bad star link m={m}, k={k}")
    h = Hypergraph(m, k - 1)
    for rest in itertools.combinations(range(1, m), k - 2):
        h.add_edge((0,) + rest)
    return h


def kk_lower(n: int, k: int) -> Hypergraph:
    """Clique plus a star-linked vertex: C(n-1,k) + C(n-2,k-2) edges.

    No tight spanning cycle exists: three consecutive windows through the
    special vertex would need two disjoint link edges, but every link edge
    holds the star center.
    """
    if n < 2 * k - 1:
        raise ValueError(f"need n >= 2k-1 = {2 * k - 1}, got n={n}")
    return clique_plus_link(n, k, star_link(n - 1, k))


def triangle_packing(m: int) -> Hypergraph:
    """Vertex-disjoint triangles, plus one extra edge when m = 3q + 2.

    Components are triangles or single edges, so no path on four vertices
    exists; the edge count m - (0 if 3 | m else 1) is maximum for that.
    """
    if m < 2:
        raise ValueError(f"need m >= 2, got {m}")
    h = Hypergraph(m, 2)
    q = m // 3
    for i in range(q):
        a, b, c = 3 * i, 3 * i + 1, 3 * i + 2
        h.add_edge((a, b))
        h.add_edge((a, c))
        h.add_edge((b, c))
    if m % 3 == 2:
        h.add_edge((m - 2, m - 1))
    return h


@dataclass
class BlockDesign:
    """b blocks of size s on m points, pairwise sharing < t points.

    With t = (s-1)//2 this is a partial Steiner system: every t-subset lies
    in at most one block.
    """

    m: int
    s: int
    b: int
    blocks: tuple[tuple[int, ...], ...]

    @property
    def t(self) -> int:
        return (self.s - 1) // 2

    def is_valid(self) -> bool:
        seen: set[tuple[int, ...]] = set()
        for blk in self.blocks:
            if len(blk) != self.s or len(set(blk)) != self.s:
                return False
            if any(v < 0 or v >= self.m for v in blk):
                return False
            for sub in itertools.combinations(sorted(blk), self.t):
                if sub in seen:
                    return False
                seen.add(sub)
        return len(self.blocks) == self.b


def greedy_partial_steiner(m: int, s: int, b: int, seed: int) -> BlockDesign:
    """Randomized greedy packing of b blocks; may return fewer when stuck.

    Draws random s-subsets and keeps those whose t-subsets are all uncovered,
    stopping after 50*m failed draws.
    """
    if s < 3 or s % 2 == 0:
        raise ValueError(f"block size must be odd and >= 3, got {s}")
    if m < s:
        raise ValueError(f"need m >= s, got m={m}, s={s}")
    t = (s - 1) // 2
    rng = np.random.default_rng(seed)
    covered: set[tuple[int, ...]] = set()
    blocks: list[tuple[int, ...]] = []
    misses = 0
    cap = 50 * m
    while len(blocks) < b and misses < cap:
        blk = tuple(sorted(rng.choice(m, size=s, replace=False).tolist()))
        subs = list(itertools.combinations(blk, t))
        if any(sub in covered for sub in subs):
            misses += 1
            continue
        covered.update(subs)
        blocks.append(blk)
    return BlockDesign(m, s, len(blocks), tuple(blocks))


def tuza_construction(n: int, k: int, design: Optional[BlockDesign] = None,
                      seed: int = 0) -> Hypergraph:
    """Clique plus a vertex whose link is a union of small cliques.

    The link takes all (k-1)-subsets inside each block of a partial Steiner
    system with blocks of size 2k-3 on n-1 points. Any three consecutive
    windows of a tight spanning cycle through the special vertex would force
    a (k-2)-set into two different blocks.
    """
    if k < 3:
        raise ValueError(f"need k >= 3, got {k}")
    s = 2 * k - 3
    if design is None:
        # aim for the full Steiner count; a partial result still yields a graph
        target = nck(n - 1, k - 2) // nck(s, k - 2)
        design = greedy_partial_steiner(n - 1, s, target, seed)
    if design.m != n - 1 or design.s != s:
        raise ValueError(
            f"design must have m={n - 1}, s={s}, got m={design.m}, s={design.s}"
        )
    if not design.is_valid():
        raise ValueError("design is not a valid partial Steiner system")
    link = Hypergraph(n - 1, k - 1)
    for blk in design.blocks:
        for e in itertools.combinations(blk, k - 1):
            link.add_edge(e)
    return clique_plus_link(n, k, link)
