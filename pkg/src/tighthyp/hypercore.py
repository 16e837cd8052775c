"""k-uniform hypergraphs on dense integer vertices.

Edges are k-subsets of range(n), addressed by their colexicographic rank.
Membership lives in a numpy bool table when C(n,k) fits under a memory cap,
otherwise in a plain set of ranks; both give O(1) queries.
"""
from __future__ import annotations

import math
from typing import Iterable, Iterator, Sequence

import numpy as np

# above this many k-sets the bool membership table is replaced by a hash set
TABLE_CAP = 1 << 26


def nck(n: int, k: int) -> int:
    if k < 0 or n < 0:
        return 0
    return math.comb(n, k)


def rank_set(vs: Sequence[int]) -> int:
    """Colex rank of a strictly increasing vertex sequence."""
    r = 0
    for i, c in enumerate(vs):
        r += math.comb(c, i + 1)
    return r


def unrank_set(r: int, k: int) -> tuple[int, ...]:
    """Inverse of rank_set: the k-set of colex rank r."""
    out = []
    for i in range(k, 0, -1):
        # largest c with C(c, i) <= r
        c = i - 1
        while math.comb(c + 1, i) <= r:
            c += 1
        out.append(c)
        r -= math.comb(c, i)
    out.reverse()
    return tuple(out)


def _comb_column(n: int, i: int) -> np.ndarray:
    # C(c, i) for c = 0..n-1, int64; safe since all our C(n,k) stay below 2**62
    col = np.zeros(n, dtype=np.int64)
    for c in range(n):
        col[c] = math.comb(c, i)
    return col


def unrank_matrix(ranks: np.ndarray, n: int, k: int) -> np.ndarray:
    """Vectorized unrank: (E,) ranks -> (E, k) sorted vertex matrix."""
    r = np.asarray(ranks, dtype=np.int64).copy()
    out = np.empty((len(r), k), dtype=np.int64)
    for i in range(k, 0, -1):
        col = _comb_column(n, i)
        idx = np.searchsorted(col, r, side="right") - 1
        out[:, i - 1] = idx
        r -= col[idx]
    return out


def rank_matrix(m: np.ndarray) -> np.ndarray:
    """Vectorized rank of an (E, k) matrix of sorted vertex rows."""
    m = np.asarray(m, dtype=np.int64)
    n = int(m.max()) + 1 if m.size else 1
    r = np.zeros(len(m), dtype=np.int64)
    for i in range(m.shape[1]):
        r += _comb_column(n, i + 1)[m[:, i]]
    return r


class Hypergraph:
    """n vertices 0..n-1, uniformity k, edge set of k-subsets.

    k = 1 is tolerated (it arises as the link of a 2-graph); public
    constructors below insist on k >= 2.
    """

    __slots__ = ("n", "k", "_m", "_table", "_set")

    def __init__(self, n: int, k: int, edges: Iterable[Sequence[int]] = ()):
        if not (1 <= k <= n):
            raise ValueError(f"need 1 <= k <= n, got k={k}, n={n}")
        self.n = n
        self.k = k
        self._m = math.comb(n, k)
        if self._m <= TABLE_CAP:
            self._table: np.ndarray | None = np.zeros(self._m, dtype=bool)
            self._set: set[int] | None = None
        else:
            self._table = None
            self._set = set()
        for e in edges:
            self.add_edge(e)

    # -- construction helpers ------------------------------------------------

    @classmethod
    def from_ranks(cls, n: int, k: int, ranks: Iterable[int]) -> "Hypergraph":
        h = cls(n, k)
        if h._table is not None:
            idx = np.fromiter(ranks, dtype=np.int64)
            if idx.size:
                if idx.min() < 0 or idx.max() >= h._m:
                    raise ValueError("edge rank out of range")
                h._table[idx] = True
        else:
            for r in ranks:
                if not (0 <= r < h._m):
                    raise ValueError("edge rank out of range")
                h._set.add(int(r))
        return h

    @classmethod
    def from_table(cls, n: int, k: int, table: np.ndarray) -> "Hypergraph":
        h = cls(n, k)
        if h._table is None:
            h._set = set(np.flatnonzero(table).tolist())
        else:
            if len(table) != h._m:
                raise ValueError("table length mismatch")
            h._table = table.astype(bool, copy=True)
        return h

    def copy(self) -> "Hypergraph":
        h = Hypergraph(self.n, self.k)
        if self._table is not None:
            h._table = self._table.copy()
        else:
            h._set = set(self._set)
        return h

    # -- core queries ---------------------------------------------------------

    def _check_edge(self, e: Sequence[int]) -> tuple[int, ...]:
        t = tuple(sorted(e))
        if len(t) != self.k or len(set(t)) != self.k:
            raise ValueError(f"edge must be {self.k} distinct vertices: {e}")
        if t[0] < 0 or t[-1] >= self.n:
            raise ValueError(f"vertex out of range in edge {e}")
        return t

    def has_edge(self, e: Iterable[int]) -> bool:
        t = tuple(sorted(e))
        if len(t) != self.k or t[0] < 0 or t[-1] >= self.n:
            return False
        r = rank_set(t)
        if self._table is not None:
            return bool(self._table[r])
        return r in self._set

    def has_rank(self, r: int) -> bool:
        if self._table is not None:
            return bool(self._table[r])
        return r in self._set

    def add_edge(self, e: Sequence[int]) -> None:
        r = rank_set(self._check_edge(e))
        if self._table is not None:
            self._table[r] = True
        else:
            self._set.add(r)

    def remove_edge(self, e: Sequence[int]) -> None:
        r = rank_set(self._check_edge(e))
        if self._table is not None:
            self._table[r] = False
        else:
            self._set.discard(r)

    def edge_count(self) -> int:
        if self._table is not None:
            return int(self._table.sum())
        return len(self._set)

    def edge_ranks(self) -> np.ndarray:
        if self._table is not None:
            return np.flatnonzero(self._table).astype(np.int64)
        return np.array(sorted(self._set), dtype=np.int64)

    def edges(self) -> Iterator[tuple[int, ...]]:
        """Edges as sorted vertex tuples, in colex rank order."""
        for r in self.edge_ranks():
            yield unrank_set(int(r), self.k)

    def edge_matrix(self) -> np.ndarray:
        """(E, k) matrix of sorted vertex rows, colex rank order."""
        return unrank_matrix(self.edge_ranks(), self.n, self.k)

    def max_edges(self) -> int:
        return self._m

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return (self.n, self.k) == (other.n, other.k) and np.array_equal(
            self.edge_ranks(), other.edge_ranks()
        )

    def __repr__(self) -> str:
        return f"Hypergraph(n={self.n}, k={self.k}, edges={self.edge_count()})"

    # -- degrees ----------------------------------------------------------------

    def degree(self, S: Sequence[int]) -> int:
        """Number of edges containing the vertex set S, 1 <= |S| <= k-1.

        Iterates the C(n-d, k-d) supersets instead of keeping degree maps;
        callers that need degrees in bulk build a table (see absorb).
        """
        t = tuple(sorted(S))
        d = len(t)
        if not (1 <= d <= self.k - 1):
            raise ValueError(f"degree needs 1 <= |S| <= k-1, got {d}")
        if len(set(t)) != d:
            raise ValueError(f"repeated entries in {S!r}")
        if t[0] < 0 or t[-1] >= self.n:
            raise ValueError(f"vertex out of range in {S!r}")
        rest = [v for v in range(self.n) if v not in t]
        cnt = 0
        import itertools

        for comb in itertools.combinations(rest, self.k - d):
            if self.has_edge(t + comb):
                cnt += 1
        return cnt

    def degree_table(self, d: int) -> np.ndarray:
        """Degrees of all d-subsets, indexed by colex rank; numpy int64."""
        if not (1 <= d <= self.k - 1):
            raise ValueError(f"need 1 <= d <= k-1, got d={d}")
        out = np.zeros(math.comb(self.n, d), dtype=np.int64)
        em = self.edge_matrix()
        if len(em) == 0:
            return out
        import itertools

        for cols in itertools.combinations(range(self.k), d):
            sub = em[:, cols]
            np.add.at(out, rank_matrix(sub), 1)
        return out

    def min_degree(self, d: int) -> int:
        """delta_d: minimum degree over all d-sets; d = 0 gives the edge count."""
        if d == 0:
            return self.edge_count()
        return int(self.degree_table(d).min())

    # -- derived graphs ----------------------------------------------------------

    def link(self, v: int) -> "Hypergraph":
        """The (k-1)-graph of edge remainders through v, on n-1 vertices.

        Vertices w != v are relabeled order-preservingly to w - (w > v).
        For k = 2 the result is 1-uniform (a vertex subset in edge clothing).
        """
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range")
        if self.k < 2:
            raise ValueError("link needs k >= 2")
        lk = Hypergraph(self.n - 1, self.k - 1)
        em = self.edge_matrix()
        if len(em):
            mask = (em == v).any(axis=1)
            rem = em[mask]
            if len(rem):
                rem = rem[rem != v].reshape(len(rem), self.k - 1)
                rem = rem - (rem > v)
                for r in rank_matrix(rem):
                    if lk._table is not None:
                        lk._table[r] = True
                    else:
                        lk._set.add(int(r))
        return lk

    def link_edges_raw(self, v: int) -> list[tuple[int, ...]]:
        """Edge remainders through v in original labels, unrelabeled."""
        if not (0 <= v < self.n):
            raise ValueError(f"vertex {v} out of range")
        em = self.edge_matrix()
        out = []
        for row in em:
            if v in row:
                out.append(tuple(int(w) for w in row if w != v))
        return out

    def induced(self, keep: Iterable[int]) -> "Hypergraph":
        """Drop every edge touching a vertex outside keep; labels unchanged."""
        keep_mask = np.zeros(self.n, dtype=bool)
        keep_mask[list(keep)] = True
        h = Hypergraph(self.n, self.k)
        em = self.edge_matrix()
        if len(em):
            ok = keep_mask[em].all(axis=1)
            ranks = self.edge_ranks()[ok]
            if h._table is not None:
                h._table[ranks] = True
            else:
                h._set = set(ranks.tolist())
        return h


# -- public constructors ---------------------------------------------------------


def complete(n: int, k: int) -> Hypergraph:
    """The complete k-graph on n vertices: C(n,k) edges."""
    if k < 2:
        raise ValueError(f"uniformity must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    h = Hypergraph(n, k)
    if h._table is not None:
        h._table[:] = True
    else:
        h._set = set(range(h._m))
    return h


def empty(n: int, k: int) -> Hypergraph:
    if k < 2:
        raise ValueError(f"uniformity must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    return Hypergraph(n, k)


def random_graph(n: int, k: int, p: float, seed: int) -> Hypergraph:
    """Each k-set kept independently with probability p; reproducible by seed."""
    if not (0.0 <= p <= 1.0):
        raise ValueError(f"p must be in [0,1], got {p}")
    if k < 2:
        raise ValueError(f"uniformity must be >= 2, got {k}")
    if k > n:
        raise ValueError(f"need k <= n, got k={k}, n={n}")
    rng = np.random.default_rng(seed)
    m = math.comb(n, k)
    if m <= TABLE_CAP:
        return Hypergraph.from_table(n, k, rng.random(m) < p)
    h = Hypergraph(n, k)
    h._set = set(np.flatnonzero(rng.random(m) < p).tolist())
    return h


def non_edge_count(h: Hypergraph) -> int:
    return h.max_edges() - h.edge_count()


# -- isomorphism code -------------------------------------------------------------

CANONICAL_N_CAP = 10


def canonical_code(h: Hypergraph) -> bytes:
    """A permutation-invariant code: equal codes iff isomorphic graphs.

    Minimizes, over vertex relabelings, the edge bitmap read block by block
    (block j = ranks of edges inside the first j relabeled vertices), which
    lets a DFS prune as soon as a partial relabeling is beaten. Factorial in
    the worst case, hence the hard n cap.
    """
    n, k = h.n, h.k
    if n > CANONICAL_N_CAP:
        raise ValueError(f"canonical_code is guarded to n <= {CANONICAL_N_CAP}")
    e = h.edge_count()
    if e == 0 or e == h.max_edges():
        # every permutation fixes these; avoid walking n! ties
        return f"{n},{k},trivial,{e}".encode()

    edges = [frozenset(t) for t in h.edges()]
    # edges incident to each vertex, for incremental completion
    by_vertex: list[list[frozenset]] = [[] for _ in range(n)]
    for ed in edges:
        for v in ed:
            by_vertex[v].append(ed)

    best: list[tuple[int, ...] | None] = [None]

    def block_of(prefix_img: dict[int, int], new_src: int, depth: int) -> tuple[int, ...]:
        # ranks of edges that became fully mapped by assigning new_src -> depth-1
        done = []
        for ed in by_vertex[new_src]:
            if all(u in prefix_img for u in ed):
                done.append(rank_set(sorted(prefix_img[u] for u in ed)))
        done.sort()
        return tuple(done)

    def dfs(img: dict[int, int], acc: list[tuple[int, ...]], depth: int) -> None:
        if depth == n:
            code = tuple(acc)
            if best[0] is None or code < best[0]:
                best[0] = code
            return
        for src in range(n):
            if src in img:
                continue
            img[src] = depth
            blk = block_of(img, src, depth)
            acc.append(blk)
            # prefix comparison against the incumbent is a valid bound:
            # blocks are determined in depth order and compared in that order
            if best[0] is None or tuple(acc) <= best[0][: len(acc)]:
                dfs(img, acc, depth + 1)
            acc.pop()
            del img[src]

    dfs({}, [], 0)
    flat = [n, k]
    for blk in best[0]:
        flat.append(len(blk))
        flat.extend(blk)
    return np.array(flat, dtype=np.int64).tobytes()


# -- text file format ----------------------------------------------------------------
#
# line 1: "n k"; every following non-empty, non-comment line is one edge as k
# space-separated vertex indices; '#' starts a comment line.


def write_graph(h: Hypergraph, path: str) -> None:
    with open(path, "w") as f:
        f.write(f"{h.n} {h.k}\n")
        for t in sorted(h.edges()):
            f.write(" ".join(map(str, t)) + "\n")


def read_graph(path: str) -> Hypergraph:
    with open(path) as f:
        header = None
        edges = []
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                parts = line.split()
                if len(parts) != 2:
                    raise ValueError(f"bad header line: {line!r}")
                header = (int(parts[0]), int(parts[1]))
                continue
            edges.append([int(x) for x in line.split()])
        if header is None:
            raise ValueError("missing 'n k' header")
    n, k = header
    return Hypergraph(n, k, edges)
