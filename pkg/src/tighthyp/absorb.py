"""Randomized absorbing pipeline for spanning cycles in dense hypergraphs.

The plan: peel the few low-degree vertices and park each inside a short
pre-embedded segment, sample small families of absorber and connector tuples,
stitch the absorbers into one path, grow it greedily until stuck, close
everything into a cycle through the segments, then insert each still-missing
vertex into the middle of some absorber. Every structural step is checked
against actual edges, so a returned ordering is always a verified cycle.

All randomness flows through one numpy generator seeded from the config;
identical inputs give identical runs.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .hypercore import Hypergraph, nck, rank_set
from .motifs import (
    GoodTupleParams,
    build_P,
    contains_pattern,
    is_l_tight_ham_cycle,
)

Number = Union[int, float, Fraction]


class StageFailure(RuntimeError):
    def __init__(self, stage: str, detail: str = ""):
        super().__init__(f"{stage}: {detail}" if detail else stage)
        self.stage = stage
        self.detail = detail


@dataclass(frozen=True)
class PipelineConfig:
    k: int
    epsilon: Number
    rho: Number
    gamma: Number
    beta: Number
    seed: int = 0
    attempts: int = 10
    stage_retries: int = 40
    override: bool = False

    def params(self) -> GoodTupleParams:
        return GoodTupleParams(self.k, self.epsilon, self.rho)


def default_constants(k: int) -> PipelineConfig:
    """The proof constants, as exact rationals.

    rho = 1/(1280 k^3) and epsilon = rho^(k-1)/22; gamma = 1/(64 k^2) and
    beta = rho. These are astronomically conservative, which is the point:
    with them the run either follows the guarantees or reports which one
    broke. with_overrides swaps in desk-scale values.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    rho = Fraction(1, 1280 * k ** 3)
    return PipelineConfig(
        k=k,
        epsilon=rho ** (k - 1) / 22,
        rho=rho,
        gamma=Fraction(1, 64 * k ** 2),
        beta=rho,
    )


def with_overrides(cfg: PipelineConfig, **kw) -> PipelineConfig:
    """Config with replaced constants, flagged as override.

    Floats are converted through their decimal string so 0.1 stays 1/10.
    When rho changes and epsilon is not supplied, epsilon follows as
    rho^(k-1)/22 to keep the constants' internal relation.
    """
    fields = {}
    for name in ("epsilon", "rho", "gamma", "beta"):
        if name in kw and kw[name] is not None:
            v = kw.pop(name)
            fields[name] = Fraction(str(v)) if isinstance(v, float) else v
    for name in ("seed", "attempts", "stage_retries"):
        if name in kw and kw[name] is not None:
            fields[name] = kw.pop(name)
    kw = {k_: v for k_, v in kw.items() if v is not None}
    if kw:
        raise TypeError(f"unknown overrides: {sorted(kw)}")
    if "rho" in fields and "epsilon" not in fields:
        fields["epsilon"] = fields["rho"] ** (cfg.k - 1) / 22
    constants_changed = any(n in fields for n in ("epsilon", "rho", "gamma", "beta"))
    return replace(cfg, override=cfg.override or constants_changed, **fields)


# -- degree tables -----------------------------------------------------------------


class DegreeTables:
    """Subset degrees of every level 1..k-1, colex-indexed numpy arrays."""

    def __init__(self, h: Hypergraph):
        self.h = h
        self.k = h.k
        self.tab = {d: h.degree_table(d) for d in range(1, h.k)}

    def deg(self, S: Sequence[int]) -> int:
        t = sorted(S)
        return int(self.tab[len(t)][rank_set(t)])

    def deg1(self, v: int) -> int:
        return int(self.tab[1][v])


def _threshold_int(rho: Number, e: int, bound: int) -> int:
    """Smallest integer degree satisfying >= (1 - rho^e) * bound."""
    r = rho ** e
    if isinstance(r, Fraction):
        num = (r.denominator - r.numerator) * bound
        return -((-num) // r.denominator)
    return math.ceil((1.0 - float(r)) * bound - 1e-12)


def good_end(
    tables: DegreeTables, x: Sequence[int], params: GoodTupleParams, n_eff: int
) -> bool:
    """Prefix degrees of the (k-1)-tuple clear the goodness thresholds."""
    k = tables.k
    if len(set(x)) != k - 1:
        return False
    for i in range(1, k):
        need = _threshold_int(params.rho, k - i, nck(n_eff - i, k - i))
        if tables.deg(x[:i]) < need:
            return False
    return True


def good_pair_fraction(
    h: Hypergraph,
    params: GoodTupleParams,
    samples: int,
    seed: int,
    n_eff: Optional[int] = None,
) -> float:
    """Fraction of uniform (2k-2)-tuples that are distinct with both ends good.

    The first end is the first k-1 entries in order, the second is the last
    k-1 reversed. Fully vectorized over precomputed degree tables.
    """
    k = h.k
    if params.k != k:
        raise ValueError(f"params built for k={params.k}, graph has k={k}")
    n = h.n if n_eff is None else n_eff
    rng = np.random.default_rng(seed)
    tables = DegreeTables(h)
    X = rng.integers(0, h.n, size=(samples, 2 * k - 2), dtype=np.int64)
    srt = np.sort(X, axis=1)
    ok = (np.diff(srt, axis=1) > 0).all(axis=1)
    for end in (X[:, : k - 1], X[:, ::-1][:, : k - 1]):
        for i in range(1, k):
            pref = np.sort(end[:, :i], axis=1)
            r = np.zeros(len(pref), dtype=np.int64)
            for j in range(i):
                col = np.array([math.comb(c, j + 1) for c in range(h.n)], dtype=np.int64)
                r += col[pref[:, j]]
            # rows with repeated entries rank out of range; they are already
            # excluded by the distinctness mask, so clamp before the lookup
            deg = tables.tab[i][np.minimum(r, len(tables.tab[i]) - 1)]
            ok &= deg >= _threshold_int(params.rho, k - i, nck(n - i, k - i))
    return float(ok.sum()) / samples


# -- absorbers ---------------------------------------------------------------------


@dataclass
class AbsorberSet:
    tuples: list[tuple[int, ...]]
    min_coverage: int
    coverage: dict[int, int]
    meta: dict = field(default_factory=dict)


def absorbs(
    h: Hypergraph,
    x: Sequence[int],
    v: int,
    params: GoodTupleParams,
    tables: Optional[DegreeTables] = None,
    n_eff: Optional[int] = None,
) -> bool:
    """Can the (2k-2)-tuple x swallow v between its halves?

    Needs the k-1 tuple windows, all k windows of x with v inserted, and
    good ends; the ends do not move when v goes in, so the path stays good.
    """
    k = h.k
    x = tuple(x)
    if len(x) != 2 * k - 2 or len(set(x)) != 2 * k - 2 or v in x:
        return False
    for j in range(k - 1):
        if not h.has_edge(x[j : j + k]):
            return False
    for j in range(k):
        if not h.has_edge((v,) + x[j : j + k - 1]):
            return False
    head = x[: k - 1]
    tail = x[: k - 2 : -1]
    if tables is not None:
        m = n_eff if n_eff is not None else h.n
        return good_end(tables, head, params, m) and good_end(tables, tail, params, m)
    from .motifs import is_good_tuple

    return is_good_tuple(h, head, params, n_eff) and is_good_tuple(
        h, tail, params, n_eff
    )


def _sample_count(rng, total_tuples: int, p: float, cap: int) -> int:
    if p >= 1.0:
        return cap
    if total_tuples < (1 << 62):
        cnt = int(rng.binomial(total_tuples, p))
    else:
        cnt = int(rng.poisson(total_tuples * p))
    return min(cnt, cap)


def build_absorbers(
    h: Hypergraph,
    cfg: PipelineConfig,
    rng: Optional[np.random.Generator] = None,
    tables: Optional[DegreeTables] = None,
    universe: Optional[Sequence[int]] = None,
    n_eff: Optional[int] = None,
) -> AbsorberSet:
    """Binomial sample of (2k-2)-tuples, filtered and made pairwise disjoint.

    Each tuple of the universe survives with probability gamma/n_eff^(2k-3),
    capped at 4*gamma*n_eff draws. Tuples failing the absorber structure are
    dropped, then every pair sharing a vertex is deleted outright. Without
    override the minimum coverage must reach gamma*n_eff/4.
    """
    k = h.k
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    if tables is None:
        tables = DegreeTables(h)
    uni = np.array(sorted(universe) if universe is not None else range(h.n))
    m = n_eff if n_eff is not None else h.n
    params = cfg.params()
    gamma = float(cfg.gamma)
    width = 2 * k - 2
    total = len(uni) ** width
    cnt = _sample_count(rng, total, gamma / m ** (width - 1), math.ceil(4 * gamma * m))
    raw = [tuple(int(w) for w in row) for row in uni[rng.integers(0, len(uni), size=(cnt, width))]] if cnt else []
    structural = [
        x
        for x in raw
        if absorbs_shape(h, x)
        and good_end(tables, x[: k - 1], params, m)
        and good_end(tables, x[: k - 2 : -1], params, m)
    ]
    counts: dict[int, int] = {}
    for x in structural:
        for w in x:
            counts[w] = counts.get(w, 0) + 1
    kept = [x for x in structural if all(counts[w] == 1 for w in x)]
    coverage = {
        int(v): sum(1 for x in kept if absorbs(h, x, int(v), params, tables, m))
        for v in uni
    }
    min_cov = min(coverage.values()) if coverage else 0
    meta = {"sampled": cnt, "structural": len(structural), "kept": len(kept)}
    if not cfg.override and min_cov * 4 < gamma * m:
        raise StageFailure(
            "absorbers", f"min coverage {min_cov} below gamma*n/4"
        )
    return AbsorberSet(kept, min_cov, coverage, meta)


def absorbs_shape(h: Hypergraph, x: Sequence[int]) -> bool:
    """Window structure of an absorber tuple, goodness not included."""
    k = h.k
    x = tuple(x)
    if len(x) != 2 * k - 2 or len(set(x)) != 2 * k - 2:
        return False
    return all(h.has_edge(x[j : j + k]) for j in range(k - 1))


# -- connectors --------------------------------------------------------------------


@dataclass
class ConnectorSet:
    tuples: list[tuple[int, ...]]
    pair_coverage: dict[tuple, int]
    meta: dict = field(default_factory=dict)


def connects(h: Hypergraph, z: Sequence[int], x: Sequence[int], y: Sequence[int]) -> bool:
    """Does z joint path ends x and y into one tight stretch?

    x is the left end read outward (nearest vertex first), y the right end
    read inward, so the local ordering is reversed(x) + z + y; all 2k-2
    width-k windows of that stretch must be edges. Overlapping inputs are
    rejected.
    """
    k = h.k
    if len(z) != k - 1 or len(x) != k - 1 or len(y) != k - 1:
        raise ValueError("all three tuples must have k-1 entries")
    allv = tuple(x) + tuple(y) + tuple(z)
    if len(set(allv)) != len(allv):
        raise ValueError("x, y, z must be pairwise disjoint with distinct entries")
    seq = tuple(reversed(x)) + tuple(z) + tuple(y)
    return all(h.has_edge(seq[a : a + k]) for a in range(len(seq) - k + 1))


def build_connectors(
    h: Hypergraph,
    cfg: PipelineConfig,
    rng: Optional[np.random.Generator] = None,
    demand: Optional[Sequence[tuple]] = None,
    universe: Optional[Sequence[int]] = None,
    n_eff: Optional[int] = None,
) -> ConnectorSet:
    """Binomial sample of (k-1)-tuples kept as a disjoint connection pool.

    Sampling probability beta/n_eff^(k-2), capped at 4*beta*n_eff draws;
    overlapping pairs are deleted. When demand pairs (x, y) are given, the
    pool members connecting each pair are counted; without override every
    demanded pair must reach beta*n_eff/4.
    """
    k = h.k
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    uni = np.array(sorted(universe) if universe is not None else range(h.n))
    m = n_eff if n_eff is not None else h.n
    beta = float(cfg.beta)
    width = k - 1
    total = len(uni) ** width
    cnt = _sample_count(rng, total, beta / m ** (width - 1), math.ceil(4 * beta * m))
    raw = [tuple(int(w) for w in row) for row in uni[rng.integers(0, len(uni), size=(cnt, width))]] if cnt else []
    distinct = [z for z in raw if len(set(z)) == width]
    counts: dict[int, int] = {}
    for z in distinct:
        for w in z:
            counts[w] = counts.get(w, 0) + 1
    kept = [z for z in distinct if all(counts[w] == 1 for w in z)]
    pair_cov: dict[tuple, int] = {}
    if demand is not None:
        for x, y in demand:
            xy = set(x) | set(y)
            c = sum(
                1
                for z in kept
                if not (set(z) & xy) and connects(h, z, x, y)
            )
            pair_cov[(tuple(x), tuple(y))] = c
            if not cfg.override and c * 4 < beta * m:
                raise StageFailure(
                    "connectors", f"pair coverage {c} below beta*n/4"
                )
    meta = {"sampled": cnt, "distinct": len(distinct), "kept": len(kept)}
    return ConnectorSet(kept, pair_cov, meta)


# -- path assembly ------------------------------------------------------------------


def _chain_ok(h: Hypergraph, seq: Sequence[int]) -> bool:
    k = h.k
    return all(h.has_edge(seq[a : a + k]) for a in range(len(seq) - k + 1))


def stitch_onepath(
    h: Hypergraph,
    absorbers: Sequence[tuple[int, ...]],
    forbidden: set[int],
    cfg: PipelineConfig,
    rng: Optional[np.random.Generator] = None,
    universe: Optional[Sequence[int]] = None,
) -> list[int]:
    """One tight path through all absorber tuples, in their given order.

    Consecutive tuples are joined by freshly sampled (k-1)-tuples that avoid
    the forbidden set, the path so far, and the next tuple; each join gets
    stage_retries draws. An empty absorber family gives an empty path.
    """
    k = h.k
    if rng is None:
        rng = np.random.default_rng(cfg.seed)
    if not absorbers:
        return []
    uni = sorted(universe) if universe is not None else list(range(h.n))
    path: list[int] = list(absorbers[0])
    for nxt in absorbers[1:]:
        tail = path[-(k - 1) :]
        head = list(nxt[: k - 1])
        blocked = forbidden | set(path) | set(nxt)
        allowed = [v for v in uni if v not in blocked]
        if len(allowed) < k - 1:
            raise StageFailure("stitch", "no room to sample a joining tuple")
        placed = False
        for _ in range(cfg.stage_retries):
            z = [int(w) for w in rng.choice(allowed, size=k - 1, replace=False)]
            if _chain_ok(h, tail + z + head):
                path.extend(z)
                path.extend(nxt)
                placed = True
                break
        if not placed:
            raise StageFailure("stitch", "no joining tuple found within retries")
    return path


def extend_path(
    h: Hypergraph,
    path: Sequence[int],
    forbidden: set[int],
    cfg: PipelineConfig,
    tables: Optional[DegreeTables] = None,
    universe: Optional[Sequence[int]] = None,
    n_eff: Optional[int] = None,
) -> list[int]:
    """Greedy growth at both ends while some append keeps the end good.

    A candidate v extends the tail when the closing window is an edge and the
    new end tuple stays good; highest static degree wins, ties to the smaller
    index. Runs until both ends are stuck, so the uncovered guarantee is a
    floor, not a stopping rule.
    """
    k = h.k
    p = list(path)
    if not p:
        return p
    if tables is None:
        tables = DegreeTables(h)
    m = n_eff if n_eff is not None else h.n
    params = cfg.params()
    uni = sorted(universe) if universe is not None else list(range(h.n))
    by_deg = sorted(uni, key=lambda v: (-tables.deg1(v), v))
    while True:
        used = forbidden | set(p)
        grew = False
        for at_tail in (True, False):
            edge_part = p[-(k - 1) :] if at_tail else p[: k - 1]
            for v in by_deg:
                if v in used:
                    continue
                if at_tail:
                    win = edge_part + [v]
                    new_end = tuple([v] + p[::-1][: k - 2])
                else:
                    win = [v] + edge_part
                    new_end = tuple([v] + p[: k - 2])
                if h.has_edge(win) and good_end(tables, new_end, params, m):
                    if at_tail:
                        p.append(v)
                    else:
                        p.insert(0, v)
                    used.add(v)
                    grew = True
                    break
        if not grew:
            return p


# -- peeling and segment embedding ----------------------------------------------------


@dataclass
class PeelResult:
    t: int
    removed: tuple[int, ...]
    case: int  # 0 none, 1 sparse special vertex, 2 dense peeled vertices
    cutoff_num: int
    final_min_degree: int
    meta: dict = field(default_factory=dict)


@dataclass
class Segment:
    seq: tuple[int, ...]
    l_eff: int
    anchor: int


def _peel_theta(cfg: PipelineConfig) -> Number:
    # the working closeness-to-complete parameter: epsilon as proved, the
    # identity-scaled rho power when running with overridden constants
    return cfg.epsilon if not cfg.override else cfg.rho ** (cfg.k - 1)


def peel_low_degree(h: Hypergraph, cfg: PipelineConfig) -> PeelResult:
    """Remove minimum-degree vertices until the rest is near-complete.

    The cutoff tracks the shrinking graph: a vertex survives when its degree
    reaches (1 - theta) * C(n'-1, k-1) among the n' remaining vertices.
    """
    k = h.k
    theta = _peel_theta(cfg)
    removed: list[int] = []
    work = h.copy()
    alive = set(range(h.n))
    cap = max(4, h.n // 4)
    while True:
        np_ = len(alive)
        if np_ < k + 1:
            raise StageFailure("peel", "peeled the graph away")
        tab = work.degree_table(1)
        need = _threshold_int(theta, 1, nck(np_ - 1, k - 1))
        worst = min(alive, key=lambda v: (tab[v], v))
        if int(tab[worst]) >= need:
            return PeelResult(
                t=len(removed),
                removed=tuple(removed),
                case=0,
                cutoff_num=need,
                final_min_degree=int(tab[worst]),
                meta={"n_prime": np_},
            )
        removed.append(worst)
        alive.discard(worst)
        work = work.induced(alive)
        if len(removed) > cap:
            raise StageFailure("peel", f"more than {cap} low-degree vertices")


def _filtered_link(
    h: Hypergraph,
    hp_tables: DegreeTables,
    v: int,
    n_prime: int,
    rho: Number,
    avoid: set[int],
) -> Hypergraph:
    """v's link with bad edges dropped, as a (k-1)-graph on h.n labels.

    An edge is bad when one of its sub-tuples has too few extensions among
    the surviving vertices: degree below (1 - rho^(k-j)) * C(n'-j, k-j) for a
    j-subset. Edges touching avoid are dropped too.
    """
    k = h.k
    import itertools

    lk = Hypergraph(h.n, k - 1)
    for s in h.link_edges_raw(v):
        if any(w in avoid for w in s):
            continue
        ok = True
        for j in range(1, k):
            for T in itertools.combinations(s, j):
                need = _threshold_int(rho, k - j, nck(n_prime - j, k - j))
                if hp_tables.deg(T) < need:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            lk.add_edge(s)
    return lk


def _lift_link_path(y: Sequence[int], v: int, k: int, l_eff: int) -> tuple[int, ...]:
    """Insert v into an embedded link path so the lifted windows are edges.

    The insertion position max(l_eff, (c-1)(k-l_eff)) puts v inside every
    width-k window that starts on the stride grid, and leaves at least l_eff
    vertices before v and k-l_eff after, which the cycle junctions need.
    """
    c = k // (k - l_eff)
    p = max(l_eff, (c - 1) * (k - l_eff))
    y = list(y)
    return tuple(y[:p] + [v] + y[p:])


def embed_segments(
    h: Hypergraph,
    peel: PeelResult,
    l: int,
    cfg: PipelineConfig,
    hp_tables: DegreeTables,
    n_prime: int,
) -> list[Segment]:
    """One pre-embedded segment per peeled vertex.

    A single pathologically sparse vertex gets the forbidden-link pattern for
    the target overlap l lifted from its own link; otherwise every peeled
    vertex must still have a third of the full degree and gets a tight
    (2k-1)-vertex segment with itself in the middle. Segments are pairwise
    disjoint and avoid all peeled vertices.
    """
    k = h.k
    if peel.t == 0:
        return []
    theta = _peel_theta(cfg)
    v1 = peel.removed[0]
    d1 = h.degree((v1,))
    # sparse means degree below (theta/2) * C(n-1, k-1)
    half = theta / 2
    bound = nck(h.n - 1, k - 1)
    if isinstance(half, Fraction):
        is_sparse = d1 * half.denominator < half.numerator * bound
    else:
        is_sparse = d1 < half * bound
    segments: list[Segment] = []
    removed_set = set(peel.removed)
    if is_sparse:
        if peel.t != 1:
            raise StageFailure(
                "embed", f"sparse special vertex with {peel.t} peeled vertices"
            )
        peel.case = 1
        lk = _filtered_link(h, hp_tables, v1, n_prime, cfg.rho, removed_set - {v1})
        pat = build_P(k, l)
        emb = contains_pattern(lk, pat, forbidden=(v1,))
        if emb is None:
            raise StageFailure("embed", "no usable link pattern at the sparse vertex")
        seq = _lift_link_path(emb, v1, k, l)
        s = k - l
        for j in range(k // s):
            assert h.has_edge(seq[j * s : j * s + k])
        segments.append(Segment(seq, l, v1))
        return segments
    peel.case = 2
    used: set[int] = set()
    tight_pat = build_P(k, k - 1)
    for vi in peel.removed:
        di = h.degree((vi,))
        if 3 * di < nck(h.n - 1, k - 1):
            raise StageFailure(
                "embed", f"peeled vertex {vi} below a third of full degree"
            )
        lk = _filtered_link(
            h, hp_tables, vi, n_prime, cfg.rho, (removed_set - {vi}) | used
        )
        emb = contains_pattern(lk, tight_pat, forbidden=(vi,))
        if emb is None:
            raise StageFailure("embed", f"no tight link path at peeled vertex {vi}")
        seq = _lift_link_path(emb, vi, k, k - 1)
        for j in range(k):
            assert h.has_edge(seq[j : j + k])
        segments.append(Segment(seq, k - 1, vi))
        used.update(w for w in seq if w != vi)
    return segments


# -- cycle closure ------------------------------------------------------------------


def close_cycle(
    h: Hypergraph,
    big: Sequence[int],
    segments: Sequence[Segment],
    pool: Sequence[tuple[int, ...]],
) -> tuple[list[int], list[tuple[int, ...]]]:
    """Join the big path and all segments into one ring using pool tuples.

    Junctions between tight stretches take the first unused pool tuple whose
    full window fan is present. A junction adjacent to a segment of smaller
    overlap is checked on that segment's stride grid instead: only windows
    starting at multiples of k - l_eff, anchored at the segment start, are
    required, which is exactly what the final rotated validation will read.
    """
    k = h.k
    pieces: list[tuple[list[int], int]] = [(list(big), k - 1)]
    for seg in segments:
        pieces.append((list(seg.seq), seg.l_eff))
    used: list[tuple[int, ...]] = []
    used_set: set[int] = set()
    ring: list[int] = []
    joints: list[int] = []
    npieces = len(pieces)
    for i in range(npieces):
        ring.extend(pieces[i][0])
        joints.append(len(ring))  # connector goes after piece i
        ring.extend([-1] * (k - 1))
    for i in range(npieces):
        left_seq, left_l = pieces[i]
        right_seq, right_l = pieces[(i + 1) % npieces]
        at = joints[i]
        placed = False
        for z in pool:
            if set(z) & used_set:
                continue
            for j in range(k - 1):
                ring[at + j] = z[j]
            if _junction_ok(h, ring, at, left_seq, left_l, right_l):
                used.append(z)
                used_set.update(z)
                placed = True
                break
        if not placed:
            for j in range(k - 1):
                ring[at + j] = -1
            raise StageFailure("close", f"no connector fits junction {i}")
    assert all(w >= 0 for w in ring)
    return ring, used


def _junction_ok(
    h: Hypergraph,
    ring: list[int],
    at: int,
    left_seq: list[int],
    left_l: int,
    right_l: int,
) -> bool:
    k = h.k
    n = len(ring)
    # windows with unfilled (-1) slots belong to a later junction, skip them
    if left_l == k - 1 and right_l == k - 1:
        for a in range(at - (k - 1), at + k - 1):
            win = [ring[(a + q) % n] for q in range(k)]
            if -1 in win:
                continue
            if not h.has_edge(win):
                return False
        return True
    # a segment with smaller overlap sits on one side; require only the
    # stride-grid windows anchored at that segment's start, which is all the
    # final rotated validation will ever read near this junction
    if right_l < k - 1:
        s = k - right_l
        anchor = at + (k - 1)  # segment start
        lo = at - (k - 1)
        hi = anchor + (k - 1)  # entry straddles reach this far in
    else:
        s = k - left_l
        anchor = at - len(left_seq)  # segment start
        lo = at - (k - 1)  # exit straddles start inside the segment tail
        hi = at + (k - 1) + (k - 2)
    for a in range(lo, hi + 1):
        if (a - anchor) % s != 0:
            continue
        win = [ring[(a + q) % n] for q in range(k)]
        if -1 in win:
            continue
        if not h.has_edge(win):
            return False
    return True


# -- leftover absorption ---------------------------------------------------------------


def absorb_leftovers(
    h: Hypergraph,
    ring: list[int],
    absorbers: Sequence[tuple[int, ...]],
    leftovers: Sequence[int],
    params: GoodTupleParams,
    tables: DegreeTables,
    n_eff: int,
    protected: Optional[tuple[int, int]] = None,
) -> list[int]:
    """Insert every leftover vertex into the middle of some absorber.

    Feasibility is the full absorber check against each vertex; a maximum
    matching guards against greedy dead ends, and each absorber is spent at
    most once. protected marks a ring stretch (by the vertices at its ends)
    that insertions must stay clear of, used when a low-overlap segment fixed
    its window grid at closure time.
    """
    if not leftovers:
        return ring
    left = sorted(leftovers)
    usable = []
    for x in absorbers:
        mid = x[h.k - 2]
        if mid in ring:
            usable.append(x)
    # bipartite feasibility, then augmenting-path matching
    feas = {
        v: [i for i, x in enumerate(usable) if absorbs(h, x, v, params, tables, n_eff)]
        for v in left
    }
    match_of_abs: dict[int, int] = {}
    match_of_v: dict[int, int] = {}

    def try_assign(v: int, seen: set[int]) -> bool:
        for i in feas[v]:
            if i in seen:
                continue
            seen.add(i)
            if i not in match_of_abs or try_assign(match_of_abs[i], seen):
                match_of_abs[i] = v
                match_of_v[v] = i
                return True
        return False

    for v in left:
        if not try_assign(v, set()):
            raise StageFailure("absorb", f"no absorber accepts leftover {v}")
    # apply insertions, latest ring position first so earlier ones stay valid
    jobs = []
    for v, i in match_of_v.items():
        x = usable[i]
        pos = ring.index(x[h.k - 2])
        jobs.append((pos, v, x))
    if protected is not None:
        k = h.k
        pa = ring.index(protected[0])
        pb = ring.index(protected[1])
        span = 3 * k + len(leftovers)
        for pos, v, x in jobs:
            da = min((pos - pa) % len(ring), (pa - pos) % len(ring))
            db = min((pos - pb) % len(ring), (pb - pos) % len(ring))
            if da < span or db < span:
                raise StageFailure("absorb", "absorber too close to the fixed grid")
    for pos, v, x in sorted(jobs, reverse=True):
        assert ring[pos] == x[h.k - 2]
        ring.insert(pos + 1, v)
    return ring


# -- the full pipeline -------------------------------------------------------------------


def run_pipeline(
    h: Hypergraph, l: int, cfg: PipelineConfig
) -> tuple[Optional[tuple[int, ...]], dict]:
    """Peel, embed, sample, stitch, extend, close, absorb, validate.

    Returns (ordering, trace); the ordering is None when every attempt ended
    in a stage failure. Peeling and segment embedding are deterministic and
    run once; the randomized stages rerun per attempt from one seeded stream.
    The returned ordering always passes the overlap-l window check.
    """
    k = h.k
    n = h.n
    if not (0 <= l < k):
        raise ValueError(f"need 0 <= l < k, got l={l}, k={k}")
    if n % (k - l) != 0:
        raise ValueError(f"need (k-l) | n, got n={n}, k={k}, l={l}")
    if cfg.k != k:
        raise ValueError(f"config built for k={cfg.k}, graph has k={k}")
    trace: dict = {
        "n": n,
        "k": k,
        "l": l,
        "mode": "override" if cfg.override else "proof-constants",
        "constants": {
            name: str(getattr(cfg, name)) for name in ("epsilon", "rho", "gamma", "beta")
        },
        "seed": cfg.seed,
        "attempts": [],
    }
    rng = np.random.default_rng(cfg.seed)
    params = cfg.params()
    try:
        peel = peel_low_degree(h, cfg)
    except StageFailure as sf:
        trace["failure"] = {"stage": sf.stage, "detail": sf.detail}
        return None, trace
    vprime = sorted(set(range(n)) - set(peel.removed))
    n_prime = len(vprime)
    hp = h.induced(vprime)
    hp_tables = DegreeTables(hp)
    trace["peel"] = {
        "t": peel.t,
        "removed": list(peel.removed),
        "cutoff": peel.cutoff_num,
        "final_min_degree": peel.final_min_degree,
    }
    try:
        segments = embed_segments(h, peel, l, cfg, hp_tables, n_prime)
    except StageFailure as sf:
        trace["failure"] = {"stage": sf.stage, "detail": sf.detail}
        return None, trace
    trace["case"] = peel.case
    trace["segments"] = [
        {"seq": list(s.seq), "l_eff": s.l_eff, "anchor": s.anchor} for s in segments
    ]
    seg_verts = set()
    for s in segments:
        seg_verts.update(s.seq)
    mixed = [s for s in segments if s.l_eff < k - 1]
    sample_universe = [v for v in vprime if v not in seg_verts]
    for attempt in range(cfg.attempts):
        rec: dict = {"attempt": attempt}
        try:
            aset = build_absorbers(
                h, cfg, rng, hp_tables, sample_universe, n_prime
            )
            rec["absorbers"] = dict(aset.meta, min_coverage=aset.min_coverage)
            if not aset.tuples:
                raise StageFailure("absorbers", "empty absorber family")
            a_verts = set()
            for x in aset.tuples:
                a_verts.update(x)
            cset = build_connectors(
                h, cfg, rng,
                universe=[v for v in sample_universe if v not in a_verts],
                n_eff=n_prime,
            )
            rec["connectors"] = cset.meta
            c_verts = set()
            for z in cset.tuples:
                c_verts.update(z)
            forbidden = c_verts | seg_verts
            path = stitch_onepath(
                h, aset.tuples, forbidden, cfg, rng, sample_universe
            )
            rec["stitched"] = len(path)
            path = extend_path(
                h, path, forbidden, cfg, hp_tables, sample_universe, n_prime
            )
            rec["extended"] = len(path)
            ring, used_z = close_cycle(h, path, segments, cset.tuples)
            rec["connectors_used"] = len(used_z)
            leftovers = sorted(set(range(n)) - set(ring))
            rec["leftovers"] = len(leftovers)
            protected = None
            if mixed:
                seg = mixed[0]
                protected = (seg.seq[0], seg.seq[-1])
            ring = absorb_leftovers(
                h, ring, aset.tuples, leftovers, params, hp_tables, n_prime,
                protected,
            )
            if mixed:
                idx = ring.index(mixed[0].seq[0])
                ring = ring[idx:] + ring[:idx]
            if not is_l_tight_ham_cycle(h, ring, l):
                raise StageFailure("validate", "assembled ring fails the window check")
            rec["ok"] = True
            trace["attempts"].append(rec)
            trace["validated"] = True
            return tuple(ring), trace
        except StageFailure as sf:
            rec["failure"] = {"stage": sf.stage, "detail": sf.detail}
            trace["attempts"].append(rec)
    trace["validated"] = False
    return None, trace
