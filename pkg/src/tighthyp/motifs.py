"""Tight path and cycle patterns, goodness thresholds, pattern embedding.

A pattern with overlap l on t vertices has uniformity k and edges given by
the width-k windows starting at multiples of k-l (wrapping for cycles).
Consecutive windows share exactly l vertices.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

from .hypercore import Hypergraph, nck

Number = Union[int, float, Fraction]


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class TightPattern:
    kind: str  # "path" or "cycle"
    k: int
    l: int
    t: int  # number of vertices

    @property
    def stride(self) -> int:
        return self.k - self.l

    @property
    def edge_count(self) -> int:
        if self.kind == "path":
            return (self.t - self.l) // self.stride
        return self.t // self.stride

    def window_starts(self) -> list[int]:
        return [i * self.stride for i in range(self.edge_count)]

    def edges(self) -> list[tuple[int, ...]]:
        """Window vertex tuples in position order (sorted within a window)."""
        out = []
        for a in self.window_starts():
            if self.kind == "path":
                w = tuple(range(a, a + self.k))
            else:
                w = tuple(sorted((a + i) % self.t for i in range(self.k)))
            out.append(w)
        return out

    def describe(self) -> str:
        return f"{self.kind} {self.k} {self.l} {self.t}"


def build_pattern(kind: str, k: int, l: int, t: int) -> TightPattern:
    """Validated pattern; raises PatternError when the window family degenerates."""
    if kind not in ("path", "cycle"):
        raise PatternError(f"kind must be 'path' or 'cycle', got {kind!r}")
    if not (1 <= k <= t):
        raise PatternError(f"need 1 <= k <= t, got k={k}, t={t}")
    if not (0 <= l < k):
        raise PatternError(f"need 0 <= l < k, got l={l}, k={k}")
    s = k - l
    p = TightPattern(kind, k, l, t)
    if kind == "path":
        if (t - l) % s != 0:
            raise PatternError(f"path needs (t-l) divisible by k-l: t={t}, k={k}, l={l}")
        return p
    if t % s != 0:
        raise PatternError(f"cycle needs t divisible by k-l: t={t}, k={k}, l={l}")
    wins = p.edges()
    c = len(wins)
    sets = [frozenset(w) for w in wins]
    if any(len(s_) != k for s_ in sets) or len(set(sets)) != c:
        raise PatternError(f"cycle windows collapse for k={k}, l={l}, t={t}")
    if c >= 2:
        for i in range(c):
            j = (i + 1) % c
            if len(sets[i] & sets[j]) != l:
                raise PatternError(
                    f"consecutive windows share {len(sets[i] & sets[j])} "
                    f"vertices, want {l}: k={k}, l={l}, t={t}"
                )
    return p


def build_P(k: int, l: int) -> TightPattern:
    """The forbidden link pattern behind the extremal formula.

    For l >= 1 this is the (l-1)-overlap path of uniformity k-1 on
    floor(k/(k-l))*(k-l) + l - 1 vertices, with floor(k/(k-l)) edges.
    For l = 0 a single (k-1)-edge stands in: one window of the cycle
    through a fixed vertex is already a window of the whole cycle.
    """
    if not (0 <= l < k):
        raise PatternError(f"need 0 <= l < k, got l={l}, k={k}")
    if k < 2:
        raise PatternError(f"need k >= 2, got k={k}")
    c = k // (k - l)
    if l == 0:
        p = build_pattern("path", k - 1, 0, k - 1)
    else:
        t = c * (k - l) + l - 1
        p = build_pattern("path", k - 1, l - 1, t)
    assert p.edge_count == c
    return p


# -- cycle predicate -------------------------------------------------------------


def is_l_tight_ham_cycle(h: Hypergraph, ordering: Sequence[int], l: int) -> bool:
    """Does the cyclic ordering carry the full window family as edges?

    Windows of width k start at every multiple of k-l (so k-l must divide n);
    the ordering must be a permutation of range(n).
    """
    n, k = h.n, h.k
    if not (0 <= l < k):
        raise ValueError(f"need 0 <= l < k, got l={l}")
    if len(ordering) != n or set(ordering) != set(range(n)):
        return False
    s = k - l
    if n % s != 0:
        return False
    for a in range(0, n, s):
        w = [ordering[(a + i) % n] for i in range(k)]
        if not h.has_edge(w):
            return False
    return True


# -- goodness ----------------------------------------------------------------------


@dataclass(frozen=True)
class GoodTupleParams:
    k: int
    epsilon: Fraction
    rho: Number

    def rho_power(self, e: int) -> Number:
        return self.rho ** e


def _deg_meets(deg: int, rho_pow: Number, bound: int) -> bool:
    # deg >= (1 - rho^e) * bound, exact when rho is a Fraction
    if isinstance(rho_pow, Fraction):
        return deg * rho_pow.denominator >= (rho_pow.denominator - rho_pow.numerator) * bound
    thr = (1.0 - float(rho_pow)) * bound
    # float path: tolerate representation error on the threshold itself
    return deg >= thr - 1e-12 * max(1.0, abs(thr))


def is_good_tuple(
    h: Hypergraph,
    x: Sequence[int],
    params: GoodTupleParams,
    n_eff: Optional[int] = None,
    deg_fn=None,
) -> bool:
    """Entries distinct and every prefix degree clears its threshold.

    Prefix i of the (k-1)-tuple needs degree >= (1 - rho^(k-i)) * C(m-i, k-i)
    where m = n_eff (defaults to h.n). deg_fn overrides h.degree for callers
    holding precomputed tables.
    """
    k = h.k
    if params.k != k:
        raise ValueError(f"params built for k={params.k}, graph has k={k}")
    if len(x) != k - 1:
        raise ValueError(f"tuple length must be k-1={k - 1}, got {len(x)}")
    if len(set(x)) != k - 1:
        return False
    m = h.n if n_eff is None else n_eff
    deg = deg_fn if deg_fn is not None else h.degree
    for i in range(1, k):
        d = deg(x[:i])
        if not _deg_meets(d, params.rho_power(k - i), nck(m - i, k - i)):
            return False
    return True


# -- pattern embedding ---------------------------------------------------------------


def contains_pattern(
    h: Hypergraph, p: TightPattern, forbidden: Sequence[int] = ()
) -> Optional[tuple[int, ...]]:
    """First embedding of p into h (vertex tuple by pattern position), or None.

    Positions are filled in order; a window is tested the moment its last
    position is placed. Candidates are tried in ascending vertex order, so the
    returned embedding is deterministic. forbidden vertices are never used.
    """
    if p.k != h.k:
        raise ValueError(f"pattern uniformity {p.k} != graph uniformity {h.k}")
    t = p.t
    if t > h.n:
        return None
    wins = []
    if p.kind == "path":
        for a in p.window_starts():
            wins.append(tuple(range(a, a + p.k)))
    else:
        for a in p.window_starts():
            wins.append(tuple((a + i) % t for i in range(p.k)))
    # window index -> positions; check when the max position gets filled
    check_at: list[list[tuple[int, ...]]] = [[] for _ in range(t)]
    for w in wins:
        check_at[max(w)].append(w)

    blocked = set(forbidden)
    assign = [-1] * t
    used = set()

    def place(pos: int) -> bool:
        if pos == t:
            return True
        for v in range(h.n):
            if v in used or v in blocked:
                continue
            assign[pos] = v
            ok = True
            for w in check_at[pos]:
                if not h.has_edge([assign[q] for q in w]):
                    ok = False
                    break
            if ok:
                used.add(v)
                if place(pos + 1):
                    return True
                used.discard(v)
        assign[pos] = -1
        return False

    if place(0):
        return tuple(assign)
    return None


def is_l_pancyclic(h: Hypergraph, l: int) -> bool:
    """Cycles with overlap l of every feasible length c, 3 <= c <= n/(k-l).

    Lengths whose window family degenerates (repeated windows or wrong
    consecutive overlaps, possible only below 2k-l vertices) are skipped.
    """
    from .solver import enumerate_copies  # cycle through module boundary

    n, k = h.n, h.k
    s = k - l
    found_any = False
    for c in range(3, n // s + 1):
        t = c * s
        try:
            p = build_pattern("cycle", k, l, t)
        except PatternError:
            continue
        found_any = True
        if _has_copy(h, p) is None:
            return False
    return found_any


def _has_copy(h: Hypergraph, p: TightPattern) -> Optional[tuple[int, ...]]:
    return contains_pattern(h, p)


# -- pattern serialization -------------------------------------------------------------
#
# line 1: "kind k l t"; following lines list the window vertex tuples (positions).


def write_pattern(p: TightPattern, path: str) -> None:
    with open(path, "w") as f:
        f.write(f"{p.kind} {p.k} {p.l} {p.t}\n")
        for w in p.edges():
            f.write(" ".join(map(str, w)) + "\n")


def read_pattern(path: str) -> TightPattern:
    with open(path) as f:
        header = None
        listed = []
        for line in f:
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            if header is None:
                kind, k, l, t = line.split()
                header = (kind, int(k), int(l), int(t))
                continue
            listed.append(tuple(int(x) for x in line.split()))
    if header is None:
        raise PatternError("missing pattern header")
    p = build_pattern(*header)
    if listed and sorted(tuple(sorted(w)) for w in listed) != sorted(
        tuple(sorted(w)) for w in p.edges()
    ):
        raise PatternError("listed windows disagree with the header")
    return p
