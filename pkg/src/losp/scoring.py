"""Community scoring functions and boundary detection along a ranked list."""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np


class Metric(str, enum.Enum):
    MOD = "mod"
    NMOD = "nmod"
    COND = "cond"
    TPR = "tpr"
    TPN = "tpn"

    @property
    def higher_better(self) -> bool:
        return self is not Metric.COND

    def better(self, a: float, b: float) -> bool:
        """True if score ``a`` is strictly better than ``b``."""
        return a > b if self.higher_better else a < b


@dataclass(frozen=True)
class CommunityStats:
    n_k: int
    e_kk: int
    d_k: int
    m: int
    triangle_sum: int = 0


def _member_set(C) -> set:
    return {int(v) for v in C}


def community_stats(g, C: Iterable[int]) -> CommunityStats:
    members = _member_set(C)
    if not members:
        raise ValueError("community is empty")
    d_k = 0
    twice_e = 0
    for v in members:
        nbrs = g.neighbors(v)
        d_k += len(nbrs)
        twice_e += sum(1 for u in nbrs if int(u) in members)
    return CommunityStats(len(members), twice_e // 2, d_k, g.m, 3 * triangle_count(g, members))


def modularity(stats: CommunityStats) -> float:
    if stats.m == 0:
        raise ValueError("modularity is undefined on an edgeless graph")
    return stats.e_kk / stats.m - (stats.d_k / (2 * stats.m)) ** 2


def normalized_modularity(stats: CommunityStats) -> float:
    if stats.d_k == 0:
        return 0.0
    return stats.e_kk / stats.d_k ** 2


def conductance(stats: CommunityStats) -> float:
    if stats.d_k == 0:
        raise ValueError("conductance is undefined for a community with no edges")
    return 1.0 - 2.0 * stats.e_kk / stats.d_k


def _triangles_per_vertex(g, members: set) -> dict:
    tri = dict.fromkeys(members, 0)
    for v in members:
        nv = {int(u) for u in g.neighbors(v) if int(u) in members and int(u) > v}
        for u in nv:
            for w in g.neighbors(u):
                w = int(w)
                if w > u and w in nv:
                    tri[v] += 1
                    tri[u] += 1
                    tri[w] += 1
    return tri


def triangle_count(g, C) -> int:
    return sum(_triangles_per_vertex(g, _member_set(C)).values()) // 3


def tpr(g, C) -> float:
    """Fraction of members lying on a triangle inside ``C``."""
    tri = _triangles_per_vertex(g, _member_set(C))
    return sum(1 for t in tri.values() if t > 0) / len(tri)


def tpn(g, C) -> float:
    """Sum over members of the edges among their in-community neighbors, over ``3 |C|``."""
    members = _member_set(C)
    return triangle_count(g, members) / len(members)


def cohesive_degree(g, s: int, C) -> float:
    """``(e_sk / n_k) / (e_s,out / n)``; ``inf`` when ``s`` has no external edge."""
    members = _member_set(C)
    nbrs = [int(u) for u in g.neighbors(s)]
    inside = sum(1 for u in nbrs if u in members)
    outside = len(nbrs) - inside
    if outside == 0:
        return math.inf
    return (inside / len(members)) / (outside / g.n)


def score(g, C, metric: Metric | str) -> float:
    metric = Metric(metric)
    if metric is Metric.TPR:
        return tpr(g, C)
    if metric is Metric.TPN:
        return tpn(g, C)
    stats = community_stats(g, C)
    return {Metric.MOD: modularity, Metric.NMOD: normalized_modularity,
            Metric.COND: conductance}[metric](stats)


def prefix_scores(g, ordered: Sequence[int], metric: Metric | str) -> np.ndarray:
    """Metric value of every prefix ``ordered[:i]``, ``i = 1..len(ordered)``.

    Statistics are updated incrementally as each vertex joins.  Edgeless
    prefixes get conductance 1 (nothing internal).
    """
    metric = Metric(metric)
    nbr_sets = {}
    members: set = set()
    tri = {}
    e_kk = d_k = triangles = in_triad = 0
    m = g.m
    out = np.empty(len(ordered))
    need_tri = metric in (Metric.TPR, Metric.TPN)
    for i, v in enumerate(ordered):
        v = int(v)
        nbrs = [int(u) for u in g.neighbors(v)]
        d_k += len(nbrs)
        inner = [u for u in nbrs if u in members]
        e_kk += len(inner)
        if need_tri:
            nbr_sets[v] = set(nbrs)
            tri[v] = 0
            inner_set = set(inner)
            for a in inner:
                for b in nbr_sets[a] & inner_set:
                    if b > a:
                        triangles += 1
                        for x in (v, a, b):
                            if tri[x] == 0:
                                in_triad += 1
                            tri[x] += 1
        members.add(v)
        n_k = i + 1
        if metric is Metric.COND:
            out[i] = 1.0 - 2.0 * e_kk / d_k if d_k else 1.0
        elif metric is Metric.MOD:
            out[i] = e_kk / m - (d_k / (2 * m)) ** 2 if m else 0.0
        elif metric is Metric.NMOD:
            out[i] = e_kk / d_k ** 2 if d_k else 0.0
        elif metric is Metric.TPN:
            out[i] = triangles / n_k
        else:
            out[i] = in_triad / n_k
    return out


def boundary_index(values: Sequence[float], gamma: float = 1.7, higher_better: bool = False) -> int:
    """Index of the first qualifying local optimum of ``values``.

    Lower-better: the first ``j`` where the curve turns upward and an earlier
    value is at least ``gamma * values[j]``.  Higher-better mirrors this.
    Falls back to the global optimum.
    """
    f = np.asarray(values, dtype=float)
    if len(f) == 0:
        raise ValueError("no values to scan")
    if gamma < 1:
        raise ValueError("gamma must be >= 1")
    if higher_better:
        prev_min = math.inf
        for j in range(len(f) - 1):
            if f[j + 1] < f[j] and j > 0 and f[j] >= gamma * prev_min:
                return j
            prev_min = min(prev_min, f[j])
        return int(np.argmax(f))
    prev_max = -math.inf
    for j in range(len(f) - 1):
        if f[j + 1] > f[j] and j > 0 and prev_max >= gamma * f[j]:
            return j
        prev_max = max(prev_max, f[j])
    return int(np.argmin(f))


def detect_boundary(ordered: Sequence[int], g, metric: Metric | str = Metric.COND,
                    gamma: float = 1.7, i_min: int = 2) -> int:
    """Community size chosen on the prefix curve of ``metric`` over ``ordered``."""
    if len(ordered) == 0:
        raise ValueError("ordered list is empty")
    metric = Metric(metric)
    if len(ordered) <= i_min:
        return len(ordered)
    f = prefix_scores(g, ordered, metric)[i_min - 1:]
    return i_min + boundary_index(f, gamma, metric.higher_better)
