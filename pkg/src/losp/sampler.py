"""Local BFS sampling around a seed set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

import numpy as np

from .graph import Graph, induced_subgraph


@dataclass(frozen=True)
class SampleParams:
    radius: int = 2
    outdegree_cap: int = 1000
    frontier_cap: int = 1000

    def __post_init__(self):
        if self.radius < 1:
            raise ValueError("radius must be >= 1")
        if self.outdegree_cap < 1 or self.frontier_cap < 1:
            raise ValueError("caps must be >= 1")


def _bfs_ball(g, seed: int, radius: int, touched: set) -> tuple[set, list]:
    depth = {seed: 0}
    layer = [seed]
    for r in range(radius):
        nxt = []
        for u in layer:
            touched.add(u)
            for w in g.neighbors(u):
                w = int(w)
                if w not in depth:
                    depth[w] = r + 1
                    nxt.append(w)
        layer = nxt
    interior = {v for v, dv in depth.items() if dv < radius}
    return interior, layer


def sample_vertices(g, seeds: Iterable[int], p: SampleParams = SampleParams()) -> tuple[set, set]:
    """Return ``(sampled vertex set, vertices whose adjacency was read)``."""
    seeds = [int(s) for s in seeds]
    if not seeds:
        raise ValueError("seed set is empty")
    touched: set = set()
    sampled = set(seeds)
    for s in seeds:
        interior, frontier = _bfs_ball(g, s, p.radius, touched)
        ball = interior.union(frontier)
        ranked = []
        for v in frontier:
            deg = g.degree(v)
            if deg > p.outdegree_cap:
                continue
            touched.add(v)
            inward = sum(1 for w in g.neighbors(v) if int(w) in ball)
            ranked.append((-inward / deg, -deg, v))
        ranked.sort()
        sampled |= interior
        sampled.update(v for _, _, v in ranked[:p.frontier_cap])
    return sampled, touched


def sample(g, seeds: Iterable[int], p: SampleParams = SampleParams()) -> tuple[Graph, np.ndarray]:
    """BFS-sample the neighborhood of ``seeds``; returns (subgraph, sub->g id map)."""
    verts, _ = sample_vertices(g, seeds, p)
    return induced_subgraph(g, verts)


def coverage_ratio(sampled: Iterable, truth: Iterable) -> float:
    truth = set(truth)
    if not truth:
        raise ValueError("ground-truth set is empty")
    return len(truth.intersection(sampled)) / len(truth)
