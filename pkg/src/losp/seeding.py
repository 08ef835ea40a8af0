"""Seed sets: shortest-path strengthening and experimental seed strategies."""

from __future__ import annotations

import enum
import math
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .scoring import _triangles_per_vertex


@dataclass
class SeedSet:
    """Seed vertices; ``originals`` keep weight ``w1``, later additions ``w2 = w1 / 2``."""

    members: list[int]
    originals: list[int] = field(default=None)

    def __post_init__(self):
        self.members = sorted({int(v) for v in self.members})
        if self.originals is None:
            self.originals = list(self.members)
        self.originals = sorted({int(v) for v in self.originals})
        if not set(self.originals) <= set(self.members):
            raise ValueError("original seeds must be members")

    def __len__(self):
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    @property
    def augmented(self) -> list[int]:
        orig = set(self.originals)
        return [v for v in self.members if v not in orig]

    @property
    def weights(self) -> list[float]:
        w1 = 1.0 / len(self.originals)
        orig = set(self.originals)
        return [w1 if v in orig else 0.5 * w1 for v in self.members]


def _bfs_parents(g, source: int, limit: int) -> tuple[dict, dict]:
    dist = {source: 0}
    parent = {source: -1}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if dist[u] >= limit:
            continue
        for w in g.neighbors(u):
            w = int(w)
            if w not in dist:
                dist[w] = dist[u] + 1
                parent[w] = u
                queue.append(w)
    return dist, parent


def strengthen(g, seeds: SeedSet | Iterable[int], l: int = 4) -> SeedSet:
    """Add the interior of one shortest path of length <= ``l`` per seed pair."""
    if not isinstance(seeds, SeedSet):
        seeds = SeedSet(list(seeds))
    if l < 1:
        raise ValueError("path length limit must be >= 1")
    base = list(seeds.members)
    added: set = set()
    for i, a in enumerate(base):
        dist, parent = _bfs_parents(g, a, l)
        for b in base[i + 1:]:
            if b not in dist or dist[b] > l:
                continue
            u = parent[b]
            while u != a:
                added.add(u)
                u = parent[u]
    return SeedSet(base + sorted(added), seeds.originals)


class SeedStrategy(str, enum.Enum):
    RANDOM = "random"
    HIGH_DEGREE = "high-degree"
    LOW_DEGREE = "low-degree"
    HIGH_TRIANGLE = "high-triangle"
    LOW_ESCAPE = "low-escape"


def retained_probability(g, v: int, C: set, steps: int = 3) -> float:
    """Probability a lazy walk from ``v`` is inside ``C`` after ``steps`` steps."""
    p = {int(v): 1.0}
    for _ in range(steps):
        nxt: dict = {}
        for u, mass in p.items():
            share = mass / (g.degree(u) + 1)
            nxt[u] = nxt.get(u, 0.0) + share
            for w in g.neighbors(u):
                w = int(w)
                nxt[w] = nxt.get(w, 0.0) + share
        p = nxt
    return sum(mass for u, mass in p.items() if u in C)


def _top_third(keys: dict, count: int) -> list[int]:
    # keys: vertex -> sort key, larger first; ties by id
    ranked = sorted(keys, key=lambda v: (-keys[v], v))
    size = max(math.ceil(len(ranked) / 3), count)
    return ranked[:size]


def generate_seeds(g, C: Sequence[int], strategy: SeedStrategy | str, count: int,
                   rng: np.random.Generator | int | None = None, t_esc: int = 3) -> SeedSet:
    """Draw ``count`` seeds from community ``C`` under ``strategy``."""
    strategy = SeedStrategy(strategy)
    members = sorted({int(v) for v in C})
    if count > len(members):
        raise ValueError(f"cannot draw {count} seeds from a community of {len(members)}")
    if count < 1:
        raise ValueError("count must be >= 1")
    rng = np.random.default_rng(rng)
    if strategy is SeedStrategy.RANDOM:
        pool = members
    elif strategy is SeedStrategy.HIGH_DEGREE:
        pool = _top_third({v: g.degree(v) for v in members}, count)
    elif strategy is SeedStrategy.LOW_DEGREE:
        pool = _top_third({v: -g.degree(v) for v in members}, count)
    elif strategy is SeedStrategy.HIGH_TRIANGLE:
        pool = _top_third(_triangles_per_vertex(g, set(members)), count)
    else:
        cset = set(members)
        pool = _top_third({v: retained_probability(g, v, cset, t_esc) for v in members}, count)
    picked = rng.choice(np.asarray(pool, dtype=np.int64), size=count, replace=False)
    return SeedSet([int(v) for v in picked])
