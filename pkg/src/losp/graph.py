"""Immutable undirected graphs in compressed adjacency form."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np


class GraphFormatError(ValueError):
    """Raised for malformed or empty edge-list input."""


@dataclass(frozen=True, eq=False)
class Graph:
    """Simple undirected graph stored as CSR arrays.

    ``indices[indptr[v]:indptr[v + 1]]`` holds the sorted neighbors of ``v``.
    Self loops and duplicate edges are never stored.  ``ext_ids[v]`` is the
    external id of internal vertex ``v``.
    """

    indptr: np.ndarray
    indices: np.ndarray
    ext_ids: np.ndarray
    _ext_index: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        for arr in (self.indptr, self.indices, self.ext_ids):
            arr.setflags(write=False)

    @property
    def n(self) -> int:
        return len(self.indptr) - 1

    @property
    def m(self) -> int:
        return len(self.indices) // 2

    @property
    def degrees(self) -> np.ndarray:
        return np.diff(self.indptr)

    def degree(self, v: int) -> int:
        return int(self.indptr[v + 1] - self.indptr[v])

    def neighbors(self, v: int) -> np.ndarray:
        return self.indices[self.indptr[v]:self.indptr[v + 1]]

    def has_edge(self, u: int, v: int) -> bool:
        nbrs = self.neighbors(u)
        i = np.searchsorted(nbrs, v)
        return bool(i < len(nbrs) and nbrs[i] == v)

    def edges(self) -> np.ndarray:
        """Return an ``(m, 2)`` array of edges with ``u < v``."""
        src = np.repeat(np.arange(self.n), self.degrees)
        mask = src < self.indices
        return np.column_stack([src[mask], self.indices[mask]])

    def _index(self) -> dict:
        if self._ext_index is None:
            object.__setattr__(
                self, "_ext_index", {int(e): i for i, e in enumerate(self.ext_ids)})
        return self._ext_index

    def has_external(self, ext) -> bool:
        return int(ext) in self._index()

    def internal_id(self, ext) -> int:
        try:
            return self._index()[int(ext)]
        except KeyError:
            raise KeyError(f"vertex {ext} not in graph") from None

    def internal_ids(self, ext: Iterable) -> list[int]:
        return [self.internal_id(e) for e in ext]

    def external(self, vertices: Iterable[int]) -> list[int]:
        return [int(self.ext_ids[v]) for v in vertices]

    def to_scipy(self):
        from scipy import sparse
        data = np.ones(len(self.indices))
        return sparse.csr_matrix((data, self.indices, self.indptr), shape=(self.n, self.n))

    @classmethod
    def from_edges(cls, edges, n: int | None = None, ext_ids: Sequence[int] | None = None) -> "Graph":
        """Build from internal-id edge pairs; drops self loops and duplicates."""
        e = np.asarray(edges, dtype=np.int64).reshape(-1, 2)
        if n is None:
            n = int(e.max()) + 1 if len(e) else 0
        e = e[e[:, 0] != e[:, 1]]
        both = np.concatenate([e, e[:, ::-1]])
        if len(both):
            both = np.unique(both, axis=0)  # sorts by (src, dst)
        counts = np.bincount(both[:, 0], minlength=n) if len(both) else np.zeros(n, dtype=np.int64)
        indptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=indptr[1:])
        indices = both[:, 1].astype(np.int64) if len(both) else np.zeros(0, dtype=np.int64)
        if ext_ids is None:
            ext_ids = np.arange(n, dtype=np.int64)
        return cls(indptr, indices, np.asarray(ext_ids, dtype=np.int64))


class EdgeCutView:
    """Read-only view of a graph with the edges between ``s`` and ``cut`` hidden.

    Exposes the subset of the :class:`Graph` interface that local routines
    (sampling, induced subgraphs) rely on, so cutting edges never copies or
    mutates the underlying graph.
    """

    def __init__(self, g: Graph, s: int, cut: Iterable[int]):
        self.base = g
        self.s = s
        self.cut = frozenset(int(v) for v in cut)
        self.ext_ids = g.ext_ids

    @property
    def n(self) -> int:
        return self.base.n

    def neighbors(self, v: int) -> np.ndarray:
        nbrs = self.base.neighbors(v)
        if v == self.s:
            return np.array([u for u in nbrs if int(u) not in self.cut], dtype=np.int64)
        if v in self.cut:
            return nbrs[nbrs != self.s]
        return nbrs

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    def internal_id(self, ext) -> int:
        return self.base.internal_id(ext)

    def external(self, vertices):
        return self.base.external(vertices)


def load_edge_list(path: str | Path) -> Graph:
    """Read a SNAP-style edge list (``u v`` per line, ``#`` comments)."""
    pairs = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            parts = line.split()
            if len(parts) < 2:
                raise GraphFormatError(f"{path}:{lineno}: expected two vertex ids, got {line!r}")
            try:
                pairs.append((int(parts[0]), int(parts[1])))
            except ValueError:
                raise GraphFormatError(f"{path}:{lineno}: non-integer vertex id in {line!r}") from None
    if not pairs:
        raise GraphFormatError(f"{path}: no edges")
    return graph_from_external_edges(pairs)


def graph_from_external_edges(pairs) -> Graph:
    raw = np.asarray(pairs, dtype=np.int64).reshape(-1, 2)
    ext_ids, inv = np.unique(raw, return_inverse=True)
    return Graph.from_edges(inv.reshape(-1, 2), n=len(ext_ids), ext_ids=ext_ids)


def write_edge_list(g: Graph, path_or_file) -> None:
    edges = g.edges()
    lines = "".join(f"{g.ext_ids[u]}\t{g.ext_ids[v]}\n" for u, v in edges)
    if hasattr(path_or_file, "write"):
        path_or_file.write(lines)
    else:
        Path(path_or_file).write_text(lines)


def induced_subgraph(g, vertices: Iterable[int]) -> tuple[Graph, np.ndarray]:
    """Subgraph on ``vertices``; returns it with the sub-id -> g-id map.

    Cost is proportional to the total degree of ``vertices``, not to ``g.n``.
    """
    verts = np.array(sorted({int(v) for v in vertices}), dtype=np.int64)
    if len(verts) == 0:
        raise ValueError("induced_subgraph needs a nonempty vertex set")
    local = {int(v): i for i, v in enumerate(verts)}
    edges = []
    for i, v in enumerate(verts):
        for u in g.neighbors(v):
            j = local.get(int(u))
            if j is not None and i < j:
                edges.append((i, j))
    sub = Graph.from_edges(edges, n=len(verts), ext_ids=g.ext_ids[verts])
    return sub, verts


def connected_components(g, vertices: Iterable[int]) -> list[list[int]]:
    """Components of the subgraph induced on ``vertices``, largest first.

    Ties are broken by the smallest member id; each component is sorted.
    """
    remaining = {int(v) for v in vertices}
    comps = []
    for start in sorted(remaining):
        if start not in remaining:
            continue
        remaining.discard(start)
        comp = [start]
        queue = deque([start])
        while queue:
            u = queue.popleft()
            for w in g.neighbors(u):
                w = int(w)
                if w in remaining:
                    remaining.discard(w)
                    comp.append(w)
                    queue.append(w)
        comps.append(sorted(comp))
    comps.sort(key=lambda c: (-len(c), c[0]))
    return comps


def ego_components(g, s: int) -> list[list[int]]:
    """Connected components of the neighborhood of ``s`` with ``s`` removed."""
    return connected_components(g, g.neighbors(s))
