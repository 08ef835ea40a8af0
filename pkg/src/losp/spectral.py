"""Local spectral subspaces from short lazy random walks.

Both walk operators act on the graph with one virtual self loop per vertex,
so the effective degree of ``v`` is ``deg(v) + 1``.  Operators are applied
through the sparse adjacency and never formed densely.
"""

from __future__ import annotations

import enum
import warnings
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Graph

RANK_TOL = 1e-12


class WalkVariant(str, enum.Enum):
    RW = "rw"
    SYM = "sym"


class RankDeficiencyWarning(UserWarning):
    pass


@dataclass
class LocalSubspace:
    basis: np.ndarray
    k: int
    variant: WalkVariant
    warnings: list[str] = field(default_factory=list)

    @property
    def d(self) -> int:
        return self.basis.shape[1]


class WalkOperator:
    """Transposed walk matrix ``N^T`` of a graph with virtual self loops."""

    def __init__(self, g: Graph, variant: WalkVariant | str = WalkVariant.RW):
        self.variant = WalkVariant(variant)
        self.adj = g.to_scipy()
        self.eff_degree = g.degrees.astype(float) + 1.0
        self._isqrt = 1.0 / np.sqrt(self.eff_degree)

    def apply(self, p: np.ndarray) -> np.ndarray:
        """Unnormalized ``N^T p`` for a vector or column block."""
        scale = 1.0 / self.eff_degree if self.variant is WalkVariant.RW else self._isqrt
        if p.ndim == 2:
            scale = scale[:, None]
        q = p * scale
        out = q + self.adj @ q
        if self.variant is WalkVariant.SYM:
            out = out * (self._isqrt[:, None] if p.ndim == 2 else self._isqrt)
        return out

    def step(self, p: np.ndarray) -> np.ndarray:
        """One walk step; the SYM walk is renormalized to unit 1-norm."""
        out = self.apply(p)
        if self.variant is WalkVariant.SYM:
            total = np.abs(out).sum()
            if total > 0:
                out = out / total
        return out


def initial_probability(seeds: Sequence[int], n: int, weights: Sequence[float] | None = None) -> np.ndarray:
    """Seed-supported starting distribution, mass proportional to ``weights``."""
    seeds = list(seeds)
    if not seeds:
        raise ValueError("seed set is empty")
    w = np.ones(len(seeds)) if weights is None else np.asarray(weights, dtype=float)
    if np.any(w <= 0):
        raise ValueError("seed weights must be positive")
    p = np.zeros(n)
    np.add.at(p, seeds, w)
    return p / p.sum()


def walk_step(g: Graph, variant: WalkVariant | str, p: np.ndarray) -> np.ndarray:
    return WalkOperator(g, variant).step(np.asarray(p, dtype=float))


def orthonormalize(M: np.ndarray, tol: float = RANK_TOL) -> np.ndarray:
    """Modified Gram-Schmidt with one reorthogonalization pass.

    Columns whose residual norm falls below ``tol`` times their original
    norm are dropped, so the output width is the numerical rank.
    """
    M = np.asarray(M, dtype=float)
    if M.ndim == 1:
        M = M[:, None]
    cols = []
    for j in range(M.shape[1]):
        v = M[:, j].copy()
        norm0 = np.linalg.norm(v)
        if norm0 == 0:
            continue
        for _ in range(2):
            for q in cols:
                v -= (q @ v) * q
        nv = np.linalg.norm(v)
        if nv > tol * norm0:
            cols.append(v / nv)
    if not cols:
        raise ValueError("cannot orthonormalize an all-zero matrix")
    return np.column_stack(cols)


def walk_vectors(op: WalkOperator, p1: np.ndarray, count: int) -> np.ndarray:
    vecs = [p1]
    for _ in range(count - 1):
        vecs.append(op.step(vecs[-1]))
    return np.column_stack(vecs)


def build_subspace(g: Graph, seeds: Sequence[int], d: int = 3, k: int = 3,
                   variant: WalkVariant | str = WalkVariant.RW,
                   weights: Sequence[float] | None = None) -> LocalSubspace:
    """Orthonormal basis of the local spectral subspace around ``seeds``.

    ``V0 = orth([p1, ..., pd])`` from ``d - 1`` walk steps, followed by ``k``
    rounds of ``V <- orth(N^T V)``.
    """
    if d < 1 or k < 0:
        raise ValueError("need d >= 1 and k >= 0")
    op = WalkOperator(g, variant)
    p1 = initial_probability(seeds, g.n, weights)
    V = orthonormalize(walk_vectors(op, p1, d))
    for _ in range(k):
        V = orthonormalize(op.apply(V))
    notes = []
    if V.shape[1] < d:
        msg = f"walk vectors are rank deficient; subspace dimension reduced from {d} to {V.shape[1]}"
        notes.append(msg)
        warnings.warn(msg, RankDeficiencyWarning, stacklevel=2)
    return LocalSubspace(V, k, WalkVariant(variant), notes)


def stationary_distribution(g: Graph, variant: WalkVariant | str = WalkVariant.RW) -> np.ndarray:
    """Fixed point of the walk: ``deg+1`` for RW, ``sqrt(deg+1)`` for SYM, normalized."""
    eff = g.degrees.astype(float) + 1.0
    pi = eff if WalkVariant(variant) is WalkVariant.RW else np.sqrt(eff)
    return pi / pi.sum()


def global_spectral_clustering(g: Graph, c: int, seed: int = 0) -> np.ndarray:
    """Disjoint clustering of a small graph by k-means on the top ``c`` eigenvectors.

    Dense reference routine for toy graphs only.
    """
    from scipy.cluster.vq import kmeans2

    A = g.to_scipy().toarray() + np.eye(g.n)
    isq = 1.0 / np.sqrt(A.sum(axis=1))
    vals, vecs = np.linalg.eigh(isq[:, None] * A * isq[None, :])
    V = vecs[:, np.argsort(vals)[::-1][:c]]
    _, labels = kmeans2(V, c, minit="++", seed=seed)
    return labels
