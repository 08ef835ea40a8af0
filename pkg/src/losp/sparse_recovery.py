"""Minimum 1-norm indicator vectors over a local spectral subspace.

Substituting ``y = V x`` turns both programs into ``min c^T x`` subject to
``G x >= h`` with only ``d`` free variables.  The solver runs a dense
tableau simplex (Bland's rule) on the dual ``max h^T u, G^T u = c, u >= 0``,
which has just ``d`` equality rows, and recovers ``x`` from the optimal
basis: the basic rows of ``G`` are tight at the primal optimum.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

PIVOT_TOL = 1e-11
CLAMP_TOL = 1e-8


class LPError(RuntimeError):
    pass


class LPInfeasibleError(LPError):
    """No ``x`` with ``V x >= 0`` meets the seed constraints."""


class LPUnboundedError(LPError):
    """The objective is unbounded below (degenerate basis)."""


@dataclass
class IndicatorSolution:
    y: np.ndarray
    x: np.ndarray
    objective: float


def _pivot(T: np.ndarray, row: int, col: int) -> None:
    T[row] /= T[row, col]
    for i in range(T.shape[0]):
        if i != row and T[i, col] != 0.0:
            T[i] -= T[i, col] * T[row]


def _run_simplex(T: np.ndarray, basis: list[int], allowed: int) -> bool:
    """Minimize over tableau ``T`` (last row = reduced costs, last col = rhs).

    Entering columns are restricted to ``[0, allowed)``.  Bland's rule on
    both entering and leaving choices rules out cycling.  Returns False if
    the problem is unbounded.
    """
    m = T.shape[0] - 1
    while True:
        costs = T[-1, :allowed]
        cand = np.flatnonzero(costs < -PIVOT_TOL)
        if len(cand) == 0:
            return True
        col = int(cand[0])
        colv = T[:m, col]
        rows = np.flatnonzero(colv > PIVOT_TOL)
        if len(rows) == 0:
            return False
        ratios = T[rows, -1] / colv[rows]
        best = ratios.min()
        ties = rows[ratios <= best + PIVOT_TOL * max(1.0, abs(best))]
        row = int(min(ties, key=lambda i: basis[i]))
        _pivot(T, row, col)
        basis[row] = col


def _dual_basis(G: np.ndarray, h: np.ndarray, c: np.ndarray) -> list[int] | None:
    """Optimal basis (row indices of ``G``) for ``min c^T x, G x >= h``.

    Returns None when the dual is infeasible; raises LPInfeasibleError when
    the dual is unbounded.
    """
    R, d = G.shape
    A = G.T.copy()
    b = c.astype(float).copy()
    neg = b < 0
    A[neg] *= -1
    b[neg] *= -1

    # phase 1: artificial columns R..R+d-1
    T = np.zeros((d + 1, R + d + 1))
    T[:d, :R] = A
    T[:d, R:R + d] = np.eye(d)
    T[:d, -1] = b
    T[-1, :R] = -A.sum(axis=0)
    T[-1, -1] = -b.sum()
    basis = list(range(R, R + d))
    _run_simplex(T, basis, R)
    if -T[-1, -1] > 1e-9 * max(1.0, b.sum()):
        return None

    # drive zero-level artificials out of the basis
    keep = []
    for i, bv in enumerate(basis):
        if bv >= R:
            nz = np.flatnonzero(np.abs(T[i, :R]) > PIVOT_TOL)
            if len(nz) == 0:
                continue  # redundant row
            _pivot(T, i, int(nz[0]))
            basis[i] = int(nz[0])
        keep.append(i)
    T = np.vstack([T[keep], T[-1:]])
    basis = [basis[i] for i in keep]

    # phase 2: minimize -h^T u
    cost = np.zeros(R + d)
    cost[:R] = -h
    T[-1, :] = 0.0
    T[-1, :R + d] = cost
    for i, bv in enumerate(basis):
        T[-1] -= cost[bv] * T[i]
    if not _run_simplex(T, basis, R):
        raise LPInfeasibleError("seed constraints cannot be met inside the subspace")
    return basis


def solve_min_cost(G: np.ndarray, h: np.ndarray, c: np.ndarray) -> np.ndarray:
    """Solve ``min c^T x`` subject to ``G x >= h`` with ``x`` free."""
    G = np.asarray(G, dtype=float)
    h = np.asarray(h, dtype=float)
    c = np.asarray(c, dtype=float)
    basis = _dual_basis(G, h, c)
    if basis is None:
        # dual infeasible: the zero-cost problem raises if the primal is infeasible
        _dual_basis(G, h, np.zeros_like(c))
        raise LPUnboundedError("objective unbounded over the subspace")
    GB = G[basis]
    if len(basis) == G.shape[1]:
        return np.linalg.solve(GB, h[basis])
    x, *_ = np.linalg.lstsq(GB, h[basis], rcond=None)
    return x


def _basis_matrix(V) -> np.ndarray:
    return np.asarray(getattr(V, "basis", V), dtype=float)


def _solve(V: np.ndarray, extra_rows: list[np.ndarray], rhs: list[float]) -> IndicatorSolution:
    n, d = V.shape
    G = np.vstack([V] + [r @ V for r in extra_rows])
    h = np.concatenate([np.zeros(n), rhs])
    x = solve_min_cost(G, h, V.sum(axis=0))
    y = V @ x
    if y.min() < -CLAMP_TOL * max(1.0, np.abs(y).max()):
        raise LPError(f"solver returned y with min entry {y.min():.3e}")
    slack = np.array([r @ y for r in extra_rows]) - np.asarray(rhs)
    if slack.min() < -CLAMP_TOL * max(1.0, max(rhs)):
        raise LPError("solver output violates the seed constraints")
    y = np.clip(y, 0.0, None)
    return IndicatorSolution(y, x, float(y.sum()))


def solve_lp1(V, s) -> IndicatorSolution:
    """``min |y|_1`` s.t. ``y = V x``, ``y >= 0``, ``s^T y >= 1``."""
    V = _basis_matrix(V)
    s = np.asarray(s, dtype=float)
    if not s.any():
        raise ValueError("seed indicator is all zero")
    return _solve(V, [s], [1.0])


def reseed_rhs(n_seeds: int, n_augmented: int) -> float:
    """Right-hand side ``1 + w2 (|S_t| - |S|)`` with ``w1 = 1/|S|``, ``w2 = w1/2``."""
    w2 = 0.5 / n_seeds
    return 1.0 + w2 * (n_augmented - n_seeds)


def solve_lp2(V, s, s_t, sizes: tuple[int, int] | None = None) -> IndicatorSolution:
    """LP1 plus the reseeding constraint ``s_t^T y >= 1 + w2 (|S_t| - |S|)``."""
    V = _basis_matrix(V)
    s = np.asarray(s, dtype=float)
    s_t = np.asarray(s_t, dtype=float)
    if not s.any():
        raise ValueError("seed indicator is all zero")
    if np.any((s > 0) & (s_t <= 0)):
        raise ValueError("original seeds must be contained in the reseeded set")
    n_s, n_t = sizes if sizes is not None else (int(np.count_nonzero(s)), int(np.count_nonzero(s_t)))
    return _solve(V, [s, s_t], [1.0, reseed_rhs(n_s, n_t)])


def rank_vertices(y, tie_tol: float = 1e-12) -> np.ndarray:
    """Vertex ids by score descending; scores within ``tie_tol`` (relative) tie, broken by id."""
    y = np.asarray(y, dtype=float)
    scale = np.abs(y).max() if len(y) else 0.0
    key = np.round(y / scale / tie_tol) if scale > 0 else np.zeros_like(y)
    return np.lexsort((np.arange(len(y)), -key))
