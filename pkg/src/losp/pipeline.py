"""End-to-end local community detection from a seed set.

sample -> strengthen -> local subspace -> LP1 -> truncate, then reseeding
rounds with LP2 until the community score gets worse.
"""

from __future__ import annotations

import json
import logging
import warnings
from dataclasses import dataclass, field, replace
from typing import Iterable, Sequence

import numpy as np

from .graph import induced_subgraph
from .sampler import SampleParams, sample_vertices
from .scoring import Metric, community_stats, conductance, detect_boundary, score
from .seeding import SeedSet, strengthen
from .sparse_recovery import LPError, rank_vertices, solve_lp1, solve_lp2
from .spectral import RankDeficiencyWarning, WalkVariant, build_subspace

log = logging.getLogger(__name__)


class DetectionError(RuntimeError):
    """Raised when the round-0 linear program fails."""

    def __init__(self, message: str, round_no: int = 0):
        super().__init__(f"round {round_no}: {message}")
        self.round_no = round_no


@dataclass(frozen=True)
class DetectionParams:
    d: int = 3
    k: int = 3
    variant: WalkVariant = WalkVariant.RW
    radius: int = 2
    outdegree_cap: int = 1000
    frontier_cap: int = 1000
    l: int = 4
    gamma: float = 1.7
    delta: int = 5
    metric: Metric = Metric.COND
    size: int | None = None  # fixed-size truncation when set
    max_rounds: int = 10
    reseed: bool = True
    epsilon: float | None = None

    def __post_init__(self):
        object.__setattr__(self, "variant", WalkVariant(self.variant))
        object.__setattr__(self, "metric", Metric(self.metric))
        if self.size is not None and self.size < 1:
            raise ValueError("fixed-size truncation needs a positive size")
        if self.d < 1 or self.k < 0 or self.l < 1 or self.delta < 1:
            raise ValueError("invalid detection parameters")

    @property
    def sample_params(self) -> SampleParams:
        return SampleParams(self.radius, self.outdegree_cap, self.frontier_cap)

    @classmethod
    def from_dict(cls, cfg: dict) -> "DetectionParams":
        return cls(**cfg)


@dataclass
class Community:
    members: list[int]  # ranked order, graph ids
    scores: list[float]
    score: float
    n_k: int
    e_kk: int
    d_k: int


@dataclass
class DetectionResult:
    community: Community
    ranked: list[int]
    ranked_scores: list[float]
    trace: list[dict] = field(default_factory=list)
    sample_size: int = 0
    touched: int = 0
    best_round: int = 0
    warnings: list[str] = field(default_factory=list)
    rejected: bool = False

    def to_dict(self, g) -> dict:
        ext = g.external
        return {
            "community": ext(self.community.members),
            "scores": self.community.scores,
            "score": self.community.score,
            "stats": {"n_k": self.community.n_k, "e_kk": self.community.e_kk,
                      "d_k": self.community.d_k},
            "best_round": self.best_round,
            "trace": self.trace,
            "sample_size": self.sample_size,
            "touched": self.touched,
            "warnings": self.warnings,
            "rejected": self.rejected,
        }

    def to_json(self, g, **kw) -> str:
        return json.dumps(self.to_dict(g), **kw)


def _indicator(n: int, vertices: Iterable[int]) -> np.ndarray:
    s = np.zeros(n)
    s[list(vertices)] = 1.0
    return s


class _Round:
    __slots__ = ("ranked", "y", "size", "score", "stats")


def _truncate(sub, ranked: np.ndarray, y: np.ndarray, seeds: SeedSet, params: DetectionParams,
              notes: list[str], round_no: int) -> _Round:
    if params.size is not None:
        size = min(params.size, sub.n)
    else:
        size = detect_boundary(ranked, sub, params.metric, params.gamma)
        size = max(size, min(len(seeds), sub.n))
    members = ranked[:size]
    missing = set(seeds.originals).difference(members.tolist())
    if missing:
        notes.append(f"round {round_no}: {len(missing)} original seed(s) ranked outside the community")
    r = _Round()
    r.ranked, r.y, r.size = ranked, y, size
    r.stats = community_stats(sub, members)
    r.score = _score(sub, members, r.stats, params.metric)
    return r


def _score(sub, members, stats, metric: Metric) -> float:
    # degenerate edgeless cases score as the worst value rather than raising
    if metric is Metric.COND and stats.d_k == 0:
        return 1.0
    if metric is Metric.MOD and stats.m == 0:
        return 0.0
    return score(sub, members, metric)


def _solve_round(sub, seeds: SeedSet, s_orig: np.ndarray, current: SeedSet | None,
                 params: DetectionParams):
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDeficiencyWarning)
        if current is None:
            V = build_subspace(sub, seeds.members, params.d, params.k, params.variant)
            sol = solve_lp1(V, s_orig)
        else:
            V = build_subspace(sub, current.members, params.d, params.k, params.variant,
                               weights=current.weights)
            sol = solve_lp2(V, s_orig, _indicator(sub.n, current.members),
                            (len(seeds), len(current)))
    return V, sol


def detect(g, seeds: Sequence[int], params: DetectionParams = DetectionParams()) -> DetectionResult:
    """Detect the local community around ``seeds`` (graph-internal ids)."""
    seeds = sorted({int(s) for s in seeds})
    if not seeds:
        raise ValueError("seed set is empty")
    for s in seeds:
        if not 0 <= s < g.n:
            raise ValueError(f"seed {s} is not a vertex")
    if params.size is not None and params.size < len(seeds):
        raise ValueError("fixed size is smaller than the seed set")

    verts, touched = sample_vertices(g, seeds, params.sample_params)
    sub, vmap = induced_subgraph(g, verts)
    to_local = {int(v): i for i, v in enumerate(vmap)}
    local_seeds = [to_local[s] for s in seeds]
    notes: list[str] = []

    if sub.n == len(seeds):
        notes.append("sample contains no vertices beyond the seeds; returning the seeds")
        stats = community_stats(sub, range(sub.n))
        sc = _score(sub, range(sub.n), stats, params.metric)
        comm = Community(seeds, [1.0 / len(seeds)] * len(seeds), sc, stats.n_k, stats.e_kk, stats.d_k)
        return DetectionResult(comm, list(seeds), comm.scores, [], sub.n, len(touched), 0, notes)

    S = strengthen(sub, SeedSet(local_seeds), params.l)
    s_ind = _indicator(sub.n, S.members)
    trace: list[dict] = []

    try:
        V, sol = _solve_round(sub, S, s_ind, None, params)
    except LPError as exc:
        raise DetectionError(str(exc), 0) from exc
    if V.warnings:
        notes.extend(V.warnings)
    best = _truncate(sub, rank_vertices(sol.y), sol.y, S, params, notes, 0)
    best_round = 0
    trace.append({"round": 0, "seeds": len(S), "score": best.score, "size": best.size,
                  "objective": sol.objective, "d": V.d, "status": "ok"})

    prev = best
    if params.reseed:
        for t in range(1, params.max_rounds + 1):
            top = prev.ranked[:len(S) + params.delta * t].tolist()
            current = SeedSet(S.members + top, S.members)
            try:
                V, sol = _solve_round(sub, S, s_ind, current, params)
            except LPError as exc:
                trace.append({"round": t, "seeds": len(current), "status": f"lp failed: {exc}"})
                notes.append(f"round {t}: {exc}")
                break
            rnd = _truncate(sub, rank_vertices(sol.y), sol.y, S, params, notes, t)
            worse = params.metric.better(prev.score, rnd.score)
            trace.append({"round": t, "seeds": len(current), "score": rnd.score, "size": rnd.size,
                          "objective": sol.objective, "d": V.d,
                          "status": "declined" if worse else "ok"})
            if worse:
                break
            prev = best = rnd
            best_round = t
            if len(current) >= sub.n:
                break

    members = best.ranked[:best.size]
    comm = Community(
        members=[int(vmap[v]) for v in members],
        scores=[float(best.y[v]) for v in members],
        score=float(best.score), n_k=best.stats.n_k, e_kk=best.stats.e_kk, d_k=best.stats.d_k)
    result = DetectionResult(
        community=comm,
        ranked=[int(vmap[v]) for v in best.ranked],
        ranked_scores=[float(best.y[v]) for v in best.ranked],
        trace=trace, sample_size=sub.n, touched=len(touched), best_round=best_round,
        warnings=notes)
    if params.epsilon is not None and best.stats.d_k and conductance(best.stats) > params.epsilon:
        result.rejected = True
        notes.append(f"conductance above epsilon={params.epsilon}; not a local community")
    return result


def detect_fixed_size(g, seeds: Sequence[int], size: int,
                      params: DetectionParams = DetectionParams()) -> DetectionResult:
    """``detect`` with the community truncated to the top ``size`` vertices every round."""
    return detect(g, seeds, replace(params, size=size))
