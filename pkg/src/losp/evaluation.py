"""Ground truth, accuracy metrics, benchmark graphs and the experiment runner."""

from __future__ import annotations

import csv
import io
import json
import time
from collections import Counter, defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field, fields, replace
from pathlib import Path
from typing import Iterable

import numpy as np

from .graph import Graph, load_edge_list
from .multimember import find_all_memberships
from .pipeline import DetectionParams, detect
from .scoring import community_stats, conductance
from .seeding import generate_seeds


def f1(C: Iterable, T: Iterable) -> tuple[float, float, float]:
    """Precision, recall and F1 of detected set ``C`` against truth ``T``."""
    C, T = set(C), set(T)
    if not C or not T:
        raise ValueError("precision/recall need nonempty sets")
    hit = len(C & T)
    return hit / len(C), hit / len(T), 2 * hit / (len(C) + len(T))


@dataclass
class GroundTruth:
    communities: list[list[int]]  # external ids
    index: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if not self.index:
            idx = defaultdict(list)
            for cid, comm in enumerate(self.communities):
                for v in comm:
                    idx[v].append(cid)
            self.index = dict(idx)

    @classmethod
    def from_communities(cls, communities: Iterable[Iterable[int]], dedup: bool = True) -> "GroundTruth":
        out, seen = [], set()
        for comm in communities:
            members = sorted({int(v) for v in comm})
            if not members:
                raise ValueError("ground-truth community with no vertices")
            key = tuple(members)
            if dedup and key in seen:
                continue
            seen.add(key)
            out.append(members)
        if not out:
            raise ValueError("no ground-truth communities")
        return cls(out)

    @property
    def om(self) -> dict:
        return {v: len(c) for v, c in self.index.items()}

    def om_histogram(self) -> dict:
        return dict(sorted(Counter(self.om.values()).items()))

    def write(self, path_or_file) -> None:
        text = "".join(" ".join(map(str, c)) + "\n" for c in self.communities)
        if hasattr(path_or_file, "write"):
            path_or_file.write(text)
        else:
            Path(path_or_file).write_text(text)


def load_ground_truth(path, dedup: bool = True) -> GroundTruth:
    """One community per line, whitespace-separated external ids."""
    comms = []
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            if line.startswith("#"):
                continue
            parts = line.split()
            if not parts:
                raise ValueError(f"{path}:{lineno}: community with no vertices")
            comms.append([int(p) for p in parts])
    if not comms:
        raise ValueError(f"{path}: empty ground-truth file")
    return GroundTruth.from_communities(comms, dedup)


def ground_truth_stats(g: Graph, gt: GroundTruth) -> dict:
    """Mean/std community size and mean conductance on the full graph."""
    sizes, conds = [], []
    for comm in gt.communities:
        members = g.internal_ids(comm)
        sizes.append(len(members))
        stats = community_stats(g, members)
        if stats.d_k:
            conds.append(conductance(stats))
    return {
        "communities": len(sizes),
        "avg_size": float(np.mean(sizes)),
        "std_size": float(np.std(sizes)),
        "avg_cond": float(np.mean(conds)) if conds else float("nan"),
        "avg_om": float(np.mean(list(gt.om.values()))),
    }


def generate_planted_partition(blocks: int, size: int, p_in: float, p_out: float,
                               rng: np.random.Generator | int | None = None) -> tuple[Graph, GroundTruth]:
    """Planted-partition random graph; block ``b`` holds vertices ``b*size .. (b+1)*size-1``."""
    if not (0 <= p_in <= 1 and 0 <= p_out <= 1):
        raise ValueError("probabilities must lie in [0, 1]")
    rng = np.random.default_rng(rng)
    n = blocks * size
    iu, ju = np.triu_indices(n, k=1)
    same = (iu // size) == (ju // size)
    keep = rng.random(len(iu)) < np.where(same, p_in, p_out)
    g = Graph.from_edges(np.column_stack([iu[keep], ju[keep]]), n=n)
    gt = GroundTruth([list(range(b * size, (b + 1) * size)) for b in range(blocks)])
    return g, gt


def random_sparse_graph(n: int, avg_degree: float, rng=None) -> Graph:
    """Erdos-Renyi style graph with about ``n * avg_degree / 2`` edges."""
    rng = np.random.default_rng(rng)
    m = int(round(n * avg_degree / 2))
    edges = rng.integers(0, n, size=(int(m * 1.01) + 16, 2))
    edges = edges[edges[:, 0] != edges[:, 1]]
    return Graph.from_edges(np.sort(edges, axis=1)[:m], n=n)


# ---------------------------------------------------------------- experiments

@dataclass
class ExperimentConfig:
    graph: str | None = None
    truth: str | None = None
    planted: dict | None = None  # {"blocks", "size", "p_in", "p_out"}
    n_communities: int = 100
    seeds_per_community: int = 3
    strategy: str = "random"
    truncation: str = "metric"  # "metric" or "truth"
    params: dict = field(default_factory=dict)
    rng_seed: int = 0
    workers: int = 1
    dedup: bool = True
    mode: str = "detect"  # "detect" or "multi"
    per_om: int = 500
    om_max: int = 5
    draws: int = 1  # independent planted graphs; n_communities trials on each

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        data = json.loads(Path(path).read_text())
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    def detection_params(self) -> DetectionParams:
        return DetectionParams(**self.params)

    def load(self, draw: int = 0) -> tuple[Graph, GroundTruth]:
        if self.planted is not None:
            rng = self.rng_seed if draw == 0 else [self.rng_seed, draw]
            return generate_planted_partition(rng=rng, **self.planted)
        if not self.graph or not self.truth:
            raise ValueError("config needs either 'planted' or both 'graph' and 'truth'")
        return load_edge_list(self.graph), load_ground_truth(self.truth, self.dedup)


CSV_COLUMNS = ["trial_id", "community_id", "strategy", "seeds", "|C|", "|T|", "P", "R", "F1", "rounds", "ms"]


@dataclass
class TrialRow:
    trial_id: int
    community_id: int
    strategy: str
    seeds: list[int]
    size_c: int
    size_t: int
    precision: float
    recall: float
    f1: float
    rounds: int
    ms: float
    error: str = ""

    def csv_values(self) -> list:
        return [self.trial_id, self.community_id, self.strategy, " ".join(map(str, self.seeds)),
                self.size_c, self.size_t, f"{self.precision:.6f}", f"{self.recall:.6f}",
                f"{self.f1:.6f}", self.rounds, f"{self.ms:.3f}"]


@dataclass
class Report:
    rows: list[TrialRow]
    om_rows: list[dict] = field(default_factory=list)
    config: dict = field(default_factory=dict)

    @property
    def ok_rows(self) -> list[TrialRow]:
        return [r for r in self.rows if not r.error]

    @property
    def failures(self) -> int:
        return len(self.rows) - len(self.ok_rows)

    def summary(self) -> dict:
        def agg(key):
            vals = np.array([getattr(r, key) for r in self.ok_rows], dtype=float)
            return (float(vals.mean()), float(vals.std())) if len(vals) else (float("nan"), float("nan"))
        out = {"trials": len(self.rows), "failures": self.failures}
        for key in ("f1", "precision", "recall", "ms"):
            out[f"{key}_mean"], out[f"{key}_std"] = agg(key)
        return out

    def to_csv(self, path_or_file=None) -> str:
        buf = io.StringIO()
        w = csv.writer(buf)
        w.writerow(CSV_COLUMNS)
        for r in sorted(self.rows, key=lambda r: r.trial_id):
            w.writerow(r.csv_values())
        text = buf.getvalue()
        if path_or_file is not None:
            if hasattr(path_or_file, "write"):
                path_or_file.write(text)
            else:
                Path(path_or_file).write_text(text)
        return text

    def to_json(self) -> str:
        return json.dumps({"config": self.config, "summary": self.summary(),
                           "om": self.om_rows, "rows": [asdict(r) for r in self.rows]}, indent=2)

    def table(self) -> str:
        s = self.summary()
        lines = [f"trials {s['trials']}  failures {s['failures']}",
                 f"F1        {s['f1_mean']:.3f} +- {s['f1_std']:.3f}",
                 f"precision {s['precision_mean']:.3f} +- {s['precision_std']:.3f}",
                 f"recall    {s['recall_mean']:.3f} +- {s['recall_std']:.3f}",
                 f"time/ms   {s['ms_mean']:.1f} +- {s['ms_std']:.1f}"]
        for row in self.om_rows:
            lines.append(f"om={row['om']}: F1 {row['f1_mean']:.3f} over {row['vertices']} vertices")
        return "\n".join(lines)


_WORKER: dict = {}


def _init_worker(g, params):
    _WORKER["g"], _WORKER["params"] = g, params


def _run_trial(task) -> TrialRow:
    trial_id, cid, strategy, seeds, truth, fixed_size = task
    g, params = _WORKER["g"], _WORKER["params"]
    t0 = time.perf_counter()
    try:
        if fixed_size:
            res = detect(g, seeds, replace(params, size=len(truth)))
        else:
            res = detect(g, seeds, params)
        ms = (time.perf_counter() - t0) * 1e3
        p, r, f = f1(res.community.members, truth)
        return TrialRow(trial_id, cid, strategy, g.external(seeds), len(res.community.members),
                        len(truth), p, r, f, len(res.trace), ms)
    except Exception as exc:  # recorded per trial, never fatal
        ms = (time.perf_counter() - t0) * 1e3
        return TrialRow(trial_id, cid, strategy, g.external(seeds), 0, len(truth),
                        0.0, 0.0, 0.0, 0, ms, error=f"{type(exc).__name__}: {exc}")


def _map(func, tasks, g, params, workers):
    if workers <= 1:
        _init_worker(g, params)
        return [func(t) for t in tasks]
    with ProcessPoolExecutor(workers, initializer=_init_worker, initargs=(g, params)) as ex:
        return list(ex.map(func, tasks, chunksize=max(1, len(tasks) // (4 * workers))))


def make_trials(g: Graph, gt: GroundTruth, cfg: ExperimentConfig, draw: int = 0) -> list[tuple]:
    """Pick target communities and seed sets; depends only on the config."""
    pool = []
    for cid, comm in enumerate(gt.communities):
        members = [g.internal_id(v) for v in comm if g.has_external(v)]
        if len(members) >= max(cfg.seeds_per_community, 2):
            pool.append((cid, members))
    rng = np.random.default_rng([cfg.rng_seed, draw])
    chosen = rng.choice(len(pool), size=min(cfg.n_communities, len(pool)), replace=False)
    tasks = []
    for i, idx in enumerate(chosen):
        trial_id = draw * cfg.n_communities + i
        cid, members = pool[idx]
        seeds = generate_seeds(g, members, cfg.strategy, cfg.seeds_per_community,
                               rng=np.random.default_rng([cfg.rng_seed, draw, i]))
        tasks.append((trial_id, cid, cfg.strategy, seeds.members, members, cfg.truncation == "truth"))
    return tasks


def run_experiment(cfg: ExperimentConfig, g: Graph | None = None, gt: GroundTruth | None = None) -> Report:
    """Run seeded detection trials (or per-om membership trials in ``multi`` mode)."""
    if cfg.truncation not in ("metric", "truth"):
        raise ValueError("truncation must be 'metric' or 'truth'")
    params = cfg.detection_params()
    given = g is not None and gt is not None
    if cfg.mode == "multi":
        if not given:
            g, gt = cfg.load()
        return run_membership_experiment(cfg, g, gt)
    rows = []
    for draw in range(1 if given or cfg.planted is None else cfg.draws):
        if not given:
            g, gt = cfg.load(draw)
        rows += _map(_run_trial, make_trials(g, gt, cfg, draw), g, params, cfg.workers)
    rows.sort(key=lambda r: r.trial_id)
    return Report(rows, config=asdict(cfg))


def _membership_trial(task) -> dict:
    vertex, om, truths = task
    g, params = _WORKER["g"], _WORKER["params"]
    t0 = time.perf_counter()
    res = find_all_memberships(g, vertex, params)
    ms = (time.perf_counter() - t0) * 1e3
    detected = [c.members for c in res.communities]
    scores = [max((f1(c, t)[2] for c in detected), default=0.0) for t in truths]
    return {"vertex": int(g.ext_ids[vertex]), "om": om, "found": len(detected),
            "f1": float(np.mean(scores)), "ms": ms}


def run_membership_experiment(cfg: ExperimentConfig, g: Graph, gt: GroundTruth) -> Report:
    """Group truth vertices by overlapping membership and find all their communities.

    Each truth community of a query vertex is matched with its best detected
    community; the vertex's score is the mean of those F1 values.
    """
    params = cfg.detection_params()
    rng = np.random.default_rng(cfg.rng_seed)
    by_om = defaultdict(list)
    for v, om in sorted(gt.om.items()):
        if g.has_external(v) and om <= cfg.om_max:
            by_om[om].append(v)
    tasks = []
    for om in sorted(by_om):
        verts = by_om[om]
        pick = rng.choice(len(verts), size=min(cfg.per_om, len(verts)), replace=False)
        for i in sorted(pick):
            v = verts[i]
            truths = [g.internal_ids(u for u in gt.communities[c] if g.has_external(u)) for c in gt.index[v]]
            tasks.append((g.internal_id(v), om, truths))
    results = _map(_membership_trial, tasks, g, params, cfg.workers)
    om_rows = []
    for om in sorted(by_om):
        vals = [r["f1"] for r in results if r["om"] == om]
        om_rows.append({"om": om, "vertices": len(vals), "f1_mean": float(np.mean(vals)),
                        "f1_std": float(np.std(vals))})
    rows = [TrialRow(i, -1, "ego", [r["vertex"]], r["found"], r["om"], 0.0, 0.0, r["f1"], 0, r["ms"])
            for i, r in enumerate(results)]
    return Report(rows, om_rows, asdict(cfg))
