"""Command-line entry point: ``losp {detect,multi,sample,stats,experiment,planted}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .evaluation import (ExperimentConfig, generate_planted_partition, ground_truth_stats,
                         load_ground_truth, run_experiment)
from .graph import GraphFormatError, load_edge_list, write_edge_list
from .multimember import find_all_memberships
from .pipeline import DetectionError, DetectionParams, detect
from .sampler import SampleParams, sample
from .scoring import Metric
from .spectral import WalkVariant

EXIT_USAGE, EXIT_DATA, EXIT_DETECT = 1, 2, 3


class DataError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def _add_detection_flags(p):
    p.add_argument("--d", type=int, default=3, help="subspace dimension")
    p.add_argument("--k", type=int, default=3, help="subspace iterations")
    p.add_argument("--variant", choices=[v.value for v in WalkVariant], default="rw")
    p.add_argument("--metric", choices=[m.value for m in Metric], default="cond")
    p.add_argument("--gamma", type=float, default=1.7)
    p.add_argument("--delta", type=int, default=5)
    p.add_argument("--l", type=int, default=4, help="max path length for seed strengthening")
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--outdegree-cap", type=int, default=1000)
    p.add_argument("--frontier-cap", type=int, default=1000)
    p.add_argument("--max-rounds", type=int, default=10)
    p.add_argument("--no-reseed", action="store_true")
    p.add_argument("--epsilon", type=float, default=None)


def _params(args, size=None) -> DetectionParams:
    return DetectionParams(
        d=args.d, k=args.k, variant=args.variant, radius=args.radius,
        outdegree_cap=args.outdegree_cap, frontier_cap=args.frontier_cap, l=args.l,
        gamma=args.gamma, delta=args.delta, metric=args.metric, size=size,
        max_rounds=args.max_rounds, reseed=not args.no_reseed, epsilon=args.epsilon)


def _load_graph(path):
    try:
        return load_edge_list(path)
    except OSError as exc:
        raise DataError(f"cannot read graph {path}: {exc.strerror}") from None
    except GraphFormatError as exc:
        raise DataError(str(exc)) from None


def _ids(g, text: str) -> list[int]:
    out = []
    for tok in text.replace(",", " ").split():
        try:
            ext = int(tok)
        except ValueError:
            raise DataError(f"seed id {tok!r} is not an integer") from None
        if not g.has_external(ext):
            raise DataError(f"seed {ext} not in graph")
        out.append(g.internal_id(ext))
    if not out:
        raise DataError("no seeds given")
    return out


def cmd_detect(args) -> int:
    g = _load_graph(args.graph)
    seeds = _ids(g, args.seeds)
    res = detect(g, seeds, _params(args, args.size))
    for w in res.warnings:
        print(f"warning: {w}", file=sys.stderr)
    for v in g.external(res.community.members):
        print(v)
    if args.out:
        Path(args.out).write_text(res.to_json(g, indent=2))
    return 0


def cmd_multi(args) -> int:
    g = _load_graph(args.graph)
    (s,) = _ids(g, args.seed)
    res = find_all_memberships(g, s, _params(args))
    for line in res.to_lines(g):
        print(line)
    if args.out:
        Path(args.out).write_text(json.dumps({
            "query": int(g.ext_ids[s]),
            "om_estimate": res.om_estimate,
            "communities": [{"members": g.external(c.members), "score": c.score}
                            for c in res.communities],
            "skipped": [g.external(c) for c in res.skipped],
        }, indent=2))
    return 0


def cmd_sample(args) -> int:
    g = _load_graph(args.graph)
    sub, _ = sample(g, _ids(g, args.seeds),
                    SampleParams(args.radius, args.outdegree_cap, args.frontier_cap))
    write_edge_list(sub, args.out if args.out else sys.stdout)
    return 0


def cmd_stats(args) -> int:
    g = _load_graph(args.graph)
    try:
        gt = load_ground_truth(args.truth, dedup=not args.no_dedup)
        stats = ground_truth_stats(g, gt)
    except OSError as exc:
        raise DataError(f"cannot read ground truth {args.truth}: {exc.strerror}") from None
    except (KeyError, ValueError) as exc:
        raise DataError(str(exc).strip("'")) from None
    print("n,m,communities,avg_size,std_size,avg_cond,avg_om")
    print(f"{g.n},{g.m},{stats['communities']},{stats['avg_size']:.4f},{stats['std_size']:.4f},"
          f"{stats['avg_cond']:.4f},{stats['avg_om']:.4f}")
    return 0


def cmd_experiment(args) -> int:
    try:
        cfg = ExperimentConfig.from_json(args.config)
    except OSError as exc:
        raise DataError(f"cannot read config {args.config}: {exc.strerror}") from None
    except (ValueError, TypeError) as exc:
        raise DataError(f"bad config: {exc}") from None
    if args.workers is not None:
        cfg.workers = args.workers
    if args.rng_seed is not None:
        cfg.rng_seed = args.rng_seed
    try:
        report = run_experiment(cfg)
    except OSError as exc:
        raise DataError(str(exc)) from None
    out = Path(args.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    report.to_csv(out / "report.csv")
    (out / "report.json").write_text(report.to_json())
    print(report.table())
    return 0


def cmd_planted(args) -> int:
    g, gt = generate_planted_partition(args.blocks, args.size, args.p_in, args.p_out, args.rng_seed)
    write_edge_list(g, args.graph_out)
    gt.write(args.truth_out)
    print(f"{args.graph_out}\t{g.n} vertices\t{g.m} edges")
    print(f"{args.truth_out}\t{len(gt.communities)} communities")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="losp", description="Local spectral overlapping community detection.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("detect", help="detect the community around a seed set")
    p.add_argument("--graph", required=True)
    p.add_argument("--seeds", required=True, help="comma-separated external ids")
    p.add_argument("--size", type=int, default=None, help="fixed community size")
    p.add_argument("--out", help="write the full result as JSON")
    _add_detection_flags(p)
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("multi", help="find all communities of one vertex")
    p.add_argument("--graph", required=True)
    p.add_argument("--seed", required=True)
    p.add_argument("--out")
    _add_detection_flags(p)
    p.set_defaults(func=cmd_multi)

    p = sub.add_parser("sample", help="emit the BFS-sampled subgraph as an edge list")
    p.add_argument("--graph", required=True)
    p.add_argument("--seeds", required=True)
    p.add_argument("--radius", type=int, default=2)
    p.add_argument("--outdegree-cap", type=int, default=1000)
    p.add_argument("--frontier-cap", type=int, default=1000)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("stats", help="ground-truth size and conductance statistics")
    p.add_argument("--graph", required=True)
    p.add_argument("--truth", required=True)
    p.add_argument("--no-dedup", action="store_true")
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("experiment", help="run an experiment from a JSON config")
    p.add_argument("--config", required=True)
    p.add_argument("--out-dir", default="results")
    p.add_argument("--workers", type=int, default=None)
    p.add_argument("--rng-seed", type=int, default=None)
    p.set_defaults(func=cmd_experiment)

    p = sub.add_parser("planted", help="generate a planted-partition benchmark")
    p.add_argument("--blocks", type=int, default=10)
    p.add_argument("--size", type=int, default=20)
    p.add_argument("--p-in", type=float, default=0.3)
    p.add_argument("--p-out", type=float, default=0.02)
    p.add_argument("--rng-seed", type=int, default=0)
    p.add_argument("--graph-out", required=True)
    p.add_argument("--truth-out", required=True)
    p.set_defaults(func=cmd_planted)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except DataError as exc:
        print(f"losp {args.command}: {exc}", file=sys.stderr)
        return EXIT_DATA
    except DetectionError as exc:
        print(f"losp {args.command}: detection failed: {exc}", file=sys.stderr)
        return EXIT_DETECT
    except ValueError as exc:
        print(f"losp {args.command}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
