import json

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from losp.evaluation import f1, generate_planted_partition
from losp.graph import Graph
from losp.pipeline import DetectionParams, detect, detect_fixed_size
from losp.scoring import Metric

from toys import LEFT, SEEDS, clique, random_graph


def test_two_cliques_fixed_size_is_left_clique(cliques):
    res = detect_fixed_size(cliques, SEEDS, 5)
    assert sorted(res.community.members) == LEFT
    assert f1(res.community.members, LEFT)[2] == 1.0
    assert res.ranked[:5] == res.community.members


def test_two_cliques_boundary_mode(cliques):
    res = detect(cliques, SEEDS)
    assert sorted(res.community.members) == LEFT


def test_whole_component_has_zero_conductance():
    g = Graph.from_edges(clique(5) + clique(4, 10))
    res = detect(g, [10, 11, 12, 13])
    assert sorted(res.community.members) == [10, 11, 12, 13]
    assert res.community.score == 0.0


def test_size_equal_to_sample_returns_whole_sample(cliques):
    res = detect_fixed_size(cliques, SEEDS, 9)
    assert res.sample_size == 9
    assert sorted(res.community.members) == list(range(9))


def test_size_equal_to_seed_count(cliques):
    res = detect_fixed_size(cliques, SEEDS, 3, DetectionParams(reseed=False))
    assert sorted(res.community.members) == SEEDS


def test_fixed_size_smaller_than_seeds_rejected(cliques):
    with pytest.raises(ValueError):
        detect_fixed_size(cliques, SEEDS, 2)


@pytest.mark.parametrize("seeds", [[], [99]])
def test_invalid_seeds(cliques, seeds):
    with pytest.raises(ValueError):
        detect(cliques, seeds)


def test_isolated_seed_returns_seed_with_warning():
    g = Graph.from_edges([(1, 2)], n=3)
    res = detect(g, [0])
    assert res.community.members == [0]
    assert res.warnings


def test_params_validation():
    with pytest.raises(ValueError):
        DetectionParams(size=0)
    with pytest.raises(ValueError):
        DetectionParams(d=0)
    with pytest.raises(ValueError):
        DetectionParams(metric="bogus")
    p = DetectionParams.from_dict({"d": 2, "metric": "tpn", "variant": "sym"})
    assert p.metric is Metric.TPN and p.d == 2


def test_defaults():
    p = DetectionParams()
    assert (p.d, p.k, p.gamma, p.delta, p.max_rounds, p.metric) == (3, 3, 1.7, 5, 10, Metric.COND)


def test_json_record_fields(cliques):
    rec = json.loads(detect_fixed_size(cliques, SEEDS, 5).to_json(cliques))
    assert set(rec) >= {"community", "scores", "trace", "sample_size", "warnings"}
    assert len(rec["scores"]) == 5


def test_external_id_mapping():
    from losp.graph import graph_from_external_edges
    edges = [(a * 10 + 7, b * 10 + 7) for a, b in clique(5) + [(e + 4, f + 4) for e, f in clique(5)]]
    g = graph_from_external_edges(edges)
    seeds = [g.internal_id(x) for x in (7, 17, 27)]
    rec = json.loads(detect_fixed_size(g, seeds, 5).to_json(g))
    assert sorted(rec["community"]) == [7, 17, 27, 37, 47]


def test_trace_best_is_monotone(rng):
    g, truth = generate_planted_partition(5, 20, 0.3, 0.03, rng)
    res = detect(g, truth.communities[0][:2])
    ok = [r for r in res.trace if r["status"] == "ok"]
    assert ok[0]["round"] == 0
    for a, b in zip(ok, ok[1:]):
        assert not Metric.COND.better(a["score"], b["score"])
    assert res.best_round == ok[-1]["round"]
    assert res.community.score == pytest.approx(ok[-1]["score"])
    # the round after the best one (if any) is the decline that stopped the loop
    later = [r for r in res.trace if r["round"] > res.best_round]
    assert len(later) <= 1


def test_deterministic(rng):
    g, truth = generate_planted_partition(5, 20, 0.3, 0.03, rng)
    a = detect(g, truth.communities[1][:3])
    b = detect(g, truth.communities[1][:3])
    assert a.to_json(g) == b.to_json(g)


def test_reseed_off_has_single_round(cliques):
    res = detect(cliques, SEEDS, DetectionParams(reseed=False))
    assert len(res.trace) == 1 and res.best_round == 0


def test_epsilon_filter():
    # conductance is measured on the sample: left K5 has 1 of 21 degree units leaving
    g = Graph.from_edges(clique(5) + [(4, 5)] + clique(5, 5))
    res = detect_fixed_size(g, [0, 1, 2], 5, DetectionParams(epsilon=0.5))
    assert res.community.score == pytest.approx(1 / 21) and not res.rejected
    assert detect_fixed_size(g, [0, 1, 2], 5, DetectionParams(epsilon=0.01)).rejected


def test_locality_counter_independent_of_n():
    # identical neighborhood embedded in graphs of different sizes
    base = clique(6) + [(5, 6)] + clique(6, 6)
    small = Graph.from_edges(base)
    big = Graph.from_edges(base + [(i, i + 1) for i in range(20, 5000)])
    a, b = detect(small, [0, 1]), detect(big, [0, 1])
    assert a.touched == b.touched
    assert a.community.members == b.community.members


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=40, deadline=None)
def test_community_is_prefix_of_ranking(seed):
    rng = np.random.default_rng(seed)
    g = random_graph(rng, 40, 0.15)
    seeds = sorted(rng.choice(40, 2, replace=False).tolist())
    res = detect(g, seeds)
    members = res.community.members
    assert res.ranked[:len(members)] == members
    assert len(members) >= 1
    assert len(res.ranked) == res.sample_size or res.sample_size == len(seeds)
