import warnings

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from losp.graph import Graph
from losp.spectral import (RankDeficiencyWarning, WalkOperator, WalkVariant, build_subspace,
                           global_spectral_clustering, initial_probability, orthonormalize,
                           stationary_distribution, walk_step)

from oracles import bfs_distances, dense_subspace, dense_walk_matrix, projector
from toys import LEFT, SEEDS, clique, random_graph


@pytest.mark.parametrize("seeds, weights, expected", [
    ([0, 1, 2], None, [1 / 3, 1 / 3, 1 / 3, 0]),
    ([2], None, [0, 0, 1, 0]),
    ([0, 1, 2], [1, 0.5, 0.5], [0.5, 0.25, 0.25, 0]),
])
def test_initial_probability(seeds, weights, expected):
    np.testing.assert_allclose(initial_probability(seeds, 4, weights), expected)


def test_initial_probability_empty():
    with pytest.raises(ValueError):
        initial_probability([], 3)


def test_walk_isolated_vertex_fixed_point():
    g = Graph.from_edges([], n=1)
    np.testing.assert_allclose(walk_step(g, "rw", np.array([1.0])), [1.0])


def test_walk_single_edge():
    g = Graph.from_edges([(0, 1)])
    np.testing.assert_allclose(walk_step(g, "rw", np.array([1.0, 0.0])), [0.5, 0.5])


@pytest.mark.parametrize("variant", ["rw", "sym"])
def test_walk_matches_dense(rng, variant):
    g = random_graph(rng, 30, 0.15)
    p = rng.random(30)
    p /= p.sum()
    expected = dense_walk_matrix(g, variant) @ p
    if variant == "sym":
        expected /= expected.sum()
    np.testing.assert_allclose(walk_step(g, variant, p), expected, atol=1e-14)


def test_stationary_fixed_points(rng):
    g = random_graph(rng, 40, 0.1)
    for variant in WalkVariant:
        pi = stationary_distribution(g, variant)
        assert np.abs(walk_step(g, variant, pi) - pi).sum() <= 1e-12


@pytest.mark.parametrize("M, width", [
    (np.eye(4)[:, :3], 3),
    (np.array([[1.0, 1.0], [2.0, 2.0], [3.0, 3.0]]), 1),
    (np.array([[3.0], [4.0]]), 1),
])
def test_orthonormalize(M, width):
    Q = orthonormalize(M)
    assert Q.shape[1] == width
    assert np.abs(Q.T @ Q - np.eye(width)).max() <= 1e-10
    np.testing.assert_allclose(projector(Q) @ M, M, atol=1e-12)


def test_orthonormalize_normalizes_column():
    np.testing.assert_allclose(orthonormalize(np.array([3.0, 4.0]))[:, 0], [0.6, 0.8])


def test_orthonormalize_zero():
    with pytest.raises(ValueError):
        orthonormalize(np.zeros((3, 2)))


def test_d1_basis_is_normalized_walk_vector(cliques):
    for k in range(4):
        V = build_subspace(cliques, SEEDS, d=1, k=k).basis
        p = initial_probability(SEEDS, cliques.n)
        for _ in range(k):
            p = walk_step(cliques, "rw", p)
        np.testing.assert_allclose(np.abs(V[:, 0]), p / np.linalg.norm(p), atol=1e-14)


def test_disjoint_cliques_basis_vanishes_on_other_component():
    g = Graph.from_edges(clique(5) + clique(5, offset=5))
    with pytest.warns(RankDeficiencyWarning):
        V = build_subspace(g, [0, 1, 2], d=2, k=3).basis
    assert np.all(V[5:] == 0.0)
    # one lazy step already spreads the seed mass uniformly over the clique
    NT = dense_walk_matrix(g)
    p = NT @ np.r_[np.full(3, 1 / 3), np.zeros(7)]
    np.testing.assert_allclose(projector(V) @ p, p, atol=1e-12)


def test_two_cliques_row_structure(cliques):
    V = build_subspace(cliques, SEEDS, d=2, k=3).basis
    oracle = dense_subspace(cliques, SEEDS, 2, 3)
    np.testing.assert_allclose(projector(V), projector(oracle), atol=1e-10)
    # vertices with identical closed neighborhoods get identical rows
    for rows in (LEFT[:4], [5, 6, 7, 8]):
        np.testing.assert_allclose(V[rows], np.tile(V[rows[0]], (len(rows), 1)), atol=1e-12)
    assert not np.allclose(V[0], V[4])


def test_rank_deficient_walk_shrinks_dimension():
    g = Graph.from_edges(clique(4))
    with pytest.warns(RankDeficiencyWarning):
        sub = build_subspace(g, [0, 1, 2, 3], d=3, k=2)
    assert sub.d == 1
    assert sub.warnings


@pytest.mark.parametrize("variant", ["rw", "sym"])
def test_subspace_matches_dense_oracle(rng, variant):
    for _ in range(10):
        n = int(rng.integers(10, 50))
        g = random_graph(rng, n, 0.12)
        seeds = sorted(rng.choice(n, 3, replace=False).tolist())
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", RankDeficiencyWarning)
            V = build_subspace(g, seeds, 3, 3, variant).basis
        oracle = dense_subspace(g, seeds, 3, 3, variant)
        if V.shape[1] == oracle.shape[1] == 3 and np.linalg.matrix_rank(oracle, 1e-8) == 3:
            np.testing.assert_allclose(projector(V), projector(oracle), atol=1e-8)


def test_global_spectral_clustering_recovers_cliques():
    edges = clique(6) + clique(6, 6) + clique(6, 12) + [(0, 6), (6, 12)]
    g = Graph.from_edges(edges)
    labels = global_spectral_clustering(g, 3, seed=1)
    groups = {tuple(np.flatnonzero(labels == c)) for c in range(3)}
    assert groups == {tuple(range(0, 6)), tuple(range(6, 12)), tuple(range(12, 18))}


graph_params = st.tuples(st.integers(5, 200), st.floats(0.01, 0.3), st.integers(0, 2 ** 31))


@given(graph_params, st.integers(1, 4), st.integers(0, 4))
@settings(max_examples=60, deadline=None)
def test_locality_and_orthonormality(params, d, k):
    n, p, seed = params
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, min(p, 6.0 / n))
    seeds = rng.choice(n, min(3, n), replace=False).tolist()
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RankDeficiencyWarning)
        V = build_subspace(g, seeds, d, k).basis
    assert np.abs(V.T @ V - np.eye(V.shape[1])).max() <= 1e-10
    dist = bfs_distances(g, seeds)
    far = [v for v in range(n) if dist.get(v, 10 ** 9) > d - 1 + k]
    assert np.all(V[far] == 0.0)


@given(graph_params, st.integers(1, 6))
@settings(max_examples=60, deadline=None)
def test_rw_sym_conjugation(params, steps):
    n, p, seed = params
    rng = np.random.default_rng(seed)
    g = random_graph(rng, n, p)
    rw, sym = WalkOperator(g, "rw"), WalkOperator(g, "sym")
    isq = 1.0 / np.sqrt(g.degrees + 1.0)
    x = rng.random(n)
    a, b = x.copy(), isq * x
    for _ in range(steps):
        a = rw.apply(a)
        b = sym.apply(b)
    np.testing.assert_allclose(isq * a, b, atol=1e-10)
