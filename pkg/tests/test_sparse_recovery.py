import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from losp.sparse_recovery import (LPInfeasibleError, LPUnboundedError, reseed_rhs, rank_vertices,
                                  solve_lp1, solve_lp2, solve_min_cost)
from losp.spectral import build_subspace

from oracles import dense_lp, random_lp_instance
from toys import LEFT, SEEDS


def check_solution(sol, V, rows, rhs):
    assert sol.y.min() >= 0.0
    assert np.abs(sol.y - V @ (V.T @ sol.y)).max() <= 1e-8
    for r, b in zip(rows, rhs):
        assert r @ sol.y >= b - 1e-8
    assert sol.objective == pytest.approx(sol.y.sum())


def test_uniform_column():
    n = 7
    V = np.full((n, 1), 1 / np.sqrt(n))
    sol = solve_lp1(V, np.eye(n)[0])
    np.testing.assert_allclose(sol.y, np.ones(n), atol=1e-12)
    assert sol.objective == pytest.approx(n)


def test_two_cliques_support_is_left_clique(cliques):
    V = build_subspace(cliques, SEEDS, d=2, k=3).basis
    s = np.zeros(9)
    s[SEEDS] = 1
    sol = solve_lp1(V, s)
    check_solution(sol, V, [s], [1.0])
    assert np.flatnonzero(sol.y > 1e-6).tolist() == LEFT
    ref = dense_lp(V, [s], [1.0])
    assert sol.objective == pytest.approx(ref.fun, abs=1e-6)
    np.testing.assert_allclose(sol.y, V @ ref.x, atol=1e-6)


def test_zero_seed_row_infeasible():
    V = np.zeros((4, 2))
    V[1, 0] = V[2, 1] = 1.0
    with pytest.raises(LPInfeasibleError):
        solve_lp1(V, np.eye(4)[0])


def test_all_zero_indicator_rejected():
    with pytest.raises(ValueError):
        solve_lp1(np.eye(3)[:, :1], np.zeros(3))


def test_unbounded_reported():
    # min -x s.t. x >= 0
    with pytest.raises(LPUnboundedError):
        solve_min_cost(np.array([[1.0]]), np.array([0.0]), np.array([-1.0]))


def test_min_cost_small_instance():
    # min x1 + x2 s.t. x1 >= 1, x2 >= 2, x1 + x2 >= 4 -> objective 4
    G = np.array([[1.0, 0.0], [0.0, 1.0], [1.0, 1.0]])
    x = solve_min_cost(G, np.array([1.0, 2.0, 4.0]), np.array([1.0, 1.0]))
    assert x.sum() == pytest.approx(4.0)
    assert np.all(G @ x >= np.array([1.0, 2.0, 4.0]) - 1e-12)


def test_degenerate_identical_rows_terminate():
    # many identical rows is the classic cycling trap
    V = np.full((40, 1), 1 / np.sqrt(40))
    V = np.hstack([V, np.r_[np.ones(20), -np.ones(20)][:, None] / np.sqrt(40)])
    s = np.zeros(40)
    s[:3] = 1
    sol = solve_lp1(V, s)
    ref = dense_lp(V, [s], [1.0])
    assert sol.objective == pytest.approx(ref.fun, abs=1e-8)


def test_rhs_formula():
    assert reseed_rhs(3, 8) == pytest.approx(11 / 6)
    assert reseed_rhs(4, 4) == 1.0


def test_lp2_with_same_seeds_equals_lp1(cliques):
    V = build_subspace(cliques, SEEDS, d=2, k=3).basis
    s = np.zeros(9)
    s[SEEDS] = 1
    a, b = solve_lp1(V, s), solve_lp2(V, s, s)
    assert a.objective == pytest.approx(b.objective, abs=1e-8)
    np.testing.assert_allclose(a.y, b.y, atol=1e-8)


def test_lp2_two_augmented_true_members_keeps_support(cliques):
    V = build_subspace(cliques, SEEDS, d=2, k=3).basis
    s = np.zeros(9)
    s[SEEDS] = 1
    s_t = s.copy()
    s_t[[3, 4]] = 1
    sol = solve_lp2(V, s, s_t)
    check_solution(sol, V, [s, s_t], [1.0, 1 + (1 / 6) * 2])
    assert np.flatnonzero(sol.y > 1e-6).tolist() == LEFT
    ref = dense_lp(V, [s, s_t], [1.0, reseed_rhs(3, 5)])
    assert sol.objective == pytest.approx(ref.fun, abs=1e-6)


def test_lp2_requires_nested_seeds():
    with pytest.raises(ValueError):
        solve_lp2(np.eye(3), np.eye(3)[0], np.eye(3)[1])


@pytest.mark.parametrize("y, order", [
    ([0.2, 0.9, 0.5], [1, 2, 0]),
    ([0.4, 0.4, 0.4], [0, 1, 2]),
    ([0.0, 0.3, 0.0, 0.1], [1, 3, 0, 2]),
])
def test_rank_vertices(y, order):
    assert rank_vertices(y).tolist() == order


@pytest.mark.parametrize("scale", [1e-3, 0.5, 7.0, 1e4])
def test_ranking_scale_invariant(cliques, scale):
    V = build_subspace(cliques, SEEDS, d=2, k=3).basis
    s = np.zeros(9)
    s[SEEDS] = 1
    base = rank_vertices(solve_lp1(V, s).y)
    assert rank_vertices(solve_lp1(scale * V, s).y).tolist() == base.tolist()


@given(st.integers(0, 2 ** 32 - 1))
@settings(max_examples=80, deadline=None)
def test_random_instances_match_oracle(seed):
    rng = np.random.default_rng(seed)
    V, s, s_t = random_lp_instance(rng)
    sol = solve_lp1(V, s)
    check_solution(sol, V, [s], [1.0])
    ref = dense_lp(V, [s], [1.0])
    assert ref.status == 0
    assert sol.objective == pytest.approx(ref.fun, abs=1e-6, rel=1e-9)

    n_s, n_t = int(s.sum()), int(s_t.sum())
    sol2 = solve_lp2(V, s, s_t)
    rhs = [1.0, reseed_rhs(n_s, n_t)]
    check_solution(sol2, V, [s, s_t], rhs)
    ref2 = dense_lp(V, [s, s_t], rhs)
    assert sol2.objective == pytest.approx(ref2.fun, abs=1e-6, rel=1e-9)
    assert sol2.objective >= sol.objective - 1e-9
