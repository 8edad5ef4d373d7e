"""nnet_metrics のユニットテスト."""

from itertools import permutations

import numpy as np
import pytest

from fixtures import example_i, example_ii_family, translated_pair
from nnet_metrics import (
    INF,
    PointMultiset,
    alpha_p,
    alpha_pR,
    alpha_star,
    local_equality_radius,
    lp_norm,
    min_separation,
    nnet_interpolate,
    nnet_npc_check,
    pi_fiber_distance,
    pi_midpoint,
    pi_sandwich,
    rho_Np,
    twonet_midpoints,
)
from spaces import Euclidean, KleinBall

PLANE = Euclidean(2)


def _make_net(points, space=PLANE):
    return PointMultiset.of(space, points)


def _make_random_net(rng, n, space=PLANE, scale=1.0):
    return PointMultiset.of(space, rng.uniform(-scale, scale, size=(n, 2)))


def test_lp_norm_values():
    assert lp_norm([3.0, 4.0], 2.0) == pytest.approx(5.0)
    assert lp_norm([3.0, 4.0], INF) == 4.0
    assert lp_norm([0.0, 0.0], 1.0) == 0.0
    # 大きな p では対数空間で計算しても最大値に近づく
    assert lp_norm([1.0, 2.0], 200.0) == pytest.approx(2.0, rel=1e-2)


def test_alpha_p_matches_brute_force():
    rng = np.random.default_rng(10)
    for _ in range(15):
        N = int(rng.integers(1, 6))
        S, T = _make_random_net(rng, N), _make_random_net(rng, N)
        for p in (1.0, 2.0, INF):
            brute = min(rho_Np(S, T.permuted(perm), p) for perm in permutations(range(N)))
            assert alpha_p(S, T, p).cost == pytest.approx(brute, rel=1e-9, abs=1e-12)


def test_alpha_p_permutation_is_valid():
    rng = np.random.default_rng(11)
    S, T = _make_random_net(rng, 5), _make_random_net(rng, 5)
    assignment = alpha_p(S, T, INF)
    assert sorted(assignment.perm) == list(range(5))
    assert rho_Np(S, T.permuted(assignment.perm), INF) == pytest.approx(assignment.cost)


def test_metric_ordering():
    rng = np.random.default_rng(12)
    for _ in range(20):
        N = int(rng.integers(1, 7))
        S, T = _make_random_net(rng, N), _make_random_net(rng, N)
        a_inf = alpha_p(S, T, INF).cost
        assert alpha_star(S, T) <= a_inf + 1e-12
        for p in (1.0, 2.0):
            a_p = alpha_p(S, T, p).cost
            assert a_inf <= a_p + 1e-12
            assert a_p <= N ** (1.0 / p) * a_inf + 1e-12


def test_multiplicity_matters_for_alpha_p_but_not_alpha_star():
    S = _make_net([(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)])
    T = _make_net([(0.0, 0.0), (1.0, 0.0), (1.0, 0.0)])
    assert alpha_star(S, T) == 0.0
    assert alpha_p(S, T, INF).cost == pytest.approx(1.0)
    assert alpha_p(S, T, 1.0).cost == pytest.approx(1.0)


def test_invalid_p_and_size_mismatch():
    S = _make_net([(0.0, 0.0), (1.0, 0.0)])
    with pytest.raises(ValueError):
        alpha_p(S, S, 0.5)
    with pytest.raises(ValueError):
        alpha_p(S, _make_net([(0.0, 0.0)]), 2.0)


def test_example_i_quotient():
    case = example_i()
    S, T = case["M_net"], case["W_net"]
    assert alpha_star(S, T) == pytest.approx(np.sqrt(2.0))
    assert alpha_p(S, T, INF).cost == pytest.approx(2.0)
    bounds = alpha_pR(S, T, INF, max_chain=256, extras=case["omega"])
    assert bounds.converged
    # Ω を経由するチェーンが 2 を実現する。下限 √2 とは一致しないので確定値にはならない
    assert bounds.chain == pytest.approx(2.0)
    assert bounds.exact is None


@pytest.mark.parametrize("case", example_ii_family(), ids=lambda c: f"case{c['case']}")
def test_example_ii_quotient_cases(case):
    S, T = case["M_net"], case["W_net"]
    expected = case["expected"]
    assert alpha_star(S, T) == pytest.approx(expected["hausdorff"])
    assert alpha_p(S, T, INF).cost == pytest.approx(expected["alpha_inf"])
    bounds = alpha_pR(S, T, INF, max_chain=256)
    assert bounds.chain == pytest.approx(expected["alpha_inf_R"])
    assert bounds.lower <= bounds.chain <= bounds.upper + 1e-12
    if expected["alpha_inf_R"] == pytest.approx(expected["hausdorff"]):
        assert bounds.exact == pytest.approx(expected["hausdorff"])
    else:
        assert bounds.exact is None


def test_example_ii_chain_goes_through_one_intermediate_net():
    case = example_ii_family()[2]
    bounds = alpha_pR(case["M_net"], case["W_net"], INF, max_chain=256)
    # M → T → W の 2 辺 (直接の辺は α_∞ = 3)
    assert bounds.chain_edges == 2


def test_converged_chain_is_not_reported_as_exact():
    line = Euclidean(1)
    S = PointMultiset.of(line, [[6.4], [2.7], [0.4]])
    T = PointMultiset.of(line, [[0.2], [8.1], [9.1]])
    bounds = alpha_pR(S, T, INF, max_chain=256)
    assert bounds.converged
    assert bounds.lower < bounds.chain - 1e-9
    assert bounds.exact is None

    # 候補に中点を足すとチェーンは短くなりうる (長くはならない)
    union = sorted([6.4, 2.7, 0.4, 0.2, 8.1, 9.1])
    mids = [[(u + v) / 2.0] for u, v in zip(union, union[1:])]
    refined = alpha_pR(S, T, INF, max_chain=256, extras=mids)
    assert refined.chain is not None
    assert bounds.lower - 1e-12 <= refined.chain <= bounds.chain + 1e-12
    assert refined.exact is None or refined.exact == pytest.approx(refined.lower)


def test_alpha_pR_two_nets_are_exact():
    rng = np.random.default_rng(13)
    S, T = _make_random_net(rng, 2), _make_random_net(rng, 2)
    bounds = alpha_pR(S, T, INF)
    # N <= 2 では α_{∞,R} = α
    assert bounds.exact == pytest.approx(alpha_star(S, T))


def test_alpha_pR_finite_p_chain_between_bounds():
    case = example_ii_family()[2]
    bounds = alpha_pR(case["M_net"], case["W_net"], 1.0, max_chain=256)
    assert bounds.chain is not None
    assert bounds.lower - 1e-12 <= bounds.chain <= bounds.upper + 1e-12


def test_alpha_pR_gives_up_on_large_candidate_pools():
    rng = np.random.default_rng(14)
    S, T = _make_random_net(rng, 6), _make_random_net(rng, 6)
    bounds = alpha_pR(S, T, INF)
    if bounds.upper - bounds.lower > 1e-9:
        assert bounds.exact is None
        assert not bounds.converged


def test_interpolation_is_geodesic():
    rng = np.random.default_rng(15)
    klein = KleinBall(1.0, 1.0, 2)
    for space, scale in ((PLANE, 1.0), (klein, 0.6)):
        S = _make_random_net(rng, 4, space, scale)
        T = _make_random_net(rng, 4, space, scale)
        for p in (2.0, INF):
            mid = nnet_interpolate(S, T, p, 0.3)
            total = alpha_p(S, T, p).cost
            assert alpha_p(S, mid, p).cost + alpha_p(mid, T, p).cost == pytest.approx(total, rel=1e-9)
            assert alpha_p(S, mid, p).cost == pytest.approx(0.3 * total, rel=1e-9)


def test_interpolation_rejects_lambda_outside_unit_interval():
    S = _make_net([(0.0, 0.0), (1.0, 0.0)])
    with pytest.raises(ValueError):
        nnet_interpolate(S, S, 2.0, 1.5)


def test_local_npc_near_a_square():
    rng = np.random.default_rng(16)
    U = _make_net([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    radius = local_equality_radius(U)
    assert radius == pytest.approx(0.25)
    S = _make_net(U.data + 0.1 * radius * rng.normal(size=(4, 2)))
    T = _make_net(U.data + 0.1 * radius * rng.normal(size=(4, 2)))
    assert nnet_npc_check(S, T, U, INF)["pass"]


def test_min_separation_ignores_duplicates():
    assert min_separation(_make_net([(0.0, 0.0), (0.0, 0.0)])) == 0.0
    assert min_separation(_make_net([(0.0, 0.0), (0.0, 0.0), (0.0, 2.0)])) == pytest.approx(2.0)


def test_twonet_midpoints_of_parallel_pairs():
    S = _make_net([(0.0, 0.0), (2.0, 0.0)])
    T = _make_net([(0.0, 1.0), (2.0, 1.0)])
    mids = twonet_midpoints(S, T)
    # 2 通りの対角線の組は同じ中点 2-ネット を与える
    assert len(mids) == 1
    assert sorted(map(tuple, mids[0].to_list())) == [(0.0, 0.5), (2.0, 0.5)]


def test_twonet_midpoints_are_halfway():
    rng = np.random.default_rng(18)
    for _ in range(50):
        S, T = _make_random_net(rng, 2), _make_random_net(rng, 2)
        half = alpha_p(S, T, INF).cost / 2.0
        mids = twonet_midpoints(S, T)
        assert mids
        for Z in mids:
            assert alpha_p(S, Z, INF).cost == pytest.approx(half, abs=1e-9)
            assert alpha_p(Z, T, INF).cost == pytest.approx(half, abs=1e-9)


def test_twonet_midpoints_of_square_diagonals():
    # 4 つの組の距離がすべて 1 なので中点 2-ネット は 2 つ
    S = _make_net([(0.0, 0.0), (1.0, 1.0)])
    T = _make_net([(1.0, 0.0), (0.0, 1.0)])
    mids = twonet_midpoints(S, T)
    assert len(mids) == 2
    assert sorted(sorted(map(tuple, Z.to_list())) for Z in mids) == [[(0.0, 0.5), (1.0, 0.5)], [(0.5, 0.0), (0.5, 1.0)]]
    for Z in mids:
        assert alpha_p(S, Z, INF).cost == pytest.approx(0.5)
        assert alpha_p(Z, T, INF).cost == pytest.approx(0.5)


def test_pi_midpoint_and_sandwich():
    S = _make_net([(0.0, 0.0), (2.0, 0.0)])
    np.testing.assert_allclose(pi_midpoint(S), [1.0, 0.0])
    rng = np.random.default_rng(17)
    for _ in range(20):
        bounds = pi_sandwich(_make_random_net(rng, 2), _make_random_net(rng, 2))
        assert bounds["lower"] <= bounds["value"] + 1e-12
        assert bounds["value"] <= bounds["upper"] + 1e-12


def test_pi_fiber_distance_in_plane():
    case = translated_pair((0.3, -0.2), (0.5, 0.4), (1.1, 0.7))
    value = pi_fiber_distance(case["S"], case["y"])
    assert value == pytest.approx(case["expected"]["fiber_distance"], abs=1e-6)
