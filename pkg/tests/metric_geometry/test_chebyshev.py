"""chebyshev のユニットテスト."""

import numpy as np
import pytest

from chebyshev import (
    best_nnet,
    chebyshev_center,
    closure_Z1_membership,
    hull_membership_check,
    minidisk_bruteforce,
    perturb_to_unique_center,
    radius_perturbation_bounds,
    relative_radius_centers,
    self_sets,
    theta,
)
from errors import GuardExceededError
from fixtures import pentagon, square, triangle_family
from hausdorff import PointSet, cross_diameter, deviation, hausdorff
from spaces import Euclidean, KleinBall, path_graph_space

PLANE = Euclidean(2)


def _make_set(points, space=PLANE):
    return PointSet.of(space, points)


def test_equilateral_triangle_center():
    S = triangle_family(2)["S"]
    result = chebyshev_center(S)
    assert result.radius == pytest.approx(1.0 / np.sqrt(3.0), abs=1e-8)
    np.testing.assert_allclose(result.centers.point(0), [0.0, 1.0 / np.sqrt(3.0)], atol=1e-7)


def test_obtuse_perturbation_uses_diameter_ab():
    # S_2 は C で鈍角なので最小包含円は AB を直径とする
    S_n = triangle_family(2)["S_n"]
    result = chebyshev_center(S_n)
    assert result.radius == pytest.approx(0.5, abs=1e-8)
    np.testing.assert_allclose(result.centers.point(0), [0.0, np.sqrt(3.0) / 2.0], atol=1e-7)


def test_center_matches_minidisk_bruteforce():
    rng = np.random.default_rng(20)
    for _ in range(15):
        M = _make_set(rng.uniform(-1.0, 1.0, size=(int(rng.integers(3, 9)), 2)))
        _, radius = minidisk_bruteforce(M)
        assert chebyshev_center(M).radius == pytest.approx(radius, rel=1e-7)


def test_short_descent_is_finished_by_polish():
    # 測地降下を 20 回で止めても仕上げで同じ半径になる
    rng = np.random.default_rng(20)
    for _ in range(5):
        M = _make_set(rng.uniform(-1.0, 1.0, size=(int(rng.integers(3, 9)), 2)))
        _, radius = minidisk_bruteforce(M)
        result = chebyshev_center(M, max_iter=20)
        assert result.iterations <= 20
        assert result.radius == pytest.approx(radius, rel=1e-7)


def test_klein_center_is_locally_optimal():
    klein = KleinBall(1.0, 1.0, 2)
    rng = np.random.default_rng(21)
    M = _make_set(rng.uniform(-0.6, 0.6, size=(6, 2)), klein)
    result = chebyshev_center(M)
    center = result.centers.point(0)
    for direction in rng.normal(size=(30, 2)):
        moved = center + 1e-3 * direction / np.linalg.norm(direction)
        assert np.max(klein.pairwise([moved], M.data)) >= result.radius - 1e-9


def test_two_point_center_is_midpoint():
    M = _make_set([(0.0, 0.0), (4.0, 0.0)])
    result = chebyshev_center(M)
    assert result.radius == pytest.approx(2.0)
    np.testing.assert_allclose(result.centers.point(0), [2.0, 0.0])


def test_finite_space_center_is_relative():
    space = path_graph_space(6)
    result = chebyshev_center(PointSet.of(space, [0, 4]))
    assert result.radius == 2.0
    assert result.centers.to_list() == [2]


def test_relative_radius_and_theta():
    M = _make_set([(0.0, 0.0), (2.0, 0.0)])
    W = _make_set([(1.0, 0.0), (1.0, 1.0), (5.0, 0.0)])
    result = relative_radius_centers(M, W)
    assert result.radius == pytest.approx(1.0)
    np.testing.assert_allclose(result.centers.data, [[1.0, 0.0]])
    # R_M(W) = min{5, 3}
    assert theta(M, W) == pytest.approx(3.0)
    assert hausdorff(M, W) <= theta(M, W)


def test_theta_is_at_most_cross_diameter():
    rng = np.random.default_rng(25)
    for _ in range(20):
        M = _make_set(rng.uniform(-1.0, 1.0, size=(int(rng.integers(1, 7)), 2)))
        W = _make_set(rng.uniform(-1.0, 1.0, size=(int(rng.integers(1, 7)), 2)))
        assert theta(M, W) <= cross_diameter(M, W) + 1e-12


@pytest.mark.parametrize("n", [3, 5, 7])
def test_z0_excludes_interior_of_segments(n):
    # 凸位置の集合では Z₀ の 2 点を結ぶ線分の内点は M に入らない
    rng = np.random.default_rng(26 + n)
    angles = np.sort(rng.uniform(0.0, 2.0 * np.pi, size=n))
    regular = 2.0 * np.pi * np.arange(n) / n
    for points in (np.column_stack([np.cos(angles), np.sin(angles)]), np.column_stack([np.cos(regular), np.sin(regular)])):
        M = _make_set(points)
        Z0 = self_sets(M).Z0
        for i in range(len(Z0)):
            for j in range(i + 1, len(Z0)):
                for eps in np.linspace(0.05, 0.95, 19):
                    assert not M.contains(PLANE.omega(Z0.point(i), Z0.point(j), eps), 1e-9)


def test_self_sets_of_equilateral_triangle():
    cls = self_sets(triangle_family(3)["S"])
    assert cls.m == pytest.approx(1.0)
    assert cls.D == pytest.approx(1.0)
    assert cls.in_md and cls.in_mr0 and cls.in_mm1 and cls.in_m1r0
    assert cls.Z0_cardinality == 3


@pytest.mark.parametrize("builder", [square, pentagon], ids=["square", "pentagon"])
def test_class_verdicts(builder):
    case = builder()
    cls = self_sets(case["S"])
    expected = case["expected"]
    assert cls.in_d0 == expected["in_d0"]
    assert cls.in_dm1 == expected["in_dm1"]
    assert cls.in_d0_Nminus1 == expected["in_d0_Nminus1"]
    assert closure_Z1_membership(case["S"]) == expected["closure_Z1"]


def test_pentagon_perturbs_to_unique_center():
    S = pentagon()["S"]
    moved = perturb_to_unique_center(S)
    assert moved is not None
    assert self_sets(moved).Z0_cardinality == 1
    assert hausdorff(S, moved) <= self_sets(S).m / 4.0 + 1e-12


def test_square_cannot_be_perturbed():
    assert perturb_to_unique_center(square()["S"]) is None


def test_best_nnet_on_two_clusters():
    M = _make_set([(0.0, 0.0), (1.0, 0.0), (10.0, 0.0), (11.0, 0.0)])
    for mode in ("exact", "local"):
        centers, radius = best_nnet(M, 2, mode, seed=0)
        assert radius == pytest.approx(0.5)
        assert deviation(M, centers) == pytest.approx(0.5)


def test_best_nnet_edge_cases():
    M = _make_set([(0.0, 0.0), (1.0, 0.0)])
    centers, radius = best_nnet(M, 3)
    assert radius == 0.0 and len(centers) == 2
    with pytest.raises(ValueError):
        best_nnet(M, 0)
    with pytest.raises(ValueError):
        best_nnet(_make_set([(0.0, 0.0), (1.0, 0.0), (2.0, 0.0)]), 2, mode="greedy")


def test_best_nnet_guard():
    rng = np.random.default_rng(22)
    M = _make_set(rng.uniform(size=(20, 2)))
    with pytest.raises(GuardExceededError):
        best_nnet(M, 5, "exact")


def test_best_nnet_local_on_square_corners():
    # 最遠点挿入だけだと対角の 2 点から始まり半径 √2/2 で止まる
    M = _make_set([(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)])
    _, exact = best_nnet(M, 2, "exact")
    assert exact == pytest.approx(0.5)
    for seed in (None, 0):
        centers, local = best_nnet(M, 2, "local", seed=seed)
        assert local == pytest.approx(exact, abs=1e-7)
        assert deviation(M, centers) == pytest.approx(0.5, abs=1e-7)


def test_exact_never_worse_than_local():
    rng = np.random.default_rng(23)
    M = _make_set(rng.uniform(-1.0, 1.0, size=(8, 2)))
    _, exact = best_nnet(M, 3, "exact")
    _, local = best_nnet(M, 3, "local", seed=1)
    assert exact <= local + 1e-9


def test_radius_perturbation_bounds_hold():
    rng = np.random.default_rng(24)
    for _ in range(5):
        M = _make_set(rng.uniform(-1.0, 1.0, size=(5, 2)))
        W = _make_set(rng.uniform(-1.0, 1.0, size=(4, 2)))
        A = PointSet.of(PLANE, M.data + 0.05 * rng.normal(size=M.data.shape))
        B = PointSet.of(PLANE, W.data + 0.05 * rng.normal(size=W.data.shape))
        report = radius_perturbation_bounds(M, W, A, B)
        assert report["pass"], report["failed"]


def test_center_lies_in_convex_hull():
    rng = np.random.default_rng(25)
    klein = KleinBall(1.0, 1.0, 2)
    for space in (PLANE, klein):
        M = _make_set(rng.uniform(-0.6, 0.6, size=(7, 2)), space)
        assert hull_membership_check(M)
