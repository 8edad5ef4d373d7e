"""hausdorff のユニットテスト."""

import numpy as np
import pytest

from errors import GeodesicUnavailableError, SpaceMismatchError
from fixtures import example_i
from hausdorff import (
    GeneralizedBall,
    PointSet,
    cross_diameter,
    deviation,
    diameter,
    eps_midpoint_set,
    eps_projection,
    generalized_ball_check,
    hausdorff,
    midpoint_set,
    point_set_distance,
    set_gap,
)
from spaces import Euclidean, KleinBall, path_graph_space

PLANE = Euclidean(2)


def _make_random_set(rng, n, low=-1.0, high=1.0):
    return PointSet.of(PLANE, rng.uniform(low, high, size=(n, 2)))


def test_example_i_hausdorff_is_sqrt2():
    case = example_i()
    assert hausdorff(case["M"], case["W"]) == pytest.approx(np.sqrt(2.0))
    assert cross_diameter(case["M"], case["W"]) == pytest.approx(2.0 * np.sqrt(2.0))


def test_example_i_midpoint_set_has_five_points():
    case = example_i()
    omega = midpoint_set(case["M"], case["W"])
    assert len(omega) == 5
    assert hausdorff(omega, case["omega"]) == pytest.approx(0.0, abs=1e-12)


def test_midpoint_set_halves_distance_in_plane():
    rng = np.random.default_rng(3)
    for _ in range(20):
        M = _make_random_set(rng, 4)
        W = _make_random_set(rng, 5)
        omega = midpoint_set(M, W)
        half = hausdorff(M, W) / 2.0
        assert hausdorff(M, omega) == pytest.approx(half, abs=1e-12)
        assert hausdorff(omega, W) == pytest.approx(half, abs=1e-12)


def test_midpoint_set_halves_distance_in_klein():
    klein = KleinBall(1.0, 1.0, 2)
    rng = np.random.default_rng(4)
    M = PointSet.of(klein, rng.uniform(-0.5, 0.5, size=(3, 2)))
    W = PointSet.of(klein, rng.uniform(-0.5, 0.5, size=(4, 2)))
    omega = midpoint_set(M, W)
    half = hausdorff(M, W) / 2.0
    assert hausdorff(M, omega) == pytest.approx(half, abs=1e-9)
    assert hausdorff(omega, W) == pytest.approx(half, abs=1e-9)


def test_midpoint_set_requires_geodesic_space():
    space = path_graph_space(4)
    M, W = PointSet.of(space, [0]), PointSet.of(space, [4])
    with pytest.raises(GeodesicUnavailableError):
        midpoint_set(M, W)


def test_eps_midpoint_set_on_path_graph():
    space = path_graph_space(10, 0.1)
    M, W = PointSet.of(space, [0]), PointSet.of(space, [10])
    eps = 0.1
    omega = eps_midpoint_set(M, W, eps)
    # 中点 5 だけが 2·max < 1.1 を満たす
    assert omega.to_list() == [5]
    assert 2.0 * deviation(M, omega) <= deviation(M, W) + 2.0 * eps
    assert 2.0 * deviation(omega, M) <= hausdorff(M, W) + 3.0 * eps


def test_eps_midpoint_set_without_midpoints_raises():
    # 隣接点の間に近似中点はない
    space = path_graph_space(3, 1.0)
    with pytest.raises(ValueError):
        eps_midpoint_set(PointSet.of(space, [0]), PointSet.of(space, [1]), 0.5)


def test_eps_midpoint_set_rejects_nonpositive_eps():
    space = path_graph_space(3)
    with pytest.raises(ValueError):
        eps_midpoint_set(PointSet.of(space, [0]), PointSet.of(space, [2]), 0.0)


def test_deviation_is_asymmetric():
    M = PointSet.of(PLANE, [(0.0, 0.0)])
    W = PointSet.of(PLANE, [(0.0, 0.0), (3.0, 0.0)])
    assert deviation(M, W) == 0.0
    assert deviation(W, M) == pytest.approx(3.0)
    assert hausdorff(M, W) == pytest.approx(3.0)


def test_hausdorff_triangle_inequality():
    rng = np.random.default_rng(5)
    for _ in range(30):
        A, B, C = (_make_random_set(rng, n) for n in (3, 4, 5))
        assert hausdorff(A, C) <= hausdorff(A, B) + hausdorff(B, C) + 1e-12


def test_point_set_distance_and_gap():
    M = PointSet.of(PLANE, [(1.0, 0.0), (4.0, 0.0)])
    W = PointSet.of(PLANE, [(0.0, 2.0), (4.0, 1.0)])
    assert point_set_distance((0.0, 0.0), M) == pytest.approx(1.0)
    assert set_gap(M, W) == pytest.approx(1.0)
    assert diameter(M) == pytest.approx(3.0)


def test_eps_projection_collects_near_points():
    M = PointSet.of(PLANE, [(1.0, 0.0), (0.0, 1.05), (3.0, 0.0)])
    assert len(eps_projection((0.0, 0.0), M, 0.0)) == 1
    assert len(eps_projection((0.0, 0.0), M, 0.1)) == 2
    with pytest.raises(ValueError):
        eps_projection((0.0, 0.0), M, -1.0)


def test_eps_projection_grows_with_eps():
    rng = np.random.default_rng(12)
    for _ in range(10):
        M = _make_random_set(rng, 12)
        x = rng.uniform(-2.0, 2.0, size=2)
        levels = np.sort(rng.uniform(0.0, 1.5, size=5))
        for small, large in zip(levels[:-1], levels[1:]):
            inner, outer = eps_projection(x, M, small), eps_projection(x, M, large)
            assert len(inner) <= len(outer)
            assert all(outer.contains(p) for p in inner)


def test_point_set_rejects_duplicates_and_empty():
    with pytest.raises(ValueError):
        PointSet.of(PLANE, [(0.0, 0.0), (0.0, 0.0)])
    with pytest.raises(ValueError):
        PointSet.of(path_graph_space(3), [])
    # unique は重複を落とす
    assert len(PointSet.unique(PLANE, [(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)])) == 2


def test_mixed_spaces_raise():
    M = PointSet.of(PLANE, [(0.0, 0.0)])
    W = PointSet.of(Euclidean(3), [(0.0, 0.0, 0.0)])
    with pytest.raises(SpaceMismatchError):
        hausdorff(M, W)


def test_generalized_ball_members():
    space = path_graph_space(10, 1.0)
    ball = GeneralizedBall(PointSet.of(space, [0, 10]), 2.0)
    assert sorted(ball.members().to_list()) == [0, 1, 2, 8, 9, 10]
    with pytest.raises(ValueError):
        GeneralizedBall(PointSet.of(space, [0]), -1.0)


def test_generalized_ball_inequality():
    space = path_graph_space(10, 1.0)
    M, W = PointSet.of(space, [0]), PointSet.of(space, [3])
    lhs, rhs, ok = generalized_ball_check(M, 2.0, W, 1.0)
    # B[0, 2] = {0, 1, 2}, B[3, 1] = {2, 3, 4}
    assert lhs == pytest.approx(2.0)
    assert rhs == pytest.approx(4.0)
    assert ok
