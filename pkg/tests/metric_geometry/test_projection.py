"""projection のユニットテスト."""

import numpy as np
import pytest

from bodies import ConvexBody, contains
from hausdorff import PointSet, deviation, set_gap
from projection import (
    ProjectionQuery,
    delta_projection,
    delta_projection_stability,
    deviation_contraction_check,
    discretize,
    lens,
    lens_deviation,
    lens_distance,
    lambda_disconnect,
    project_convex,
    project_set,
    ratio_monotonicity_check,
)
from spaces import Euclidean, KleinBall

PLANE = Euclidean(2)
KLEIN = KleinBall(1.0, 1.0, 2)
LEVELS = {"t": 0.1, "eps": 0.2, "delta": 0.4, "eps2": 0.15, "delta2": 0.3}


def _make_square():
    return ConvexBody.hull(PLANE, [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)])


def _lambda_bruteforce(M: PointSet) -> float:
    """全ての 2 分割 A ∪ B = M について |AB| の最大値."""
    n = len(M)
    best = 0.0
    for mask in range(1, 2 ** (n - 1)):
        A = [i for i in range(n) if mask >> i & 1]
        B = [i for i in range(n) if not mask >> i & 1]
        best = max(best, set_gap(M.subset(A), M.subset(B)))
    return best


def test_lambda_disconnect_of_two_clusters():
    M = PointSet.of(PLANE, [(0.0, 0.0), (1.0, 0.0), (2.0, 0.0), (10.0, 0.0), (11.0, 0.0)])
    assert lambda_disconnect(M) == pytest.approx(8.0)
    assert lambda_disconnect(PointSet.of(PLANE, [(0.0, 0.0)])) == 0.0


def test_lambda_disconnect_matches_bipartitions():
    rng = np.random.default_rng(40)
    for _ in range(10):
        M = PointSet.of(PLANE, rng.uniform(-1.0, 1.0, size=(int(rng.integers(2, 8)), 2)))
        assert lambda_disconnect(M) == pytest.approx(_lambda_bruteforce(M), abs=1e-12)


def test_project_set_onto_square():
    W = PointSet.of(PLANE, [(3.0, 1.0), (3.0, 1.5), (-1.0, -1.0)])
    projected = project_set(W, _make_square())
    np.testing.assert_allclose(sorted(map(tuple, projected.to_list())), [(0.0, 0.0), (2.0, 1.0), (2.0, 1.5)], atol=1e-12)
    # 同じ点に射影されたものは 1 点にまとめる
    collapsed = project_set(PointSet.of(PLANE, [(3.0, 3.0), (4.0, 4.0)]), _make_square())
    assert len(collapsed) == 1


def test_project_convex_is_identity_inside():
    np.testing.assert_allclose(project_convex((0.5, 1.5), _make_square()), [0.5, 1.5])


def test_delta_projection_levels():
    M = PointSet.of(PLANE, [(1.0, 0.0), (0.0, 1.2), (0.0, -2.0)])
    assert len(delta_projection((0.0, 0.0), M, 0.0)) == 1
    assert len(delta_projection((0.0, 0.0), M, 0.5)) == 2
    assert len(delta_projection((0.0, 0.0), M, 1.0)) == 3


def test_projection_query_rejects_negative_delta():
    with pytest.raises(ValueError):
        ProjectionQuery((0.0, 0.0), None, -0.1)


def test_discretize_square_covers_body():
    body = _make_square()
    coarse = discretize(body, 0.25)
    fine = discretize(body, 0.05)
    assert all(contains(body, p, 1e-9) for p in coarse.points)
    assert coarse.hausdorff_bound == pytest.approx(0.25 * np.sqrt(2.0))
    assert deviation(fine.points, coarse.points) <= coarse.hausdorff_bound


def test_discretize_segment_uses_geodesic_spacing():
    body = ConvexBody.segment(PLANE, (0.0, 0.0), (1.0, 0.0))
    disc = discretize(body, 0.1)
    assert len(disc.points) == 11
    assert disc.hausdorff_bound == pytest.approx(0.05)


def test_discretize_rejects_nonpositive_mesh():
    with pytest.raises(ValueError):
        discretize(_make_square(), 0.0)


def test_ratio_monotonicity_on_disk():
    M = ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)
    report = ratio_monotonicity_check(np.array([1.6, 0.7]), M, **LEVELS)
    assert report["pass"], report["failed"]
    assert report["allowance"] <= 1e-3


def test_ratio_monotonicity_on_klein_ball():
    M = ConvexBody.ball(KLEIN, (0.1, 0.0), 0.6)
    report = ratio_monotonicity_check(np.array([0.75, 0.3]), M, **LEVELS)
    assert report["pass"], report["failed"]
    assert report["allowance"] <= 1e-3


def test_ratio_monotonicity_on_discretized_disk():
    M = ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)
    x = np.array([1.6, 0.7])
    gap = np.linalg.norm(x) - 1.0
    disc = discretize(M, 0.02, around=(x, gap + LEVELS["delta"] + 0.05))
    report = ratio_monotonicity_check(x, disc, **LEVELS)
    assert report["pass"], report["failed"]
    assert report["mesh"] == 0.02


def test_lens_deviation_from_nearest_point():
    # 単位円板と B[(2, 0), 1.5] の交点 (0.6875, ±√0.52734375) が (1, 0) から最も遠い
    M = ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)
    x = np.array([2.0, 0.0])
    nearest = lens(M, x, 0.0)
    np.testing.assert_allclose(nearest.corners, [[1.0, 0.0]], atol=1e-12)
    wide = lens(M, x, 0.5)
    assert len(wide.corners) == 2
    assert lens_deviation(wide, nearest) == pytest.approx(np.sqrt(0.625), abs=1e-9)
    assert lens_deviation(nearest, wide) == 0.0


def test_lens_distance_matches_dense_boundary_in_klein_ball():
    M = ConvexBody.ball(KLEIN, (0.1, 0.0), 0.6)
    L = lens(M, (0.75, 0.3), 0.3)
    # 境界の標本は 2 つの球の両方に入る
    for i in (0, 1):
        d = KLEIN.pairwise([L.centers[i]], L.boundary)[0]
        assert np.max(d) <= L.radii[i] + 1e-9
    assert np.max(lens_distance(L, L.boundary)) <= 1e-12
    # 外の点では最近点は境界上にあるので、密な境界標本との最小距離と gap 以内で一致する
    rng = np.random.default_rng(42)
    Y = rng.uniform(-0.6, 0.6, size=(20, 2))
    exact = lens_distance(L, Y)
    dense = KLEIN.pairwise(Y, L.boundary).min(axis=1)
    outside = exact > 0
    assert np.all(exact[outside] <= dense[outside] + 1e-12)
    assert np.all(dense[outside] <= exact[outside] + L.gap)


def test_lens_rejects_non_ball_bodies():
    with pytest.raises(ValueError):
        lens(_make_square(), (3.0, 1.0), 0.1)
    with pytest.raises(ValueError):
        lens(ConvexBody.ball(PLANE, (0.0, 0.0), 1.0), (3.0, 1.0), -0.1)


def test_ratio_monotonicity_rejects_bad_levels():
    disc = discretize(ConvexBody.ball(PLANE, (0.0, 0.0), 1.0), 0.1)
    with pytest.raises(ValueError):
        ratio_monotonicity_check((2.0, 0.0), disc, t=0.3, eps=0.2, delta=0.4, eps2=0.1, delta2=0.3)
    with pytest.raises(ValueError):
        ratio_monotonicity_check((2.0, 0.0), disc, t=0.1, eps=0.2, delta=0.4, eps2=0.3, delta2=0.35)


def test_delta_projection_stability_for_nearby_points():
    M = ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)
    W = ConvexBody.ball(PLANE, (0.1, 0.0), 1.0)
    report = delta_projection_stability(np.array([1.5, 0.2]), np.array([1.55, 0.25]), M, W, 0.1, 0.15)
    assert report["pass"], report["failed"]
    assert len(report["checks"]) == 2
    assert report["allowance"] <= 1e-3


def test_delta_projection_stability_on_discretized_disks():
    M = ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)
    disc = discretize(M, 0.05)
    W = discretize(ConvexBody.ball(PLANE, (0.1, 0.0), 1.0), 0.05)
    report = delta_projection_stability(np.array([1.5, 0.2]), np.array([1.55, 0.25]), disc, W, 0.1, 0.15)
    assert report["pass"], report["failed"]
    assert len(report["checks"]) == 2


def test_delta_projection_stability_requires_ball_pair():
    M = ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)
    with pytest.raises(ValueError):
        delta_projection_stability((1.5, 0.2), (1.55, 0.25), M, discretize(M, 0.1), 0.1, 0.15)


def test_projection_contracts_deviation():
    rng = np.random.default_rng(41)
    W = PointSet.of(PLANE, rng.uniform(-2.0, 4.0, size=(6, 2)))
    assert deviation_contraction_check(W, _make_square())["pass"]
