"""ball_approx のユニットテスト."""

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ball_approx import (
    ball_ball_hausdorff,
    ball_deviation_from_set,
    ball_hausdorff,
    best_ball,
    best_ball_stability,
    midpoint_convexity_check,
    optimal_radius,
    psi,
    r_fun,
    set_deviation_from_ball,
)
from bodies import ConvexBody, body_diameter, farthest_distance
from fixtures import segment
from hausdorff import PointSet
from spaces import Euclidean

PLANE = Euclidean(2)

coords = st.floats(min_value=-3.0, max_value=3.0, allow_nan=False)


def _make_regular_hull(n, radius=1.0):
    angles = 2.0 * np.pi * np.arange(n) / n
    return ConvexBody.hull(PLANE, radius * np.column_stack([np.cos(angles), np.sin(angles)]))


def _make_square():
    return ConvexBody.hull(PLANE, [(0.0, 0.0), (2.0, 0.0), (2.0, 2.0), (0.0, 2.0)])


@pytest.mark.parametrize("space_name", ["euclidean", "klein"])
def test_best_ball_of_segment(space_name):
    case = segment(space_name)
    fit = best_ball(case["M"])
    space = case["space"]
    # 中心は中点、半径は長さの 1/4
    assert space.dist(fit.center, case["expected"]["center"]) <= 1e-6
    assert fit.radius == pytest.approx(case["expected"]["radius"], abs=1e-6)
    assert fit.hausdorff_value == pytest.approx(case["expected"]["hausdorff"], abs=1e-6)


def test_best_ball_of_a_ball_is_itself():
    body = ConvexBody.ball(PLANE, (0.3, 0.2), 1.5)
    fit = best_ball(body)
    assert fit.radius == 1.5
    assert fit.hausdorff_value == 0.0
    np.testing.assert_allclose(fit.center, [0.3, 0.2])


def test_best_ball_of_square():
    fit = best_ball(_make_square())
    np.testing.assert_allclose(fit.center, [1.0, 1.0], atol=1e-6)
    assert fit.hausdorff_value == pytest.approx((np.sqrt(2.0) - 1.0) / 2.0, abs=1e-6)
    assert fit.radius == pytest.approx((np.sqrt(2.0) + 1.0) / 2.0, abs=1e-6)


@settings(max_examples=50, deadline=None)
@given(coords, coords)
def test_psi_plus_r_is_farthest_distance(x0, x1):
    M = _make_regular_hull(7)
    x = np.array([x0, x1])
    assert psi(M, x) + r_fun(M, x) == pytest.approx(farthest_distance(M, x), abs=1e-12)
    assert optimal_radius(M, x) == r_fun(M, x)


def test_psi_is_at_most_half_diameter_inside():
    rng = np.random.default_rng(31)
    M = ConvexBody.hull(PLANE, rng.uniform(-1.0, 1.0, size=(8, 2)))
    half = body_diameter(M) / 2.0
    for w in rng.dirichlet(np.ones(len(M.points)), size=50):
        assert psi(M, w @ M.points) <= half + 1e-12


@settings(max_examples=50, deadline=None)
@given(coords, coords, coords, coords)
def test_psi_and_r_are_three_halves_lipschitz(x0, x1, y0, y1):
    M = _make_regular_hull(7)
    x, y = np.array([x0, x1]), np.array([y0, y1])
    bound = 1.5 * np.linalg.norm(x - y) + 1e-12
    assert abs(psi(M, x) - psi(M, y)) <= bound
    assert abs(r_fun(M, x) - r_fun(M, y)) <= bound


def _psi_inside(M, X):
    # M の内部では |xM| = 0 なので ψ = (β(M, x) - |x(X∖M)|)/2
    farthest = np.max(np.linalg.norm(X[:, None, :] - M.points[None, :, :], axis=2), axis=1)
    inner = np.min(-(X @ M.equations[:, :-1].T + M.equations[:, -1]), axis=1)
    return 0.5 * (farthest - inner)


def _grid_minimum(M, stages=6, size=81):
    """格子を最小点のまわりに絞りながら ψ の最小値を探す."""
    lo, hi = M.points.min(axis=0), M.points.max(axis=0)
    for _ in range(stages):
        axes = [np.linspace(lo[i], hi[i], size) for i in range(2)]
        X = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, 2)
        X = X[np.max(X @ M.equations[:, :-1].T + M.equations[:, -1], axis=1) <= 0]
        values = _psi_inside(M, X)
        best = X[int(np.argmin(values))]
        step = (hi - lo) / (size - 1)
        lo, hi = best - 4.0 * step, best + 4.0 * step
    return float(values.min())


def test_best_ball_of_random_hull_matches_grid():
    rng = np.random.default_rng(32)
    for _ in range(3):
        M = ConvexBody.hull(PLANE, rng.uniform(-1.0, 1.0, size=(8, 2)))
        fit = best_ball(M)
        assert fit.hausdorff_value == pytest.approx(_grid_minimum(M), abs=1e-4)
        assert fit.radius == pytest.approx(r_fun(M, fit.center), abs=1e-12)


def test_psi_is_minimal_value_for_fixed_center():
    # 中心を固定すると半径 r(M, x) で α が最小になる
    M = _make_regular_hull(6)
    x = np.array([2.0, 0.5])
    best = ball_hausdorff(M, x, r_fun(M, x))
    assert best == pytest.approx(psi(M, x), abs=1e-12)
    for r in np.linspace(0.0, 4.0, 41):
        assert ball_hausdorff(M, x, r) >= best - 1e-12


def test_ball_ball_hausdorff_matches_closed_form():
    x, r1 = np.array([2.5, 0.3]), 0.6
    value = ball_hausdorff(ConvexBody.ball(PLANE, (0.0, 0.0), 1.0), x, r1)
    assert value == pytest.approx(ball_ball_hausdorff(PLANE, x, r1, (0.0, 0.0), 1.0), abs=1e-12)


def test_deviation_from_ball_of_a_finite_set():
    M = PointSet.of(PLANE, [(0.0, 0.0), (3.0, 4.0)])
    assert ball_deviation_from_set(M, (0.0, 0.0), 2.0) == pytest.approx(3.0)
    assert ball_deviation_from_set(M, (0.0, 0.0), 6.0) == 0.0


def test_negative_radius_is_rejected():
    M = _make_square()
    with pytest.raises(ValueError):
        ball_deviation_from_set(M, (1.0, 1.0), -0.1)
    with pytest.raises(ValueError):
        set_deviation_from_ball(M, (1.0, 1.0), -0.1)


def test_best_ball_stability_for_inscribed_polygons():
    limit = ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)
    result = best_ball_stability([_make_regular_hull(n) for n in (16, 64)], limit)
    assert len(result["values"]) == 2
    assert result["pass"]


def _make_rectangle(half_width, half_height):
    w, h = half_width, half_height
    return ConvexBody.hull(PLANE, [(-w, -h), (w, -h), (w, h), (-w, h)])


@pytest.mark.parametrize(
    "family",
    [
        # 一定の列
        lambda: ([_make_square()] * 3, _make_square()),
        # 細くなる長方形 → 線分
        lambda: (
            [_make_rectangle(1.0, h) for h in (0.1, 0.01, 0.001)],
            ConvexBody.segment(PLANE, (-1.0, 0.0), (1.0, 0.0)),
        ),
        # 縮む正方形 → 正方形
        lambda: ([_make_rectangle(1.0 + 1.0 / n, 1.0 + 1.0 / n) for n in (2, 8, 32)], _make_rectangle(1.0, 1.0)),
    ],
    ids=["constant", "thin_rectangles", "scaled_squares"],
)
def test_best_ball_stability_families(family):
    bodies, limit = family()
    result = best_ball_stability(bodies, limit)
    assert result["pass"], result
    assert result["final"] <= 1e-3
    assert result["max_increase"] <= 1e-3


def test_best_ball_stability_fails_for_drifting_family():
    # 中心が極限から離れていく列は最後の値が小さくても pass しない
    limit = _make_rectangle(1.0, 1.0)
    bodies = [limit, ConvexBody.hull(PLANE, [(-0.5, -1.0), (1.5, -1.0), (1.5, 1.0), (-0.5, 1.0)]), limit]
    result = best_ball_stability(bodies, limit)
    assert result["max_increase"] == pytest.approx(0.5, abs=1e-3)
    assert not result["pass"]


def test_midpoint_convexity():
    rng = np.random.default_rng(30)
    bodies = [ConvexBody.ball(PLANE, (0.0, 0.0), 0.8), _make_regular_hull(5)]
    for i in range(10):
        x, y = rng.uniform(-2.0, 2.0, size=(2, 2))
        assert midpoint_convexity_check(bodies[i % 2], x, y)["pass"]
