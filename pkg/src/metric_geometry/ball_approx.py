"""凸コンパクトの閉球による最良近似.

ψ(M, x) = (β(M, x) + |xM| - |x(X∖M)|)/2
r(M, x) = (β(M, x) - |xM| + |x(X∖M)|)/2

中心 x を固定したとき α(B[x, r], M) を最小にする半径が r(M, x)、その最小値が ψ(M, x)。
ψ を M 上で最小化した点が最良近似球の中心になる。
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize, minimize_scalar

from bodies import (
    ConvexBody,
    body_diameter,
    complement_distance,
    contains,
    distance_to_body,
    farthest_distance,
)
from checks import check_record, summarize
from config import SOLVER, TOLERANCES
from errors import ConvergenceError
from hausdorff import PointSet
from spaces import Point


@dataclass(frozen=True)
class BallFit:
    center: np.ndarray
    radius: float
    hausdorff_value: float

    def to_dict(self) -> dict:
        return {
            "center": np.asarray(self.center).tolist(),
            "radius": self.radius,
            "hausdorff_value": self.hausdorff_value,
        }


def _farthest(M, x) -> float:
    if isinstance(M, PointSet):
        return float(np.max(M.space.pairwise([x], M.data)))
    return farthest_distance(M, x)


def psi(M: ConvexBody, x: Point) -> float:
    return 0.5 * (farthest_distance(M, x) + distance_to_body(M, x) - complement_distance(M, x))


def r_fun(M: ConvexBody, x: Point) -> float:
    return 0.5 * (farthest_distance(M, x) - distance_to_body(M, x) + complement_distance(M, x))


def ball_deviation_from_set(M, x: Point, r: float) -> float:
    """β(M, B[x, r]) = max{0, β(M, x) - r}. M は凸体でも有限点集合でもよい."""
    if r < 0:
        raise ValueError(f"半径は非負である必要があります: r={r}")
    return max(0.0, _farthest(M, x) - r)


def set_deviation_from_ball(M: ConvexBody, x: Point, r: float) -> float:
    """β(B[x, r], M).

    x ∉ M では r + |xM| (厳密値)、x ∈ M では上界 max{0, r + |xM| - |x(X∖M)|}。
    """
    if r < 0:
        raise ValueError(f"半径は非負である必要があります: r={r}")
    return max(0.0, r + distance_to_body(M, x) - complement_distance(M, x))


def ball_hausdorff(M: ConvexBody, x: Point, r: float) -> float:
    """α(B[x, r], M) = max{r + |xM|, β(M, x) - r} (x ∈ M では右辺の対応する上界)."""
    return max(set_deviation_from_ball(M, x, r), ball_deviation_from_set(M, x, r))


def optimal_radius(M: ConvexBody, x: Point) -> float:
    return r_fun(M, x)


def ball_ball_hausdorff(space, x: Point, r1: float, y: Point, r2: float) -> float:
    """直線を持つ空間での 2 つの閉球のハウスドルフ距離 |xy| + |r1 - r2|."""
    return space.dist(x, y) + abs(r1 - r2)


def _fit(M: ConvexBody, center) -> BallFit:
    return BallFit(np.asarray(center, dtype=float), r_fun(M, center), psi(M, center))


def _best_on_segment(M: ConvexBody) -> BallFit:
    space = M.space
    a, b = M.points

    def f(lam: float) -> float:
        return psi(M, space.omega(a, b, lam))

    result = minimize_scalar(f, bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-12})
    return _fit(M, space.omega(a, b, float(result.x)))


def _grid_candidates(M: ConvexBody) -> np.ndarray:
    dim = M.space.dim
    if dim > SOLVER["grid_max_dim"]:
        raise ValueError(f"グリッド探索は {SOLVER['grid_max_dim']} 次元までです: dim={dim}")
    if M.degenerate:
        return M.points
    lo, hi = M.points.min(axis=0), M.points.max(axis=0)
    axes = [np.linspace(lo[i], hi[i], SOLVER["grid_size"]) for i in range(dim)]
    grid = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, dim)
    inside = np.max(grid @ M.equations[:, :-1].T + M.equations[:, -1], axis=1) <= 0
    return np.vstack([grid[inside], M.points])


def best_ball(M: ConvexBody, tol: float | None = None) -> BallFit:
    """最良近似球: ψ(M, ·) を M 上で最小化する.

    線分は中点方向の 1 次元探索、球はそれ自身、凸包は粗いグリッドのあと Nelder-Mead で仕上げる。

    Raises:
        ConvergenceError: 得られた中心が M に入らない
    """
    tol = TOLERANCES["geodesic"] if tol is None else tol
    if M.kind == "ball":
        return BallFit(np.array(M.center), M.radius, 0.0)
    if M.kind == "segment":
        return _best_on_segment(M)

    candidates = _grid_candidates(M)
    values = np.array([psi(M, c) for c in candidates])
    start = candidates[int(np.argmin(values))]
    scale = max(body_diameter(M), 1.0)
    result = minimize(
        lambda x: psi(M, x),
        start,
        method="Nelder-Mead",
        options={
            "xatol": 1e-12 * scale,
            "fatol": 1e-14 * scale,
            "maxiter": SOLVER["refine_max_iter"] * M.space.dim,
            "initial_simplex": start + np.vstack([np.zeros(M.space.dim), np.eye(M.space.dim)]) * scale / SOLVER["grid_size"],
        },
    )
    center = result.x if result.fun <= values.min() else start
    if not contains(M, center, tol * scale):
        raise ConvergenceError("最良近似球の中心が凸体の外にあります", distance_to_body(M, center))
    return _fit(M, center)


def best_ball_stability(bodies: list[ConvexBody], limit: ConvexBody, tol: float = 1e-3) -> dict:
    """M_n → M に対する最良近似球の中心の距離 |χ̂(M_n) χ̂(M)| の推移.

    最後の値が tol 以下で、どの値も直前の値より tol 以上増えないとき pass。
    """
    target = best_ball(limit)
    space = limit.space
    values = [space.dist(best_ball(body).center, target.center) for body in bodies]
    final = values[-1] if values else 0.0
    max_increase = max((later - earlier for earlier, later in zip(values, values[1:])), default=0.0)
    return {
        "values": values,
        "final": final,
        "max_increase": max_increase,
        "limit_center": target.center.tolist(),
        "pass": bool(final <= tol and max_increase <= tol),
    }


def midpoint_convexity_check(M: ConvexBody, x: Point, y: Point) -> dict:
    """β(M, ·) と |·M| の中点凸性."""
    space = M.space
    mid = space.omega(x, y, 0.5)
    records = [
        check_record(
            "farthest_midpoint_convexity",
            2.0 * farthest_distance(M, mid),
            farthest_distance(M, x) + farthest_distance(M, y),
            anchor="2β(M,ω(x,y)) <= β(M,x)+β(M,y)",
        ),
        check_record(
            "distance_midpoint_convexity",
            2.0 * distance_to_body(M, mid),
            distance_to_body(M, x) + distance_to_body(M, y),
            anchor="2|ω(x,y)M| <= |xM|+|yM|",
        ),
    ]
    return summarize(records)


def sampled_ball_hausdorff(M: ConvexBody, x: Point, r: float, samples: np.ndarray, ball_samples: np.ndarray) -> float:
    """α(B[x, r], M) の標本近似 (検証用).

    samples は M の点の標本、ball_samples は B[x, r] の点の標本。
    """
    ball_side = max(distance_to_body(M, z) for z in ball_samples)
    set_side = max(0.0, float(np.max(M.space.pairwise([x], samples))) - r)
    return max(ball_side, set_side)
