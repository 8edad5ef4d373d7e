"""距離射影と δ-射影.

凸体への射影 P_M(x)、有限点集合への δ-射影 P(x, M, δ)、非連結性の尺度 λ(M)、
および凸体を離散化した上での δ-射影の比の単調性・連続性の評価を行う。
"""

from dataclasses import dataclass

import numpy as np
from scipy.optimize import brentq
from scipy.sparse.csgraph import minimum_spanning_tree

from ball_approx import ball_ball_hausdorff
from bodies import ConvexBody, body_diameter, boundary_samples, contains_mask, distance_to_body, project, sphere_points
from checks import check_record, summarize
from config import SOLVER
from hausdorff import PointSet, deviation, eps_projection, hausdorff, point_set_distance
from spaces import Euclidean, KleinBall, Point

# 標本間の弧の半分を覆う係数 (弧の長さは弦の 1.01 倍以下)
LENS_ALLOWANCE = 1.01


@dataclass(frozen=True)
class ProjectionQuery:
    x: Point
    M: object
    delta: float = 0.0

    def __post_init__(self):
        if self.delta < 0:
            raise ValueError(f"delta は非負である必要があります: delta={self.delta}")


@dataclass(frozen=True)
class Discretization:
    """凸体の標本.

    hausdorff_bound は α(points, M ∩ 制限球) の上界 (空間の距離で測る)。
    """

    body: ConvexBody
    points: PointSet
    mesh: float
    hausdorff_bound: float


def project_convex(x: Point, M: ConvexBody) -> np.ndarray:
    return project(M, x)


def project_set(W: PointSet, M: ConvexBody) -> PointSet:
    """P_M(W) = {P_M(w) : w ∈ W}."""
    return PointSet.unique(M.space, [project(M, w) for w in W])


def delta_projection(x: Point, M: PointSet, delta: float) -> PointSet:
    """P(x, M, δ) = M ∩ B[x, |xM| + δ]."""
    return eps_projection(x, M, delta)


def lambda_disconnect(M: PointSet) -> float:
    """λ(M) = sup{|AB| : A ∪ B = M} を完全グラフの最小全域木の最大辺として求める."""
    if len(M) < 2:
        return 0.0
    tree = minimum_spanning_tree(M.space.pairwise(M.data, M.data))
    return float(tree.data.max())


def _grid(lo: np.ndarray, hi: np.ndarray, mesh: float) -> np.ndarray:
    axes = [np.arange(lo[i], hi[i] + mesh, mesh) for i in range(len(lo))]
    return np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, len(lo))


def _bounding_box(space, center, radius: float, mesh: float) -> tuple[np.ndarray, np.ndarray]:
    """球 B[center, radius] を含む座標の箱 (余裕つき)."""
    if isinstance(space, Euclidean):
        center = space.check_point(center)
        return center - radius - mesh, center + radius + mesh
    outline = sphere_points(space, center, radius, 256)
    pad = 0.01 * float(np.max(outline.max(axis=0) - outline.min(axis=0))) + mesh
    return outline.min(axis=0) - pad, outline.max(axis=0) + pad


def discretize(M: ConvexBody, mesh: float, around: tuple | None = None) -> Discretization:
    """凸体を間隔 mesh の格子点と境界点で標本化する.

    around = (center, radius) を与えると B[center, radius] の中だけを残す。
    線分は測地線上の等間隔点 (mesh は空間の距離)、それ以外は座標の格子 (mesh は座標の間隔)。
    """
    if mesh <= 0:
        raise ValueError(f"mesh は正である必要があります: mesh={mesh}")
    space = M.space

    if M.kind == "segment":
        points = boundary_samples(M, mesh)
        coordinate_bound = None
    else:
        lo, hi = _bounding_box(space, M.center, M.radius, mesh) if M.kind == "ball" else (
            M.points.min(axis=0),
            M.points.max(axis=0),
        )
        if around is not None:
            a_lo, a_hi = _bounding_box(space, around[0], around[1], mesh)
            lo, hi = np.maximum(lo, a_lo), np.minimum(hi, a_hi)
        grid = _grid(lo, hi, mesh) if np.all(lo <= hi) else np.empty((0, space.dim))
        if isinstance(space, KleinBall):
            grid = grid[np.einsum("ij,ij->i", grid, grid) < (space.r * 0.999) ** 2]
        inside = contains_mask(M, grid) if len(grid) else np.zeros(0, dtype=bool)
        points = np.vstack([grid[inside], boundary_samples(M, mesh)])
        coordinate_bound = mesh * np.sqrt(space.dim)

    if around is not None:
        center, radius = around
        keep = space.pairwise([center], points)[0] <= radius
        points = points[keep]
    sample = PointSet.unique(space, points)

    if coordinate_bound is None:
        bound = mesh / 2.0
    elif isinstance(space, Euclidean):
        bound = coordinate_bound
    else:
        r1 = float(np.max(np.linalg.norm(sample.data, axis=1))) + coordinate_bound
        if r1 >= space.r:
            raise ValueError("標本が球面に近すぎます (mesh を小さくしてください)")
        # 閉球 B[0, r1] 上のリプシッツ定数 k r / (r - r1)²
        bound = coordinate_bound * space.k * space.r / (space.r - r1) ** 2
    return Discretization(M, sample, float(mesh), float(bound))


def _geodesic_rows(space, c: np.ndarray, U: np.ndarray, s) -> np.ndarray:
    """c から単位方向 U (行ごと) へ距離 s 進んだ点."""
    s = np.broadcast_to(np.asarray(s, dtype=float), (len(U),))
    if isinstance(space, Euclidean):
        return c + s[:, None] * U
    # クラインモデルでは c を通る弦 c + tU の上で符号付き距離を t について解く
    b = U @ c
    cc = float(c @ c) - space.r**2
    root = np.sqrt(b * b - cc)
    t_plus = np.where(b > 0, -cc / (b + root), root - b)
    t_minus = cc / t_plus
    q = np.exp(2.0 * s / space.k) * (-t_minus) / t_plus
    return c + (t_plus - (t_plus - t_minus) / (1.0 + q))[:, None] * U


def _circle(space, c: np.ndarray, radius: float, spacing: float) -> tuple[np.ndarray, np.ndarray, float]:
    """球面 S(c, radius) の標本 (角度, 点, 隣り合う点の最大距離).

    隣り合う点の距離が spacing 以下になるまで点数を倍にする。
    """
    length = 2.0 * np.pi * (radius if isinstance(space, Euclidean) else space.k * np.sinh(radius / space.k))
    n = max(64, int(np.ceil(length / spacing)))
    while True:
        angles = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        points = _geodesic_rows(space, c, np.column_stack([np.cos(angles), np.sin(angles)]), radius)
        gap = float(np.max(space.dist_rows(points, np.roll(points, -1, axis=0))))
        if gap <= spacing or n >= SOLVER["lens_max_points"]:
            return angles, points, gap
        n *= 2


def _corners(space, c1: np.ndarray, r1: float, angles: np.ndarray, points: np.ndarray, c2: np.ndarray, r2: float) -> np.ndarray:
    """S(c1, r1) と S(c2, r2) の交点 (S(c1, r1) 上の符号変化を角度で二分探索)."""

    def f(theta: float) -> float:
        u = np.array([[np.cos(theta), np.sin(theta)]])
        return float(space.dist_rows(_geodesic_rows(space, c1, u, r1), c2[None, :])[0]) - r2

    values = space.dist_rows(points, np.broadcast_to(c2, points.shape)) - r2
    found = []
    for i in np.flatnonzero((values <= 0) != (np.roll(values, -1) <= 0)):
        lo, hi = angles[i], angles[i + 1] if i + 1 < len(angles) else 2.0 * np.pi
        f_lo, f_hi = f(lo), f(hi)
        if f_lo * f_hi > 0:
            theta = lo if abs(f_lo) <= abs(f_hi) else hi
        else:
            theta = brentq(f, lo, hi, xtol=SOLVER["bisection_tol"], maxiter=SOLVER["bisection_max_iter"])
        found.append(_geodesic_rows(space, c1, np.array([[np.cos(theta), np.sin(theta)]]), r1)[0])
    return np.array(found).reshape(-1, 2)


@dataclass(frozen=True, eq=False)
class Lens:
    """球 M と球 B[x, |xM| + s] の共通部分 P(x, M, s) とその境界の標本.

    radii が None のときは 1 点 corners[0] に退化している。
    gap は境界上で隣り合う標本の最大距離。
    """

    space: object
    centers: np.ndarray
    radii: tuple[float, float] | None
    corners: np.ndarray
    boundary: np.ndarray
    gap: float


def lens(M: ConvexBody, x: Point, s: float, spacing: float | None = None) -> Lens:
    """P(x, M, s) = M ∩ B[x, |xM| + s] (M は 2 次元の球)."""
    if M.kind != "ball" or M.space.dim != 2:
        raise ValueError(f"レンズは 2 次元の球だけに対応しています: kind={M.kind}, dim={M.space.dim}")
    if s < 0:
        raise ValueError(f"s は非負である必要があります: s={s}")
    spacing = SOLVER["lens_spacing"] if spacing is None else spacing
    space = M.space
    x = space.check_point(x)
    centers = np.vstack([M.center, x])
    if s == 0:
        nearest = project(M, x)[None, :]
        return Lens(space, centers, None, nearest, nearest, 0.0)

    radii = (float(M.radius), distance_to_body(M, x) + s)
    circles = [_circle(space, centers[i], radii[i], spacing) for i in (0, 1)]
    corners = _corners(space, centers[0], radii[0], circles[0][0], circles[0][1], centers[1], radii[1])
    arcs = []
    for i, j in ((0, 1), (1, 0)):
        points = circles[i][1]
        arcs.append(points[space.dist_rows(points, np.broadcast_to(centers[j], points.shape)) <= radii[j]])
    boundary = np.vstack([*arcs, corners])
    return Lens(space, centers, radii, corners, boundary, max(circles[0][2], circles[1][2]))


def lens_distance(L: Lens, Y) -> np.ndarray:
    """各行 y の |y L|.

    最近点は一方の球への射影がもう一方の球に入るものか、球面の交点のどれか。
    """
    space = L.space
    Y = np.atleast_2d(np.asarray(Y, dtype=float))
    best = space.pairwise(Y, L.corners).min(axis=1) if len(L.corners) else np.full(len(Y), np.inf)
    if L.radii is None:
        return best
    d = [space.dist_rows(Y, np.broadcast_to(L.centers[i], Y.shape)) for i in (0, 1)]
    inside = [d[i] <= L.radii[i] for i in (0, 1)]
    for i, j in ((0, 1), (1, 0)):
        outside = np.flatnonzero(~inside[i])
        if not len(outside):
            continue
        U = Y[outside] - L.centers[i]
        U /= np.linalg.norm(U, axis=1)[:, None]
        foot = _geodesic_rows(space, L.centers[i], U, L.radii[i])
        ok = space.dist_rows(foot, np.broadcast_to(L.centers[j], foot.shape)) <= L.radii[j]
        candidate = np.full(len(Y), np.inf)
        candidate[outside[ok]] = d[i][outside[ok]] - L.radii[i]
        best = np.minimum(best, candidate)
    return np.where(inside[0] & inside[1], 0.0, best)


def lens_deviation(A: Lens, B: Lens) -> float:
    """β(A, B) を A の境界の標本で評価する (真の値は戻り値 + A.gap 以内)."""
    return float(np.max(lens_distance(B, A.boundary)))


def _level_error(disc: Discretization, x: Point, smallest_level: float) -> float:
    """標本化による β(P(x, M, s), ·) の誤差の見積もり."""
    gap = point_set_distance(x, disc.points)
    return disc.hausdorff_bound * (3.0 + 4.0 * gap / smallest_level)


def _projection_levels(x: Point, M: Discretization | ConvexBody, levels: tuple[float, ...], smallest: float):
    """各レベル s の P(x, M, s) と偏差の関数、偏差 1 つあたりの許容量、|xM| を返す.

    M が球ならレンズの境界で、それ以外は離散化した点集合で評価する。
    """
    if isinstance(M, ConvexBody):
        P = {s: lens(M, x, s) for s in levels}
        allowance = LENS_ALLOWANCE * max(L.gap for L in P.values())
        return P, lens_deviation, allowance, distance_to_body(M, x)
    P = {s: eps_projection(x, M.points, s) for s in levels}
    return P, deviation, _level_error(M, x, smallest), point_set_distance(x, M.points)


def ratio_monotonicity_check(
    x: Point,
    M: Discretization | ConvexBody,
    t: float,
    eps: float,
    delta: float,
    eps2: float,
    delta2: float,
) -> dict:
    """δ-射影の偏差の比の単調性.

    0 < t < eps < delta, 0 < eps2 <= eps, eps2 < delta2 <= delta のもとで
        (a) β(F, P_ε)/(δ - ε) <= β(F, P_t)/(δ - t), F = P_δ
        (b) β(P_δ, G)/(δ - t) <= β(P_ε, G)/(ε - t), G = P_t
        (c) β(P_δ, P_ε)/(δ - ε) <= β(P_δ', P_ε')/(δ' - ε')
        (d) β(P_δ, P_0)/δ <= β(P_ε, P_0)/ε
        (e) β(P_δ, P_ε) <= (2|xM|/δ + 1)(δ - ε)
    を評価する。M が 2 次元の球ならレンズの境界の標本で、それ以外は離散化で評価し、
    標本化の誤差を許容量 (report["allowance"]) として tol に含める。
    """
    if not (0 < t < eps < delta):
        raise ValueError(f"0 < t < eps < delta が必要です: t={t}, eps={eps}, delta={delta}")
    if not (0 < eps2 <= eps and eps2 < delta2 <= delta):
        raise ValueError(f"0 < eps2 <= eps, eps2 < delta2 <= delta が必要です: eps2={eps2}, delta2={delta2}")

    P, dev, err, gap = _projection_levels(x, M, (0.0, t, eps, delta, eps2, delta2), min(t, eps2))

    records = [
        check_record(
            "ratio_a",
            dev(P[delta], P[eps]) / (delta - eps),
            dev(P[delta], P[t]) / (delta - t),
            anchor="delta-projection ratio, fixed upper end",
            tol=err / (delta - eps) + err / (delta - t),
        ),
        check_record(
            "ratio_b",
            dev(P[delta], P[t]) / (delta - t),
            dev(P[eps], P[t]) / (eps - t),
            anchor="delta-projection ratio, fixed lower end",
            tol=err / (delta - t) + err / (eps - t),
        ),
        check_record(
            "ratio_c",
            dev(P[delta], P[eps]) / (delta - eps),
            dev(P[delta2], P[eps2]) / (delta2 - eps2),
            anchor="delta-projection ratio, shifted interval",
            tol=err / (delta - eps) + err / (delta2 - eps2),
        ),
        check_record(
            "ratio_nearest",
            dev(P[delta], P[0.0]) / delta,
            dev(P[eps], P[0.0]) / eps,
            anchor="delta-projection ratio, monotone in delta",
            tol=err / delta + err / eps,
        ),
        check_record(
            "deviation_linear_bound",
            dev(P[delta], P[eps]),
            (2.0 * gap / delta + 1.0) * (delta - eps),
            anchor="delta-projection ratio, bounded by the disconnect measure",
            tol=err,
        ),
    ]
    report = summarize(records)
    report["allowance"] = err
    report["mesh"] = M.mesh if isinstance(M, Discretization) else SOLVER["lens_spacing"]
    return report


def delta_projection_stability(
    x: Point,
    y: Point,
    M: Discretization | ConvexBody,
    W: Discretization | ConvexBody | PointSet,
    eps: float,
    delta: float,
) -> dict:
    """α(P(y, W, δ), P(x, M, ε)) の上界.

    M は凸。M と W がともに 2 次元の球ならレンズで、それ以外は離散化で評価する。
    W が凸なら min{|xM|, |yW|} を使う上界も評価する。
    """
    mu = max(eps, delta)
    if mu <= 0:
        raise ValueError("max{eps, delta} は正である必要があります")
    space = M.space if isinstance(M, ConvexBody) else M.points.space

    if isinstance(M, ConvexBody):
        if not isinstance(W, ConvexBody):
            raise ValueError("M が球のときは W も球である必要があります")
        A, B = lens(W, y, delta), lens(M, x, eps)
        lhs = max(lens_deviation(A, B), lens_deviation(B, A))
        alpha = ball_ball_hausdorff(space, M.center, M.radius, W.center, W.radius)
        x_gap, y_gap = distance_to_body(M, x), distance_to_body(W, y)
        err = LENS_ALLOWANCE * max(A.gap, B.gap)
    else:
        W_points = W.points if isinstance(W, Discretization) else W
        W_bound = W.hausdorff_bound if isinstance(W, Discretization) else 0.0
        lhs = hausdorff(eps_projection(y, W_points, delta), eps_projection(x, M.points, eps))
        alpha = hausdorff(M.points, W_points)
        x_gap, y_gap = point_set_distance(x, M.points), point_set_distance(y, W_points)
        err = (M.hausdorff_bound + W_bound) * (3.0 + 4.0 * max(x_gap, y_gap) / mu)

    spread = abs(eps - delta) + 2.0 * space.dist(x, y) + 2.0 * alpha
    records = [
        check_record(
            "projection_stability",
            lhs,
            alpha + (2.0 * x_gap / mu + 2.0) * spread,
            anchor="delta-projection continuity, arbitrary W",
            tol=err,
        )
    ]
    if not isinstance(W, PointSet):
        lam = mu + 2.0 * space.dist(x, y) + 2.0 * alpha
        records.append(
            check_record(
                "projection_stability_convex",
                lhs,
                alpha + (2.0 * min(x_gap, y_gap) / lam + 1.0) * spread,
                anchor="delta-projection continuity, convex W",
                tol=err,
            )
        )
    report = summarize(records)
    report["allowance"] = err
    return report


def deviation_contraction_check(W: PointSet, M: ConvexBody, mesh: float | None = None) -> dict:
    """β(M, P_M(W)) <= β(M, W) を M の標本上で評価する."""
    mesh = body_diameter(M) / 32.0 if mesh is None else mesh
    sample = discretize(M, mesh).points
    return summarize(
        [
            check_record(
                "deviation_contraction",
                deviation(sample, project_set(W, M)),
                deviation(sample, W),
                anchor="projection contracts deviation",
            )
        ]
    )
