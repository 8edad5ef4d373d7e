"""凸体 (凸包・距離球・線分) と基本的な幾何量.

β(M, x)、|xM|、|x(X∖M)|、距離射影 P_M(x) を凸体の種類ごとに計算する。
凸包はユークリッド空間のみ、距離球と線分はユークリッド空間とクラインモデルの両方に対応する。
"""

from dataclasses import dataclass, field
from itertools import combinations

import numpy as np
from scipy.optimize import minimize_scalar
from scipy.spatial import ConvexHull, QhullError

from config import TOLERANCES
from hausdorff import PointSet
from spaces import Euclidean, KleinBall, ModelSpace, require_geodesic

BODY_KINDS = ("hull", "ball", "segment")


@dataclass(frozen=True, eq=False)
class ConvexBody:
    """凸コンパクト集合.

    kind:
        hull: 頂点の凸包 (ユークリッド空間)。equations は scipy の (単位法線, オフセット)
        ball: 閉球 B[center, radius]
        segment: 線分 [x, y]
    """

    space: ModelSpace
    kind: str
    points: np.ndarray = field(repr=False)
    radius: float = 0.0
    equations: np.ndarray | None = field(default=None, repr=False)
    simplices: np.ndarray | None = field(default=None, repr=False)
    degenerate: bool = False

    @classmethod
    def hull(cls, space: ModelSpace, vertices) -> "ConvexBody":
        if not isinstance(space, Euclidean):
            raise ValueError(f"凸包はユークリッド空間のみ対応しています: {space.describe()}")
        P = space.check_points(vertices)
        if len(P) == 0:
            raise ValueError("頂点が空です")
        if space.dim == 1:
            return cls.segment(space, [P.min()], [P.max()])
        try:
            hull = ConvexHull(P)
        except QhullError:
            # 退化した凸包 (同一直線上など) は頂点集合のまま保持する
            return cls(space, "hull", PointSet.unique(space, P).data, degenerate=True)
        vertices = P[hull.vertices]
        remap = {int(v): i for i, v in enumerate(hull.vertices)}
        simplices = np.vectorize(remap.get)(hull.simplices)
        return cls(space, "hull", vertices, equations=hull.equations, simplices=simplices)

    @classmethod
    def ball(cls, space: ModelSpace, center, radius: float) -> "ConvexBody":
        require_geodesic(space)
        if radius <= 0:
            raise ValueError(f"球の半径は正である必要があります: radius={radius}")
        return cls(space, "ball", np.atleast_2d(space.check_point(center)), radius=float(radius))

    @classmethod
    def segment(cls, space: ModelSpace, x, y) -> "ConvexBody":
        require_geodesic(space)
        return cls(space, "segment", np.vstack([space.check_point(x), space.check_point(y)]))

    @classmethod
    def from_dict(cls, space: ModelSpace, data: dict) -> "ConvexBody":
        kind = data.get("kind")
        if kind == "hull":
            return cls.hull(space, data["vertices"])
        if kind == "ball":
            return cls.ball(space, data["center"], data["radius"])
        if kind == "segment":
            x, y = data["endpoints"]
            return cls.segment(space, x, y)
        raise ValueError(f"未知の凸体の種類です: {kind}")

    def to_dict(self) -> dict:
        if self.kind == "hull":
            return {"kind": "hull", "vertices": self.points.tolist(), "degenerate": self.degenerate}
        if self.kind == "ball":
            return {"kind": "ball", "center": self.points[0].tolist(), "radius": self.radius}
        return {"kind": "segment", "endpoints": self.points.tolist()}

    @property
    def center(self) -> np.ndarray:
        if self.kind != "ball":
            raise ValueError("center は ball のみの属性です")
        return self.points[0]


def _affine_projection(x: np.ndarray, A: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """点集合 A のアフィン包への直交射影と重心座標."""
    if len(A) == 1:
        return A[0], np.ones(1)
    Q = (A[1:] - A[0]).T
    c, *_ = np.linalg.lstsq(Q, x - A[0], rcond=None)
    return A[0] + Q @ c, np.concatenate([[1.0 - c.sum()], c])


def _project_polytope(x: np.ndarray, body: ConvexBody) -> np.ndarray:
    """多面体への射影: 境界の単体の全ての面を調べ、重心座標が非負な最近点を取る."""
    if body.degenerate:
        rank = np.linalg.matrix_rank(body.points - body.points[0]) if len(body.points) > 1 else 0
        faces = (
            subset
            for size in range(1, rank + 2)
            for subset in combinations(range(len(body.points)), size)
        )
    else:
        seen = set()
        for simplex in body.simplices:
            for size in range(1, len(simplex) + 1):
                for subset in combinations(sorted(int(i) for i in simplex), size):
                    seen.add(subset)
        faces = iter(seen)

    best, best_dist = body.points[0], np.inf
    for face in faces:
        y, weights = _affine_projection(x, body.points[list(face)])
        if np.any(weights < -1e-12):
            continue
        d = float(np.linalg.norm(x - y))
        if d < best_dist:
            best, best_dist = y, d
    return best


def contains(body: ConvexBody, x, tol: float | None = None) -> bool:
    tol = TOLERANCES["geodesic"] if tol is None else tol
    x = body.space.check_point(x)
    if body.kind == "hull":
        if body.degenerate:
            return bool(np.linalg.norm(_project_polytope(x, body) - x) <= tol)
        return bool(np.max(body.equations[:, :-1] @ x + body.equations[:, -1]) <= tol)
    return distance_to_body(body, x) <= tol


def contains_mask(body: ConvexBody, X, tol: float = 0.0) -> np.ndarray:
    """各行の点が M に含まれるか."""
    X = body.space.check_points(X)
    if body.kind == "hull" and not body.degenerate:
        return np.max(X @ body.equations[:, :-1].T + body.equations[:, -1], axis=1) <= tol
    if body.kind == "ball":
        return body.space.pairwise([body.center], X)[0] <= body.radius + tol
    return np.array([contains(body, x, tol) for x in X], dtype=bool)


def project(body: ConvexBody, x) -> np.ndarray:
    """距離射影 P_M(x) (一意な最近点)."""
    space = body.space
    x = space.check_point(x)
    if body.kind == "hull":
        if not body.degenerate and np.max(body.equations[:, :-1] @ x + body.equations[:, -1]) <= 0:
            return x.copy()
        return _project_polytope(x, body)
    if body.kind == "ball":
        c = body.center
        d = space.dist(c, x)
        if d <= body.radius:
            return x.copy()
        return space.omega(c, x, body.radius / d)

    a, b = body.points
    if isinstance(space, Euclidean):
        ab = b - a
        denom = float(ab @ ab)
        t = 0.0 if denom == 0 else float(np.clip((x - a) @ ab / denom, 0.0, 1.0))
        return a + t * ab
    return _project_klein_segment(space, a, b, x)


def _project_klein_segment(space: KleinBall, a: np.ndarray, b: np.ndarray, x: np.ndarray) -> np.ndarray:
    """クラインモデルでは測地線が弦なので a + t(b - a) 上で距離の 1 次元最小化を行う."""

    def f(t: float) -> float:
        return space.dist(x, a + t * (b - a))

    result = minimize_scalar(f, bounds=(0.0, 1.0), method="bounded", options={"xatol": 1e-13})
    candidates = [(f(0.0), 0.0), (f(1.0), 1.0), (float(result.fun), float(result.x))]
    _, t = min(candidates)
    return a + t * (b - a)


def distance_to_body(body: ConvexBody, x) -> float:
    """|xM|."""
    space = body.space
    x = space.check_point(x)
    if body.kind == "ball":
        return max(0.0, space.dist(body.center, x) - body.radius)
    return space.dist(x, project(body, x))


def complement_distance(body: ConvexBody, x) -> float:
    """|x(X∖M)|: 内点では境界までの距離、それ以外は 0.

    線分と退化した凸包は内部が空なので常に 0。
    """
    space = body.space
    x = space.check_point(x)
    if body.kind == "segment" or (body.kind == "hull" and body.degenerate):
        return 0.0
    if body.kind == "ball":
        return max(0.0, body.radius - space.dist(body.center, x))
    return max(0.0, float(np.min(-(body.equations[:, :-1] @ x + body.equations[:, -1]))))


def farthest_distance(body: ConvexBody, x) -> float:
    """β(M, x) = sup_{m ∈ M} |xm|."""
    space = body.space
    x = space.check_point(x)
    if body.kind == "ball":
        return space.dist(body.center, x) + body.radius
    return float(np.max(space.pairwise([x], body.points)))


def body_diameter(body: ConvexBody) -> float:
    """D(M)."""
    if body.kind == "ball":
        return 2.0 * body.radius
    return float(np.max(body.space.pairwise(body.points, body.points)))


def _sphere_directions(dim: int, n: int) -> np.ndarray:
    if dim == 1:
        return np.array([[1.0], [-1.0]])
    if dim == 2:
        angles = np.linspace(0.0, 2.0 * np.pi, n, endpoint=False)
        return np.column_stack([np.cos(angles), np.sin(angles)])
    # フィボナッチ格子
    i = np.arange(n) + 0.5
    phi = np.arccos(1.0 - 2.0 * i / n)
    theta = np.pi * (1.0 + 5**0.5) * i
    return np.column_stack([np.cos(theta) * np.sin(phi), np.sin(theta) * np.sin(phi), np.cos(phi)])


def sphere_points(space: ModelSpace, center, radius: float, n: int) -> np.ndarray:
    """距離球面 S(center, radius) 上の点 (dim <= 3)."""
    center = space.check_point(center)
    if space.dim > 3:
        raise ValueError(f"球面のサンプリングは 3 次元までです: dim={space.dim}")
    dirs = _sphere_directions(space.dim, n)
    if isinstance(space, Euclidean):
        return center + radius * dirs
    points = []
    for u in dirs:
        _, t_plus = space.chord(center, u)
        y = center + 0.5 * t_plus * u
        points.append(space.omega(center, y, radius / space.dist(center, y)))
    return np.array(points)


def boundary_samples(body: ConvexBody, spacing: float) -> np.ndarray:
    """境界 (線分なら線分全体) 上の点を間隔 spacing 程度で並べる."""
    space = body.space
    if body.kind == "segment":
        a, b = body.points
        n = max(2, int(np.ceil(space.dist(a, b) / spacing)) + 1)
        return np.array([space.omega(a, b, lam) for lam in np.linspace(0.0, 1.0, n)])
    if body.kind == "ball":
        n = max(8, int(np.ceil(2.0 * np.pi * body.radius / spacing)))
        return sphere_points(space, body.center, body.radius, n)
    if body.degenerate or space.dim != 2:
        return np.array(body.points)
    edges = []
    for i, j in body.simplices:
        a, b = body.points[i], body.points[j]
        n = max(2, int(np.ceil(np.linalg.norm(b - a) / spacing)) + 1)
        edges.append(a + np.linspace(0.0, 1.0, n)[:, None] * (b - a))
    return np.vstack(edges)
