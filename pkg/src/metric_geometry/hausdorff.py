"""ハウスドルフ距離と関連する集合演算.

有限点集合 PointSet 上の偏差 β、ハウスドルフ距離 α、
距離的 ε-射影、中点集合 Ω の構成、一般化球の評価を行う。
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from config import TOLERANCES
from spaces import (
    Euclidean,
    FiniteSpace,
    ModelSpace,
    Point,
    require_geodesic,
    require_same_space,
)


@dataclass(frozen=True, eq=False)
class PointSet:
    """同一空間の相異なる点の有限集合.

    data は座標空間なら (n, dim) の配列、有限空間なら点番号の 1 次元配列。
    """

    space: ModelSpace
    data: np.ndarray

    @classmethod
    def of(cls, space: ModelSpace, points) -> "PointSet":
        data = _as_data(space, points)
        if len(data) == 0:
            raise ValueError("点集合が空です")
        if _has_duplicates(space, data):
            raise ValueError("点集合に重複する点があります (距離 <= 1e-12)")
        data.setflags(write=False)
        return cls(space, data)

    @classmethod
    def unique(cls, space: ModelSpace, points, tol: float | None = None) -> "PointSet":
        """重複 (距離 <= tol) を除いて点集合を作る."""
        data = _dedupe(space, _as_data(space, points), TOLERANCES["cluster"] if tol is None else tol)
        if len(data) == 0:
            raise ValueError("点集合が空です")
        data.setflags(write=False)
        return cls(space, data)

    def __len__(self) -> int:
        return len(self.data)

    def __iter__(self):
        return (self.point(i) for i in range(len(self)))

    def point(self, i: int) -> Point:
        if isinstance(self.space, FiniteSpace):
            return int(self.data[i])
        return self.data[i]

    def subset(self, indices) -> "PointSet":
        data = self.data[np.asarray(indices, dtype=int)]
        data.setflags(write=False)
        return PointSet(self.space, data)

    def contains(self, x: Point, tol: float | None = None) -> bool:
        tol = TOLERANCES["cluster"] if tol is None else tol
        return bool(np.min(self.space.pairwise([x], self.data)) <= tol)

    def to_list(self) -> list:
        return self.data.tolist()


@dataclass(frozen=True)
class GeneralizedBall:
    """一般化球 B[M, r] = {x : |xM| <= r}."""

    core: PointSet
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError(f"半径は非負である必要があります: radius={self.radius}")

    def members(self) -> PointSet:
        """有限空間における B[M, r] の全要素."""
        space = self.core.space
        if not isinstance(space, FiniteSpace):
            raise ValueError("一般化球の要素列挙は有限空間のみ対応しています")
        dist_to_core = space.d[:, self.core.data].min(axis=1)
        return PointSet.of(space, np.flatnonzero(dist_to_core <= self.radius + TOLERANCES["tie"]))


def _as_data(space: ModelSpace, points) -> np.ndarray:
    if isinstance(points, PointSet):
        return np.array(points.data)
    if isinstance(space, FiniteSpace):
        return np.array(space.check_points(points))
    if isinstance(points, np.ndarray):
        return np.array(space.check_points(points))
    return np.array(space.check_points(np.asarray([np.asarray(p, dtype=float) for p in points])))


def _has_duplicates(space: ModelSpace, data: np.ndarray) -> bool:
    if isinstance(space, FiniteSpace):
        if len(np.unique(data)) < len(data):
            return True
        sub = space.d[np.ix_(data, data)]
        return bool(np.any(sub[~np.eye(len(data), dtype=bool)] <= TOLERANCES["identity"]))
    return bool(cKDTree(data).query_pairs(TOLERANCES["identity"]))


def _dedupe(space: ModelSpace, data: np.ndarray, tol: float) -> np.ndarray:
    if isinstance(space, FiniteSpace):
        _, first = np.unique(data, return_index=True)
        return data[np.sort(first)]
    dropped = set()
    for i, j in sorted(cKDTree(data).query_pairs(tol)):
        if i not in dropped:
            dropped.add(j)
    keep = [i for i in range(len(data)) if i not in dropped]
    return data[keep]


def distance_matrix(M: PointSet, W: PointSet) -> np.ndarray:
    require_same_space(M.space, W.space)
    return M.space.pairwise(M.data, W.data)


def point_set_distance(x: Point, M: PointSet) -> float:
    """|xM| = min_{m ∈ M} |xm|."""
    return float(np.min(M.space.pairwise([x], M.data)))


def set_gap(M: PointSet, W: PointSet) -> float:
    """|MW| = min_{x ∈ M, y ∈ W} |xy|."""
    return float(np.min(distance_matrix(M, W)))


def deviation(M: PointSet, W: PointSet) -> float:
    """偏差 β(M, W) = max_{x ∈ M} |xW|."""
    require_same_space(M.space, W.space)
    if isinstance(M.space, Euclidean):
        nearest, _ = cKDTree(W.data).query(M.data)
        return float(np.max(nearest))
    return float(np.max(np.min(distance_matrix(M, W), axis=1)))


def hausdorff(M: PointSet, W: PointSet) -> float:
    """ハウスドルフ距離 α(M, W) = max{β(M, W), β(W, M)}."""
    return max(deviation(M, W), deviation(W, M))


def diameter(M: PointSet) -> float:
    return float(np.max(M.space.pairwise(M.data, M.data)))


def cross_diameter(M: PointSet, W: PointSet) -> float:
    """D(M, W) = max_{x ∈ M, y ∈ W} |xy|."""
    return float(np.max(distance_matrix(M, W)))


def eps_projection(x: Point, M: PointSet, eps: float) -> PointSet:
    """距離的 ε-射影 P(x, M, ε) = M ∩ B[x, |xM| + ε]."""
    if eps < 0:
        raise ValueError(f"eps は非負である必要があります: eps={eps}")
    d = M.space.pairwise([x], M.data)[0]
    return M.subset(np.flatnonzero(d <= d.min() + eps + TOLERANCES["tie"]))


def approximate_midpoints(space: ModelSpace, x: Point, y: Point, eps: float) -> PointSet | None:
    """近似中点の集合 ω(x, y, ε) = {z : 2·max{|xz|, |zy|} < |xy| + ε}.

    有限空間では全点を走査する。測地空間では厳密な中点 1 点を代表として返す。
    """
    d_xy = space.dist(x, y)
    if space.geodesic:
        return PointSet.of(space, [space.omega(x, y, 0.5)])
    i, j = space.check_point(x), space.check_point(y)
    worst = np.maximum(space.d[i], space.d[j])
    hits = np.flatnonzero(2.0 * worst < d_xy + eps)
    if len(hits) == 0:
        return None
    return PointSet.of(space, hits)


def midpoint_set(M: PointSet, W: PointSet) -> PointSet:
    """中点集合 Ω = ∪{ω(x, v, 1/2), ω(y, u, 1/2)}, v ∈ P(x, W, 0), u ∈ P(y, M, 0).

    距離的に凸な空間では α(M, Ω) = α(Ω, W) = α(M, W)/2 を満たす。
    """
    require_same_space(M.space, W.space)
    space = M.space
    require_geodesic(space)
    mids = []
    for source, target in ((M, W), (W, M)):
        for x in source:
            for v in eps_projection(x, target, 0.0):
                mids.append(space.omega(x, v, 0.5))
    return PointSet.unique(space, mids)


def eps_midpoint_set(M: PointSet, W: PointSet, eps: float) -> PointSet:
    """Ω(M, W, ε) = ∪{ω(x, v, ε) ∪ ω(y, u, ε) : v ∈ P(x, W, ε), u ∈ P(y, M, ε)}.

    2β(M, Ω) <= β(M, W) + 2ε と 2β(Ω, M) <= α(M, W) + 3ε を満たす (W についても同様)。
    """
    if eps <= 0:
        raise ValueError(f"eps は正である必要があります: eps={eps}")
    require_same_space(M.space, W.space)
    space = M.space
    parts = []
    for source, target in ((M, W), (W, M)):
        for x in source:
            for v in eps_projection(x, target, eps):
                found = approximate_midpoints(space, x, v, eps)
                if found is not None:
                    parts.append(found.data)
    if not parts:
        raise ValueError("近似中点が存在しません (空間が条件 (A) を満たさない可能性があります)")
    return PointSet.unique(space, np.concatenate(parts))


def generalized_ball_check(
    M: PointSet,
    r: float,
    W: PointSet,
    R: float,
    space: FiniteSpace | None = None,
) -> tuple[float, float, bool]:
    """α(B[M, r], B[W, R]) <= α(M, W) + |R - r| を有限空間で評価する.

    Returns:
        (lhs, rhs, ok)
    """
    if space is not None:
        require_same_space(space, M.space)
    require_same_space(M.space, W.space)
    lhs = hausdorff(GeneralizedBall(M, r).members(), GeneralizedBall(W, R).members())
    rhs = hausdorff(M, W) + abs(R - r)
    return lhs, rhs, bool(lhs <= rhs + TOLERANCES["inequality"])
