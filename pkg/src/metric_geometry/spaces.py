"""モデル空間.

ユークリッド空間 Euclidean(n)、クラインモデルの球 KleinBall(r, k)、
距離行列で与える有限空間 FiniteSpace と、測地線演算 ω_λ を提供する。

点の表現:
    Euclidean / KleinBall: 座標ベクトル (numpy 配列)
    FiniteSpace: 点の番号 (int)
"""

from dataclasses import dataclass, field
from typing import ClassVar, Union

import numpy as np
import pandas as pd
from scipy.spatial.distance import cdist

from config import TOLERANCES
from errors import GeodesicUnavailableError, MetricAxiomError, SpaceMismatchError

Point = Union[np.ndarray, int]


@dataclass(frozen=True)
class Euclidean:
    """n 次元ユークリッド空間."""

    dim: int
    kind: ClassVar[str] = "euclidean"
    geodesic: ClassVar[bool] = True

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"次元は正の整数である必要があります: dim={self.dim}")

    def check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise SpaceMismatchError(f"次元が一致しません: 期待={self.dim}, 実際={x.shape}")
        return x

    def check_points(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float).reshape(-1, self.dim) if np.size(X) else np.empty((0, self.dim))
        return X

    def dist(self, x, y) -> float:
        return float(np.linalg.norm(self.check_point(x) - self.check_point(y)))

    def pairwise(self, X, Y) -> np.ndarray:
        return cdist(self.check_points(X), self.check_points(Y))

    def dist_rows(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        return np.linalg.norm(np.asarray(Y, dtype=float) - np.asarray(X, dtype=float), axis=1)

    def omega(self, x, y, lam: float) -> np.ndarray:
        x, y = self.check_point(x), self.check_point(y)
        return x + lam * (y - x)

    def describe(self) -> str:
        return f"euclidean:{self.dim}"


@dataclass(frozen=True)
class KleinBall:
    """半径 r、曲率パラメータ k のクラインモデル (ロバチェフスキー空間).

    距離は k・Arch((r² - x·y) / sqrt((r² - |x|²)(r² - |y|²))) と同値な
    k・arsinh 形式で計算する (x ≈ y での桁落ちを避ける)。
    測地線はユークリッドの弦。
    """

    r: float = 1.0
    k: float = 1.0
    dim: int = 2
    kind: ClassVar[str] = "klein"
    geodesic: ClassVar[bool] = True

    def __post_init__(self):
        if self.r <= 0 or self.k <= 0:
            raise ValueError(f"r, k は正である必要があります: r={self.r}, k={self.k}")
        if self.dim < 1:
            raise ValueError(f"次元は正の整数である必要があります: dim={self.dim}")

    def check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise SpaceMismatchError(f"次元が一致しません: 期待={self.dim}, 実際={x.shape}")
        if float(x @ x) >= self.r**2:
            raise ValueError(f"点が開球 B(0, {self.r}) の外にあります: |x|={np.linalg.norm(x):.6g}")
        return x

    def check_points(self, X) -> np.ndarray:
        X = np.asarray(X, dtype=float).reshape(-1, self.dim) if np.size(X) else np.empty((0, self.dim))
        if len(X) and np.max(np.einsum("ij,ij->i", X, X)) >= self.r**2:
            raise ValueError(f"開球 B(0, {self.r}) の外の点が含まれています")
        return X

    def dist(self, x, y) -> float:
        x, y = self.check_point(x), self.check_point(y)
        return float(self.dist_rows(x[None, :], y[None, :])[0])

    def dist_rows(self, X: np.ndarray, Y: np.ndarray) -> np.ndarray:
        """行ごとの距離 |X_i Y_i| (開球の内側かどうかは確かめない)."""
        d = Y - X
        a = self.r**2 - np.einsum("ij,ij->i", X, X)
        b = self.r**2 - np.einsum("ij,ij->i", Y, Y)
        xd = np.einsum("ij,ij->i", X, d)
        num = np.sqrt(np.einsum("ij,ij->i", d, d) * a + xd**2)
        return self.k * np.arcsinh(num / np.sqrt(a * b))

    def pairwise(self, X, Y) -> np.ndarray:
        X, Y = self.check_points(X), self.check_points(Y)
        a = self.r**2 - np.einsum("ij,ij->i", X, X)
        b = self.r**2 - np.einsum("ij,ij->i", Y, Y)
        sq = cdist(X, Y, "sqeuclidean")
        # x·(y - x) = x·y - |x|²
        xd = X @ Y.T - (self.r**2 - a)[:, None]
        num = np.sqrt(np.maximum(sq * a[:, None] + xd**2, 0.0))
        return self.k * np.arcsinh(num / np.sqrt(np.outer(a, b)))

    def chord(self, x: np.ndarray, u: np.ndarray) -> tuple[float, float]:
        """x を通る方向 u (単位ベクトル) の弦の両端パラメータ t₋ < 0 < t₊."""
        b = float(x @ u)
        c = float(x @ x) - self.r**2
        root = np.sqrt(b * b - c)
        t_plus = -c / (b + root) if b > 0 else root - b
        return c / t_plus, t_plus

    def omega(self, x, y, lam: float) -> np.ndarray:
        x, y = self.check_point(x), self.check_point(y)
        if lam == 0:
            return x.copy()
        if lam == 1:
            return y.copy()
        diff = y - x
        length = np.linalg.norm(diff)
        if length <= TOLERANCES["identity"]:
            return x.copy()
        u = diff / length
        t_minus, t_plus = self.chord(x, u)
        s = lam * self.dist_rows(x[None, :], y[None, :])[0]
        # 弦上の符号付き距離 s(t) = (k/2) ln[t₊(t - t₋) / (-t₋(t₊ - t))] を t について解く
        q = np.exp(2.0 * s / self.k) * (-t_minus) / t_plus
        t = t_plus - (t_plus - t_minus) / (1.0 + q) if np.isfinite(q) else t_plus
        z = x + t * u
        if float(z @ z) >= self.r**2 or not (t_minus < t < t_plus):
            raise ValueError(f"ω(x, y, {lam}) が開球の外に出ます")
        return z

    def describe(self) -> str:
        return f"klein:{self.r},{self.k},{self.dim}"


@dataclass(frozen=True, eq=False)
class FiniteSpace:
    """距離行列で与える有限距離空間 (測地線演算なし)."""

    d: np.ndarray = field(repr=False)
    kind: ClassVar[str] = "finite"
    geodesic: ClassVar[bool] = False

    @property
    def size(self) -> int:
        return len(self.d)

    def check_point(self, x) -> int:
        if isinstance(x, np.ndarray):
            if x.size != 1:
                raise SpaceMismatchError("有限空間の点は番号 (int) で指定してください")
            x = x.item()
        if int(x) != x or not 0 <= int(x) < self.size:
            raise SpaceMismatchError(f"点の番号が範囲外です: {x} (size={self.size})")
        return int(x)

    def check_points(self, X) -> np.ndarray:
        X = np.asarray(X).reshape(-1).astype(int)
        if len(X) and (X.min() < 0 or X.max() >= self.size):
            raise SpaceMismatchError(f"点の番号が範囲外です (size={self.size})")
        return X

    def dist(self, x, y) -> float:
        return float(self.d[self.check_point(x), self.check_point(y)])

    def pairwise(self, X, Y) -> np.ndarray:
        return self.d[np.ix_(self.check_points(X), self.check_points(Y))]

    def omega(self, x, y, lam: float):
        raise GeodesicUnavailableError("有限空間では測地線演算 ω は使えません")

    def describe(self) -> str:
        return f"finite:{self.size}"


ModelSpace = Union[Euclidean, KleinBall, FiniteSpace]


def dist(space: ModelSpace, x: Point, y: Point) -> float:
    """2点間の距離."""
    return space.dist(x, y)


def omega(space: ModelSpace, x: Point, y: Point, lam: float) -> np.ndarray:
    """x から y への測地線上で dist(x, z) = |λ|·dist(x, y) となる点 z = ω_λ(x, y)."""
    return space.omega(x, y, lam)


def pairwise(space: ModelSpace, X, Y=None) -> np.ndarray:
    """距離行列."""
    return space.pairwise(X, X if Y is None else Y)


def same_space(a: ModelSpace, b: ModelSpace) -> bool:
    if a is b:
        return True
    if isinstance(a, FiniteSpace) or isinstance(b, FiniteSpace):
        return (
            isinstance(a, FiniteSpace)
            and isinstance(b, FiniteSpace)
            and a.d.shape == b.d.shape
            and bool(np.array_equal(a.d, b.d))
        )
    return a == b


def require_same_space(a: ModelSpace, b: ModelSpace) -> None:
    if not same_space(a, b):
        raise SpaceMismatchError(f"空間が一致しません: {a.describe()} と {b.describe()}")


def require_geodesic(space: ModelSpace) -> None:
    if not space.geodesic:
        raise GeodesicUnavailableError(f"測地空間が必要です: {space.describe()}")


def points_equal(space: ModelSpace, x: Point, y: Point) -> bool:
    if isinstance(space, FiniteSpace):
        return space.check_point(x) == space.check_point(y)
    return bool(np.linalg.norm(np.asarray(x, float) - np.asarray(y, float)) <= TOLERANCES["identity"])


def check_condition_A(space: ModelSpace, x: Point, y: Point, eps: float) -> Point | None:
    """条件 (A) の証人 z: 2·max{|xz|, |zy|} < |xy| + eps を返す (なければ None).

    測地空間では中点 ω(x, y, 1/2)、有限空間では全点を走査して max{|xz|, |zy|} 最小の点。
    """
    if eps <= 0:
        raise ValueError(f"eps は正である必要があります: eps={eps}")
    d_xy = space.dist(x, y)
    if space.geodesic:
        z = space.omega(x, y, 0.5)
        if 2.0 * max(space.dist(x, z), space.dist(z, y)) < d_xy + eps:
            return z
        return None

    i, j = space.check_point(x), space.check_point(y)
    worst = np.maximum(space.d[i], space.d[j])
    z = int(np.argmin(worst))
    if 2.0 * worst[z] < d_xy + eps:
        return z
    return None


def epsilon_chain(space: ModelSpace, x: Point, y: Point, eps: float, max_depth: int = 64) -> list | None:
    """x と y を結ぶ ε-鎖を近似中点の再帰で構成する.

    隣接点間の距離はすべて eps 未満、鎖の全長は |xy| + eps 未満。
    条件 (A) の証人が見つからない段階があれば None。
    """
    if eps <= 0:
        raise ValueError(f"eps は正である必要があります: eps={eps}")

    def build(a, b, slack: float, depth: int) -> list | None:
        if space.dist(a, b) < eps:
            return [a, b]
        if depth >= max_depth:
            return None
        z = check_condition_A(space, a, b, slack)
        if z is None:
            return None
        left = build(a, z, slack / 4.0, depth + 1)
        if left is None:
            return None
        right = build(z, b, slack / 4.0, depth + 1)
        if right is None:
            return None
        return left[:-1] + right

    return build(x, y, eps / 2.0, 0)


def chain_length(space: ModelSpace, chain: list) -> float:
    return float(sum(space.dist(a, b) for a, b in zip(chain[:-1], chain[1:])))


def check_busemann_npc(space: ModelSpace, x: Point, y: Point, z: Point) -> bool:
    """条件 (A₃): 2|ω(z,x,1/2) ω(z,y,1/2)| ≤ |xy| + 1e-9."""
    require_geodesic(space)
    mx = space.omega(z, x, 0.5)
    my = space.omega(z, y, 0.5)
    return 2.0 * space.dist(mx, my) <= space.dist(x, y) + TOLERANCES["geodesic"]


def find_axiom_violation(d, tol: float | None = None) -> dict | None:
    """距離行列で最初に破れている公理を返す (なければ None).

    Returns:
        dict: {axiom, indices, slack}
    """
    tol = TOLERANCES["metric_axiom"] if tol is None else tol
    d = np.asarray(d, dtype=float)
    if d.ndim != 2 or d.shape[0] != d.shape[1]:
        return {"axiom": "square", "indices": list(d.shape), "slack": float("nan")}
    if not np.all(np.isfinite(d)):
        i, j = np.argwhere(~np.isfinite(d))[0]
        return {"axiom": "finite", "indices": [int(i), int(j)], "slack": float("nan")}

    scale = np.maximum(1.0, np.abs(d))
    if np.any(d < -tol * scale):
        i, j = np.argwhere(d < -tol * scale)[0]
        return {"axiom": "nonnegative", "indices": [int(i), int(j)], "slack": float(d[i, j])}

    diag = np.abs(np.diag(d))
    if np.any(diag > tol):
        i = int(np.argmax(diag > tol))
        return {"axiom": "zero_diagonal", "indices": [i, i], "slack": -float(diag[i])}

    asym = np.abs(d - d.T)
    if np.any(asym > tol * scale):
        i, j = np.argwhere(asym > tol * scale)[0]
        return {"axiom": "symmetry", "indices": [int(i), int(j)], "slack": -float(asym[i, j])}

    off = d.copy()
    np.fill_diagonal(off, np.inf)
    if len(d) > 1 and np.any(off <= tol):
        i, j = np.argwhere(off <= tol)[0]
        return {"axiom": "identity", "indices": [int(i), int(j)], "slack": -float(tol - off[i, j])}

    for k in range(len(d)):
        # slack[i, j] = d(i,k) + d(k,j) - d(i,j)
        slack = d[:, k][:, None] + d[k, :][None, :] - d
        bad = slack < -tol * scale
        if np.any(bad):
            i, j = np.argwhere(bad)[0]
            return {"axiom": "triangle", "indices": [int(i), int(k), int(j)], "slack": float(slack[i, j])}
    return None


def validate_finite_metric(d, tol: float | None = None) -> FiniteSpace:
    """距離行列を検証して FiniteSpace を返す.

    Raises:
        MetricAxiomError: 公理違反 (最初に見つかったもの)
    """
    violation = find_axiom_violation(d, tol)
    if violation is not None:
        raise MetricAxiomError(violation["axiom"], tuple(violation["indices"]), violation["slack"])
    d = np.asarray(d, dtype=float)
    d = (d + d.T) / 2.0
    np.fill_diagonal(d, 0.0)
    d.setflags(write=False)
    return FiniteSpace(d)


def path_graph_space(n: int, step: float = 1.0) -> FiniteSpace:
    """0..n の整数点を並べた直線上の有限空間."""
    pts = np.arange(n + 1, dtype=float) * step
    return validate_finite_metric(np.abs(pts[:, None] - pts[None, :]))


def parse_space(text: str) -> ModelSpace:
    """`euclidean:<dim>`, `klein:<r>,<k>[,<dim>]`, `finite:<csv>` から空間を作る."""
    name, _, args = text.partition(":")
    name = name.strip().lower()
    if name == "euclidean":
        return Euclidean(int(args or 2))
    if name == "klein":
        values = [float(v) for v in args.split(",") if v.strip()] if args else []
        r = values[0] if len(values) > 0 else 1.0
        k = values[1] if len(values) > 1 else 1.0
        dim = int(values[2]) if len(values) > 2 else 2
        return KleinBall(r=r, k=k, dim=dim)
    if name == "finite":
        matrix = pd.read_csv(args, header=None).to_numpy(dtype=float)
        return validate_finite_metric(matrix)
    raise ValueError(f"未知の空間指定です: {text}")
