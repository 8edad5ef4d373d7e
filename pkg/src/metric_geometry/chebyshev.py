"""チェビシェフ中心と N-ネットの分類.

絶対・相対・自己相対のチェビシェフ半径と中心、直径点、
N-ネットのクラス判定、最良 N-ネット (k-center)、半径の摂動評価を行う。
"""

from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.optimize import linprog, minimize, nnls

from checks import check_record, summarize
from config import DEFAULT_SEED, DEFAULT_TOL, SOLVER, TOLERANCES
from errors import ConvergenceError, GuardExceededError
from hausdorff import PointSet, cross_diameter, deviation, diameter, hausdorff, set_gap
from spaces import Euclidean, FiniteSpace, KleinBall, ModelSpace, require_geodesic, require_same_space


@dataclass(frozen=True)
class CenterResult:
    """チェビシェフ中心の計算結果.

    centers の各点 c について β(M, c) ∈ [radius, radius + residual]。
    """

    centers: PointSet
    radius: float
    iterations: int
    residual: float

    def to_dict(self) -> dict:
        return {
            "centers": self.centers.to_list(),
            "radius": self.radius,
            "iterations": self.iterations,
            "residual": self.residual,
        }


@dataclass(frozen=True)
class NetClassification:
    """N-ネット S の自己集合と各クラスへの所属."""

    m: float
    m1: float
    h: PointSet
    h1: PointSet
    D: float
    R0: float
    Z0: PointSet
    H: PointSet
    Q0: PointSet
    in_d0: bool
    in_dm1: bool
    in_d0_Nminus1: bool
    in_md: bool
    in_mr0: bool
    in_mm1: bool
    in_m1r0: bool
    Z0_cardinality: int

    def to_dict(self) -> dict:
        result = {}
        for name, value in self.__dict__.items():
            result[name] = value.to_list() if isinstance(value, PointSet) else value
        return result


def _self_deviations(M: PointSet, W: PointSet) -> np.ndarray:
    """各 w ∈ W について β(M, w)."""
    require_same_space(M.space, W.space)
    return M.space.pairwise(W.data, M.data).max(axis=1)


def relative_radius_centers(M: PointSet, W: PointSet, tol: float | None = None) -> CenterResult:
    """相対チェビシェフ半径 R_W(M) と相対中心の集合 Z_W(M) (W は有限)."""
    tol = TOLERANCES["cluster"] if tol is None else tol
    dev = _self_deviations(M, W)
    radius = float(dev.min())
    centers = W.subset(np.flatnonzero(dev <= radius + tol))
    return CenterResult(centers, radius, 0, 0.0)


def relative_radius(M: PointSet, W: PointSet) -> float:
    return float(_self_deviations(M, W).min())


def theta(M: PointSet, W: PointSet) -> float:
    """θ(M, W) = max{R_W(M), R_M(W)}."""
    return max(relative_radius(M, W), relative_radius(W, M))


def self_sets(S: PointSet) -> NetClassification:
    """m, m₁, h, h₁, D, R₀, Z₀, H, Q₀ と各クラスの判定を列挙で求める."""
    d = S.space.pairwise(S.data, S.data)
    n = len(S)
    D = float(d.max())
    tol = TOLERANCES["cluster"] * max(1.0, D)

    if n > 1:
        off = d + np.diag(np.full(n, np.inf))
        nearest = off.min(axis=1)
    else:
        nearest = np.zeros(1)
    m, m1 = float(nearest.min()), float(nearest.max())

    beta_self = d.max(axis=1)
    R0 = float(beta_self.min())
    z0_idx = np.flatnonzero(beta_self <= R0 + tol)
    q0_idx = np.flatnonzero(np.abs(d[z0_idx].max(axis=0) - R0) <= tol)

    in_d0 = abs(D - R0) <= tol
    far_counts = ((d >= D - tol) & ~np.eye(n, dtype=bool)).sum(axis=1)
    in_d0_Nminus1 = bool(in_d0 and np.any(far_counts >= n - 2))

    return NetClassification(
        m=m,
        m1=m1,
        h=S.subset(np.flatnonzero(nearest <= m + tol)),
        h1=S.subset(np.flatnonzero(nearest >= m1 - tol)),
        D=D,
        R0=R0,
        Z0=S.subset(z0_idx),
        H=S.subset(np.flatnonzero(beta_self >= D - tol)),
        Q0=S.subset(q0_idx),
        in_d0=bool(in_d0),
        in_dm1=bool(abs(D - m1) <= tol),
        in_d0_Nminus1=in_d0_Nminus1,
        in_md=bool(abs(D - m) <= tol),
        in_mr0=bool(abs(m - R0) <= tol),
        in_mm1=bool(abs(m - m1) <= tol),
        in_m1r0=bool(abs(m1 - R0) <= tol),
        Z0_cardinality=len(z0_idx),
    )


def _diametral_pairs(S: PointSet, cls: NetClassification):
    """|xy| = R₀ かつ D({x,y}, S∖{x,y}) = R₀ となる番号の組 (i, j)."""
    d = S.space.pairwise(S.data, S.data)
    n = len(S)
    tol = TOLERANCES["cluster"] * max(1.0, cls.D)
    for i, j in combinations(range(n), 2):
        if abs(d[i, j] - cls.R0) > tol:
            continue
        rest = [k for k in range(n) if k not in (i, j)]
        if not rest or abs(d[np.ix_([i, j], rest)].max() - cls.R0) <= tol:
            yield i, j


def closure_Z1_membership(S: PointSet) -> bool:
    """S が Z_{1,N} の閉包に属するか.

    D(Z₀(S)) < R₀(S)、または |xy| = R₀(S) かつ D({x,y}, S∖{x,y}) = R₀(S) となる x, y が存在するとき真。
    """
    cls = self_sets(S)
    if cls.Z0_cardinality == 1:
        return True
    tol = TOLERANCES["cluster"] * max(1.0, cls.D)
    if diameter(cls.Z0) < cls.R0 - tol:
        return True
    return next(_diametral_pairs(S, cls), None) is not None


def _replace(S: PointSet, index: int, point) -> PointSet | None:
    data = np.array(S.data)
    data[index] = point
    try:
        return PointSet.of(S.space, data)
    except ValueError:
        return None


def _move_toward(space: ModelSpace, z, target, step: float):
    """z から target へ距離 step だけ測地線上を進んだ点."""
    return space.omega(z, target, step / space.dist(z, target))


def perturb_to_unique_center(S: PointSet) -> PointSet | None:
    """α(S, Ŝ) <= m(S)/4 かつ card Z₀(Ŝ) = 1 となる Ŝ を構成する.

    S が Z_{1,N} の閉包に属さない場合は None。
    """
    require_geodesic(S.space)
    cls = self_sets(S)
    if cls.Z0_cardinality == 1:
        return S
    space = S.space
    eps = cls.m / 4.0
    tol = TOLERANCES["cluster"] * max(1.0, cls.D)
    d = space.pairwise(S.data, S.data)
    n = len(S)

    def accept(index: int, point) -> PointSet | None:
        candidate = _replace(S, index, point)
        if candidate is None:
            return None
        if self_sets(candidate).Z0_cardinality == 1 and hausdorff(S, candidate) <= eps + tol:
            return candidate
        return None

    z0 = [int(i) for i in np.flatnonzero(d.max(axis=1) <= cls.R0 + tol)]
    if diameter(cls.Z0) < cls.R0 - tol:
        for u, v in combinations(z0, 2):
            for a, b in ((u, v), (v, u)):
                found = accept(a, _move_toward(space, S.point(a), S.point(b), eps))
                if found is not None:
                    return found

    for i, j in _diametral_pairs(S, cls):
        rest = [k for k in range(n) if k not in (i, j)]
        for x, y in ((i, j), (j, i)):
            if rest and abs(d[x, rest].max() - cls.R0) > tol:
                continue
            without_y = [k for k in range(n) if k != y]
            weak = [z for z in rest if d[z, without_y].max() < cls.R0 - tol]
            if not weak:
                found = accept(y, _move_toward(space, S.point(y), S.point(x), eps / 2.0))
            else:
                found = None
                for z in weak:
                    found = accept(z, _move_toward(space, S.point(z), S.point(x), eps / 2.0))
                    if found is not None:
                        break
            if found is not None:
                return found
    return None


def _lift(space: KleinBall, X: np.ndarray) -> np.ndarray:
    """クラインモデルの点を双曲面モデルへ持ち上げる (最終成分が時間成分)."""
    X = np.atleast_2d(X) / space.r
    scale = 1.0 / np.sqrt(1.0 - np.einsum("ij,ij->i", X, X))
    return np.hstack([X * scale[:, None], scale[:, None]])


def _subset_ball(space: ModelSpace, P: np.ndarray) -> tuple[np.ndarray, float, np.ndarray] | None:
    """点集合 P の全点から等距離で、P の (測地) 凸包に入る中心.

    Returns:
        (center, radius, weights) 重みが負なら None
    """
    s = len(P)
    if isinstance(space, Euclidean):
        Q = P - P[0]
        G = Q @ Q.T
        A = np.zeros((s + 1, s + 1))
        A[:s, :s] = 2.0 * G
        A[:s, s] = -1.0
        A[s, :s] = 1.0
        rhs = np.append(np.diag(G), 1.0)
        sol, *_ = np.linalg.lstsq(A, rhs, rcond=None)
        if not np.allclose(A @ sol, rhs, atol=1e-10 * max(1.0, float(np.abs(G).max()))):
            return None
        w = sol[:s]
        center = P[0] + w @ Q
        radius = float(np.max(np.linalg.norm(P - center, axis=1)))
        return center, radius, w

    G = np.cosh(space.pairwise(P, P) / space.k)
    v, *_ = np.linalg.lstsq(G, np.ones(s), rcond=None)
    if not np.allclose(G @ v, 1.0, atol=1e-10 * float(G.max())) or v.sum() <= 0:
        return None
    X = v @ _lift(space, P)
    center = space.r * X[:-1] / X[-1]
    if float(center @ center) >= space.r**2:
        return None
    radius = float(np.max(space.pairwise([center], P)))
    return center, radius, v / v.sum()


def _weight_lower_bound(space: ModelSpace, P: np.ndarray, w: np.ndarray) -> float:
    """単体上の重み w から得られるチェビシェフ半径の下界."""
    w = np.clip(w, 0.0, None)
    w = w / w.sum()
    if isinstance(space, Euclidean):
        mean = w @ P
        return float(np.sqrt(max(0.0, w @ np.sum((P - mean) ** 2, axis=1))))
    G = np.cosh(space.pairwise(P, P) / space.k)
    return float(space.k * np.arccosh(max(1.0, np.sqrt(w @ G @ w))))


def _geodesic_descent(space: ModelSpace, P: np.ndarray, tol: float, max_iter: int) -> tuple[np.ndarray, int]:
    """x ← ω(x, 最遠点, 1/(k+2)) を改善が止まるまで繰り返す."""
    x = P[0].copy()
    best_x, best = x, np.inf
    stall = 0
    k = 0
    for k in range(max_iter):
        d = space.pairwise([x], P)[0]
        far = int(np.argmax(d))
        if d[far] < best - tol:
            best, best_x, stall = float(d[far]), x, 0
        else:
            stall += 1
            if stall >= SOLVER["descent_stall_steps"]:
                break
        x = space.omega(x, P[far], 1.0 / (k + 2))
    return best_x, k + 1


def _refine_epigraph(space: ModelSpace, P: np.ndarray, x0: np.ndarray) -> np.ndarray:
    """min t s.t. t >= f_i(x) を SLSQP で解く (f_i はユークリッドなら距離の 2 乗、クラインなら cosh)."""
    dim = P.shape[1]
    if isinstance(space, Euclidean):

        def f(x):
            return np.sum((x - P) ** 2, axis=1)

        def grad(x):
            return 2.0 * (x - P)

    else:
        r2 = space.r**2
        c = 1.0 / np.sqrt(r2 - np.einsum("ij,ij->i", P, P))

        def f(x):
            a = r2 - x @ x
            return (r2 - P @ x) * c / np.sqrt(a)

        def grad(x):
            a = r2 - x @ x
            return c[:, None] * (-P / np.sqrt(a) + np.outer(r2 - P @ x, x) / a**1.5)

    constraints = [
        {
            "type": "ineq",
            "fun": lambda z: z[dim] - f(z[:dim]),
            "jac": lambda z: np.hstack([-grad(z[:dim]), np.ones((len(P), 1))]),
        }
    ]
    if isinstance(space, KleinBall):
        limit = space.r**2 * (1.0 - 1e-9)
        constraints.append(
            {
                "type": "ineq",
                "fun": lambda z: np.array([limit - z[:dim] @ z[:dim]]),
                "jac": lambda z: np.append(-2.0 * z[:dim], 0.0)[None, :],
            }
        )
    z0 = np.append(x0, f(x0).max())
    result = minimize(
        lambda z: z[dim],
        z0,
        jac=lambda z: np.append(np.zeros(dim), 1.0),
        method="SLSQP",
        constraints=constraints,
        options={"maxiter": SOLVER["refine_max_iter"], "ftol": SOLVER["refine_tol"]},
    )
    x = result.x[:dim]
    try:
        x = space.check_point(x)
    except ValueError:
        return x0
    return x if f(x).max() <= f(x0).max() else x0


def _support_polish(space: ModelSpace, P: np.ndarray, x: np.ndarray) -> tuple[np.ndarray, float]:
    """準アクティブ点の部分集合から厳密な最小包含球を探す.

    Returns:
        (center, lower_bound)
    """
    d = space.pairwise([x], P)[0]
    radius = float(d.max())
    margin = max(1e-6, 1e-3 * radius)
    order = np.argsort(-d)
    limit = SOLVER["polish_candidates"]
    candidates = [int(i) for i in order if d[i] >= radius - margin][:limit]
    if len(candidates) < min(len(P), 2):
        candidates = [int(i) for i in order[:2]]

    best = None
    for size in range(2, min(P.shape[1] + 1, len(candidates)) + 1):
        for subset in combinations(candidates, size):
            ball = _subset_ball(space, P[list(subset)])
            if ball is None:
                continue
            center, r, w = ball
            if np.any(w < -1e-12):
                continue
            if np.max(space.pairwise([center], P)) > r * (1.0 + 1e-10) + 1e-12:
                continue
            if best is None or r < best[1]:
                best = (center, r, w, subset)

    if best is not None:
        center, r, w, subset = best
        return center, _weight_lower_bound(space, P[list(subset)], w)

    # 厳密解が見つからない場合は NNLS の重みで下界を作る
    active = P[candidates]
    if isinstance(space, Euclidean):
        A = np.vstack([active.T, np.ones(len(active))])
        b = np.append(x, 1.0)
    else:
        A = _lift(space, active).T
        b = _lift(space, x)[0]
    w, _ = nnls(A, b)
    if w.sum() <= 0:
        return x, 0.0
    return x, _weight_lower_bound(space, active, w)


def chebyshev_center(
    M: PointSet,
    space: ModelSpace | None = None,
    tol: float | None = None,
    max_iter: int | None = None,
) -> CenterResult:
    """チェビシェフ中心 (一意) と半径 R(M).

    1. 測地降下 x ← ω(x, 最遠点, 1/(k+2))
    2. エピグラフ形式の SLSQP による仕上げ
    3. 準アクティブ点の部分集合から厳密な包含球を求め、重みから下界を作る

    1 は 2 の初期値を作るだけで、反復は descent_max_iter 回で打ち切る。
    半径の精度は 2 と 3 で決まり、残差 (半径 - 下界) で確かめる。

    有限空間では空間全体を候補とする相対チェビシェフ中心を返す。

    Raises:
        ConvergenceError: 半径と下界の差が tol を超えた
    """
    space = M.space if space is None else space
    require_same_space(space, M.space)
    tol = DEFAULT_TOL if tol is None else tol
    max_iter = SOLVER["descent_max_iter"] if max_iter is None else max_iter

    if isinstance(space, FiniteSpace):
        return relative_radius_centers(M, PointSet.of(space, np.arange(space.size)))

    P = np.asarray(M.data, dtype=float)
    if len(P) == 1:
        return CenterResult(M, 0.0, 0, 0.0)
    if len(P) == 2:
        center = space.omega(P[0], P[1], 0.5)
        radius = float(space.pairwise([center], P).max())
        return CenterResult(PointSet.of(space, [center]), radius, 0, abs(radius - space.dist(P[0], P[1]) / 2.0))

    x, iterations = _geodesic_descent(space, P, tol, max_iter)
    x = _refine_epigraph(space, P, x)
    center, lower = _support_polish(space, P, x)
    radius = float(space.pairwise([center], P).max())
    residual = max(0.0, radius - lower)
    if residual > tol * max(1.0, radius):
        raise ConvergenceError("チェビシェフ中心が収束しません", residual)
    return CenterResult(PointSet.of(space, [center]), radius, iterations, residual)


def minidisk_bruteforce(M: PointSet) -> tuple[np.ndarray, float]:
    """平面の最小包含円を 2 点・3 点の支持円の全列挙で求める (検証用)."""
    P = np.asarray(M.data, dtype=float)
    best_center, best_radius = P[0], np.inf
    candidates = []
    for i, j in combinations(range(len(P)), 2):
        candidates.append(((P[i] + P[j]) / 2.0, np.linalg.norm(P[i] - P[j]) / 2.0))
    for i, j, k in combinations(range(len(P)), 3):
        a, b, c = P[i], P[j], P[k]
        det = 2.0 * (a[0] * (b[1] - c[1]) + b[0] * (c[1] - a[1]) + c[0] * (a[1] - b[1]))
        if abs(det) < 1e-14:
            continue
        ux = ((a @ a) * (b[1] - c[1]) + (b @ b) * (c[1] - a[1]) + (c @ c) * (a[1] - b[1])) / det
        uy = ((a @ a) * (c[0] - b[0]) + (b @ b) * (a[0] - c[0]) + (c @ c) * (b[0] - a[0])) / det
        center = np.array([ux, uy])
        candidates.append((center, np.linalg.norm(a - center)))
    for center, radius in candidates:
        if radius < best_radius and np.max(np.linalg.norm(P - center, axis=1)) <= radius * (1 + 1e-12) + 1e-12:
            best_center, best_radius = center, radius
    return best_center, float(best_radius)


def _stirling2(n: int, k: int) -> int:
    table = [[0] * (k + 1) for _ in range(n + 1)]
    table[0][0] = 1
    for i in range(1, n + 1):
        for j in range(1, min(i, k) + 1):
            table[i][j] = j * table[i - 1][j] + table[i - 1][j - 1]
    return table[n][k]


def _partitions(n: int, max_blocks: int):
    """{0..n-1} の max_blocks 個以下のブロックへの分割 (制限成長列)."""
    labels = [0] * n

    def rec(i: int, used: int):
        if i == n:
            yield list(labels)
            return
        for label in range(min(used + 1, max_blocks)):
            labels[i] = label
            yield from rec(i + 1, max(used, label + 1))

    yield from rec(1, 1) if n > 0 else iter([[]])


def _block_center(M: PointSet, block: tuple) -> tuple[float, np.ndarray]:
    sub = M.subset(block)
    if len(block) == 1:
        return 0.0, sub.point(0)
    result = chebyshev_center(sub)
    return result.radius, result.centers.point(0)


def best_nnet(M: PointSet, N: int, mode: str = "exact", seed: int | None = None) -> tuple[PointSet, float]:
    """最良 N-ネット S* と R_N(M) = β(M, S*).

    exact: N 個以下のクラスタへの分割を全列挙し、各クラスタのチェビシェフ中心を使う。
    local: 最遠点挿入または乱数の N 点で初期化し、割当と中心の再計算を交互に行う (乱数シード付きの再スタート)。

    Raises:
        GuardExceededError: exact で分割数が上限を超えた
    """
    if N < 1:
        raise ValueError(f"N は正の整数である必要があります: N={N}")
    n = len(M)
    if N >= n:
        return M, 0.0
    if mode == "exact":
        return _best_nnet_exact(M, N)
    if mode == "local":
        return _best_nnet_local(M, N, DEFAULT_SEED if seed is None else seed)
    raise ValueError(f"未知のモードです: {mode}")


def _best_nnet_exact(M: PointSet, N: int) -> tuple[PointSet, float]:
    n = len(M)
    count = sum(_stirling2(n, k) for k in range(1, N + 1))
    if count > SOLVER["partition_guard"]:
        raise GuardExceededError(f"分割数 {count} が上限 {SOLVER['partition_guard']} を超えています")

    d = M.space.pairwise(M.data, M.data)
    half_diam: dict[tuple, float] = {}
    radii: dict[tuple, tuple[float, np.ndarray]] = {}
    best_radius, best_blocks = np.inf, None
    for labels in _partitions(n, N):
        blocks = [tuple(i for i in range(n) if labels[i] == b) for b in range(max(labels) + 1)]
        lower = 0.0
        for block in blocks:
            if block not in half_diam:
                half_diam[block] = float(d[np.ix_(block, block)].max()) / 2.0
            lower = max(lower, half_diam[block])
        if lower >= best_radius:
            continue
        worst = 0.0
        for block in sorted(blocks, key=lambda b: -half_diam[b]):
            if block not in radii:
                radii[block] = _block_center(M, block)
            worst = max(worst, radii[block][0])
            if worst >= best_radius:
                break
        if worst < best_radius:
            best_radius, best_blocks = worst, blocks

    centers = PointSet.unique(M.space, [radii[b][1] for b in best_blocks])
    return centers, deviation(M, centers)


def _farthest_first(d: np.ndarray, first: int, N: int) -> list[int]:
    chosen = [first]
    nearest = d[first].copy()
    while len(chosen) < N:
        nxt = int(np.argmax(nearest))
        chosen.append(nxt)
        nearest = np.minimum(nearest, d[nxt])
    return chosen


def _best_nnet_local(M: PointSet, N: int, seed: int) -> tuple[PointSet, float]:
    rng = np.random.default_rng(seed)
    d = M.space.pairwise(M.data, M.data)
    best_centers, best_radius = None, np.inf
    for restart in range(SOLVER["local_restarts"]):
        # 最遠点挿入と一様な N 点部分集合を交互に初期値にする
        if restart % 2 == 0:
            start = _farthest_first(d, int(rng.integers(len(M))), N)
        else:
            start = sorted(int(i) for i in rng.choice(len(M), size=N, replace=False))
        centers = M.subset(start)
        radius = deviation(M, centers)
        for _ in range(SOLVER["local_max_iter"]):
            labels = np.argmin(M.space.pairwise(M.data, centers.data), axis=1)
            new_points = [_block_center(M, tuple(np.flatnonzero(labels == c)))[1] for c in np.unique(labels)]
            candidate = PointSet.unique(M.space, new_points)
            new_radius = deviation(M, candidate)
            if new_radius >= radius - TOLERANCES["cluster"]:
                break
            centers, radius = candidate, new_radius
        if radius < best_radius:
            best_centers, best_radius = centers, radius
    return best_centers, best_radius


def radius_perturbation_bounds(M: PointSet, W: PointSet, A: PointSet, B: PointSet) -> dict:
    """相対チェビシェフ半径の摂動評価 (各不等式の両辺と余裕)."""
    records = []
    lhs = abs(relative_radius(M, W) - relative_radius(A, B))
    records.append(
        check_record(
            "relative_radius_deviation_bound",
            lhs,
            max(deviation(M, A) + deviation(B, W), deviation(A, M) + deviation(W, B)),
            anchor="relative radius perturbation, deviation form",
        )
    )
    records.append(
        check_record(
            "relative_radius_hausdorff_bound",
            lhs,
            hausdorff(M, A) + hausdorff(W, B),
            anchor="relative radius perturbation, Hausdorff form",
        )
    )
    r0_gap = abs(relative_radius(M, M) - relative_radius(A, A))
    records.append(
        check_record("self_radius_bound", r0_gap, deviation(M, A) + deviation(A, M), anchor="self radius perturbation")
    )
    records.append(check_record("self_radius_alpha_bound", r0_gap, 2.0 * hausdorff(M, A), anchor="self radius perturbation"))

    cls_m, cls_w = self_sets(M), self_sets(W)
    records.append(
        check_record(
            "relative_radius_via_self_centers",
            relative_radius(M, W),
            cls_m.R0 + set_gap(cls_m.Z0, W),
            anchor="relative radius via self centers",
        )
    )
    records.append(
        check_record(
            "theta_self_center_bound",
            theta(M, W),
            max(cls_m.R0 + set_gap(cls_m.Z0, W), cls_w.R0 + set_gap(cls_w.Z0, M)),
            anchor="theta bound via Z0",
        )
    )
    records.append(check_record("theta_lower", hausdorff(M, W), theta(M, W), anchor="alpha <= theta"))
    records.append(check_record("theta_upper", theta(M, W), cross_diameter(M, W), anchor="theta <= D(M,W)"))

    if M.space.geodesic:
        cm, cw = chebyshev_center(M), chebyshev_center(W)
        records.append(
            check_record(
                "relative_radius_via_center",
                relative_radius(M, W),
                cm.radius + set_gap(cm.centers, W) + cm.residual,
                anchor="relative radius via Chebyshev center",
            )
        )
        records.append(
            check_record(
                "chebyshev_radius_lipschitz",
                abs(cm.radius - cw.radius),
                hausdorff(M, W) + cm.residual + cw.residual,
                anchor="Chebyshev radius is 1-Lipschitz",
            )
        )
        records.append(
            check_record(
                "theta_center_bound",
                theta(M, W),
                max(cm.radius + set_gap(cm.centers, W), cw.radius + set_gap(cw.centers, M)) + cm.residual + cw.residual,
                anchor="theta bound via Z",
            )
        )
    return summarize(records)


def hull_membership_check(M: PointSet, tol: float | None = None) -> bool:
    """チェビシェフ中心が conv(M) に入るかを線形計画で判定する (クラインモデルでは座標の凸包)."""
    if isinstance(M.space, FiniteSpace):
        raise ValueError("凸包判定は座標空間のみ対応しています")
    tol = TOLERANCES["cluster"] if tol is None else tol
    center = chebyshev_center(M).centers.point(0)
    P = np.asarray(M.data, dtype=float)
    n, dim = P.shape
    # 変数: λ (n), s⁺ (dim), s⁻ (dim)
    c = np.concatenate([np.zeros(n), np.ones(2 * dim)])
    A_eq = np.zeros((dim + 1, n + 2 * dim))
    A_eq[:dim, :n] = P.T
    A_eq[:dim, n : n + dim] = np.eye(dim)
    A_eq[:dim, n + dim :] = -np.eye(dim)
    A_eq[dim, :n] = 1.0
    b_eq = np.append(center, 1.0)
    result = linprog(c, A_eq=A_eq, b_eq=b_eq, bounds=[(0, None)] * (n + 2 * dim), method="highs")
    scale = max(1.0, float(np.abs(P).max()))
    return bool(result.status == 0 and result.fun <= tol * scale)
