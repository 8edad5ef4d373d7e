"""ヒルベルト幾何と接空間.

B(0, r) ⊂ (ℝⁿ, ‖·‖_p) のヒルベルト距離 |xy| = (k/2) ln R(x, y, y_x, x_y)、
境界点、中点と λ_p の陽な公式、ロバチェフスキー空間の閉じた式、
ブーゼマンの接空間の擬距離 m̄_p と距離 m_p、上角と ψ_y, φ_L を扱う。

ユークリッドノルム (p = 2) ではクラインモデル KleinBall(r, k) と同じ距離になる。
"""

from dataclasses import dataclass
from typing import ClassVar

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from config import SOLVER, TOLERANCES
from errors import ConvergenceError
from spaces import KleinBall, Point, require_geodesic


@dataclass(frozen=True)
class HilbertBall:
    """ノルム ‖·‖_p の開球 B(0, r) とヒルベルト距離 (1 < p < ∞)."""

    r: float = 1.0
    k: float = 1.0
    dim: int = 2
    norm_p: float = 2.0
    kind: ClassVar[str] = "hilbert"
    geodesic: ClassVar[bool] = True

    def __post_init__(self):
        if self.r <= 0 or self.k <= 0:
            raise ValueError(f"r, k は正である必要があります: r={self.r}, k={self.k}")
        if not 1.0 < self.norm_p < np.inf:
            raise ValueError(f"狭義凸なノルムが必要です (1 < p < ∞): p={self.norm_p}")

    def norm(self, v) -> float:
        return float(np.linalg.norm(np.asarray(v, dtype=float), ord=self.norm_p))

    def check_point(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        if x.shape != (self.dim,):
            raise ValueError(f"次元が一致しません: 期待={self.dim}, 実際={x.shape}")
        if self.norm(x) >= self.r:
            raise ValueError(f"点が開球 B(0, {self.r}) の外にあります")
        return x

    def dist(self, x, y) -> float:
        return hilbert_dist(self, x, y)

    def omega(self, x, y, lam: float) -> np.ndarray:
        return hilbert_lambda_p(self, x, y, lam)

    def describe(self) -> str:
        return f"hilbert:{self.r},{self.k},{self.dim},p={self.norm_p}"


@dataclass(frozen=True)
class TangentVector:
    """接空間の元 [x; λ] (基点 p)."""

    base: np.ndarray
    rep: np.ndarray
    scale: float

    def __post_init__(self):
        if self.scale < 0:
            raise ValueError(f"scale は非負である必要があります: scale={self.scale}")


@dataclass(frozen=True)
class LimitEstimate:
    value: float
    converged: bool
    monotone: bool
    steps: int

    def to_dict(self) -> dict:
        return {"value": self.value, "converged": self.converged, "monotone": self.monotone, "steps": self.steps}


def _same(x: np.ndarray, y: np.ndarray) -> bool:
    return bool(np.linalg.norm(x - y) <= TOLERANCES["identity"])


def boundary_hit(H: HilbertBall, x: Point, y: Point) -> np.ndarray:
    """x から y を通る半直線と球面 S(0, r) の交点 y_x."""
    x, y = H.check_point(x), H.check_point(y)
    d = y - x
    if _same(x, y):
        raise ValueError("x と y が一致しています")
    if H.norm_p == 2.0:
        b = float(x @ d)
        a = float(d @ d)
        c = float(x @ x) - H.r**2
        t = (-b + np.sqrt(b * b - a * c)) / a if b <= 0 else -c / (b + np.sqrt(b * b - a * c))
        return x + t * d
    # ‖x + t d‖ >= t‖d‖ - ‖x‖ >= 2r + ‖x‖ > r なので t_hi は丸め誤差があっても球の外
    t_hi = 2.0 * (H.r + H.norm(x)) / H.norm(d)
    t = brentq(
        lambda s: H.norm(x + s * d) - H.r,
        1.0,
        t_hi,
        xtol=SOLVER["bisection_tol"],
        maxiter=SOLVER["bisection_max_iter"],
    )
    return x + t * d


def _chord_lengths(H: HilbertBall, x: np.ndarray, y: np.ndarray) -> tuple[float, float, float]:
    """(‖x - x_y‖, ‖y - y_x‖, ‖x - y‖)."""
    return H.norm(x - boundary_hit(H, y, x)), H.norm(y - boundary_hit(H, x, y)), H.norm(x - y)


def hilbert_dist(H: HilbertBall, x: Point, y: Point) -> float:
    """(k/2) ln R(x, y, y_x, x_y).

    R = 1 + ‖x-y‖(1/‖x-x_y‖ + 1/‖y-y_x‖ + ‖x-y‖/(‖x-x_y‖‖y-y_x‖)) を log1p で評価する。
    """
    x, y = H.check_point(x), H.check_point(y)
    if _same(x, y):
        return 0.0
    a, b, d = _chord_lengths(H, x, y)
    return 0.5 * H.k * float(np.log1p(d * (1.0 / a + 1.0 / b + d / (a * b))))


def lobachevsky_dist(r: float, k: float, x: Point, y: Point) -> float:
    """k Arch(A/√B), A = r² - (x, y), B = (r² - (x, x))(r² - (y, y))."""
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    A = r**2 - float(x @ y)
    B = (r**2 - float(x @ x)) * (r**2 - float(y @ y))
    if B <= 0:
        raise ValueError("点が開球の外にあります")
    return k * float(np.arccosh(max(1.0, A / np.sqrt(B))))


def hilbert_norm_bounds(H: HilbertBall, x: Point, y: Point, r1: float) -> tuple[float, float, float]:
    """x, y ∈ B[0, r1] での k(r-r1)‖x-y‖/(r+r1)² <= |xy| <= kr‖x-y‖/(r-r1)².

    Returns:
        (lower, dist, upper)
    """
    if not 0 <= r1 < H.r:
        raise ValueError(f"0 <= r1 < r が必要です: r1={r1}")
    x, y = H.check_point(x), H.check_point(y)
    if H.norm(x) > r1 + TOLERANCES["identity"] or H.norm(y) > r1 + TOLERANCES["identity"]:
        raise ValueError("点が B[0, r1] の外にあります")
    d = H.norm(x - y)
    lower = H.k * (H.r - r1) * d / (H.r + r1) ** 2
    upper = H.k * H.r * d / (H.r - r1) ** 2
    return lower, hilbert_dist(H, x, y), upper


def hilbert_midpoint(H: HilbertBall, x: Point, y: Point) -> np.ndarray:
    """(1/2)_x(y) = (x + a y)/(1 + a), a = √(‖x-y_x‖‖x-x_y‖ / (‖y-y_x‖‖y-x_y‖))."""
    x, y = H.check_point(x), H.check_point(y)
    if _same(x, y):
        return x.copy()
    x_from_y = boundary_hit(H, y, x)
    y_from_x = boundary_hit(H, x, y)
    a = np.sqrt(H.norm(x - y_from_x) * H.norm(x - x_from_y) / (H.norm(y - y_from_x) * H.norm(y - x_from_y)))
    return (x + a * y) / (1.0 + a)


def hilbert_lambda_p(H: HilbertBall, p: Point, x: Point, lam: float) -> np.ndarray:
    """λ_p(x) = ω_λ(p, x) の陽な公式.

    A = ‖p - x_p‖, B = ‖x - p_x‖, C = ‖p - p_x‖, D = ‖x - x_p‖, u = (AB/CD)^λ として
    ‖λ_p(x) - p‖ = (u - 1)/(u/A + 1/C) (符号つき)。
    """
    p, x = H.check_point(p), H.check_point(x)
    if lam == 0 or _same(p, x):
        return p.copy()
    if lam == 1:
        return x.copy()
    x_p = boundary_hit(H, p, x)
    p_x = boundary_hit(H, x, p)
    A, B, C, D = H.norm(p - x_p), H.norm(x - p_x), H.norm(p - p_x), H.norm(x - x_p)
    log_u = lam * (np.log(A * B) - np.log(C * D))
    if log_u > 0:
        w = np.exp(-log_u)
        step = (1.0 - w) / (1.0 / A + w / C)
    else:
        u = np.exp(log_u)
        step = (u - 1.0) / (u / A + 1.0 / C)
    z = p + step * (x - p) / H.norm(x - p)
    if H.norm(z) >= H.r:
        raise ValueError(f"λ_p(x) が開球の外に出ます: λ={lam}")
    return z


def odule_add(H: HilbertBall, p: Point, x: Point, y: Point) -> np.ndarray:
    """x +_p y = 2_p((1/2)_x(y))."""
    return hilbert_lambda_p(H, p, hilbert_midpoint(H, x, y), 2.0)


def _origin_vector(H: HilbertBall, x: np.ndarray) -> np.ndarray:
    """x ρ(0, x)/‖x‖."""
    n = H.norm(x)
    if n == 0:
        return np.zeros_like(x)
    return x * (H.k * np.arctanh(n / H.r)) / n


def _require_euclidean_norm(H: HilbertBall) -> None:
    if H.norm_p != 2.0:
        raise ValueError("この計算はユークリッドノルム (クラインモデル) のみ対応しています")


def origin_scaling_limits(H: HilbertBall, x: Point, y: Point) -> dict:
    """原点での λ_0 に関する 4 つの極限の閉じた式 (クラインモデル).

    infinity: lim_{λ→∞} |λ_0(x)λ_0(y)|/λ
    tangent: lim_{λ→0+} |λ_0(x)λ_0(y)|/λ
    midpoint: lim_{λ→0+} ρ(0, ω_{1/2}(λ_0(x), λ_0(y)))/λ
    sum: lim_{λ→0+} |λ_0(x +_0 y)(λ_0(x) +_0 λ_0(y))|/λ
    """
    _require_euclidean_norm(H)
    x, y = H.check_point(x), H.check_point(y)
    zero = np.zeros(H.dim)
    vx, vy = _origin_vector(H, x), _origin_vector(H, y)
    limits = {
        "infinity": hilbert_dist(H, zero, x) + hilbert_dist(H, zero, y),
        "tangent": float(np.linalg.norm(vy - vx)),
        "midpoint": 0.5 * float(np.linalg.norm(vy + vx)),
    }
    if H.norm(x + y) > TOLERANCES["identity"]:
        z = hilbert_midpoint(H, x, y)
        limits["sum"] = float(np.linalg.norm(vx + vy - 2.0 * _origin_vector(H, z)))
    return limits


def origin_scaling_ratio(H: HilbertBall, x: Point, y: Point, lam: float, which: str) -> float:
    """origin_scaling_limits の各極限に対応する有限の λ での比."""
    if lam <= 0:
        raise ValueError(f"λ は正である必要があります: λ={lam}")
    zero = np.zeros(H.dim)

    def scale(v):
        return hilbert_lambda_p(H, zero, v, lam)

    if which in ("infinity", "tangent"):
        return hilbert_dist(H, scale(x), scale(y)) / lam
    if which == "midpoint":
        return hilbert_dist(H, zero, hilbert_midpoint(H, scale(x), scale(y))) / lam
    if which == "sum":
        lhs = scale(odule_add(H, zero, x, y))
        rhs = odule_add(H, zero, scale(x), scale(y))
        return hilbert_dist(H, lhs, rhs) / lam
    raise ValueError(f"未知の極限です: {which}")


def median_length(space, z: Point, u: Point, v: Point) -> tuple[float, float]:
    """三角形 zuv の中線 |zw| (w = ω(u, v, 1/2)) の直接計算と
    ch|zw| = (ch|zu| + ch|zv|)/(2 ch(|uv|/2)) (距離は k 単位) による値.

    Returns:
        (direct, formula)
    """
    w = space.omega(u, v, 0.5)
    k = space.k
    direct = space.dist(z, w)
    ratio = (np.cosh(space.dist(z, u) / k) + np.cosh(space.dist(z, v) / k)) / (2.0 * np.cosh(space.dist(u, v) / (2.0 * k)))
    return direct, k * float(np.arccosh(max(1.0, ratio)))


def tangent_limit(space, p: Point, x: Point, y: Point) -> LimitEstimate:
    """m̄_p(x, y) = lim_{ν→0+} |ω_ν(p,x) ω_ν(p,y)|/ν を ν_k = 2^{-k} で評価する.

    NPC 空間では q(ν) は ν について単調なので、隣り合う値の差が limit_tol を下回った時点の値を返す。
    """
    require_geodesic(space)
    q_prev = None
    monotone = True
    steps = 0
    for k in range(SOLVER["limit_k_min"], SOLVER["limit_k_max"] + 1):
        nu = 2.0**-k
        q = space.dist(space.omega(p, x, nu), space.omega(p, y, nu)) / nu
        steps += 1
        if q_prev is not None:
            if q > q_prev + 1e-9 * max(1.0, q_prev):
                monotone = False
            if abs(q - q_prev) < SOLVER["limit_tol"]:
                return LimitEstimate(float(q), True, monotone, steps)
        q_prev = q
    return LimitEstimate(float(q_prev), False, monotone, steps)


def _klein_like(space) -> bool:
    return isinstance(space, KleinBall) or (isinstance(space, HilbertBall) and space.norm_p == 2.0)


def tangent_norm(space, p: Point, x: Point, y: Point, mode: str = "limit") -> float:
    """m̄_p(x, y).

    limit: tangent_limit の値 (収束しなければ ConvergenceError)
    closed_form: クラインモデル・p = 0 での √(ρ(0,x)² + ρ(0,y)² - 2ρ(0,x)ρ(0,y)cos α)
    """
    if mode == "limit":
        estimate = tangent_limit(space, p, x, y)
        if not estimate.converged:
            raise ConvergenceError("接空間の極限が収束しません", SOLVER["limit_tol"])
        return estimate.value
    if mode != "closed_form":
        raise ValueError(f"未知のモードです: {mode}")
    if not _klein_like(space):
        raise ValueError("closed_form はクラインモデルのみ対応しています")
    p = np.asarray(p, dtype=float)
    if np.linalg.norm(p) > TOLERANCES["identity"]:
        raise ValueError("closed_form は p = 0 のみ対応しています")
    zero = np.zeros_like(p)
    x, y = np.asarray(x, dtype=float), np.asarray(y, dtype=float)
    rx, ry = space.dist(zero, x), space.dist(zero, y)
    if rx == 0 or ry == 0:
        return rx + ry
    cos_a = float(np.clip(x @ y / (np.linalg.norm(x) * np.linalg.norm(y)), -1.0, 1.0))
    return float(np.sqrt(max(0.0, rx * rx + ry * ry - 2.0 * rx * ry * cos_a)))


def tangent_dist(space, p: Point, v1: TangentVector, v2: TangentVector, tau: float | None = None) -> float:
    """m_p([x; λ], [y; μ]) = τ m̄_p(ω(p, x, λ/τ), ω(p, y, μ/τ)), τ > max{λ, μ}."""
    p = np.asarray(p, dtype=float)
    if not (_same(np.asarray(v1.base, dtype=float), p) and _same(np.asarray(v2.base, dtype=float), p)):
        raise ValueError("接ベクトルの基点が一致しません")
    tau = 2.0 * max(v1.scale, v2.scale, 1.0) if tau is None else tau
    if tau <= max(v1.scale, v2.scale):
        raise ValueError(f"τ は max{{λ, μ}} より大きい必要があります: τ={tau}")
    a = space.omega(p, v1.rep, v1.scale / tau)
    b = space.omega(p, v2.rep, v2.scale / tau)
    if _same(a, b):
        return 0.0
    return tau * tangent_norm(space, p, a, b)


def _comparison_angle(a: float, b: float, c: float) -> float:
    """辺 a, b に挟まれた角 (対辺 c) を半角公式で求める."""
    num = max(0.0, (c - a + b) * (c + a - b))
    den = max(0.0, (a + b + c) * (a + b - c))
    return float(2.0 * np.arctan2(np.sqrt(num), np.sqrt(den)))


def upper_angle(space, p: Point, x: Point, y: Point) -> float:
    """上角 γ̄(x, y): 三角形 (p, ω(p,x,s), ω(p,y,t)) の比較角の s, t → 0+ での上極限.

    2^-k 以下の (s, t) = (2^-i, 2^-j) (k <= i, j <= k + angle_window) の比較角の最大を窓の上限とし、
    k を増やして窓の上限が limit_tol 以内で止まった値を返す。
    """
    require_geodesic(space)
    p, x, y = (np.asarray(v, dtype=float) for v in (p, x, y))
    if _same(p, x) or _same(p, y):
        raise ValueError("x, y は p と異なる必要があります")
    window = SOLVER["angle_window"]
    x_side: dict[int, tuple[np.ndarray, float]] = {}
    y_side: dict[int, tuple[np.ndarray, float]] = {}

    def side(cache, target, i):
        if i not in cache:
            pt = space.omega(p, target, 2.0**-i)
            cache[i] = (pt, space.dist(p, pt))
        return cache[i]

    def window_sup(k: int) -> float:
        best = 0.0
        for i in range(k, k + window + 1):
            a_pt, a = side(x_side, x, i)
            for j in range(k, k + window + 1):
                b_pt, b = side(y_side, y, j)
                best = max(best, _comparison_angle(a, b, space.dist(a_pt, b_pt)))
        return best

    prev = None
    angle = 0.0
    for k in range(SOLVER["limit_k_min"], SOLVER["limit_k_max"] + 1):
        angle = window_sup(k)
        if prev is not None and abs(angle - prev) < SOLVER["limit_tol"]:
            return angle
        prev = angle
    return angle


def psi_functional(space, p: Point, y: Point, x: Point) -> float:
    """ψ_y(x) = |px||py| cos γ̄(x, y) (x = p または y = p では 0)."""
    p, x, y = (np.asarray(v, dtype=float) for v in (p, x, y))
    if _same(p, x) or _same(p, y):
        return 0.0
    return space.dist(p, x) * space.dist(p, y) * float(np.cos(upper_angle(space, p, x, y)))


def phi_functional(space, p: Point, direction: Point, x: Point) -> float:
    """φ_L(x) = ε_L(x)|p P_L(x)|, L は p から direction へ向き付けた測地直線."""
    require_geodesic(space)
    p, q, x = (np.asarray(v, dtype=float) for v in (p, direction, x))
    if _same(p, q):
        raise ValueError("直線の向きを決める点が p と一致しています")
    pq = space.dist(p, q)
    reach = space.dist(p, x) / pq
    if reach == 0:
        return 0.0

    def f(t: float) -> float:
        return space.dist(x, space.omega(p, q, t))

    result = minimize_scalar(f, bounds=(-reach, reach), method="bounded", options={"xatol": 1e-12})
    t = float(result.x)
    return t * pq
