"""組み込みの検証用インスタンス.

各フィクスチャは計算対象と既知の値 (expected) を辞書で返す。
CLI の --fixture で名前を指定して使う。
"""

import numpy as np

from bodies import ConvexBody
from hausdorff import PointSet
from map_spaces import MapTable
from nnet_metrics import PointMultiset, alpha_star
from spaces import Euclidean, KleinBall, validate_finite_metric


def example_i(a: float = 1.0) -> dict:
    """平面の 3-ネット M, W と中点集合 Ω."""
    space = Euclidean(2)
    M = [(0.0, 0.0), (-a, -a), (-a, a)]
    W = [(0.0, 0.0), (a, a), (a, -a)]
    omega = [(0.0, 0.0), (-a / 2, -a / 2), (-a / 2, a / 2), (a / 2, a / 2), (a / 2, -a / 2)]
    return {
        "space": space,
        "M": PointSet.of(space, M),
        "W": PointSet.of(space, W),
        "M_net": PointMultiset.of(space, M),
        "W_net": PointMultiset.of(space, W),
        "omega": PointSet.of(space, omega),
        "expected": {
            "hausdorff": np.sqrt(2.0) * a,
            "alpha_inf": 2.0 * a,
            "alpha_inf_R": 2.0 * a,
            "cross_diameter": 2.0 * np.sqrt(2.0) * a,
        },
    }


def example_ii(a: float = 1.0, b: float = 3.0) -> dict:
    """直線上の 3-ネット M = {0, 2a, 3a+b}, W = {a, 2a+b, 4a+b} と経由点 T = {a, 3a+b}.

    α = a、α̂_∞ = max{a, b}、α_{∞,R} は b <= a で a、a < b <= 2a で b、2a < b で 2a。
    """
    if a <= 0 or b <= 0:
        raise ValueError(f"a, b は正である必要があります: a={a}, b={b}")
    space = Euclidean(1)
    M = [[0.0], [2 * a], [3 * a + b]]
    W = [[a], [2 * a + b], [4 * a + b]]
    T = [[a], [3 * a + b], [3 * a + b]]
    if b <= a:
        case, quotient = 1, a
    elif b <= 2 * a:
        case, quotient = 2, b
    else:
        case, quotient = 3, 2 * a
    return {
        "space": space,
        "case": case,
        "M_net": PointMultiset.of(space, M),
        "W_net": PointMultiset.of(space, W),
        "T_net": PointMultiset.of(space, T),
        "expected": {
            "hausdorff": a,
            "alpha_inf_R": quotient,
            "alpha_inf": max(a, b),
        },
    }


def example_ii_family() -> list[dict]:
    """3 つの場合を 1 つずつ含む (a, b) の組."""
    return [example_ii(1.0, b) for b in (0.5, 1.5, 3.0)]


def triangle_family(n: int) -> dict:
    """正三角形 S = {O, A, B} と O を C_n(0, 1/n) に動かした S_n."""
    if n < 2:
        raise ValueError(f"n は 2 以上である必要があります: n={n}")
    space = Euclidean(2)
    A = (0.5, np.sqrt(3.0) / 2.0)
    B = (-0.5, np.sqrt(3.0) / 2.0)
    C = (0.0, 1.0 / n)
    return {
        "space": space,
        "S": PointSet.of(space, [(0.0, 0.0), A, B]),
        "S_n": PointSet.of(space, [C, A, B]),
        "C_n": np.array(C),
        "AB": PointSet.of(space, [A, B]),
        "expected": {"hausdorff": 1.0 / n, "H_hausdorff": 1.0},
    }


def _regular_polygon(n: int, radius: float = 1.0) -> np.ndarray:
    angles = np.pi / 2.0 + 2.0 * np.pi * np.arange(n) / n
    return radius * np.column_stack([np.cos(angles), np.sin(angles)])


def square() -> dict:
    """正方形の 4-ネット: d₀(4) に属し Z_{1,4} の閉包には属さない."""
    space = Euclidean(2)
    return {
        "space": space,
        "S": PointSet.of(space, [(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)]),
        "expected": {"in_d0": True, "closure_Z1": False, "in_dm1": False, "in_d0_Nminus1": False},
    }


def pentagon() -> dict:
    """正五角形の 5-ネット: Z_{1,5} の閉包と d₀(5) に属し dm₁(5) ∪ d_{0,4} には属さない."""
    space = Euclidean(2)
    return {
        "space": space,
        "S": PointSet.of(space, _regular_polygon(5)),
        "expected": {"in_d0": True, "closure_Z1": True, "in_dm1": False, "in_d0_Nminus1": False},
    }


def segment(space_name: str = "euclidean") -> dict:
    """線分 [x, y]: 最良近似球の中心は中点、半径は |xy|/4."""
    if space_name == "euclidean":
        space = Euclidean(2)
        x, y = np.array([-1.0, 0.5]), np.array([2.0, 1.5])
    elif space_name == "klein":
        space = KleinBall(1.0, 1.0, 2)
        x, y = np.array([-0.6, 0.1]), np.array([0.3, 0.5])
    else:
        raise ValueError(f"未知の空間です: {space_name}")
    length = space.dist(x, y)
    return {
        "space": space,
        "M": ConvexBody.segment(space, x, y),
        "expected": {"center": space.omega(x, y, 0.5), "radius": length / 4.0, "hausdorff": length / 4.0},
    }


def translated_pair(x, u, y) -> dict:
    """ユークリッド平面で π(S) = x となる S = {x - u, x + u} と点 y: α(S, π⁻¹(y)) = |xy|."""
    space = Euclidean(2)
    x, u, y = (np.asarray(v, dtype=float) for v in (x, u, y))
    return {
        "space": space,
        "S": PointMultiset.of(space, [x - u, x + u]),
        "y": y,
        "expected": {"fiber_distance": float(np.linalg.norm(y - x))},
    }


def perpendicular_segments(s: float = 0.4, t: float = 0.3) -> dict:
    """クラインモデルの直交する線分 [a, b] (中点 x = 0) と [x, y].

    sh α({a, b}, π⁻¹(y)) = ch(|ab|/2) sh|xy|。
    """
    space = KleinBall(1.0, 1.0, 2)
    a, b = np.array([-s, 0.0]), np.array([s, 0.0])
    x, y = np.zeros(2), np.array([0.0, t])
    value = np.arcsinh(np.cosh(space.dist(a, b) / 2.0) * np.sinh(space.dist(x, y)))
    return {
        "space": space,
        "S": PointMultiset.of(space, [a, b]),
        "y": y,
        "expected": {"fiber_distance": float(value)},
    }


def max_metric_pairs(points) -> dict:
    """半平面 {(x, y) : x >= y} の max 距離から 2-ネット {x, y} への写像 (等長写像).

    定義域と値域をどちらも有限空間として表す。値域の距離は 2-ネット間の α。
    """
    P = np.asarray(points, dtype=float)
    if np.any(P[:, 0] < P[:, 1]):
        raise ValueError("点は x >= y を満たす必要があります")
    line = Euclidean(1)
    nets = [PointMultiset.of(line, [[x], [y]]) for x, y in P]
    n = len(P)
    d_domain = np.max(np.abs(P[:, None, :] - P[None, :, :]), axis=2)
    d_nets = np.array([[alpha_star(nets[i], nets[j]) for j in range(n)] for i in range(n)])
    domain_space = validate_finite_metric(d_domain)
    codomain = validate_finite_metric(d_nets)
    table = MapTable.of(PointSet.of(domain_space, np.arange(n)), codomain, np.arange(n))
    return {"space": domain_space, "f": table, "nets": nets, "expected": {"isometry": True}}


FIXTURES = {
    "example_i": {
        "builder": example_i,
        "display_name": "平面の 3-ネット (ハウスドルフ距離 √2)",
    },
    "example_ii": {
        "builder": example_ii,
        "display_name": "直線上の 3-ネット (a=1, b=3)",
    },
    "triangle": {
        "builder": lambda: triangle_family(2),
        "display_name": "正三角形とその摂動 S_2",
    },
    "square": {
        "builder": square,
        "display_name": "正方形の 4-ネット",
    },
    "pentagon": {
        "builder": pentagon,
        "display_name": "正五角形の 5-ネット",
    },
    "segment": {
        "builder": segment,
        "display_name": "ユークリッド平面の線分",
    },
    "segment_klein": {
        "builder": lambda: segment("klein"),
        "display_name": "クラインモデルの線分",
    },
}


def load_fixture(name: str) -> dict:
    if name not in FIXTURES:
        raise ValueError(f"未知のフィクスチャです: {name} (候補: {', '.join(FIXTURES)})")
    return FIXTURES[name]["builder"]()
