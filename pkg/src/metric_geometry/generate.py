"""乱数インスタンスの生成.

乱数は numpy.random.default_rng(seed) (PCG64) で生成する。
同じ (space, kind, params, seed) からは同じインスタンスが得られる。
KleinBall の点は ||x|| <= 0.95 r の範囲でサンプリングする。
"""

import numpy as np

from config import GENERATE
from spaces import Euclidean, FiniteSpace, KleinBall, ModelSpace

KINDS = ("uniform_points", "clustered", "nnet_pair", "convex_hull", "map_table")


def _check_n(value, name: str = "n") -> int:
    if int(value) != value or int(value) < 1:
        raise ValueError(f"{name} は正の整数である必要があります: {name}={value}")
    return int(value)


def _merge_params(kind: str, params: dict | None) -> dict:
    defaults = dict(GENERATE[kind])
    params = dict(params or {})
    unknown = set(params) - set(defaults) - {"as_metric"}
    if unknown:
        raise ValueError(f"未知のパラメータです: {sorted(unknown)} (kind={kind})")
    defaults.update(params)
    return defaults


def _in_klein(space: KleinBall, X: np.ndarray) -> np.ndarray:
    """座標を ||x|| <= 0.95 r に収める."""
    limit = GENERATE["klein_radius_fraction"] * space.r
    norms = np.linalg.norm(X, axis=1)
    scale = np.where(norms > limit, limit / np.maximum(norms, 1e-300), 1.0)
    return X * scale[:, None]


def sample_points(space: ModelSpace, n: int, rng: np.random.Generator, low: float = -1.0, high: float = 1.0) -> np.ndarray:
    """ユークリッド空間では立方体 [low, high]^dim、クラインモデルでは球 B[0, 0.95r] の一様分布."""
    n = _check_n(n)
    if isinstance(space, Euclidean):
        if not low < high:
            raise ValueError(f"low < high が必要です: low={low}, high={high}")
        return rng.uniform(low, high, size=(n, space.dim))
    if isinstance(space, KleinBall):
        directions = rng.normal(size=(n, space.dim))
        directions /= np.linalg.norm(directions, axis=1)[:, None]
        radii = GENERATE["klein_radius_fraction"] * space.r * rng.uniform(size=n) ** (1.0 / space.dim)
        return directions * radii[:, None]
    raise ValueError(f"座標空間が必要です: {space.describe()}")


def _clustered(space: ModelSpace, params: dict, rng: np.random.Generator) -> np.ndarray:
    n = _check_n(params["n"])
    clusters = _check_n(params["clusters"], "clusters")
    if params["spread"] <= 0:
        raise ValueError(f"spread は正である必要があります: spread={params['spread']}")
    centers = sample_points(space, clusters, rng)
    labels = rng.integers(clusters, size=n)
    points = centers[labels] + params["spread"] * rng.normal(size=(n, space.dim))
    if isinstance(space, KleinBall):
        points = _in_klein(space, points)
    return points


def _map_table(space: ModelSpace, params: dict, rng: np.random.Generator) -> dict:
    """定義域の点と相似写像 x ↦ scale·Qx + shift (Q は直交行列) の値."""
    if not isinstance(space, Euclidean):
        raise ValueError("map_table はユークリッド空間のみ対応しています")
    if params["scale"] <= 0:
        raise ValueError(f"scale は正である必要があります: scale={params['scale']}")
    domain = sample_points(space, params["n"], rng)
    Q, _ = np.linalg.qr(rng.normal(size=(space.dim, space.dim)))
    shift = rng.uniform(-1.0, 1.0, size=space.dim)
    values = params["scale"] * domain @ Q.T + shift
    return {"domain": domain, "values": values, "similarity": float(params["scale"])}


def generate(space: ModelSpace, kind: str, params: dict | None = None, seed: int = 42) -> dict:
    """インスタンスを生成し、メタデータ (seed, params, 乱数生成器) を付けて返す.

    Raises:
        ValueError: 未知の kind、範囲外のパラメータ、n < 1
    """
    if kind not in KINDS:
        raise ValueError(f"未知の kind です: {kind} (候補: {', '.join(KINDS)})")
    if isinstance(space, FiniteSpace):
        raise ValueError("有限空間のインスタンスは uniform_points の as_metric で生成してください")
    params = _merge_params(kind, params)
    rng = np.random.default_rng(seed)

    if kind == "uniform_points":
        points = sample_points(space, params["n"], rng, params["low"], params["high"])
        payload = {"points": points}
        if params.get("as_metric"):
            payload["distance_matrix"] = space.pairwise(points, points)
    elif kind == "clustered":
        payload = {"points": _clustered(space, params, rng)}
    elif kind == "nnet_pair":
        n = _check_n(params["n"])
        payload = {"S": sample_points(space, n, rng), "T": sample_points(space, n, rng)}
    elif kind == "convex_hull":
        if not isinstance(space, Euclidean):
            raise ValueError("convex_hull はユークリッド空間のみ対応しています")
        if _check_n(params["n"]) < space.dim + 1:
            raise ValueError(f"凸包には {space.dim + 1} 点以上が必要です: n={params['n']}")
        payload = {"body": {"kind": "hull", "vertices": sample_points(space, params["n"], rng)}}
    else:
        payload = _map_table(space, params, rng)

    payload["metadata"] = {
        "kind": kind,
        "space": space.describe(),
        "seed": int(seed),
        "params": params,
        "rng": "numpy.random.default_rng (PCG64)",
    }
    return payload
