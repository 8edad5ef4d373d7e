"""有限定義域上の写像の空間.

写像は定義域の各点での値の表 MapTable で与える。上限はすべて有限定義域上で正確に取る。
ブーゼマンの距離 δ_p、可算個の球による距離 δ、ヘルダー条件、相似係数を計算する。
"""

from dataclasses import dataclass

import numpy as np

from checks import check_record, summarize
from config import TOLERANCES
from errors import SpaceMismatchError
from hausdorff import PointSet
from spaces import FiniteSpace, ModelSpace, Point, same_space


@dataclass(frozen=True, eq=False)
class MapTable:
    """写像 f: domain → codomain の値の表 (values[i] = f(domain[i]))."""

    domain: PointSet
    codomain: ModelSpace
    values: np.ndarray

    @classmethod
    def of(cls, domain: PointSet, codomain: ModelSpace, values) -> "MapTable":
        data = codomain.check_points(values)
        if len(data) != len(domain):
            raise ValueError(f"値の個数が定義域と一致しません: {len(data)} != {len(domain)}")
        data.setflags(write=False)
        return cls(domain, codomain, data)

    def __len__(self) -> int:
        return len(self.domain)

    def value(self, i: int) -> Point:
        if isinstance(self.codomain, FiniteSpace):
            return int(self.values[i])
        return self.values[i]

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.to_list(),
            "codomain": self.codomain.describe(),
            "values": self.values.tolist(),
        }


def _pointwise(f: MapTable, g: MapTable) -> np.ndarray:
    """d(f(x), g(x)) (x ∈ 定義域)."""
    _require_same_domain(f, g)
    return np.array([f.codomain.dist(f.value(i), g.value(i)) for i in range(len(f))])


def _require_same_domain(f: MapTable, g: MapTable) -> None:
    if not (same_space(f.domain.space, g.domain.space) and np.array_equal(f.domain.data, g.domain.data)):
        raise SpaceMismatchError("写像の定義域が一致しません")
    if not same_space(f.codomain, g.codomain):
        raise SpaceMismatchError("写像の値域が一致しません")


def busemann_delta_p(f: MapTable, g: MapTable, p: Point) -> float:
    """δ_p(f, g) = sup_x d(f(x), g(x)) e^{-|px|}."""
    pointwise = _pointwise(f, g)
    weights = np.exp(-f.domain.space.pairwise([p], f.domain.data)[0])
    return float(np.max(pointwise * weights))


def delta_p_equivalence_check(f: MapTable, g: MapTable, p: Point, q: Point) -> dict:
    """e^{-|pq|} δ_p <= δ_q <= e^{|pq|} δ_p."""
    pq = f.domain.space.dist(p, q)
    dp, dq = busemann_delta_p(f, g, p), busemann_delta_p(f, g, q)
    records = [
        check_record("delta_p_lower", np.exp(-pq) * dp, dq, anchor="base-point change, lower", tol=1e-12 * max(1.0, dq)),
        check_record("delta_p_upper", dq, np.exp(pq) * dp, anchor="base-point change, upper", tol=1e-12 * max(1.0, dq)),
    ]
    report = summarize(records)
    report["domain"] = "finite"
    return report


@dataclass(frozen=True)
class SeriesValue:
    value: float
    tail_bound: float
    terms: list

    def to_dict(self) -> dict:
        return {"value": self.value, "tail_bound": self.tail_bound, "terms": self.terms}


def kuratowski_delta(f: MapTable, g: MapTable, center: Point, radii) -> SeriesValue:
    """δ(f, g) = Σ 2^{-i} δ_i/(1 + δ_i) を len(radii) 項で打ち切る.

    δ_i は B[center, r_i] ∩ 定義域 上の sup d(f(x), g(x)) (空なら 0)。
    打ち切り誤差は 2^{-len(radii)} 以下。
    """
    radii = np.asarray(radii, dtype=float)
    if len(radii) == 0 or np.any(radii <= 0) or np.any(np.diff(radii) <= 0):
        raise ValueError("radii は正の狭義単調増加列である必要があります")
    pointwise = _pointwise(f, g)
    to_center = f.domain.space.pairwise([center], f.domain.data)[0]
    terms = []
    total = 0.0
    for i, r in enumerate(radii, start=1):
        inside = to_center <= r + TOLERANCES["tie"]
        delta_i = float(pointwise[inside].max()) if np.any(inside) else 0.0
        terms.append(delta_i)
        total += 2.0**-i * delta_i / (1.0 + delta_i)
    return SeriesValue(total, 2.0 ** -len(radii), terms)


def holder_membership(f: MapTable, B: float, alpha: float) -> bool:
    """d(f(x), f(y)) <= B|xy|^α が全ての組で成り立つか."""
    if B < 0 or not 0 < alpha <= 1:
        raise ValueError(f"B >= 0, 0 < α <= 1 が必要です: B={B}, α={alpha}")
    dx = f.domain.space.pairwise(f.domain.data, f.domain.data)
    dy = f.codomain.pairwise(f.values, f.values)
    return bool(np.all(dy <= B * dx**alpha + 1e-12))


def similarity_coefficient(f: MapTable) -> float | None:
    """全ての組で d(f(x), f(y)) = σ|xy| となる σ (なければ None)."""
    if len(f) < 2:
        raise ValueError("相似係数には 2 点以上の定義域が必要です")
    dx = f.domain.space.pairwise(f.domain.data, f.domain.data)
    dy = f.codomain.pairwise(f.values, f.values)
    iu = np.triu_indices(len(f), k=1)
    ratios = dy[iu] / dx[iu]
    sigma = float(np.mean(ratios))
    if sigma <= 0 or np.max(np.abs(ratios - sigma)) > 1e-9 * sigma:
        return None
    return sigma


def is_isometry(f: MapTable) -> bool:
    sigma = similarity_coefficient(f)
    return sigma is not None and abs(sigma - 1.0) <= 1e-9


def _locate(domain: PointSet, y: Point) -> int:
    d = domain.space.pairwise([y], domain.data)[0]
    i = int(np.argmin(d))
    if d[i] > TOLERANCES["cluster"]:
        raise ValueError("合成先の定義域に値が含まれていません")
    return i


def compose(f: MapTable, g: MapTable) -> MapTable:
    """f∘g (g の値は f の定義域の点)."""
    if not same_space(g.codomain, f.domain.space):
        raise SpaceMismatchError("g の値域と f の定義域の空間が一致しません")
    indices = [_locate(f.domain, g.value(i)) for i in range(len(g))]
    return MapTable.of(g.domain, f.codomain, f.values[indices])


def inverse(f: MapTable) -> MapTable:
    """単射な f の逆写像 (定義域は f の像)."""
    image = PointSet.of(f.codomain, f.values)
    return MapTable.of(image, f.domain.space, f.domain.data)

