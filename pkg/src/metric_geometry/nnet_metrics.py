"""N-ネット (重複を許す N 点組) 上の距離.

α_p (最適割当), α_∞ (ボトルネック割当), α_* (台のハウスドルフ距離),
商距離 α_{p,R} の上下界と小規模での厳密値、N-ネット の測地補間、
2-ネット の中点集合と射影 π を扱う。
"""

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np
from scipy.optimize import linear_sum_assignment, minimize
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching
from scipy.special import logsumexp

from config import SOLVER, TOLERANCES
from hausdorff import PointSet, diameter, hausdorff
from spaces import FiniteSpace, ModelSpace, Point, require_geodesic, require_same_space

INF = math.inf

# p がこの値を超えると p 乗和を対数空間で計算する
LOG_SPACE_P = 64.0


@dataclass(frozen=True, eq=False)
class PointMultiset:
    """X_N の元 [(x_1, ..., x_N)] (重複可、順序は意味を持たない)."""

    space: ModelSpace
    data: np.ndarray

    @classmethod
    def of(cls, space: ModelSpace, points) -> "PointMultiset":
        if isinstance(points, (PointSet, PointMultiset)):
            data = np.array(points.data)
        elif isinstance(space, FiniteSpace):
            data = np.array(space.check_points(points))
        else:
            data = np.array(space.check_points(np.asarray([np.asarray(p, dtype=float) for p in points])))
        if len(data) == 0:
            raise ValueError("N-ネット は 1 点以上必要です")
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

    def permuted(self, perm) -> "PointMultiset":
        return PointMultiset(self.space, self.data[np.asarray(perm, dtype=int)])

    def to_list(self) -> list:
        return self.data.tolist()


@dataclass(frozen=True)
class Assignment:
    """最適割当: S[i] と T[perm[i]] を対応させたときの ρ_{N,p}."""

    perm: tuple[int, ...]
    cost: float
    p: float


@dataclass(frozen=True)
class QuotientBounds:
    """α_{p,R} の評価結果.

    lower = α(台), upper = α_p, chain = 候補クラス上の最短チェーン長 (α_{p,R} の上界)。
    chain_edges はそのチェーンの辺の数、converged は候補クラス上の探索が終わったか。
    exact はチェーンが下限と一致した場合、または N <= 2 (p = ∞) のときのみ。
    候補クラスの外を通るチェーンの方が短いことがあるので、収束だけでは確定しない。
    """

    lower: float
    upper: float
    exact: float | None
    chain: float | None
    chain_edges: int
    converged: bool


def _check_p(p: float) -> float:
    p = float(p)
    if not (p == INF or p >= 1.0):
        raise ValueError(f"p は [1, ∞] の範囲である必要があります: p={p}")
    return p


def _check_same_n(S, T) -> None:
    require_same_space(S.space, T.space)
    if len(S) != len(T):
        raise ValueError(f"N が一致しません: {len(S)} と {len(T)}")


def lp_norm(values, p: float) -> float:
    """非負の値の ℓ_p ノルム (p = ∞ なら最大値)."""
    values = np.asarray(values, dtype=float)
    if p == INF:
        return float(np.max(values))
    if not np.any(values > 0):
        return 0.0
    if p > LOG_SPACE_P:
        with np.errstate(divide="ignore"):
            logs = np.log(values)
        return float(np.exp(logsumexp(p * logs) / p))
    return float(np.sum(values**p) ** (1.0 / p))


def rho_Np(X: PointMultiset, Y: PointMultiset, p: float) -> float:
    """ρ_{N,p}: 成分ごとの距離の ℓ_p ノルム."""
    p = _check_p(p)
    _check_same_n(X, Y)
    d = np.array([X.space.dist(x, y) for x, y in zip(X, Y)])
    return lp_norm(d, p)


def _bottleneck_perm(C: np.ndarray) -> np.ndarray:
    n = len(C)
    values = np.unique(C)
    lo, hi = 0, len(values) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        graph = csr_matrix((C <= values[mid]).astype(np.int8))
        if np.all(maximum_bipartite_matching(graph, perm_type="column") >= 0):
            hi = mid
        else:
            lo = mid + 1
    threshold = values[lo]
    # 閾値以下の辺だけで総和最小の割当を選ぶ
    big = float(C.max()) * n + 1.0
    _, cols = linear_sum_assignment(np.where(C <= threshold, C, big))
    return cols


def alpha_p(S: PointMultiset, T: PointMultiset, p: float) -> Assignment:
    """α_p(S, T) = min_σ ρ_{N,p}(S, σT).

    有限の p は距離の p 乗を費用とする最小費用割当、p = ∞ はボトルネック割当。
    """
    p = _check_p(p)
    _check_same_n(S, T)
    C = S.space.pairwise(S.data, T.data)
    rows = np.arange(len(C))
    scale = float(C.max())
    if scale == 0.0:
        perm = rows
    elif p == INF:
        perm = _bottleneck_perm(C)
    else:
        _, perm = linear_sum_assignment((C / scale) ** p)
    return Assignment(tuple(int(j) for j in perm), lp_norm(C[rows, perm], p), p)


def support(S: PointMultiset) -> PointSet:
    """重複を除いた台 (距離 1e-12 以内を同一視)."""
    return PointSet.unique(S.space, S.data, tol=TOLERANCES["identity"])


def alpha_star(S: PointMultiset, T: PointMultiset) -> float:
    """α_*(S, T) = α(台 S, 台 T)."""
    return hausdorff(support(S), support(T))


def _compositions(total: int, parts: int):
    """total を parts 個の正整数に分ける全ての組."""
    for cuts in combinations(range(1, total), parts - 1):
        bounds = (0,) + cuts + (total,)
        yield tuple(bounds[i + 1] - bounds[i] for i in range(parts))


def _class_weight_inf(D: np.ndarray, A: tuple, B: tuple, N: int) -> float:
    """台 A, B を持つ N 点組の間の α_∞ の最小値 (辺被覆条件)."""
    sub = D[np.ix_(A, B)]
    values = np.unique(sub)
    lo, hi = 0, len(values) - 1

    def feasible(t: float) -> bool:
        adj = sub <= t
        if not (adj.any(axis=1).all() and adj.any(axis=0).all()):
            return False
        rows, cols = linear_sum_assignment(adj.astype(float), maximize=True)
        matching = int(adj[rows, cols].sum())
        return len(A) + len(B) - matching <= N

    if not feasible(values[hi]):
        return INF
    while lo < hi:
        mid = (lo + hi) // 2
        if feasible(values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return float(values[lo])


def _class_weight_p(D: np.ndarray, A: tuple, B: tuple, N: int, p: float) -> float:
    """台 A, B を持つ N 点組の間の α_p の最小値 (重複度を全列挙)."""
    scale = float(D.max()) or 1.0
    best = INF
    for ca in _compositions(N, len(A)):
        rows = np.repeat(np.array(A), ca)
        for cb in _compositions(N, len(B)):
            cols = np.repeat(np.array(B), cb)
            C = D[np.ix_(rows, cols)]
            r, c = linear_sum_assignment((C / scale) ** p)
            best = min(best, lp_norm(C[r, c], p))
    return best


def _count_compositions(N: int, parts: int) -> int:
    return math.comb(N - 1, parts - 1)


def alpha_pR(
    S: PointMultiset,
    T: PointMultiset,
    p: float,
    max_chain: int | None = None,
    extras=None,
) -> QuotientBounds:
    """商距離 α_{p,R} の上下界と、候補クラス上のチェーン探索による値.

    候補クラスは 台 S ∪ 台 T ∪ extras の点から作る要素数 N 以下の部分集合。
    クラス間の重みは、それぞれを台とする N 点組の間の α_p の最小値。
    長さ max_chain 以下のチェーンの最短長を Bellman-Ford で求める。
    """
    p = _check_p(p)
    _check_same_n(S, T)
    max_chain = SOLVER["max_chain"] if max_chain is None else max_chain
    N = len(S)
    lower = alpha_star(S, T)
    upper = alpha_p(S, T, p).cost
    tol = TOLERANCES["geodesic"]

    if upper - lower <= tol or (p == INF and N <= 2):
        return QuotientBounds(lower, upper, lower, lower, 1, True)

    pool = [S.data, T.data]
    if extras is not None:
        pool.append(np.asarray(extras.data if isinstance(extras, (PointSet, PointMultiset)) else extras))
    U = PointSet.unique(S.space, np.concatenate(pool), tol=TOLERANCES["identity"])
    D = U.space.pairwise(U.data, U.data)
    classes = [c for size in range(1, min(N, len(U)) + 1) for c in combinations(range(len(U)), size)]

    too_many = len(classes) > SOLVER["class_guard"]
    if p != INF and not too_many:
        worst = max(_count_compositions(N, len(c)) for c in classes)
        too_many = worst * worst > SOLVER["class_guard"] * 10
    if too_many:
        return QuotientBounds(lower, upper, None, None, 0, False)

    def class_of(M: PointMultiset) -> int:
        idx = tuple(sorted(set(int(i) for i in np.argmin(U.space.pairwise(M.data, U.data), axis=1))))
        return classes.index(idx)

    n = len(classes)
    weights = np.full((n, n), INF)
    for a in range(n):
        weights[a, a] = 0.0
        for b in range(a + 1, n):
            if p == INF:
                w = _class_weight_inf(D, classes[a], classes[b], N)
            else:
                w = _class_weight_p(D, classes[a], classes[b], N, p)
            weights[a, b] = weights[b, a] = w

    start, target = class_of(S), class_of(T)
    dist = np.full(n, INF)
    dist[start] = 0.0
    hops = np.zeros(n, dtype=int)
    columns = np.arange(n)

    def relax() -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        candidates = dist[:, None] + weights
        pred = np.argmin(candidates, axis=0)
        best = candidates[pred, columns]
        return pred, best, best < dist - 1e-15

    converged = False
    for _ in range(max_chain):
        pred, best, improved = relax()
        if not np.any(improved):
            converged = True
            break
        hops = np.where(improved, hops[pred] + 1, hops)
        dist = np.where(improved, best, dist)
    else:
        converged = not np.any(relax()[2])

    # チェーンは候補クラスの中での上界。下限と一致したときだけ下限値として確定する
    chain = float(dist[target])
    exact = chain if chain - lower <= tol else None
    return QuotientBounds(lower, upper, exact, chain, int(hops[target]), converged)


def nnet_interpolate(S: PointMultiset, T: PointMultiset, p: float, lam: float) -> PointMultiset:
    """最適割当に沿って成分ごとに ω をとった N 点組 S(λ)."""
    require_geodesic(S.space)
    if not 0.0 <= lam <= 1.0:
        raise ValueError(f"λ は [0, 1] の範囲である必要があります: lam={lam}")
    assignment = alpha_p(S, T, p)
    space = S.space
    points = [space.omega(S.point(i), T.point(j), lam) for i, j in enumerate(assignment.perm)]
    return PointMultiset.of(space, points)


def _as_twonet(S) -> PointMultiset:
    S = S if isinstance(S, PointMultiset) else PointMultiset.of(S.space, S)
    if len(S) == 1:
        S = PointMultiset.of(S.space, [S.point(0), S.point(0)])
    if len(S) != 2:
        raise ValueError(f"2-ネット が必要です: N={len(S)}")
    return S


def twonet_midpoints(S, T) -> list[PointMultiset]:
    """2-ネット の中点集合 Ω(S, T).

    Ω(S, T) = {{ω(x, T(u), 1/2), ω(S(x), u, 1/2)} : x ∈ S, u ∈ T, |xu| = D(S, T)}。
    T(u) は T の u 以外の点 (退化していれば u 自身)。
    """
    S, T = _as_twonet(S), _as_twonet(T)
    require_same_space(S.space, T.space)
    space = S.space
    require_geodesic(space)
    C = space.pairwise(S.data, T.data)
    D = float(C.max())
    result: list[PointMultiset] = []
    for i in range(2):
        for j in range(2):
            if C[i, j] < D - TOLERANCES["geodesic"] * (1.0 + D):
                continue
            x, other_x = S.point(i), S.point(1 - i)
            u, other_u = T.point(j), T.point(1 - j)
            Z = PointMultiset.of(space, [space.omega(x, other_u, 0.5), space.omega(other_x, u, 0.5)])
            if all(alpha_p(Z, known, INF).cost > TOLERANCES["geodesic"] for known in result):
                result.append(Z)
    return result


def pi_midpoint(S) -> np.ndarray:
    """π({x, y}) = ω(x, y, 1/2)."""
    S = _as_twonet(S)
    require_geodesic(S.space)
    return S.space.omega(S.point(0), S.point(1), 0.5)


def pi_sandwich(S, T) -> dict:
    """|π(S)π(T)| <= α(S, T) <= |π(S)π(T)| + (D(S) + D(T))/2 の各辺."""
    S, T = _as_twonet(S), _as_twonet(T)
    space = S.space
    lower = space.dist(pi_midpoint(S), pi_midpoint(T))
    value = alpha_star(S, T)
    upper = lower + 0.5 * (diameter(support(S)) + diameter(support(T)))
    return {"lower": lower, "value": value, "upper": upper}


def pi_fiber_distance(S, y: Point) -> float:
    """α(S, π⁻¹(y)): 中点が y の 2-ネット {u, ω(u, y, 2)} 全体への距離.

    u について Nelder-Mead で最小化する。ユークリッド空間では |π(S) y| に一致する。
    """
    S = _as_twonet(S)
    space = S.space
    require_geodesic(space)
    y = space.check_point(y)
    x = pi_midpoint(S)

    def objective(u: np.ndarray) -> float:
        try:
            u = space.check_point(u)
            v = space.omega(u, y, 2.0)
        except ValueError:
            return INF
        return alpha_star(S, PointMultiset.of(space, [u, v]))

    starts = [S.point(0) + (y - x), S.point(1) + (y - x), S.point(0), S.point(1), y]
    best = INF
    for start in starts:
        start = np.asarray(start, dtype=float)
        if math.isinf(objective(start)):
            continue
        result = minimize(
            objective,
            start,
            method="Nelder-Mead",
            options={"xatol": 1e-12, "fatol": 1e-14, "maxiter": 4000},
        )
        best = min(best, float(result.fun), objective(start))
    return best


def nnet_npc_check(S: PointMultiset, T: PointMultiset, U: PointMultiset, p: float) -> dict:
    """(X_N, α_p) での中点縮小 2α_p(ω(U,S), ω(U,T)) <= α_p(S, T) を評価する."""
    mid_s = nnet_interpolate(U, S, p, 0.5)
    mid_t = nnet_interpolate(U, T, p, 0.5)
    lhs = 2.0 * alpha_p(mid_s, mid_t, p).cost
    rhs = alpha_p(S, T, p).cost
    slack = rhs - lhs
    return {"lhs": lhs, "rhs": rhs, "slack": slack, "pass": bool(slack >= -TOLERANCES["inequality"])}


def min_separation(S: PointMultiset) -> float:
    """相異なる点の最小距離 (台が 1 点なら 0)."""
    sup = support(S)
    if len(sup) < 2:
        return 0.0
    d = sup.space.pairwise(sup.data, sup.data)
    return float(np.min(d[~np.eye(len(sup), dtype=bool)]))


def local_equality_radius(S: PointMultiset) -> float:
    """α_* = α_∞ が成り立つ近傍の半径 ε = (1/4)·min 点間距離."""
    return 0.25 * min_separation(S)

