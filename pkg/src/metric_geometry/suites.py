"""定理チェックのスイート.

各スイートは (チェック名, 関数) の列を返す。関数はチェック結果のレコードのリストを返す。
実行と例外処理は cli.run が 1 件ずつ行う。
乱数はチェックごとに (seed, チェック名) から作るので、実行順によらず同じ値になる。
"""

import math
import zlib
from itertools import permutations

import numpy as np

from ball_approx import (
    ball_ball_hausdorff,
    ball_hausdorff,
    best_ball,
    best_ball_stability,
    midpoint_convexity_check,
    psi,
    r_fun,
    sampled_ball_hausdorff,
)
from bodies import ConvexBody, boundary_samples, farthest_distance, project, sphere_points
from chebyshev import (
    chebyshev_center,
    closure_Z1_membership,
    best_nnet,
    hull_membership_check,
    minidisk_bruteforce,
    perturb_to_unique_center,
    radius_perturbation_bounds,
    self_sets,
    theta,
)
from checks import check_record, equality_record
from config import SUITE, TOLERANCES
from fixtures import (
    example_i,
    example_ii_family,
    max_metric_pairs,
    pentagon,
    perpendicular_segments,
    segment,
    square,
    translated_pair,
    triangle_family,
)
from generate import generate, sample_points
from hausdorff import (
    PointSet,
    cross_diameter,
    deviation,
    eps_midpoint_set,
    generalized_ball_check,
    hausdorff,
    midpoint_set,
)
from hilbert_tangent import (
    HilbertBall,
    TangentVector,
    boundary_hit,
    hilbert_dist,
    hilbert_lambda_p,
    hilbert_midpoint,
    hilbert_norm_bounds,
    lobachevsky_dist,
    median_length,
    origin_scaling_limits,
    origin_scaling_ratio,
    phi_functional,
    psi_functional,
    tangent_dist,
    tangent_limit,
    tangent_norm,
    upper_angle,
)
from map_spaces import (
    MapTable,
    busemann_delta_p,
    compose,
    delta_p_equivalence_check,
    holder_membership,
    inverse,
    is_isometry,
    kuratowski_delta,
    similarity_coefficient,
)
from nnet_metrics import (
    INF,
    PointMultiset,
    alpha_p,
    alpha_pR,
    alpha_star,
    local_equality_radius,
    nnet_interpolate,
    nnet_npc_check,
    pi_fiber_distance,
    pi_sandwich,
    rho_Np,
    twonet_midpoints,
)
from projection import (
    delta_projection_stability,
    deviation_contraction_check,
    lambda_disconnect,
    ratio_monotonicity_check,
)
from spaces import (
    Euclidean,
    KleinBall,
    chain_length,
    check_condition_A,
    epsilon_chain,
    find_axiom_violation,
    path_graph_space,
    validate_finite_metric,
)

PLANE = Euclidean(2)
KLEIN = KleinBall(1.0, 1.0, 2)

# Bellman-Ford を収束まで回すためのチェーン長
LONG_CHAIN = 256


def _rng(seed: int, name: str) -> np.random.Generator:
    return np.random.default_rng([seed, zlib.crc32(name.encode("utf-8"))])


def _worst(name: str, errors, bound: float, anchor: str) -> dict:
    """誤差の最大値が bound 以下か."""
    errors = list(errors)
    return check_record(name, max(errors) if errors else 0.0, bound, anchor=anchor, tol=0.0)


def _flag(name: str, value: bool, expected: bool, anchor: str) -> dict:
    return equality_record(name, float(value), float(expected), anchor=anchor, tol=0.0)


def _indexed(report: dict, index: int) -> list[dict]:
    records = []
    for record in report["checks"]:
        record = dict(record)
        record["name"] = f"{record['name']}[{index}]"
        records.append(record)
    return records


def _spaces_checks(seed: int) -> list:
    n = SUITE["pairs"]

    def klein_closed_form():
        rng = _rng(seed, "klein_closed_form")
        X, Y = sample_points(KLEIN, n, rng), sample_points(KLEIN, n, rng)
        errors = []
        for x, y in zip(X, Y):
            d = KLEIN.dist(x, y)
            errors.append(abs(d - lobachevsky_dist(1.0, 1.0, x, y)) / max(1.0, d))
        return [_worst("klein_distance_closed_form", errors, 1e-9, "Klein model distance formula")]

    def geodesic_additivity():
        rng = _rng(seed, "geodesic_additivity")
        errors = []
        for space in (PLANE, KLEIN):
            X, Y = sample_points(space, n, rng), sample_points(space, n, rng)
            for x, y, lam in zip(X, Y, rng.uniform(size=n)):
                z = space.omega(x, y, lam)
                d = space.dist(x, y)
                errors.append(abs(space.dist(x, z) + space.dist(z, y) - d) / max(1.0, d))
                errors.append(abs(space.dist(x, z) - lam * d) / max(1.0, d))
        return [_worst("geodesic_additivity", errors, 1e-9, "omega lies on the segment")]

    def klein_extension():
        rng = _rng(seed, "klein_extension")
        X, Y = 0.3 * sample_points(KLEIN, n, rng), 0.3 * sample_points(KLEIN, n, rng)
        errors = []
        for x, y in zip(X, Y):
            z = KLEIN.omega(x, y, 1.5)
            d = KLEIN.dist(x, y)
            errors.append(abs(KLEIN.dist(x, z) - 1.5 * d) / max(1.0, d))
            errors.append(abs(d + KLEIN.dist(y, z) - KLEIN.dist(x, z)) / max(1.0, d))
        return [_worst("klein_ray_extension", errors, 1e-9, "omega beyond [0, 1] on the chord")]

    def busemann_npc():
        rng = _rng(seed, "busemann_npc")
        slacks = []
        for space in (PLANE, KLEIN):
            X, Y, Z = (sample_points(space, SUITE["npc_triples"], rng) for _ in range(3))
            for x, y, z in zip(X, Y, Z):
                mx, my = space.omega(z, x, 0.5), space.omega(z, y, 0.5)
                slacks.append(2.0 * space.dist(mx, my) - space.dist(x, y))
        return [check_record("busemann_npc", max(slacks), 0.0, anchor="condition (A3)", tol=TOLERANCES["geodesic"])]

    def generated_metric():
        payload = generate(Euclidean(3), "uniform_points", {"n": 12, "as_metric": True}, seed)
        space = validate_finite_metric(payload["distance_matrix"])
        broken = np.array(payload["distance_matrix"])
        broken[0, 1] = broken[1, 0] = broken[0, 2] + broken[2, 1] + 1.0
        violation = find_axiom_violation(broken)
        return [
            equality_record("generated_metric_valid", space.size, 12, anchor="metric axioms", tol=0.0),
            _flag(
                "triangle_violation_detected",
                violation is not None and violation["axiom"] == "triangle",
                True,
                anchor="metric axioms",
            ),
        ]

    def epsilon_chains():
        rng = _rng(seed, "epsilon_chains")
        eps = 0.05
        links, excess = [], []
        for x, y in zip(sample_points(KLEIN, 20, rng), sample_points(KLEIN, 20, rng)):
            chain = epsilon_chain(KLEIN, x, y, eps)
            if chain is None:
                links.append(math.inf)
                continue
            links.append(max(KLEIN.dist(a, b) for a, b in zip(chain[:-1], chain[1:])))
            excess.append(chain_length(KLEIN, chain) - KLEIN.dist(x, y))
        return [
            _worst("epsilon_chain_links", links, eps, "intrinsic metric via condition (A)"),
            _worst("epsilon_chain_length", excess, eps, "intrinsic metric via condition (A)"),
        ]

    def finite_condition_A():
        path = path_graph_space(10, 0.1)
        return [
            _flag("path_midpoint_exists", check_condition_A(path, 0, 10, 0.05) is not None, True, "condition (A)"),
            _flag("path_adjacent_no_midpoint", check_condition_A(path, 0, 1, 0.05) is not None, False, "condition (A)"),
        ]

    return [
        ("klein_closed_form", klein_closed_form),
        ("geodesic_additivity", geodesic_additivity),
        ("klein_extension", klein_extension),
        ("busemann_npc", busemann_npc),
        ("generated_metric", generated_metric),
        ("epsilon_chains", epsilon_chains),
        ("finite_condition_A", finite_condition_A),
    ]


def _hausdorff_checks(seed: int) -> list:
    def example():
        fx = example_i()
        M, W = fx["M"], fx["W"]
        mids = midpoint_set(M, W)
        return [
            equality_record("example_hausdorff", hausdorff(M, W), fx["expected"]["hausdorff"], "3-net example", 1e-9),
            equality_record(
                "example_cross_diameter", cross_diameter(M, W), fx["expected"]["cross_diameter"], "3-net example", 1e-9
            ),
            equality_record("example_midpoint_set_size", len(mids), len(fx["omega"]), "3-net example", 0.0),
            equality_record("example_midpoint_set", hausdorff(mids, fx["omega"]), 0.0, "3-net example", 1e-12),
        ]

    def midpoint_halves():
        rng = _rng(seed, "midpoint_halves")
        errors = []
        for space in (PLANE, KLEIN):
            for _ in range(10):
                M = PointSet.of(space, sample_points(space, int(rng.integers(2, 8)), rng))
                W = PointSet.of(space, sample_points(space, int(rng.integers(2, 8)), rng))
                mids = midpoint_set(M, W)
                half = hausdorff(M, W) / 2.0
                errors.append(abs(hausdorff(M, mids) - half) / max(1.0, half))
                errors.append(abs(hausdorff(mids, W) - half) / max(1.0, half))
        return [_worst("midpoint_set_halves", errors, 1e-9, "explicit midpoint set")]

    def eps_midpoints():
        rng = _rng(seed, "eps_midpoints")
        space = path_graph_space(40, 0.1)
        eps = 0.25
        slacks = []
        for _ in range(10):
            M = PointSet.of(space, rng.choice(41, size=6, replace=False))
            W = PointSet.of(space, rng.choice(41, size=6, replace=False))
            omega = eps_midpoint_set(M, W, eps)
            alpha = hausdorff(M, W)
            for A, B in ((M, W), (W, M)):
                slacks.append(2.0 * deviation(A, omega) - (deviation(A, B) + 2.0 * eps))
                slacks.append(2.0 * deviation(omega, A) - (alpha + 3.0 * eps))
        return [check_record("eps_midpoint_bounds", max(slacks), 0.0, anchor="intrinsic Hausdorff metric", tol=1e-9)]

    def generalized_balls():
        rng = _rng(seed, "generalized_balls")
        space = path_graph_space(40, 0.1)
        slacks = []
        for _ in range(20):
            M = PointSet.of(space, rng.choice(41, size=4, replace=False))
            W = PointSet.of(space, rng.choice(41, size=4, replace=False))
            r, R = 0.1 * rng.integers(0, 6, size=2)
            lhs, rhs, _ = generalized_ball_check(M, float(r), W, float(R))
            slacks.append(lhs - rhs)
        return [check_record("generalized_ball_bound", max(slacks), 0.0, anchor="generalized ball bound", tol=1e-9)]

    def triangle_inequalities():
        rng = _rng(seed, "triangle_inequalities")
        slacks = []
        for _ in range(30):
            M, W, U = (PointSet.of(PLANE, sample_points(PLANE, int(rng.integers(1, 9)), rng)) for _ in range(3))
            slacks.append(deviation(M, W) - deviation(M, U) - deviation(U, W))
            slacks.append(hausdorff(M, W) - hausdorff(M, U) - hausdorff(U, W))
        return [check_record("deviation_triangle", max(slacks), 0.0, anchor="Hausdorff metric axioms", tol=1e-12)]

    return [
        ("example", example),
        ("midpoint_halves", midpoint_halves),
        ("eps_midpoints", eps_midpoints),
        ("generalized_balls", generalized_balls),
        ("triangle_inequalities", triangle_inequalities),
    ]


def _nnet_checks(seed: int) -> list:
    def example_plane():
        fx = example_i()
        S, T = fx["M_net"], fx["W_net"]
        quotient = alpha_pR(S, T, INF, max_chain=LONG_CHAIN, extras=fx["omega"])
        chain = math.nan if quotient.chain is None else quotient.chain
        return [
            equality_record("example_alpha_star", alpha_star(S, T), fx["expected"]["hausdorff"], "3-net example", 1e-9),
            equality_record("example_alpha_inf", alpha_p(S, T, INF).cost, fx["expected"]["alpha_inf"], "3-net example", 1e-9),
            equality_record("example_alpha_inf_R", chain, fx["expected"]["alpha_inf_R"], "3-net example", 1e-9),
        ]

    def example_line():
        records = []
        for fx in example_ii_family():
            S, T = fx["M_net"], fx["W_net"]
            quotient = alpha_pR(S, T, INF, max_chain=LONG_CHAIN)
            chain = math.nan if quotient.chain is None else quotient.chain
            tag = f"case{fx['case']}"
            anchor = f"3-nets on the line, case {fx['case']}"
            records += [
                equality_record(f"{tag}_alpha", alpha_star(S, T), fx["expected"]["hausdorff"], anchor, 1e-9),
                equality_record(f"{tag}_alpha_inf_R", chain, fx["expected"]["alpha_inf_R"], anchor, 1e-9),
                equality_record(f"{tag}_alpha_inf", alpha_p(S, T, INF).cost, fx["expected"]["alpha_inf"], anchor, 1e-9),
            ]
        return records

    def assignment_oracle():
        rng = _rng(seed, "assignment_oracle")
        errors = []
        for _ in range(20):
            N = int(rng.integers(1, 7))
            S = PointMultiset.of(PLANE, sample_points(PLANE, N, rng))
            T = PointMultiset.of(PLANE, sample_points(PLANE, N, rng))
            for p in (1.0, 2.0, INF):
                brute = min(rho_Np(S, T.permuted(perm), p) for perm in permutations(range(N)))
                errors.append(abs(alpha_p(S, T, p).cost - brute) / max(1.0, brute))
        return [_worst("alpha_p_assignment", errors, 1e-9, "alpha_p as an assignment problem")]

    def metric_ordering():
        rng = _rng(seed, "metric_ordering")
        slacks = []
        for _ in range(50):
            N = int(rng.integers(1, 8))
            S = PointMultiset.of(PLANE, sample_points(PLANE, N, rng))
            T = PointMultiset.of(PLANE, sample_points(PLANE, N, rng))
            a_star, a_inf = alpha_star(S, T), alpha_p(S, T, INF).cost
            for p in (1.0, 2.0, 3.0):
                a_p = alpha_p(S, T, p).cost
                slacks.append(a_inf - a_p)
                slacks.append(a_p - N ** (1.0 / p) * a_inf)
            slacks.append(a_star - a_inf)
        return [check_record("nnet_metric_ordering", max(slacks), 0.0, anchor="alpha_* <= alpha_inf <= alpha_p", tol=1e-12)]

    def interpolation():
        rng = _rng(seed, "interpolation")
        errors = []
        for space in (PLANE, KLEIN):
            for _ in range(10):
                N = int(rng.integers(2, 6))
                S = PointMultiset.of(space, sample_points(space, N, rng))
                T = PointMultiset.of(space, sample_points(space, N, rng))
                lam = float(rng.uniform())
                for p in (2.0, INF):
                    mid = nnet_interpolate(S, T, p, lam)
                    total = alpha_p(S, T, p).cost
                    errors.append(abs(alpha_p(S, mid, p).cost + alpha_p(mid, T, p).cost - total) / max(1.0, total))
        return [_worst("nnet_geodesic", errors, 1e-9, "N-net interpolation is a geodesic")]

    def local_npc():
        rng = _rng(seed, "local_npc")
        records = []
        base = np.array([[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]])
        for space, scale in ((PLANE, 1.0), (KLEIN, 0.5)):
            U = PointMultiset.of(space, scale * base - 0.25 * scale)
            radius = local_equality_radius(U)
            for p in (2.0, INF):
                S = PointMultiset.of(space, U.data + 0.1 * radius * rng.normal(size=U.data.shape))
                T = PointMultiset.of(space, U.data + 0.1 * radius * rng.normal(size=U.data.shape))
                result = nnet_npc_check(S, T, U, p)
                name = f"local_npc_{space.kind}_{'inf' if p == INF else int(p)}"
                records.append(check_record(name, result["lhs"], result["rhs"], anchor="local (A3) for N-nets"))
        return records

    def pi_bounds():
        rng = _rng(seed, "pi_bounds")
        slacks = []
        for space in (PLANE, KLEIN):
            for _ in range(30):
                S = PointMultiset.of(space, sample_points(space, 2, rng))
                T = PointMultiset.of(space, sample_points(space, 2, rng))
                bounds = pi_sandwich(S, T)
                slacks.append(bounds["lower"] - bounds["value"])
                slacks.append(bounds["value"] - bounds["upper"])
        return [check_record("pi_sandwich", max(slacks), 0.0, anchor="midpoint projection of 2-nets", tol=1e-9)]

    def pi_fibers():
        flat = translated_pair((0.3, -0.2), (0.5, 0.4), (1.1, 0.7))
        curved = perpendicular_segments(0.4, 0.3)
        flat_value = pi_fiber_distance(flat["S"], flat["y"])
        curved_value = pi_fiber_distance(curved["S"], curved["y"])
        expected = curved["expected"]["fiber_distance"]
        return [
            equality_record("fiber_distance_plane", flat_value, flat["expected"]["fiber_distance"], "fiber of pi, plane", 1e-6),
            equality_record("fiber_distance_klein", curved_value, expected, "fiber of pi, Klein model", 1e-3 * expected),
        ]

    def twonet_midpoints_half():
        rng = _rng(seed, "twonet_midpoints_half")
        errors = []
        for _ in range(200):
            S = PointMultiset.of(PLANE, sample_points(PLANE, 2, rng))
            T = PointMultiset.of(PLANE, sample_points(PLANE, 2, rng))
            half = alpha_p(S, T, INF).cost / 2.0
            for Z in twonet_midpoints(S, T):
                errors += [abs(alpha_p(S, Z, INF).cost - half), abs(alpha_p(Z, T, INF).cost - half)]
        # 4 つの組の距離がすべて等しい正方形では中点 2-ネット が 2 つある
        square = twonet_midpoints(
            PointMultiset.of(PLANE, [(0.0, 0.0), (1.0, 1.0)]), PointMultiset.of(PLANE, [(1.0, 0.0), (0.0, 1.0)])
        )
        return [
            _worst("twonet_midpoints_half_distance", errors, 1e-9, "midpoint set of 2-nets"),
            equality_record("twonet_midpoints_square_count", len(square), 2, "midpoint set of 2-nets", 0.0),
        ]

    def max_metric_isometry():
        fx = max_metric_pairs([(3.0, 1.0), (2.0, 2.0), (5.0, -1.0), (0.0, -3.0), (4.0, 4.0), (1.5, 0.5)])
        return [_flag("max_metric_isometry", is_isometry(fx["f"]), True, "half-plane to 2-nets")]

    return [
        ("example_plane", example_plane),
        ("example_line", example_line),
        ("assignment_oracle", assignment_oracle),
        ("metric_ordering", metric_ordering),
        ("interpolation", interpolation),
        ("local_npc", local_npc),
        ("pi_bounds", pi_bounds),
        ("pi_fibers", pi_fibers),
        ("twonet_midpoints", twonet_midpoints_half),
        ("max_metric_isometry", max_metric_isometry),
    ]


def _chebyshev_checks(seed: int) -> list:
    def triangle():
        errors = {"hausdorff": [], "Z0": [], "H": [], "Q0": [], "H_distance": []}
        base = self_sets(triangle_family(2)["S"])
        shift = []
        for n in range(2, 65):
            fx = triangle_family(n)
            cls = self_sets(fx["S_n"])
            C = PointSet.of(PLANE, [fx["C_n"]])
            errors["hausdorff"].append(abs(hausdorff(fx["S_n"], fx["S"]) - 1.0 / n))
            errors["Z0"].append(hausdorff(cls.Z0, C) + abs(cls.Z0_cardinality - 1))
            errors["H"].append(hausdorff(cls.H, fx["AB"]))
            errors["Q0"].append(hausdorff(cls.Q0, fx["AB"]))
            errors["H_distance"].append(abs(hausdorff(cls.H, base.H) - 1.0))
            shift.append(deviation(cls.Z0, base.Z0))
        anchor = "self sets of a perturbed triangle"
        records = [
            _worst("triangle_hausdorff", errors["hausdorff"], 1e-12, anchor),
            _worst("triangle_Z0", errors["Z0"], 1e-12, anchor),
            _worst("triangle_H", errors["H"], 1e-12, anchor),
            _worst("triangle_Q0", errors["Q0"], 1e-12, anchor),
            _worst("triangle_H_distance", errors["H_distance"], 1e-12, anchor),
            _worst("triangle_Z0_stability", np.diff(shift), 0.0, "deviation of Z0 under Hausdorff convergence"),
            equality_record("triangle_base_Z0", hausdorff(base.Z0, triangle_family(2)["S"]), 0.0, anchor, 1e-12),
        ]
        return records

    def class_verdicts():
        records = []
        for name, fx in (("square", square()), ("pentagon", pentagon())):
            cls = self_sets(fx["S"])
            expected = fx["expected"]
            anchor = f"{name} net classes"
            records += [
                _flag(f"{name}_in_d0", cls.in_d0, expected["in_d0"], anchor),
                _flag(f"{name}_closure_Z1", closure_Z1_membership(fx["S"]), expected["closure_Z1"], anchor),
                _flag(f"{name}_in_dm1", cls.in_dm1, expected["in_dm1"], anchor),
                _flag(f"{name}_in_d0_Nminus1", cls.in_d0_Nminus1, expected["in_d0_Nminus1"], anchor),
            ]
        return records

    def class_chain():
        rng = _rng(seed, "class_chain")
        slacks = []
        for space in (PLANE, KLEIN):
            for _ in range(SUITE["nets"] // 2):
                S = PointSet.of(space, sample_points(space, int(rng.integers(2, 9)), rng))
                cls = self_sets(S)
                slacks += [cls.m - cls.m1, cls.m1 - cls.R0, cls.R0 - cls.D]
        return [check_record("net_quantity_chain", max(slacks), 0.0, anchor="m <= m1 <= R0 <= D", tol=1e-12)]

    def minidisk():
        rng = _rng(seed, "minidisk")
        radius_errors, center_errors = [], []
        for _ in range(SUITE["minidisk"]):
            M = PointSet.of(PLANE, sample_points(PLANE, int(rng.integers(3, 31)), rng))
            result = chebyshev_center(M)
            center, radius = minidisk_bruteforce(M)
            radius_errors.append(abs(result.radius - radius))
            center_errors.append(float(np.linalg.norm(result.centers.point(0) - center)))
        return [
            _worst("chebyshev_radius_vs_minidisk", radius_errors, 1e-6, "Chebyshev center in the plane"),
            _worst("chebyshev_center_vs_minidisk", center_errors, 1e-5, "Chebyshev center in the plane"),
        ]

    def klein_centers():
        rng = _rng(seed, "klein_centers")
        residuals = []
        for _ in range(20):
            M = PointSet.of(KLEIN, sample_points(KLEIN, int(rng.integers(3, 12)), rng))
            result = chebyshev_center(M)
            residuals.append(result.residual / max(1.0, result.radius))
        return [_worst("klein_center_certificate", residuals, 1e-8, "unique Chebyshev center")]

    def perturbation():
        S = pentagon()["S"]
        cls = self_sets(S)
        moved = perturb_to_unique_center(S)
        records = [_flag("square_not_perturbable", perturb_to_unique_center(square()["S"]) is not None, False, "closure of Z1")]
        if moved is None:
            records.append(_flag("pentagon_perturbable", False, True, "closure of Z1"))
            return records
        records += [
            equality_record("pentagon_unique_center", self_sets(moved).Z0_cardinality, 1, "closure of Z1", 0.0),
            check_record("pentagon_perturbation_size", hausdorff(S, moved), cls.m / 4.0, anchor="closure of Z1"),
        ]
        return records

    def radius_bounds():
        rng = _rng(seed, "radius_bounds")
        records = []
        for i in range(SUITE["quadruples"]):
            M = PointSet.of(PLANE, sample_points(PLANE, int(rng.integers(3, 7)), rng))
            W = PointSet.of(PLANE, sample_points(PLANE, int(rng.integers(3, 7)), rng))
            A = PointSet.of(PLANE, M.data + 0.05 * rng.normal(size=M.data.shape))
            B = PointSet.of(PLANE, W.data + 0.05 * rng.normal(size=W.data.shape))
            records += _indexed(radius_perturbation_bounds(M, W, A, B), i)
        return records

    def m1_perturbation():
        rng = _rng(seed, "m1_perturbation")
        slacks = []
        for _ in range(30):
            S = PointSet.of(PLANE, sample_points(PLANE, 5, rng))
            moved = PointSet.of(PLANE, S.data + 0.05 * rng.normal(size=S.data.shape))
            slacks.append(abs(self_sets(S).m1 - self_sets(moved).m1) - 2.0 * theta(S, moved))
        return [check_record("m1_theta_bound", max(slacks), 0.0, anchor="|m1(S) - m1(S')| <= 2 theta", tol=1e-12)]

    def hull_membership():
        rng = _rng(seed, "hull_membership")
        flags = []
        for space in (PLANE, KLEIN):
            for _ in range(10):
                flags.append(hull_membership_check(PointSet.of(space, sample_points(space, int(rng.integers(3, 10)), rng))))
        return [_flag("center_in_convex_hull", all(flags), True, "center lies in the closed convex hull")]

    def best_nets():
        rng = _rng(seed, "best_nets")
        slacks = []
        for _ in range(3):
            M = PointSet.of(PLANE, sample_points(PLANE, 9, rng))
            _, exact = best_nnet(M, 3, "exact")
            _, local = best_nnet(M, 3, "local", seed=seed)
            slacks.append(exact - local)
        return [check_record("best_nnet_exact_vs_local", max(slacks), 0.0, anchor="best N-net radius", tol=1e-9)]

    return [
        ("triangle", triangle),
        ("class_verdicts", class_verdicts),
        ("class_chain", class_chain),
        ("minidisk", minidisk),
        ("klein_centers", klein_centers),
        ("perturbation", perturbation),
        ("radius_bounds", radius_bounds),
        ("m1_perturbation", m1_perturbation),
        ("hull_membership", hull_membership),
        ("best_nets", best_nets),
    ]


def _regular_hull(n: int, radius: float = 1.0, center=(0.0, 0.0)) -> ConvexBody:
    angles = 2.0 * np.pi * np.arange(n) / n
    return ConvexBody.hull(PLANE, np.asarray(center) + radius * np.column_stack([np.cos(angles), np.sin(angles)]))


def _ball_checks(seed: int) -> list:
    def segments():
        records = []
        for name in ("euclidean", "klein"):
            fx = segment(name)
            fit = best_ball(fx["M"])
            space = fx["space"]
            anchor = f"best ball of a segment ({name})"
            records += [
                check_record(f"segment_center_{name}", space.dist(fit.center, fx["expected"]["center"]), 1e-6, anchor=anchor, tol=0.0),
                equality_record(f"segment_radius_{name}", fit.radius, fx["expected"]["radius"], anchor, 1e-6),
            ]
        return records

    def psi_r_identity():
        rng = _rng(seed, "psi_r_identity")
        M = _regular_hull(7, 1.0, (0.1, -0.2))
        errors = [abs(psi(M, x) + r_fun(M, x) - farthest_distance(M, x)) for x in sample_points(PLANE, 50, rng)]
        return [_worst("psi_plus_r", errors, 1e-12, "psi(M, x) + r(M, x) = beta(M, x)")]

    def closed_forms():
        n_sphere = SUITE["sphere_samples"]
        spacing = SUITE["boundary_spacing"]
        disk = ConvexBody.ball(PLANE, (0.2, -0.1), 1.0)
        cases = [
            ("disk_exterior", disk, np.array([2.0, 1.0]), 0.7, boundary_samples(disk, spacing)),
            ("disk_interior", disk, np.array([0.3, 0.1]), 0.5, boundary_samples(disk, spacing)),
            ("hull_exterior", _regular_hull(6), np.array([3.0, 0.5]), 0.4, None),
            ("segment_exterior", ConvexBody.segment(PLANE, (-1.0, 0.0), (1.0, 0.5)), np.array([0.3, 1.5]), 0.3, None),
        ]
        klein_segment = segment("klein")["M"]
        cases.append(("klein_segment_exterior", klein_segment, np.array([0.1, -0.5]), 0.2, None))
        records = []
        for name, M, x, r, samples in cases:
            samples = M.points if samples is None else samples
            ball = sphere_points(M.space, x, r, n_sphere)
            sampled = sampled_ball_hausdorff(M, x, r, samples, ball)
            value = ball_hausdorff(M, x, r)
            anchor = "ball deviation closed forms"
            if name.endswith("interior"):
                records.append(check_record(f"ball_bound_{name}", sampled, value, anchor=anchor, tol=1e-4))
            else:
                records.append(equality_record(f"ball_value_{name}", sampled, value, anchor, 1e-4))
        return records

    def stability():
        def rectangle(w: float, h: float) -> ConvexBody:
            return ConvexBody.hull(PLANE, [(-w, -h), (w, -h), (w, h), (-w, h)])

        families = [
            ("polygons", [_regular_hull(n) for n in (8, 16, 32, 64)], ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)),
            ("constant", [rectangle(1.0, 1.0)] * 3, rectangle(1.0, 1.0)),
            ("thin_rectangles", [rectangle(1.0, h) for h in (0.1, 0.01, 0.001)], ConvexBody.segment(PLANE, (-1.0, 0.0), (1.0, 0.0))),
            ("scaled_squares", [rectangle(1.0 + 1.0 / n, 1.0 + 1.0 / n) for n in (2, 8, 32)], rectangle(1.0, 1.0)),
        ]
        records = []
        for name, bodies, limit in families:
            result = best_ball_stability(bodies, limit)
            anchor = "stability of the best ball"
            records.append(check_record(f"best_ball_center_stability_{name}", result["final"], 1e-3, anchor=anchor, tol=0.0))
            records.append(check_record(f"best_ball_center_settles_{name}", result["max_increase"], 1e-3, anchor=anchor, tol=0.0))
        return records

    def midpoint_convexity():
        rng = _rng(seed, "midpoint_convexity")
        records = []
        bodies = [ConvexBody.ball(PLANE, (0.0, 0.0), 0.8), _regular_hull(5)]
        for i in range(10):
            M = bodies[i % 2]
            x, y = sample_points(PLANE, 2, rng) * 2.0
            records += _indexed(midpoint_convexity_check(M, x, y), i)
        return records

    def two_balls():
        y, r2 = np.zeros(2), 1.0
        x, r1 = np.array([2.5, 0.3]), 0.6
        value = ball_hausdorff(ConvexBody.ball(PLANE, y, r2), x, r1)
        return [equality_record("ball_ball_hausdorff", value, ball_ball_hausdorff(PLANE, x, r1, y, r2), "two balls", 1e-12)]

    return [
        ("segments", segments),
        ("psi_r_identity", psi_r_identity),
        ("closed_forms", closed_forms),
        ("stability", stability),
        ("midpoint_convexity", midpoint_convexity),
        ("two_balls", two_balls),
    ]


def _projection_checks(seed: int) -> list:
    levels = {"t": 0.1, "eps": 0.2, "delta": 0.4, "eps2": 0.15, "delta2": 0.3}

    def _allowance(name: str, report: dict) -> dict:
        return check_record(name, report["allowance"], SUITE["projection_allowance"], anchor="lens sampling error")

    def ratios():
        records = []
        cases = [
            ("plane", ConvexBody.ball(PLANE, (0.0, 0.0), 1.0), np.array([1.6, 0.7])),
            ("klein", ConvexBody.ball(KLEIN, (0.1, 0.0), 0.6), np.array([0.75, 0.3])),
        ]
        for name, M, x in cases:
            report = ratio_monotonicity_check(x, M, **levels)
            for record in report["checks"]:
                record = dict(record)
                record["name"] = f"{record['name']}_{name}"
                records.append(record)
            records.append(_allowance(f"ratio_allowance_{name}", report))
        return records

    def stability():
        M = ConvexBody.ball(PLANE, (0.0, 0.0), 1.0)
        W = ConvexBody.ball(PLANE, (0.05, 0.02), 0.98)
        report = delta_projection_stability(np.array([1.5, 0.4]), np.array([1.52, 0.38]), M, W, 0.15, 0.2)
        return [*report["checks"], _allowance("stability_allowance", report)]

    def disconnect():
        rng = _rng(seed, "disconnect")
        errors = []
        for n in range(4, 13):
            M = PointSet.of(PLANE, sample_points(PLANE, n, rng))
            d = PLANE.pairwise(M.data, M.data)
            brute = 0.0
            for mask in range(1, 2 ** (n - 1)):
                A = [i for i in range(n) if mask >> i & 1]
                B = [i for i in range(n) if not mask >> i & 1]
                brute = max(brute, float(d[np.ix_(A, B)].min()))
            errors.append(abs(lambda_disconnect(M) - brute))
        return [_worst("lambda_disconnect_bipartition", errors, 0.0, "disconnectedness measure")]

    def contraction():
        rng = _rng(seed, "contraction")
        records = []
        for i, M in enumerate([ConvexBody.ball(PLANE, (0.0, 0.0), 0.7), _regular_hull(6, 0.8)]):
            W = PointSet.of(PLANE, 1.5 * sample_points(PLANE, 8, rng))
            records += _indexed(deviation_contraction_check(W, M, mesh=0.02), i)
        return records

    def klein_segment_projection():
        rng = _rng(seed, "klein_segment_projection")
        M = segment("klein")["M"]
        a, b = M.points
        samples = a + np.linspace(0.0, 1.0, 20001)[:, None] * (b - a)
        slacks = []
        for x in sample_points(KLEIN, 10, rng):
            oracle = float(KLEIN.pairwise([x], samples).min())
            slacks.append(KLEIN.dist(x, project(M, x)) - oracle)
        return [check_record("klein_segment_projection", max(slacks), 0.0, anchor="projection onto a Klein segment", tol=1e-9)]

    return [
        ("ratios", ratios),
        ("stability", stability),
        ("disconnect", disconnect),
        ("contraction", contraction),
        ("klein_segment_projection", klein_segment_projection),
    ]


def _euclidean_angle(x: np.ndarray, y: np.ndarray) -> float:
    cos = float(x @ y / (np.linalg.norm(x) * np.linalg.norm(y)))
    return float(np.arccos(np.clip(cos, -1.0, 1.0)))


def _hilbert_checks(seed: int) -> list:
    H = HilbertBall(1.0, 1.0, 2, 2.0)
    n = SUITE["pairs"]

    def cross_ratio():
        rng = _rng(seed, "cross_ratio")
        errors = []
        for x, y in zip(sample_points(KLEIN, n, rng), sample_points(KLEIN, n, rng)):
            d = hilbert_dist(H, x, y)
            errors.append(abs(d - lobachevsky_dist(1.0, 1.0, x, y)) / max(1.0, d))
        return [_worst("hilbert_vs_lobachevsky", errors, 1e-9, "Hilbert metric of the Euclidean ball")]

    def norm_sandwich():
        rng = _rng(seed, "norm_sandwich")
        slacks = []
        scale = 0.5 / 0.95
        for x, y in zip(scale * sample_points(KLEIN, n, rng), scale * sample_points(KLEIN, n, rng)):
            lower, value, upper = hilbert_norm_bounds(H, x, y, 0.5)
            slacks += [lower - value, value - upper]
        return [check_record("hilbert_norm_sandwich", max(slacks), 0.0, anchor="Hilbert vs norm bounds", tol=1e-12)]

    def scaling_limit():
        x, y = np.array([0.3, 0.1]), np.array([-0.2, 0.4])
        errors = [abs(r * hilbert_dist(HilbertBall(r, 1.0, 2), x, y) - np.linalg.norm(x - y)) for r in (10.0, 1e2, 1e3, 1e4)]
        # 誤差は O(1/r²) なので 10 倍ごとに 1/100 になる
        spread = [abs(math.log((b / a) / 0.01)) for a, b in zip(errors[:-1], errors[1:])]
        return [_worst("hilbert_scaling_limit_decay", spread, math.log(1.2), "(r/k)|xy| -> ||x - y||")]

    def midpoints():
        rng = _rng(seed, "midpoints")
        errors = []
        for space in (H, HilbertBall(1.0, 1.0, 2, 4.0)):
            for x, y in zip(0.7 * sample_points(KLEIN, 50, rng), 0.7 * sample_points(KLEIN, 50, rng)):
                m = hilbert_midpoint(space, x, y)
                d = space.dist(x, y)
                errors.append(abs(space.dist(x, m) - space.dist(m, y)) / max(1.0, d))
                errors.append(abs(space.dist(x, m) - d / 2.0) / max(1.0, d))
        return [_worst("hilbert_midpoint_halves", errors, 1e-9, "closed-form midpoint")]

    def contraction():
        rng = _rng(seed, "contraction")
        slacks = []
        for space in (H, HilbertBall(1.0, 1.0, 2, 3.0)):
            P, X, Y = (0.6 * sample_points(KLEIN, 50, rng) for _ in range(3))
            for p, x, y, lam in zip(P, X, Y, rng.uniform(0.1, 0.9, size=50)):
                after = space.dist(hilbert_lambda_p(space, p, x, lam), hilbert_lambda_p(space, p, y, lam))
                slacks.append(after - space.dist(x, y))
        return [check_record("lambda_p_contraction", max(slacks), 0.0, anchor="lambda_p shrinks distances", tol=0.0)]

    def boundary():
        rng = _rng(seed, "boundary")
        H4 = HilbertBall(1.0, 1.0, 2, 4.0)
        errors = []
        for x, y in zip(0.8 * sample_points(KLEIN, 50, rng), 0.8 * sample_points(KLEIN, 50, rng)):
            hit = boundary_hit(H4, x, y)
            errors.append(abs(H4.norm(hit) - 1.0))
            errors.append(0.0 if float((hit - y) @ (y - x)) > 0 else math.inf)
        return [_worst("boundary_hit_p4", errors, 1e-12, "boundary point on the ray")]

    def origin_limits():
        x, y = np.array([0.3, 0.2]), np.array([-0.1, 0.4])
        limits = origin_scaling_limits(H, x, y)
        infinity = [abs(origin_scaling_ratio(H, x, y, lam, "infinity") - limits["infinity"]) for lam in (4.0, 8.0, 16.0)]
        records = [
            _worst(
                "origin_limit_infinity_rate",
                [b / a for a, b in zip(infinity[:-1], infinity[1:])],
                0.6,
                "growth limit rho(0,x) + rho(0,y)",
            )
        ]
        for which in ("tangent", "midpoint", "sum"):
            first = abs(origin_scaling_ratio(H, x, y, 2.0**-2, which) - limits[which])
            last = abs(origin_scaling_ratio(H, x, y, 2.0**-8, which) - limits[which])
            records.append(check_record(f"origin_limit_{which}", last, first, anchor=f"small-scale limit ({which})", tol=1e-9))
        return records

    def tangent_closed_form():
        rng = _rng(seed, "tangent_closed_form")
        errors, monotone = [], True
        zero = np.zeros(2)
        for x, y in zip(sample_points(KLEIN, SUITE["tangent_pairs"], rng), sample_points(KLEIN, SUITE["tangent_pairs"], rng)):
            estimate = tangent_limit(KLEIN, zero, x, y)
            monotone = monotone and estimate.monotone
            errors.append(abs(estimate.value - tangent_norm(KLEIN, zero, x, y, "closed_form")))
        return [
            _worst("tangent_limit_vs_closed_form", errors, 1e-4, "tangent pseudometric at the origin"),
            _flag("tangent_limit_monotone", monotone, True, "convexity of the rescaled distance"),
        ]

    def tangent_metric():
        rng = _rng(seed, "tangent_metric")
        slacks, asym = [], []
        for _ in range(20):
            p = 0.5 * sample_points(KLEIN, 1, rng)[0]
            x, y = 0.5 * sample_points(KLEIN, 2, rng)
            slacks.append(tangent_norm(KLEIN, p, x, y) - KLEIN.dist(x, y))
            v1, v2, v3 = (
                TangentVector(p, 0.5 * sample_points(KLEIN, 1, rng)[0], float(rng.uniform(0.2, 2.0))) for _ in range(3)
            )
            asym.append(abs(tangent_dist(KLEIN, p, v1, v2) - tangent_dist(KLEIN, p, v2, v1)))
            slacks.append(tangent_dist(KLEIN, p, v1, v3) - tangent_dist(KLEIN, p, v1, v2) - tangent_dist(KLEIN, p, v2, v3))
        return [
            check_record("tangent_metric_bounds", max(slacks), 0.0, anchor="m_p <= rho and triangle inequality", tol=1e-6),
            _worst("tangent_metric_symmetry", asym, 1e-9, "m_p symmetry"),
        ]

    def medians():
        rng = _rng(seed, "medians")
        errors = []
        for z, u, v in zip(*(sample_points(KLEIN, SUITE["triples"], rng) for _ in range(3))):
            direct, formula = median_length(KLEIN, z, u, v)
            errors.append(abs(direct - formula) / max(1.0, direct))
        return [_worst("median_identity", errors, 1e-9, "median length in the Lobachevsky plane")]

    def angles():
        rng = _rng(seed, "angles")
        zero = np.zeros(2)
        errors, psi_errors, phi_errors = [], [], []
        for x, y in zip(sample_points(KLEIN, 30, rng), sample_points(KLEIN, 30, rng)):
            errors.append(abs(upper_angle(KLEIN, zero, x, y) - _euclidean_angle(x, y)))
            rho = KLEIN.dist(zero, x)
            psi_errors.append(abs(psi_functional(KLEIN, zero, x, x) - rho**2) / max(1.0, rho**2))
            # 直径上への射影は座標の直交射影と一致する
            foot = np.array([x[0], 0.0])
            expected = math.copysign(KLEIN.dist(zero, foot), x[0])
            phi_errors.append(abs(phi_functional(KLEIN, zero, np.array([0.5, 0.0]), x) - expected))
        return [
            _worst("upper_angle_at_origin", errors, 1e-5, "upper angle in the Klein model"),
            _worst("psi_on_diagonal", psi_errors, 1e-12, "psi_x(x) = |px|^2"),
            _worst("phi_signed_projection", phi_errors, 1e-6, "phi_L signed projection"),
        ]

    return [
        ("cross_ratio", cross_ratio),
        ("norm_sandwich", norm_sandwich),
        ("scaling_limit", scaling_limit),
        ("midpoints", midpoints),
        ("contraction", contraction),
        ("boundary", boundary),
        ("origin_limits", origin_limits),
        ("tangent_closed_form", tangent_closed_form),
        ("tangent_metric", tangent_metric),
        ("medians", medians),
        ("angles", angles),
    ]


def _maps_checks(seed: int) -> list:
    def delta_p_sandwich():
        rng = _rng(seed, "delta_p_sandwich")
        slacks = []
        records = []
        for i in range(SUITE["tables"]):
            domain = PointSet.of(PLANE, sample_points(PLANE, 8, rng))
            f = MapTable.of(domain, PLANE, sample_points(PLANE, 8, rng))
            g = MapTable.of(domain, PLANE, sample_points(PLANE, 8, rng))
            values = np.array([busemann_delta_p(f, g, p) for p in domain])
            d = PLANE.pairwise(domain.data, domain.data)
            lower = np.exp(-d) * values[:, None] - values[None, :]
            upper = values[None, :] - np.exp(d) * values[:, None]
            slacks.append(float(max(lower.max(), upper.max())) / max(1.0, float(values.max())))
            if i == 0:
                records += delta_p_equivalence_check(f, g, domain.point(0), domain.point(1))["checks"]
        records.append(check_record("delta_p_sandwich_all_pairs", max(slacks), 0.0, anchor="base-point change", tol=1e-12))
        return records

    def constant_maps():
        rng = _rng(seed, "constant_maps")
        domain = PointSet.of(PLANE, sample_points(PLANE, 6, rng))
        u, v = sample_points(PLANE, 2, rng)
        f = MapTable.of(domain, PLANE, np.tile(u, (6, 1)))
        g = MapTable.of(domain, PLANE, np.tile(v, (6, 1)))
        return [
            equality_record("constant_maps_delta_p", busemann_delta_p(f, g, domain.point(2)), PLANE.dist(u, v), "constant maps", 1e-12),
            equality_record("identical_maps_delta_p", busemann_delta_p(f, f, domain.point(0)), 0.0, "delta_p(f, f) = 0", 0.0),
        ]

    def similarities():
        payload = generate(PLANE, "map_table", {"n": 8, "scale": 2.0}, seed)
        g = MapTable.of(PointSet.of(PLANE, payload["domain"]), PLANE, payload["values"])
        f_domain = PointSet.of(PLANE, payload["values"])
        angle = 0.7
        R = np.array([[np.cos(angle), -np.sin(angle)], [np.sin(angle), np.cos(angle)]])
        f = MapTable.of(f_domain, PLANE, 1.5 * f_domain.data @ R.T + np.array([0.3, -0.1]))
        sigma_g, sigma_f = similarity_coefficient(g), similarity_coefficient(f)
        sigma_fg = similarity_coefficient(compose(f, g))
        sigma_inv = similarity_coefficient(inverse(g))
        anchor = "similarity coefficient is multiplicative"
        return [
            equality_record("similarity_g", sigma_g, 2.0, anchor, 1e-9),
            equality_record("similarity_composition", sigma_fg, sigma_f * sigma_g, anchor, 1e-9 * sigma_fg),
            equality_record("similarity_inverse", sigma_inv, 1.0 / sigma_g, anchor, 1e-9),
        ]

    def holder_classes():
        rng = _rng(seed, "holder_classes")
        domain = PointSet.of(PLANE, sample_points(PLANE, 10, rng))
        identity = MapTable.of(domain, PLANE, domain.data)
        doubled = MapTable.of(domain, PLANE, 2.0 * domain.data)
        constant = MapTable.of(domain, PLANE, np.zeros((10, 2)))
        anchor = "Holder class membership"
        return [
            _flag("holder_identity", holder_membership(identity, 1.0, 1.0), True, anchor),
            _flag("holder_doubled", holder_membership(doubled, 1.0, 1.0), False, anchor),
            _flag("holder_constant", holder_membership(constant, 0.0, 0.5), True, anchor),
        ]

    def kuratowski():
        rng = _rng(seed, "kuratowski")
        domain = PointSet.of(PLANE, sample_points(PLANE, 8, rng))
        f = MapTable.of(domain, PLANE, sample_points(PLANE, 8, rng))
        g = MapTable.of(domain, PLANE, sample_points(PLANE, 8, rng))
        center = domain.point(0)
        single = kuratowski_delta(f, g, center, [10.0])
        delta_1 = single.terms[0]
        return [
            equality_record("kuratowski_identical", kuratowski_delta(f, f, center, [0.5, 1.0, 2.0]).value, 0.0, "series metric", 0.0),
            equality_record("kuratowski_single_ball", single.value, delta_1 / (2.0 * (1.0 + delta_1)), "series metric", 1e-15),
        ]

    return [
        ("delta_p_sandwich", delta_p_sandwich),
        ("constant_maps", constant_maps),
        ("similarities", similarities),
        ("holder_classes", holder_classes),
        ("kuratowski", kuratowski),
    ]


SUITES = {
    "spaces": _spaces_checks,
    "hausdorff": _hausdorff_checks,
    "nnet": _nnet_checks,
    "chebyshev": _chebyshev_checks,
    "ball": _ball_checks,
    "projection": _projection_checks,
    "hilbert": _hilbert_checks,
    "maps": _maps_checks,
}


def suite_checks(name: str, seed: int) -> list[tuple[str, object]]:
    """スイート名 (または all) のチェック一覧. チェック名は '<スイート>.<名前>'."""
    names = list(SUITES) if name == "all" else [name]
    checks = []
    for suite in names:
        if suite not in SUITES:
            raise ValueError(f"未知のスイートです: {suite} (候補: {', '.join(SUITES)}, all)")
        checks += [(f"{suite}.{check}", fn) for check, fn in SUITES[suite](seed)]
    return checks
