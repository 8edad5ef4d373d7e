"""コマンドラインのエントリーポイント.

    compute <op> [入力ファイル ...]   個別の計算 (入力は --fixture でも指定できる)
    suite <name|all>                  定理チェックのスイート
    generate <kind>                   乱数インスタンスの生成

終了コードはすべてのチェックが通れば 0、それ以外は 1。

環境変数:
    METRIC_GEOMETRY_SEED: 既定の seed (default: 42)
    METRIC_GEOMETRY_TOL: 既定の許容誤差 (default: 1e-8)
    METRIC_GEOMETRY_OUT: レポートの出力先ディレクトリ (default: reports)
"""

import argparse
import hashlib
import math
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from ball_approx import best_ball
from bodies import ConvexBody
from chebyshev import best_nnet, chebyshev_center, closure_Z1_membership, self_sets
from checks import equality_record
from config import DEFAULT_OUT, DEFAULT_SEED, DEFAULT_TOL
from data_loader import InstanceLoader, dumps_canonical
from errors import MetricAxiomError
from fixtures import FIXTURES, load_fixture
from generate import KINDS, generate
from hausdorff import PointSet, deviation, diameter, hausdorff, midpoint_set
from hilbert_tangent import HilbertBall, hilbert_dist
from nnet_metrics import INF, PointMultiset, alpha_p, alpha_pR, alpha_star
from projection import lambda_disconnect
from spaces import Euclidean, KleinBall, parse_space
from suites import SUITES, suite_checks

COMMANDS = ("compute", "suite", "generate")
COMPUTE_OPS = (
    "deviation",
    "hausdorff",
    "diameter",
    "midpoint_set",
    "alpha_p",
    "alpha_star",
    "alpha_pR",
    "self_sets",
    "chebyshev_center",
    "best_nnet",
    "best_ball",
    "lambda_disconnect",
    "hilbert_dist",
    "validate_metric",
)
FORMATS = ("json", "csv")

# フィクスチャの既知の値と比べるときの許容誤差 (既定は --tol)
EXPECTED_TOL = {"best_ball": 1e-6}

# α_{p,R} の Bellman-Ford を収束まで回すチェーン長
DEFAULT_MAX_CHAIN = 256


@dataclass(frozen=True)
class ExperimentConfig:
    """1 回の実行の設定 (argparse の値を環境変数の既定値に重ねたもの)."""

    command: str
    target: str
    space: str = "euclidean:2"
    inputs: tuple = ()
    fixture: str | None = None
    seed: int = DEFAULT_SEED
    tol: float = DEFAULT_TOL
    out: str | None = None
    fmt: str = "json"
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"未知のコマンドです: {self.command} (候補: {', '.join(COMMANDS)})")
        if self.command == "compute" and self.target not in COMPUTE_OPS:
            raise ValueError(f"未知の計算です: {self.target} (候補: {', '.join(COMPUTE_OPS)})")
        if self.command == "suite" and self.target != "all" and self.target not in SUITES:
            raise ValueError(f"未知のスイートです: {self.target} (候補: {', '.join(SUITES)}, all)")
        if self.command == "generate" and self.target not in KINDS:
            raise ValueError(f"未知の kind です: {self.target} (候補: {', '.join(KINDS)})")
        if self.fixture is not None and self.fixture not in FIXTURES:
            raise ValueError(f"未知のフィクスチャです: {self.fixture} (候補: {', '.join(FIXTURES)})")
        if not self.tol > 0:
            raise ValueError(f"tol は正である必要があります: tol={self.tol}")
        if self.fmt not in FORMATS:
            raise ValueError(f"未知の出力形式です: {self.fmt} (候補: {', '.join(FORMATS)})")


@dataclass
class Report:
    command: str
    target: str
    space: str
    seed: int
    inputs_digest: str
    records: list = field(default_factory=list)
    result: dict | None = None
    timing: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return all(r["pass"] for r in self.records)

    @property
    def failed(self) -> list[str]:
        return [r["name"] for r in self.records if not r["pass"]]

    def to_dict(self, include_timing: bool = True) -> dict:
        payload = {
            "command": self.command,
            "target": self.target,
            "space": self.space,
            "seed": self.seed,
            "inputs_digest": self.inputs_digest,
            "records": self.records,
            "result": self.result,
            "pass": self.passed,
            "failed": self.failed,
        }
        if include_timing:
            payload["timing"] = self.timing
        return payload


def _error_record(name: str, error: Exception) -> dict:
    nan = math.nan
    return {"name": name, "anchor": "", "lhs": nan, "rhs": nan, "slack": nan, "pass": False, "error": str(error)}


def inputs_digest(config: ExperimentConfig, loader: InstanceLoader) -> str:
    """設定と入力ファイルの内容の sha256."""
    files = {str(name): loader.file_digest(name) for name in config.inputs}
    manifest = {
        "command": config.command,
        "target": config.target,
        "space": config.space,
        "fixture": config.fixture,
        "seed": config.seed,
        "tol": config.tol,
        "params": config.params,
        "files": files,
    }
    return hashlib.sha256(dumps_canonical(manifest).encode("utf-8")).hexdigest()


# --- compute -----------------------------------------------------------------


def _param_p(params: dict) -> float:
    value = params.get("p", INF)
    return INF if str(value).lower() in ("inf", "infinity") else float(value)


def _as_set(value) -> PointSet:
    if isinstance(value, PointMultiset):
        return PointSet.unique(value.space, value.data)
    if isinstance(value, PointSet):
        return value
    raise ValueError(f"点集合ではありません: {type(value).__name__}")


def _as_net(value) -> PointMultiset:
    if isinstance(value, PointSet):
        return PointMultiset.of(value.space, value.data)
    if isinstance(value, PointMultiset):
        return value
    raise ValueError(f"N-ネットではありません: {type(value).__name__}")


def _pick(fixture: dict, keys: tuple):
    for key in keys:
        if key in fixture:
            return fixture[key]
    raise ValueError(f"フィクスチャに {' / '.join(keys)} がありません")


class _Inputs:
    """計算の入力をフィクスチャまたはファイルから取り出す."""

    SET_KEYS = (("M", "S_n", "S", "M_net"), ("W", "S", "W_net"))
    NET_KEYS = (("M_net", "S_n", "M", "S"), ("W_net", "S", "W"))

    def __init__(self, config: ExperimentConfig, loader: InstanceLoader):
        self.config = config
        self.loader = loader
        self.fixture = load_fixture(config.fixture) if config.fixture else None
        self.space = self.fixture["space"] if self.fixture else parse_space(config.space)

    def _files(self, count: int) -> list:
        if len(self.config.inputs) < count:
            raise ValueError(f"{self.config.target} には入力ファイルが {count} 個必要です")
        return list(self.config.inputs[:count])

    def sets(self, count: int) -> list[PointSet]:
        if self.fixture is not None:
            return [_as_set(_pick(self.fixture, keys)) for keys in self.SET_KEYS[:count]]
        return [self.loader.load_points(name, self.space) for name in self._files(count)]

    def nets(self, count: int) -> list[PointMultiset]:
        if self.fixture is not None:
            return [_as_net(_pick(self.fixture, keys)) for keys in self.NET_KEYS[:count]]
        return [self.loader.load_multiset(name, self.space) for name in self._files(count)]

    def body(self) -> ConvexBody:
        if self.fixture is not None:
            body = self.fixture.get("M")
            if not isinstance(body, ConvexBody):
                raise ValueError(f"フィクスチャ {self.config.fixture} は凸体ではありません")
            return body
        return self.loader.load_body(self._files(1)[0], self.space)

    @property
    def expected(self) -> dict:
        return self.fixture.get("expected", {}) if self.fixture else {}


def _compute(inputs: _Inputs) -> tuple[dict, list[dict]]:
    """計算を実行し (結果, チェック結果) を返す."""
    config = inputs.config
    op = config.target
    params = config.params
    expected = inputs.expected
    tol = max(config.tol, EXPECTED_TOL.get(op, 0.0))
    records = []

    def compare(name: str, value: float, key: str):
        if key in expected:
            records.append(equality_record(name, value, expected[key], anchor=f"fixture {config.fixture}", tol=tol))

    if op in ("deviation", "hausdorff", "midpoint_set"):
        M, W = inputs.sets(2)
        if op == "deviation":
            result = {"value": deviation(M, W), "reverse": deviation(W, M)}
        elif op == "hausdorff":
            result = {"value": hausdorff(M, W)}
            compare("hausdorff", result["value"], "hausdorff")
        else:
            mids = midpoint_set(M, W)
            result = {"points": mids, "size": len(mids)}
            if "omega" in (inputs.fixture or {}):
                records.append(
                    equality_record("midpoint_set", hausdorff(mids, inputs.fixture["omega"]), 0.0, "fixture omega", tol)
                )
        return result, records

    if op in ("alpha_p", "alpha_star", "alpha_pR"):
        S, T = inputs.nets(2)
        p = _param_p(params)
        if op == "alpha_star":
            result = {"value": alpha_star(S, T)}
            compare("alpha_star", result["value"], "hausdorff")
        elif op == "alpha_p":
            assignment = alpha_p(S, T, p)
            result = {"value": assignment.cost, "perm": assignment.perm, "p": p}
            if p == INF:
                compare("alpha_inf", assignment.cost, "alpha_inf")
        else:
            extras = (inputs.fixture or {}).get("omega")
            bounds = alpha_pR(S, T, p, max_chain=int(params.get("max_chain", DEFAULT_MAX_CHAIN)), extras=extras)
            result = {"bounds": bounds, "p": p}
            if p == INF:
                # 既知の値はチェーンで実現される上界と比べる
                chain = math.nan if bounds.chain is None else bounds.chain
                compare("alpha_inf_R", chain, "alpha_inf_R")
        return result, records

    if op in ("diameter", "self_sets", "chebyshev_center", "best_nnet", "lambda_disconnect"):
        (M,) = inputs.sets(1)
        if op == "diameter":
            result = {"value": diameter(M)}
        elif op == "self_sets":
            cls = self_sets(M)
            result = {"classification": cls, "closure_Z1": closure_Z1_membership(M)}
            for key in ("in_d0", "in_dm1", "in_d0_Nminus1"):
                compare(key, float(getattr(cls, key)), key)
            compare("closure_Z1", float(result["closure_Z1"]), "closure_Z1")
        elif op == "chebyshev_center":
            result = {"center": chebyshev_center(M)}
        elif op == "best_nnet":
            centers, radius = best_nnet(M, int(params.get("N", 2)), params.get("mode", "exact"), seed=config.seed)
            result = {"centers": centers, "radius": radius}
        else:
            result = {"value": lambda_disconnect(M)}
        return result, records

    if op == "best_ball":
        M = inputs.body()
        fit = best_ball(M)
        result = {"fit": fit}
        compare("best_ball_radius", fit.radius, "radius")
        if "center" in expected:
            records.append(
                equality_record("best_ball_center", M.space.dist(fit.center, expected["center"]), 0.0, "fixture center", tol)
            )
        return result, records

    if op == "hilbert_dist":
        if not isinstance(inputs.space, KleinBall):
            raise ValueError("hilbert_dist には --space klein:<r>,<k> が必要です")
        space = inputs.space
        H = HilbertBall(space.r, space.k, space.dim, float(params.get("norm_p", 2.0)))
        points = inputs.loader.load_points(inputs._files(1)[0], Euclidean(space.dim))
        if len(points) != 2:
            raise ValueError(f"hilbert_dist には 2 点が必要です: {len(points)} 点")
        return {"value": hilbert_dist(H, points.point(0), points.point(1)), "norm_p": H.norm_p}, records

    # validate_metric
    try:
        metric = inputs.loader.load_distance_matrix(inputs._files(1)[0])
    except MetricAxiomError as e:
        return {"violation": e.to_dict()}, [_error_record("validate_metric", e)]
    return {"size": metric.size}, [equality_record("validate_metric", 1.0, 1.0, anchor="metric axioms", tol=0.0)]


# --- run ---------------------------------------------------------------------


def _run_suite(config: ExperimentConfig) -> list[dict]:
    records = []
    for name, check in suite_checks(config.target, config.seed):
        print(f"\n--- {name} ---")
        group = name.split(".")[0]
        try:
            produced = check()
        except Exception as e:
            print(f"  ERROR: {e}")
            records.append(_error_record(name, e))
            continue
        for record in produced:
            record = dict(record)
            record["name"] = f"{group}.{record['name']}"
            mark = "✓" if record["pass"] else "⚠"
            print(f"  {mark} {record['name']}: lhs={record['lhs']:.6g}, rhs={record['rhs']:.6g}, slack={record['slack']:.3g}")
            records.append(record)
    return records


def _run_generate(config: ExperimentConfig, loader: InstanceLoader) -> tuple[dict, list[dict]]:
    space = parse_space(config.space)
    payload = generate(space, config.target, config.params, config.seed)
    result = {"metadata": payload["metadata"], "payload": payload}
    if config.out:
        path = loader.save_json(payload, Path(config.out) / f"{config.target}_{config.seed}.json")
        result["path"] = str(path)
        print(f"  ✓ インスタンスを保存: {path}")
    return result, []


def run(config: ExperimentConfig, base_dir: str | Path = ".") -> Report:
    """設定に従って計算・スイート・生成を実行する.

    1 件のチェックの例外はそのレコードに {"error": ...} として記録し、失敗扱いにする。
    """
    loader = InstanceLoader(base_dir)
    started = time.perf_counter()
    digest = inputs_digest(config, loader)
    result = None

    if config.command == "suite":
        space_name = "builtin"
        records = _run_suite(config)
    elif config.command == "generate":
        space_name = parse_space(config.space).describe()
        result, records = _run_generate(config, loader)
    else:
        inputs = _Inputs(config, loader)
        space_name = inputs.space.describe()
        print(f"\n--- {config.target} ---")
        try:
            result, records = _compute(inputs)
        except (ValueError, RuntimeError) as e:
            print(f"  ERROR: {e}")
            records = [_error_record(config.target, e)]
        for record in records:
            mark = "✓" if record["pass"] else "⚠"
            print(f"  {mark} {record['name']}: {record['lhs']:.12g} (期待値 {record['rhs']:.12g})")

    return Report(
        command=config.command,
        target=config.target,
        space=space_name,
        seed=config.seed,
        inputs_digest=digest,
        records=records,
        result=result,
        timing={"seconds": round(time.perf_counter() - started, 3)},
    )


def write_report(report: Report, config: ExperimentConfig, base_dir: str | Path = ".") -> list[Path]:
    """JSON (キー順固定) と、--format csv のときはチェック結果の CSV を書き出す."""
    loader = InstanceLoader(base_dir)
    stem = Path(config.out or DEFAULT_OUT) / f"{config.command}_{config.target}"
    paths = [loader.save_json(report.to_dict(), stem.with_suffix(".json"))]
    if config.fmt == "csv":
        paths.append(loader.save_records_csv(report.records, stem.with_suffix(".csv")))
    return paths


# --- main --------------------------------------------------------------------


def _parse_params(items: list[str]) -> dict:
    params = {}
    for item in items or []:
        key, sep, value = item.partition("=")
        if not sep or not key:
            raise ValueError(f"--param は key=value で指定してください: {item}")
        try:
            params[key] = int(value) if value.lstrip("-").isdigit() else float(value)
        except ValueError:
            params[key] = value
    return params


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="metric-geometry", description="距離幾何ツールキット")
    parser.add_argument("command", choices=COMMANDS)
    parser.add_argument("target", help="compute の計算名 / suite 名 (all 可) / generate の kind")
    parser.add_argument("inputs", nargs="*", help="入力ファイル (点集合 JSON/CSV、凸体 JSON、距離行列 CSV)")
    parser.add_argument("--space", default="euclidean:2", help="euclidean:<dim> | klein:<r>,<k>[,<dim>] | finite:<csv>")
    parser.add_argument("--fixture", choices=sorted(FIXTURES), default=None, help="組み込みの検証用インスタンス")
    parser.add_argument("--seed", type=int, default=DEFAULT_SEED)
    parser.add_argument("--tol", type=float, default=DEFAULT_TOL)
    parser.add_argument("--out", default=None, help=f"レポートの出力先ディレクトリ (例: {DEFAULT_OUT})")
    parser.add_argument("--format", dest="fmt", choices=FORMATS, default="json")
    parser.add_argument("--param", action="append", default=[], help="計算・生成のパラメータ key=value (例: p=inf, N=3)")
    return parser


def config_from_args(args: argparse.Namespace) -> ExperimentConfig:
    return ExperimentConfig(
        command=args.command,
        target=args.target,
        space=args.space,
        inputs=tuple(args.inputs),
        fixture=args.fixture,
        seed=args.seed,
        tol=args.tol,
        out=args.out,
        fmt=args.fmt,
        params=_parse_params(args.param),
    )


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        config = config_from_args(args)

        print("=" * 80)
        print(f"metric-geometry {config.command} {config.target}")
        print(f"  空間: {config.fixture or config.space}, seed: {config.seed}, tol: {config.tol}")
        print("=" * 80)

        report = run(config)
        paths = write_report(report, config) if config.out else []
    except Exception as e:
        print(f"ERROR: {e}")
        return 1

    print("\n" + "=" * 80)
    if report.passed:
        print(f"✅ 完了: {len(report.records)} 件のチェックがすべて成立")
    else:
        print(f"⚠ 失敗: {len(report.failed)}/{len(report.records)} 件")
        for name in report.failed:
            print(f"  {name}")
    if report.result is not None and "value" in report.result:
        print(f"  値: {report.result['value']}")
    for path in paths:
        print(f"  ✓ 保存: {path}")
    print("=" * 80)
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
