"""計算パラメータの設定.

許容誤差・ソルバー上限・乱数インスタンス生成範囲を定義する。
一部の値は環境変数で上書きできる。
"""

import os

DEFAULT_SEED = int(os.environ.get("METRIC_GEOMETRY_SEED", "42"))
DEFAULT_TOL = float(os.environ.get("METRIC_GEOMETRY_TOL", "1e-8"))
DEFAULT_OUT = os.environ.get("METRIC_GEOMETRY_OUT", "reports")

TOLERANCES = {
    # 距離行列の公理チェック (相対誤差)
    "metric_axiom": 1e-9,
    # 点の一致判定・最近点の同着判定
    "identity": 1e-12,
    "tie": 1e-12,
    # 幾何的等式 (測地線の加法性など)
    "geodesic": 1e-9,
    # Z0 など argmin 集合のクラスタ半径
    "cluster": 1e-9,
    # 不等式チェックの余裕
    "inequality": 1e-9,
    # acosh / arcsin の引数クランプ
    "clamp": 1e-14,
}

SOLVER = {
    # チェビシェフ中心の測地降下 (SLSQP の初期値用。精度は仕上げと下界で保証する)
    "descent_max_iter": 2_000,
    "descent_stall_steps": 50,
    # 仕上げで使う準アクティブ点の上限
    "polish_candidates": 12,
    # 制約付き最適化による仕上げ
    "refine_max_iter": 500,
    "refine_tol": 1e-13,
    # 境界点の二分探索
    "bisection_tol": 1e-14,
    "bisection_max_iter": 200,
    # ψ 最小化の初期グリッド
    "grid_size": 64,
    "grid_max_dim": 3,
    # best_nnet の分割列挙ガード・局所探索
    "partition_guard": 100_000,
    "local_restarts": 16,
    "local_max_iter": 100,
    # 接空間の極限グリッド ν_k = 2^{-k}
    "limit_k_min": 4,
    "limit_k_max": 40,
    "limit_tol": 1e-7,
    # 上角は (2^-i, 2^-j) を k..k+angle_window の窓で走査する
    "angle_window": 4,
    # δ-射影のレンズ境界の標本間隔 (空間の距離)
    "lens_spacing": 4e-4,
    "lens_max_points": 1 << 20,
    # α_{p,R} のチェーン探索
    "max_chain": 8,
    "class_guard": 400,
}

GENERATE = {
    "uniform_points": {"n": 20, "low": -1.0, "high": 1.0},
    "clustered": {"n": 30, "clusters": 3, "spread": 0.05},
    "nnet_pair": {"n": 4},
    "convex_hull": {"n": 12},
    "map_table": {"n": 8, "scale": 2.0},
    # KleinBall では ||x|| <= 0.95 r の範囲でサンプリング
    "klein_radius_fraction": 0.95,
}

SUITE = {
    # 乱数で生成する事例の個数
    "pairs": 1000,
    "tangent_pairs": 200,
    "triples": 1000,
    "npc_triples": 10_000,
    "nets": 10000,
    "minidisk": 200,
    "tables": 100,
    "quadruples": 5,
    # δ-射影のレンズ標本化の許容量の上限
    "projection_allowance": 1e-3,
    # 球面・境界の標本数
    "sphere_samples": 2048,
    "boundary_spacing": 0.005,
}
