"""インスタンスとレポートの読み書き."""

import dataclasses
import hashlib
import json
import math
from pathlib import Path

import numpy as np
import pandas as pd

from bodies import ConvexBody
from hausdorff import PointSet
from map_spaces import MapTable
from nnet_metrics import PointMultiset
from spaces import FiniteSpace, ModelSpace, validate_finite_metric


def to_jsonable(value):
    """numpy の値やデータクラスを JSON に書ける形に変換する.

    inf / nan は文字列 "inf", "-inf", "nan" にする。
    """
    if hasattr(value, "to_dict"):
        return to_jsonable(value.to_dict())
    if hasattr(value, "describe"):
        return value.describe()
    if isinstance(value, (PointSet, PointMultiset)):
        return value.to_list()
    if isinstance(value, dict):
        return {str(k): to_jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [to_jsonable(v) for v in value]
    if isinstance(value, np.ndarray):
        return to_jsonable(value.tolist())
    if dataclasses.is_dataclass(value) and not isinstance(value, type):
        return {f.name: to_jsonable(getattr(value, f.name)) for f in dataclasses.fields(value)}
    if isinstance(value, (np.bool_, bool)):
        return bool(value)
    if isinstance(value, (np.integer, int)):
        return int(value)
    if isinstance(value, (np.floating, float)):
        value = float(value)
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return value
    return value


def dumps_canonical(payload) -> str:
    """キー順を固定した JSON 文字列."""
    return json.dumps(to_jsonable(payload), sort_keys=True, indent=2, ensure_ascii=False)


class InstanceLoader:
    """ローカルディレクトリ上のインスタンスファイルとレポートを扱う."""

    def __init__(self, base_dir: str | Path = "."):
        self.base_dir = Path(base_dir)

    def _path(self, name: str | Path) -> Path:
        path = Path(name)
        return path if path.is_absolute() else self.base_dir / path

    def _read_json(self, name: str | Path):
        path = self._path(name)
        if not path.exists():
            raise FileNotFoundError(f"ファイルが見つかりません: {path}")
        with path.open(encoding="utf-8") as f:
            return json.load(f)

    def file_digest(self, name: str | Path) -> str:
        """ファイル内容の sha256."""
        path = self._path(name)
        if not path.exists():
            raise FileNotFoundError(f"ファイルが見つかりません: {path}")
        return hashlib.sha256(path.read_bytes()).hexdigest()

    def load_distance_matrix(self, name: str | Path) -> FiniteSpace:
        """ヘッダーなし CSV の距離行列を読み込み、公理を検証する."""
        df = pd.read_csv(self._path(name), header=None)
        return validate_finite_metric(df.to_numpy(dtype=float))

    def _load_rows(self, name: str | Path):
        path = self._path(name)
        if path.suffix == ".csv":
            return pd.read_csv(path, header=None).to_numpy()
        data = self._read_json(path)
        # generate の出力 ({"points": [...], "metadata": {...}}) も受け付ける
        if isinstance(data, dict):
            data = data["points"]
        return data

    def load_points(self, name: str | Path, space: ModelSpace) -> PointSet:
        """点集合 (JSON の配列、または 1 行 1 点の CSV)."""
        return PointSet.of(space, self._load_rows(name))

    def load_multiset(self, name: str | Path, space: ModelSpace) -> PointMultiset:
        return PointMultiset.of(space, self._load_rows(name))

    def load_body(self, name: str | Path, space: ModelSpace) -> ConvexBody:
        """凸体 ({"kind": "hull" | "ball" | "segment", ...})."""
        data = self._read_json(name)
        if "body" in data:
            data = data["body"]
        return ConvexBody.from_dict(space, data)

    def load_map_table(self, name: str | Path, domain_space: ModelSpace, codomain: ModelSpace) -> MapTable:
        """写像の値の表 ({"domain": [...], "values": [...]})."""
        data = self._read_json(name)
        domain = PointSet.of(domain_space, data["domain"])
        return MapTable.of(domain, codomain, data["values"])

    def save_json(self, payload, name: str | Path) -> Path:
        """キー順を固定した JSON で保存する."""
        path = self._path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(dumps_canonical(payload) + "\n", encoding="utf-8")
        return path

    def save_records_csv(self, records: list[dict], name: str | Path) -> Path:
        """チェック結果を CSV に書き出す (name, anchor, lhs, rhs, slack, pass, error)."""
        columns = ["name", "anchor", "lhs", "rhs", "slack", "pass", "error"]
        df = pd.DataFrame([{c: r.get(c) for c in columns} for r in records], columns=columns)
        path = self._path(name)
        path.parent.mkdir(parents=True, exist_ok=True)
        df.to_csv(path, index=False)
        return path
