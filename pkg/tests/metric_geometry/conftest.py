"""metric_geometry 配下のモジュールをインポート可能にする."""

import sys
from pathlib import Path

METRIC_GEOMETRY_SRC = Path(__file__).resolve().parents[2] / "src" / "metric_geometry"
if str(METRIC_GEOMETRY_SRC) not in sys.path:
    sys.path.insert(0, str(METRIC_GEOMETRY_SRC))
