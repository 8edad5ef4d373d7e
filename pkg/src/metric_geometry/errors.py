"""例外クラス."""


class SpaceMismatchError(ValueError):
    """異なる空間の点・集合が混在している."""


class GeodesicUnavailableError(ValueError):
    """測地線演算 ω が定義されていない空間で呼び出された."""


class GuardExceededError(ValueError):
    """列挙数が上限を超えた."""


class MetricAxiomError(ValueError):
    """距離行列が距離の公理を満たさない."""

    def __init__(self, axiom: str, indices: tuple[int, ...], slack: float):
        self.axiom = axiom
        self.indices = indices
        self.slack = slack
        super().__init__(f"距離の公理違反 ({axiom}): indices={indices}, slack={slack:.3e}")

    def to_dict(self) -> dict:
        return {"axiom": self.axiom, "indices": list(self.indices), "slack": self.slack}


class ConvergenceError(RuntimeError):
    """反復計算が許容誤差内に収束しなかった."""

    def __init__(self, message: str, residual: float):
        self.residual = residual
        super().__init__(f"{message} (residual={residual:.3e})")
