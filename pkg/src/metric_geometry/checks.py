"""不等式チェックの記録."""

from config import TOLERANCES


def check_record(name: str, lhs: float, rhs: float, anchor: str = "", tol: float | None = None) -> dict:
    """lhs <= rhs の判定結果.

    Returns:
        dict: {name, anchor, lhs, rhs, slack, pass} (slack = rhs - lhs)
    """
    tol = TOLERANCES["inequality"] if tol is None else tol
    lhs, rhs = float(lhs), float(rhs)
    slack = rhs - lhs
    return {
        "name": name,
        "anchor": anchor,
        "lhs": lhs,
        "rhs": rhs,
        "slack": slack,
        "pass": bool(slack >= -tol),
    }


def equality_record(name: str, lhs: float, rhs: float, anchor: str = "", tol: float | None = None) -> dict:
    """lhs = rhs (誤差 tol 以内) の判定結果. slack = tol - |lhs - rhs|."""
    tol = TOLERANCES["geodesic"] if tol is None else tol
    lhs, rhs = float(lhs), float(rhs)
    slack = tol - abs(lhs - rhs)
    return {
        "name": name,
        "anchor": anchor,
        "lhs": lhs,
        "rhs": rhs,
        "slack": slack,
        "pass": bool(slack >= 0.0),
    }


def summarize(records: list[dict]) -> dict:
    failed = [r["name"] for r in records if not r["pass"]]
    return {"checks": records, "pass": not failed, "failed": failed}
