"""误差与收敛度量。"""

import math
from typing import Iterable, Sequence

import numpy as np

from ..errors import PreconditionError, UndefinedLogError
from ..models.results import Estimate, ExactResult, SweepResult


def accumulated_error(
    estimate: Estimate, truth: ExactResult, nodes: Iterable[str]
) -> float:
    """单次运行的累计绝对误差 Σ_z Σ_j |p̂(z_j) − p(z_j)|

    nodes 只应包含状态节点。估计无定义时抛出 UndefinedEstimateError。
    """
    total = 0.0
    for node in nodes:
        if node not in truth.posterior:
            raise PreconditionError(f"真实后验中没有节点 '{node}'")
        total += float(np.abs(estimate.posterior(node) - truth.posterior[node]).sum())
    return total


def mean_error(errors: Sequence[float]) -> float:
    return float(np.mean(errors)) if len(errors) else float("nan")


def error_spread(errors: Sequence[float]) -> float:
    """sqrt(E[err²] − (E[err])²)"""
    if not len(errors):
        return float("nan")
    values = np.asarray(errors, dtype=float)
    variance = float(np.mean(values ** 2) - np.mean(values) ** 2)
    return math.sqrt(max(variance, 0.0))


def convergence_slope(sweep: SweepResult) -> float:
    """log(平均误差) 对 log(试验数) 的最小二乘斜率"""
    if len(sweep.points) < 3:
        raise PreconditionError(f"至少需要 3 个点，实际 {len(sweep.points)}")
    errors = np.asarray(sweep.errors, dtype=float)
    if np.any(~np.isfinite(errors)) or np.any(errors <= 0):
        raise UndefinedLogError(f"误差必须为正数才能取对数: {errors.tolist()}")
    trials = np.asarray(sweep.trials, dtype=float)
    slope, _ = np.polyfit(np.log(trials), np.log(errors), 1)
    return float(slope)
