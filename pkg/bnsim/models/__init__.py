"""数据模型模块。

包含网络模型与推理结果模型。
"""

from .network import (
    Assignment,
    Evidence,
    Variable,
    Cpt,
    Network,
    check_assignment,
    state_labels,
    binary_variable,
)
from .results import (
    ExactResult,
    ReversalStep,
    ReversalPlan,
    Estimate,
    RunStats,
    SweepResult,
    ComparisonCell,
)

__all__ = [
    "Assignment",
    "Evidence",
    "Variable",
    "Cpt",
    "Network",
    "check_assignment",
    "state_labels",
    "binary_variable",
    "ExactResult",
    "ReversalStep",
    "ReversalPlan",
    "Estimate",
    "RunStats",
    "SweepResult",
    "ComparisonCell",
]
