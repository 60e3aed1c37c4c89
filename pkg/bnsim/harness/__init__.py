"""实验框架：误差度量、多次运行实验、算法比较与极端似然网络生成。"""

from .metrics import accumulated_error, error_spread, mean_error, convergence_slope
from .extremal import EVIDENCE_NODE, generate_extremal_network
from .experiment import RunOutcome, execute_run, experiment, run_algorithm, state_nodes
from .report import ComparisonReport, compare_report

__all__ = [
    "accumulated_error",
    "error_spread",
    "mean_error",
    "convergence_slope",
    "EVIDENCE_NODE",
    "generate_extremal_network",
    "RunOutcome",
    "execute_run",
    "experiment",
    "run_algorithm",
    "state_nodes",
    "ComparisonReport",
    "compare_report",
]
