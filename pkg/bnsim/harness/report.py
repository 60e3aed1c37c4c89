"""算法比较表。"""

import logging
from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence

import pandas as pd
from tabulate import tabulate

from ..errors import BnsimError, PreconditionError
from ..inference import exact_inference
from ..models.network import Network
from ..models.results import ComparisonCell, ExactResult, SweepResult
from ..utils.constants import PLOT_COLUMNS, Algorithm
from .experiment import experiment, state_nodes
from .metrics import convergence_slope

logger = logging.getLogger(__name__)

SUMMARY_COLUMNS = [
    "algorithm",
    "trials",
    "runs",
    "failed_runs",
    "mean_error",
    "error_spread",
    "time_per_trial",
    "run_time",
    "error",
]

# 进入画图表的指标
PLOT_METRICS = ["mean_error", "error_spread", "time_per_trial", "run_time"]


@dataclass
class ComparisonReport:
    """(算法, 试验数) 网格上的实验结果"""

    master_seed: int
    runs: int
    algorithms: List[str]
    trials_list: List[int]
    truth: ExactResult
    nodes: List[str]
    cells: List[ComparisonCell] = field(default_factory=list)

    def cell(self, algorithm: str, trials: int) -> ComparisonCell:
        for c in self.cells:
            if c.algorithm == algorithm and c.trials == trials:
                return c
        raise KeyError((algorithm, trials))

    def sweep(self, algorithm: str) -> SweepResult:
        """某算法成功格子组成的扫描"""
        points = [
            (c.trials, c.stats)
            for c in self.cells
            if c.algorithm == algorithm and c.ok
        ]
        return SweepResult(algorithm=algorithm, points=points)

    def slopes(self) -> Dict[str, Optional[float]]:
        """各算法的收敛斜率，无法拟合时为 None"""
        result = {}
        for algorithm in self.algorithms:
            try:
                result[algorithm] = convergence_slope(self.sweep(algorithm))
            except BnsimError as e:
                logger.debug(f"{algorithm} 收敛斜率无法计算: {e}")
                result[algorithm] = None
        return result

    def summary_frame(self) -> pd.DataFrame:
        rows = []
        for c in self.cells:
            row = {"algorithm": c.algorithm, "trials": c.trials, "runs": self.runs}
            if c.ok:
                s = c.stats
                row.update(
                    failed_runs=s.failed_runs,
                    mean_error=s.mean_error,
                    error_spread=s.error_spread,
                    time_per_trial=s.mean_time_per_trial,
                    run_time=s.mean_run_time,
                    error="",
                )
            else:
                row.update(error=c.error)
            rows.append(row)
        return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)

    def plot_frame(self) -> pd.DataFrame:
        """长格式画图数据 (algorithm, trials, metric, value)"""
        rows = []
        for c in self.cells:
            if not c.ok:
                continue
            values = {
                "mean_error": c.stats.mean_error,
                "error_spread": c.stats.error_spread,
                "time_per_trial": c.stats.mean_time_per_trial,
                "run_time": c.stats.mean_run_time,
            }
            for metric in PLOT_METRICS:
                rows.append((c.algorithm, c.trials, metric, values[metric]))
        return pd.DataFrame(rows, columns=PLOT_COLUMNS)

    def render(self) -> str:
        """控制台摘要表"""
        summary = self.summary_frame().copy()
        summary["time_per_trial"] = summary["time_per_trial"] * 1e6
        summary.rename(columns={"time_per_trial": "µs/trial", "run_time": "run_time(s)"}, inplace=True)
        table = tabulate(
            summary,
            headers="keys",
            tablefmt="simple",
            showindex=False,
            floatfmt=".6g",
            missingval="-",
        )
        slopes = ", ".join(
            f"{a}: {s:.3f}" for a, s in self.slopes().items() if s is not None
        )
        footer = f"\n收敛斜率: {slopes}" if slopes else ""
        return (
            f"比较 {len(self.algorithms)} 个算法 x {len(self.trials_list)} 个试验数，"
            f"每格 {self.runs} 次运行，主种子 {self.master_seed}\n{table}{footer}"
        )


def compare_report(
    net: Network,
    evidence: Mapping[str, int],
    algorithms: Sequence[str],
    trials_list: Sequence[int],
    runs: int,
    master_seed: int,
    **options,
) -> ComparisonReport:
    """对每个 (算法, 试验数) 执行一次实验

    精确后验只计算一次；单个格子的错误记录在格子里，不影响其他格子。
    options 透传给 `experiment`（parallel、timing_runs、burn_in_fraction 等）。
    """
    unknown = [a for a in algorithms if a not in Algorithm.ALL]
    if unknown:
        raise PreconditionError(f"未知算法: {unknown}")
    if not algorithms or not trials_list:
        raise PreconditionError("算法列表与试验数列表都不能为空")
    trials_list = list(trials_list)
    if any(t < 1 for t in trials_list) or any(
        b <= a for a, b in zip(trials_list, trials_list[1:])
    ):
        raise PreconditionError(f"试验数必须为正且严格递增: {trials_list}")

    truth = exact_inference(net, evidence, state_cap=options.pop("state_cap", None))
    nodes = state_nodes(net, evidence)
    report = ComparisonReport(
        master_seed=master_seed,
        runs=runs,
        algorithms=list(algorithms),
        trials_list=trials_list,
        truth=truth,
        nodes=nodes,
    )
    for algorithm in algorithms:
        for trials in trials_list:
            try:
                stats = experiment(
                    net, evidence, algorithm, trials, runs, master_seed,
                    truth=truth, nodes=nodes, **options,
                )
                report.cells.append(ComparisonCell(algorithm, trials, stats=stats))
            except BnsimError as e:
                logger.warning(f"{algorithm} @ {trials} 失败: {e}")
                report.cells.append(ComparisonCell(algorithm, trials, error=str(e)))
    return report
