"""多次独立运行的实验执行与计时。

第 i 次运行的种子只取决于 (master_seed, i)，并发执行时结果按运行编号收集，
因此统计量与调度无关。并发时另做一遍顺序计时，避免进程间争用影响计时。
"""

import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Mapping, NamedTuple, Optional, Sequence

import numpy as np

from ..errors import PreconditionError
from ..inference import (
    RandomStream,
    derive_seed,
    exact_inference,
    run_gibbs,
    run_likelihood_weighting,
    run_logic_sampling,
    run_lw_integrated,
)
from ..inference.gibbs import DEFAULT_BURN_IN_FRACTION, DEFAULT_INIT_RETRIES
from ..models.network import Network
from ..models.results import Estimate, ExactResult, RunStats
from ..utils.constants import Algorithm, IntegrationMode
from .metrics import accumulated_error, error_spread, mean_error

logger = logging.getLogger(__name__)

# (net, evidence, trials, rng) -> Estimate
Estimator = Callable[[Network, Mapping[str, int], int, RandomStream], Estimate]


def state_nodes(net: Network, evidence: Mapping[str, int]) -> List[str]:
    return [n for n in net.ids if n not in evidence]


def run_algorithm(
    net: Network,
    evidence: Mapping[str, int],
    algorithm: str,
    trials: int,
    rng: RandomStream,
    burn_in: Optional[int] = None,
    burn_in_fraction: float = DEFAULT_BURN_IN_FRACTION,
    init_retries: int = DEFAULT_INIT_RETRIES,
) -> Estimate:
    """按名称调用模拟算法

    Args:
        algorithm: 见 `Algorithm`
        trials: 试验数（Gibbs 为总轮数）
        burn_in: Gibbs 丢弃轮数，None 时取 trials * burn_in_fraction
    """
    if algorithm == Algorithm.LOGIC:
        return run_logic_sampling(net, evidence, trials, rng)
    if algorithm == Algorithm.LW:
        return run_likelihood_weighting(net, evidence, trials, rng)
    if algorithm == Algorithm.LW_INT_FULL:
        return run_lw_integrated(net, evidence, trials, rng, IntegrationMode.FULL)
    if algorithm == Algorithm.LW_INT_PARTIAL:
        return run_lw_integrated(net, evidence, trials, rng, IntegrationMode.PARTIAL)
    if algorithm == Algorithm.GIBBS:
        if burn_in is None:
            burn_in = int(trials * burn_in_fraction)
        return run_gibbs(net, evidence, trials, rng, burn_in, init_retries)
    raise PreconditionError(f"未知算法 '{algorithm}'，可选: {', '.join(Algorithm.ALL)}")


class RunOutcome(NamedTuple):
    """单次运行的结果，error 为 None 表示估计无定义"""

    error: Optional[float]
    elapsed: float
    posterior: Optional[Dict[str, np.ndarray]]


@dataclass(frozen=True)
class RunTask:
    net: Network
    evidence: Dict[str, int]
    algorithm: str
    trials: int
    seed: int
    nodes: List[str]
    truth: ExactResult
    options: Dict[str, Any] = field(default_factory=dict)
    estimator: Optional[Estimator] = None


def execute_run(task: RunTask) -> RunOutcome:
    """执行一次运行；计时只覆盖算法本身（集成算法包括变换）"""
    rng = RandomStream(task.seed)
    start = time.perf_counter()
    if task.estimator is not None:
        estimate = task.estimator(task.net, task.evidence, task.trials, rng)
    else:
        estimate = run_algorithm(
            task.net, task.evidence, task.algorithm, task.trials, rng, **task.options
        )
    elapsed = time.perf_counter() - start

    if not estimate.defined:
        return RunOutcome(None, elapsed, None)
    error = accumulated_error(estimate, task.truth, task.nodes)
    return RunOutcome(error, elapsed, estimate.posteriors())


def _mean_posterior(outcomes: Sequence[RunOutcome]) -> Dict[str, np.ndarray]:
    defined = [o.posterior for o in outcomes if o.posterior is not None]
    if not defined:
        return {}
    return {node: np.mean([p[node] for p in defined], axis=0) for node in defined[0]}


def experiment(
    net: Network,
    evidence: Mapping[str, int],
    algorithm: str,
    trials_per_run: int,
    runs: int,
    master_seed: int,
    *,
    truth: Optional[ExactResult] = None,
    nodes: Optional[Sequence[str]] = None,
    parallel: int = 1,
    timing_runs: Optional[int] = None,
    burn_in: Optional[int] = None,
    burn_in_fraction: float = DEFAULT_BURN_IN_FRACTION,
    init_retries: int = DEFAULT_INIT_RETRIES,
    state_cap: Optional[int] = None,
    estimator: Optional[Estimator] = None,
) -> RunStats:
    """执行 runs 次独立运行并汇总误差

    Args:
        truth: 精确后验，None 时调用穷举推理计算一次
        nodes: 参与误差计算的节点，默认全部非证据节点
        parallel: 进程数，> 1 时统计与计时分开执行
        timing_runs: 并发时顺序计时的运行数，默认全部
        estimator: 替换内置算法的估计函数（需可 pickle 才能并发）

    Returns:
        RunStats: 无定义的运行记为 None，不参与均值
    """
    if runs < 1:
        raise PreconditionError(f"runs 必须 >= 1，实际 {runs}")
    if trials_per_run < 1:
        raise PreconditionError(f"trials_per_run 必须 >= 1，实际 {trials_per_run}")
    if truth is None:
        truth = exact_inference(net, evidence, state_cap=state_cap)
    nodes = list(nodes) if nodes is not None else state_nodes(net, evidence)
    options = {
        "burn_in": burn_in,
        "burn_in_fraction": burn_in_fraction,
        "init_retries": init_retries,
    }
    tasks = [
        RunTask(
            net=net,
            evidence=dict(evidence),
            algorithm=algorithm,
            trials=trials_per_run,
            seed=derive_seed(master_seed, i),
            nodes=nodes,
            truth=truth,
            options=options,
            estimator=estimator,
        )
        for i in range(runs)
    ]

    if parallel > 1 and runs > 1:
        with ProcessPoolExecutor(max_workers=parallel) as pool:
            outcomes = list(pool.map(execute_run, tasks))
        count = min(timing_runs or runs, runs)
        times = [execute_run(t).elapsed for t in tasks[:count]]
    else:
        outcomes = [execute_run(t) for t in tasks]
        times = [o.elapsed for o in outcomes]

    errors = [o.error for o in outcomes]
    defined = [e for e in errors if e is not None]
    failed = runs - len(defined)
    if failed:
        logger.warning(f"{algorithm} @ {trials_per_run}: {failed}/{runs} 次运行估计无定义")

    stats = RunStats(
        algorithm=algorithm,
        trials_per_run=trials_per_run,
        runs=runs,
        mean_error=mean_error(defined),
        error_spread=error_spread(defined),
        mean_time_per_trial=float(np.mean(times)) / trials_per_run,
        per_run_errors=errors,
        mean_posterior=_mean_posterior(outcomes),
    )
    if not stats.defined:
        logger.warning(f"{algorithm} @ {trials_per_run}: 全部运行估计无定义，误差为 NaN")
    logger.debug(
        f"{algorithm} @ {trials_per_run} x {runs}: "
        f"误差 {stats.mean_error:.6g} ± {stats.error_spread:.6g}, "
        f"每次试验 {stats.mean_time_per_trial * 1e6:.2f} µs"
    )
    return stats
