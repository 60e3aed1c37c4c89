"""逻辑采样（带拒绝）。"""

import logging
from typing import Mapping

import numpy as np

from ..models.network import Network, check_assignment
from ..models.results import Estimate
from ..network import compiled
from ..utils.constants import Algorithm
from .rng import RandomStream
from .sampling import _forward, check_trials, new_tallies

logger = logging.getLogger(__name__)


def run_logic_sampling(
    net: Network, evidence: Mapping[str, int], trials: int, rng: RandomStream
) -> Estimate:
    """前向采样全部节点（包括证据节点），证据取值不符的试验丢弃

    全部试验都被拒绝时返回无定义的估计（total_weight = 0）。
    """
    check_trials(trials)
    check_assignment(net, evidence)
    nodes = compiled(net)
    tallies = new_tallies(net)
    observed = list(evidence.items())
    accepted = 0

    for _ in range(trials):
        values = _forward(nodes, {}, rng)
        if all(values[node] == value for node, value in observed):
            accepted += 1
            for node, value in values.items():
                tallies[node][value] += 1.0

    if accepted == 0:
        logger.warning(f"逻辑采样 {trials} 次试验全部被拒绝")
    logger.debug(f"逻辑采样接受率 {accepted}/{trials}")
    return Estimate(
        algorithm=Algorithm.LOGIC,
        tallies={n: np.array(t) for n, t in tallies.items()},
        total_weight=float(accepted),
        trials_run=trials,
        trials_accepted=accepted,
        weight_square_sum=float(accepted),
    )
