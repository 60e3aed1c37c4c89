"""证据加权（似然加权）及其与证据集成的组合。"""

import logging
from typing import Mapping

import numpy as np

from ..models.network import Network, check_assignment
from ..models.results import Estimate
from ..network import compiled
from ..utils.constants import Algorithm, IntegrationMode
from .rng import RandomStream
from .sampling import _evidence_nodes, _forward, _weight, check_trials, new_tallies
from .transform import condition_network, evidence_likelihood, integrate_evidence

logger = logging.getLogger(__name__)


def run_likelihood_weighting(
    net: Network,
    evidence: Mapping[str, int],
    trials: int,
    rng: RandomStream,
    algorithm: str = Algorithm.LW,
) -> Estimate:
    """只采样状态节点，每次试验按证据似然乘积加权

    后验估计为 Σ w·1[z=z_j] / Σ w，即所有试验完成后再归一化。
    """
    check_trials(trials)
    check_assignment(net, evidence)
    nodes = compiled(net)
    evidence_nodes = _evidence_nodes(net, evidence)
    tallies = new_tallies(net)
    total = 0.0
    square_sum = 0.0

    for _ in range(trials):
        values = _forward(nodes, evidence, rng)
        weight = _weight(evidence_nodes, evidence, values)
        if weight == 0.0:
            continue
        total += weight
        square_sum += weight * weight
        for node, value in values.items():
            tallies[node][value] += weight

    if total == 0.0:
        logger.warning(f"证据加权 {trials} 次试验的总权重为 0")
    return Estimate(
        algorithm=algorithm,
        tallies={n: np.array(t) for n, t in tallies.items()},
        total_weight=total,
        trials_run=trials,
        weight_square_sum=square_sum,
    )


def run_lw_integrated(
    net: Network,
    evidence: Mapping[str, int],
    trials: int,
    rng: RandomStream,
    mode: str = IntegrationMode.FULL,
) -> Estimate:
    """先做证据集成再做证据加权

    full: 集成后在证据取值上条件化，前向采样的每次试验权重都为 1；
    partial: 在部分集成后的网络上对剩余证据节点做证据加权。
    """
    algorithm = (
        Algorithm.LW_INT_FULL if mode == IntegrationMode.FULL else Algorithm.LW_INT_PARTIAL
    )
    check_trials(trials)
    if not evidence:
        return run_likelihood_weighting(net, evidence, trials, rng, algorithm)

    integrated, plan = integrate_evidence(net, evidence, mode)
    if mode == IntegrationMode.PARTIAL:
        return run_likelihood_weighting(integrated, evidence, trials, rng, algorithm)

    conditioned = condition_network(integrated, evidence)
    estimate = run_likelihood_weighting(conditioned, {}, trials, rng, algorithm)
    for node, value in evidence.items():
        row = np.zeros(net.cardinality(node))
        row[value] = estimate.total_weight
        estimate.tallies[node] = row
    estimate.tallies = {n: estimate.tallies[n] for n in net.ids}
    estimate.exact_evidence_probability = evidence_likelihood(integrated, evidence)
    logger.debug(f"完全集成后采样 {len(conditioned.ids)} 个状态节点，计划 {plan.arcs}")
    return estimate
