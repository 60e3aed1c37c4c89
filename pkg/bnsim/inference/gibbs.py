"""马尔可夫毯采样（Gibbs）。"""

import logging
from typing import Mapping, Optional

import numpy as np

from ..errors import InconsistentStateError, InitializationError, PreconditionError
from ..models.network import Network, check_assignment
from ..models.results import Estimate
from ..network import CompiledNode, compiled
from ..utils.constants import Algorithm
from .rng import RandomStream
from .sampling import _evidence_nodes, _forward, _weight, new_tallies

logger = logging.getLogger(__name__)

DEFAULT_BURN_IN_FRACTION = 0.1
DEFAULT_INIT_RETRIES = 1000


def _blanket_row(
    node: CompiledNode, index: dict, state: dict, cardinality: int
) -> list:
    """未归一化得分：P(node=j|父) · Π P(子=当前值|父, node=j)"""
    own = node.rows[node.row_index(state)]
    scores = []
    saved = state[node.id]
    for j in range(cardinality):
        score = own[j]
        if score > 0.0:
            state[node.id] = j
            for child_id in node.children:
                child = index[child_id]
                score *= child.rows[child.row_index(state)][state[child_id]]
                if score == 0.0:
                    break
        scores.append(score)
    state[node.id] = saved
    return scores


def markov_blanket_distribution(
    net: Network, node: str, others: Mapping[str, int]
) -> np.ndarray:
    """给定其余全部变量时 node 的条件分布

    Raises:
        PreconditionError: others 未覆盖除 node 外的全部变量
        InconsistentStateError: 所有得分都为 0
    """
    missing = [n for n in net.ids if n != node and n not in others]
    if missing:
        raise PreconditionError(f"马尔可夫毯缺少取值: {missing}")
    check_assignment(net, {k: v for k, v in others.items() if k != node})
    index = {n.id: n for n in compiled(net)}
    state = dict(others)
    state[node] = 0
    scores = np.array(_blanket_row(index[node], index, state, net.cardinality(node)))
    total = scores.sum()
    if total <= 0.0:
        raise InconsistentStateError(f"节点 '{node}' 在当前取值下所有状态得分为 0")
    return scores / total


def run_gibbs(
    net: Network,
    evidence: Mapping[str, int],
    sweeps: int,
    rng: RandomStream,
    burn_in: Optional[int] = None,
    max_init_retries: int = DEFAULT_INIT_RETRIES,
) -> Estimate:
    """Gibbs 采样：证据钳制，每轮按拓扑序从马尔可夫毯分布重采样全部非证据节点

    初始状态由前向采样给出，直到证据似然大于 0；burn_in 之后每轮计数一次。

    Args:
        net: 合法网络
        evidence: 证据，其精确概率应大于 0
        sweeps: 总轮数（含 burn-in）
        rng: 随机数流
        burn_in: 丢弃的轮数，默认总轮数的 10%
        max_init_retries: 初始化最多尝试次数
    """
    if burn_in is None:
        burn_in = int(sweeps * DEFAULT_BURN_IN_FRACTION)
    if burn_in < 0 or sweeps <= burn_in:
        raise PreconditionError(f"需要 sweeps > burn_in >= 0，实际 {sweeps}, {burn_in}")
    check_assignment(net, evidence)

    nodes = compiled(net)
    index = {n.id: n for n in nodes}
    evidence_nodes = _evidence_nodes(net, evidence)
    free = [n for n in nodes if n.id not in evidence]
    cards = {v.id: v.cardinality for v in net.variables}

    for attempt in range(max_init_retries):
        state = _forward(nodes, evidence, rng)
        if _weight(evidence_nodes, evidence, state) > 0.0:
            break
    else:
        raise InitializationError(f"{max_init_retries} 次初始化都与证据矛盾")
    logger.debug(f"Gibbs 初始化尝试 {attempt + 1} 次")

    tallies = new_tallies(net)
    for sweep in range(sweeps):
        for node in free:
            scores = _blanket_row(node, index, state, cards[node.id])
            total = sum(scores)
            if total <= 0.0:
                raise InconsistentStateError(
                    f"第 {sweep} 轮节点 '{node.id}' 所有状态得分为 0"
                )
            u = rng.uniform() * total
            cumulative = 0.0
            choice = 0
            for j, score in enumerate(scores):
                if score <= 0.0:
                    continue
                cumulative += score
                choice = j
                if u < cumulative:
                    break
            state[node.id] = choice
        if sweep >= burn_in:
            for node_id, value in state.items():
                tallies[node_id][value] += 1.0

    counted = float(sweeps - burn_in)
    return Estimate(
        algorithm=Algorithm.GIBBS,
        tallies={n: np.array(t) for n, t in tallies.items()},
        total_weight=counted,
        trials_run=sweeps,
        weight_square_sum=counted,
    )
