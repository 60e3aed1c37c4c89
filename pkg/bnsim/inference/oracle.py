"""穷举精确推理。

把所有条件概率表广播相乘得到完整联合分布，再按证据切片、求和、归一化。
不做变量消元，作为检验所有采样器和变换的独立基准。
"""

import logging
import math
import os
from typing import Dict, Mapping, Optional

import numpy as np

from ..errors import CapacityError, ImpossibleEvidenceError
from ..models.network import Network, check_assignment
from ..models.results import ExactResult
from ..network import topological_order
from ..utils.constants import DEFAULT_STATE_CAP, STATE_CAP_ENV

logger = logging.getLogger(__name__)


def default_state_cap() -> int:
    """状态空间上限，环境变量优先"""
    value = os.environ.get(STATE_CAP_ENV)
    if value:
        try:
            return int(value)
        except ValueError:
            logger.warning(f"忽略无效的 {STATE_CAP_ENV}={value!r}")
    return DEFAULT_STATE_CAP


def state_space_size(net: Network) -> int:
    return math.prod(v.cardinality for v in net.variables)


def _factor(net: Network, node: str, axis: Mapping[str, int]) -> np.ndarray:
    """把 node 的条件概率表整理成与联合张量同秩、可广播的因子"""
    parents = net.parents(node)
    members = list(parents) + [node]
    shape = [net.cardinality(p) for p in members]
    factor = net.table(node).reshape(shape)
    perm = np.argsort([axis[m] for m in members])
    factor = factor.transpose(perm)
    full_shape = [1] * len(axis)
    for m in members:
        full_shape[axis[m]] = net.cardinality(m)
    return factor.reshape(full_shape)


def joint_table(
    net: Network, state_cap: Optional[int] = None, reverse: bool = False
) -> np.ndarray:
    """完整联合分布张量，轴顺序为变量声明顺序

    Args:
        net: 合法网络
        state_cap: 状态空间上限，None 时取默认值
        reverse: 以逆拓扑序累乘因子（用于交叉检验累加顺序）
    """
    cap = default_state_cap() if state_cap is None else state_cap
    size = state_space_size(net)
    if size > cap:
        raise CapacityError(f"联合状态空间 {size} 超过上限 {cap}")

    axis = {node: i for i, node in enumerate(net.ids)}
    order = topological_order(net)
    if reverse:
        order.reverse()
    joint = np.ones([net.cardinality(n) for n in net.ids], dtype=float)
    for node in order:
        joint = joint * _factor(net, node, axis)
    return joint


def exact_inference(
    net: Network,
    evidence: Mapping[str, int],
    state_cap: Optional[int] = None,
    reverse: bool = False,
) -> ExactResult:
    """穷举计算 P(X|E)

    Args:
        net: 合法网络
        evidence: 证据节点 -> 状态下标
        state_cap: 状态空间上限
        reverse: 逆序累乘与逆序求和

    Returns:
        ExactResult: 各节点后验与 P(E)

    Raises:
        CapacityError: 状态空间超过上限
        ImpossibleEvidenceError: P(E) = 0
    """
    check_assignment(net, evidence)
    joint = joint_table(net, state_cap, reverse)
    axis = {node: i for i, node in enumerate(net.ids)}

    for node, value in evidence.items():
        joint = np.take(joint, [value], axis=axis[node])

    if reverse:
        joint = joint[tuple(slice(None, None, -1) for _ in range(joint.ndim))]
    total = float(joint.sum())

    if total <= 0.0:
        raise ImpossibleEvidenceError(f"证据概率为 0: {dict(evidence)}")

    posterior: Dict[str, np.ndarray] = {}
    for node in net.ids:
        others = tuple(i for i in range(joint.ndim) if i != axis[node])
        marginal = joint.sum(axis=others) if others else joint.copy()
        if reverse:
            marginal = marginal[::-1]
        if node in evidence:
            row = np.zeros(net.cardinality(node))
            row[evidence[node]] = 1.0
        else:
            row = marginal / total
        posterior[node] = row

    logger.debug(f"精确推理 {net.name or '<unnamed>'}: P(E)={total!r}")
    return ExactResult(posterior=posterior, evidence_probability=total)
