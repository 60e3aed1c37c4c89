"""图变换。

弧反转（贝叶斯公式）、完全/部分证据集成，以及在证据取值上对集成后网络做条件化。
"""

import itertools
import logging
from typing import Dict, List, Mapping, Set, Tuple

import numpy as np

from ..errors import (
    CycleError,
    ImpossibleEvidenceError,
    IntegrationError,
    PreconditionError,
    StructuralError,
)
from ..models.network import Cpt, Network, check_assignment
from ..models.results import ReversalPlan, ReversalStep
from ..network import topological_order
from ..utils.constants import IntegrationMode

logger = logging.getLogger(__name__)


def _has_alternate_path(net: Network, src: str, dst: str) -> bool:
    """除直接弧 src->dst 之外是否还有 src 到 dst 的有向路径"""
    stack = [c for c in net.children(src) if c != dst]
    seen: Set[str] = set(stack)
    while stack:
        node = stack.pop()
        if node == dst:
            return True
        for child in net.children(node):
            if child not in seen:
                seen.add(child)
                stack.append(child)
    return False


def reverse_arc_step(
    net: Network, from_id: str, to_id: str
) -> Tuple[Network, ReversalStep]:
    """反转弧 from_id -> to_id，并返回本步记录"""
    net.variable(from_id)
    net.variable(to_id)
    if from_id not in net.parents(to_id):
        raise StructuralError(f"弧 {from_id} -> {to_id} 不存在")
    if _has_alternate_path(net, from_id, to_id):
        raise CycleError(f"反转 {from_id} -> {to_id} 会产生环：存在其他有向路径")

    w = net.parents(from_id)
    v = tuple(p for p in net.parents(to_id) if p != from_id)
    union = w + tuple(p for p in v if p not in w)
    to_parents = union
    from_parents = union + (to_id,)

    from_table = net.table(from_id)
    to_table = net.table(to_id)
    cx = net.cardinality(from_id)
    cy = net.cardinality(to_id)

    new_to_rows: List[np.ndarray] = []
    new_from_rows: List[np.ndarray] = []
    uniform_rows = 0
    ranges = [range(net.cardinality(p)) for p in union]
    for config in itertools.product(*ranges):
        values = dict(zip(union, config))
        px = from_table[net.config_index(from_id, values)]
        pyx = np.empty((cx, cy))
        for x in range(cx):
            values[from_id] = x
            pyx[x] = to_table[net.config_index(to_id, values)]
        joint = px[:, None] * pyx
        py = joint.sum(axis=0)
        new_to_rows.append(py)
        for y in range(cy):
            if py[y] > 0.0:
                new_from_rows.append(joint[:, y] / py[y])
            else:
                # 不可达配置
                new_from_rows.append(np.full(cx, 1.0 / cx))
                uniform_rows += 1

    if uniform_rows:
        logger.warning(
            f"反转 {from_id} -> {to_id}: {uniform_rows} 行分母为 0，已用均匀分布填充"
        )

    step = ReversalStep(
        from_id=from_id,
        to_id=to_id,
        from_parents_before=w,
        to_parents_before=net.parents(to_id),
        from_parents_after=from_parents,
        to_parents_after=to_parents,
        uniform_rows=uniform_rows,
    )
    result = net.replace_cpts(
        {
            to_id: Cpt.from_array(to_parents, np.array(new_to_rows).reshape(-1, cy)),
            from_id: Cpt.from_array(
                from_parents, np.array(new_from_rows).reshape(-1, cx)
            ),
        }
    )
    return result, step


def reverse_arc(net: Network, from_id: str, to_id: str) -> Network:
    """反转一条弧，联合分布不变

    Raises:
        StructuralError: 弧不存在
        CycleError: 存在其他有向路径，反转会产生环
    """
    return reverse_arc_step(net, from_id, to_id)[0]


def replay_plan(net: Network, plan: ReversalPlan) -> Network:
    """在源网络上重放反转计划"""
    for step in plan.steps:
        net = reverse_arc(net, step.from_id, step.to_id)
    return net


def _latest(net: Network, candidates: List[str]) -> str:
    position = {n: i for i, n in enumerate(topological_order(net))}
    return max(candidates, key=position.__getitem__)


def integrate_evidence(
    net: Network, evidence: Mapping[str, int], mode: str = IntegrationMode.FULL
) -> Tuple[Network, ReversalPlan]:
    """证据集成

    full: 反复反转证据节点来自状态节点的弧，直到它没有状态节点父节点；
    partial: 只反转证据节点当前直接状态父节点这一层。
    证据节点按原网络拓扑序处理，父节点按当前拓扑序从后往前反转。

    Args:
        net: 合法网络
        evidence: 非空证据
        mode: "full" 或 "partial"

    Returns:
        Tuple[Network, ReversalPlan]: 变换后的网络与反转计划
    """
    if mode not in IntegrationMode.ALL:
        raise PreconditionError(f"未知集成模式: {mode}")
    if not evidence:
        raise PreconditionError("证据集成需要非空证据")
    check_assignment(net, evidence)

    node_count = len(net.ids)
    # 每次反转都减少（证据节点, 祖先状态节点）对，计划长度有界
    limit = node_count * max(1, node_count * (node_count - 1) // 2)
    plan = ReversalPlan(mode=mode)
    current = net

    for node in [n for n in topological_order(net) if n in evidence]:
        layer = [p for p in current.parents(node) if p not in evidence]
        while True:
            parents = [p for p in current.parents(node) if p not in evidence]
            if mode == IntegrationMode.PARTIAL:
                parents = [p for p in parents if p in layer]
            if not parents:
                break
            parent = _latest(current, parents)
            try:
                current, step = reverse_arc_step(current, parent, node)
            except CycleError as e:
                raise IntegrationError(node, str(e)) from e
            plan.steps.append(step)
            if len(plan.steps) > limit:
                raise IntegrationError(node, f"反转次数超过上限 {limit}")

    logger.debug(f"证据集成 ({mode}): {plan.arcs}")
    return current, plan


def condition_network(net: Network, evidence: Mapping[str, int]) -> Network:
    """删除证据节点，把状态节点的条件概率表在证据取值处切片

    要求每个证据节点的父节点都是证据节点（即已完成完全集成）。结果网络的联合分布
    等于原网络的 P(状态 | E)。
    """
    check_assignment(net, evidence)
    for node in evidence:
        stuck = [p for p in net.parents(node) if p not in evidence]
        if stuck:
            raise PreconditionError(
                f"证据节点 '{node}' 仍有状态父节点 {stuck}，请先完全集成"
            )

    likelihood = evidence_likelihood(net, evidence)
    if likelihood <= 0.0:
        raise ImpossibleEvidenceError(f"证据取值组合概率为 0: {dict(evidence)}")

    variables = [v for v in net.variables if v.id not in evidence]
    cpts: Dict[str, Cpt] = {}
    for var in variables:
        parents = net.parents(var.id)
        kept = tuple(p for p in parents if p not in evidence)
        if len(kept) == len(parents):
            cpts[var.id] = net.cpts[var.id]
            continue
        table = net.table(var.id)
        rows = []
        for config in itertools.product(*[range(net.cardinality(p)) for p in kept]):
            values = dict(evidence)
            values.update(zip(kept, config))
            rows.append(table[net.config_index(var.id, values)])
        cpts[var.id] = Cpt.from_array(kept, np.array(rows))
    return Network.build(variables, cpts, name=net.name)


def evidence_likelihood(net: Network, evidence: Mapping[str, int]) -> float:
    """证据节点只以证据节点为父节点时，证据取值组合的概率"""
    result = 1.0
    for node, value in evidence.items():
        row = net.table(node)[net.config_index(node, evidence)]
        result *= float(row[value])
    return result


def likelihood_spread(net: Network, node: str, observed: int) -> float:
    """node 取 observed 的似然在各父节点配置间的最大/最小比（只看非零值）"""
    column = net.table(node)[:, observed]
    finite = column[column > 0]
    if finite.size == 0:
        return float("inf")
    return float(finite.max() / finite.min())
