"""采样基础操作：类别抽样、前向采样与试验权重。"""

from typing import Dict, Mapping, Sequence

from ..errors import PreconditionError
from ..models.network import Assignment, Network, check_assignment
from ..network import CompiledNode, compiled, is_normalized
from .rng import RandomStream


def draw_category(row: Sequence[float], rng: RandomStream) -> int:
    """逆 CDF 抽样，恰好消耗一次抽样

    Raises:
        PreconditionError: 概率行未归一化
    """
    if not is_normalized(row):
        raise PreconditionError(f"概率行未归一化: {list(row)}")
    u = rng.uniform()
    cumulative = 0.0
    last = 0
    for j, p in enumerate(row):
        if p <= 0:
            continue
        cumulative += p
        last = j
        if u < cumulative:
            return j
    return last


def _forward(
    nodes: Sequence[CompiledNode], clamped: Mapping[str, int], rng: RandomStream
) -> Assignment:
    values: Assignment = {}
    for node in nodes:
        if node.id in clamped:
            values[node.id] = clamped[node.id]
        else:
            values[node.id] = node.draw(node.row_index(values), rng.uniform())
    return values


def forward_sample(
    net: Network, clamped: Mapping[str, int], rng: RandomStream
) -> Assignment:
    """按拓扑序前向采样；被钳制的节点直接取钳制值，不消耗抽样"""
    check_assignment(net, clamped)
    return _forward(compiled(net), clamped, rng)


def _evidence_nodes(net: Network, evidence: Mapping[str, int]):
    return [n for n in compiled(net) if n.id in evidence]


def _weight(
    evidence_nodes: Sequence[CompiledNode],
    evidence: Mapping[str, int],
    values: Mapping[str, int],
) -> float:
    weight = 1.0
    for node in evidence_nodes:
        weight *= node.rows[node.row_index(values)][evidence[node.id]]
        if weight == 0.0:
            break
    return weight


def trial_weight(
    net: Network, evidence: Mapping[str, int], assignment: Mapping[str, int]
) -> float:
    """证据在采样取值下的似然乘积 Π P(E_i = e_i | 父节点)

    父节点若本身是证据节点，取其观测值。
    """
    check_assignment(net, evidence)
    values: Dict[str, int] = dict(assignment)
    values.update(evidence)
    for node in evidence:
        missing = [p for p in net.parents(node) if p not in values]
        if missing:
            raise PreconditionError(f"证据节点 '{node}' 的父节点未赋值: {missing}")
    return _weight(_evidence_nodes(net, evidence), evidence, values)


def new_tallies(net: Network) -> Dict[str, list]:
    return {v.id: [0.0] * v.cardinality for v in net.variables}


def check_trials(trials: int) -> None:
    if trials < 1:
        raise PreconditionError(f"试验次数必须 >= 1，实际为 {trials}")
