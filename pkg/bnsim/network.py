"""网络核心操作。

校验、拓扑排序、局部分布查询与联合概率计算，以及供采样器使用的编译结构。
"""

import heapq
import logging
import math
from bisect import bisect_right
from dataclasses import dataclass
from itertools import accumulate
from typing import Dict, List, Mapping, Optional, Tuple

import numpy as np

from .errors import CycleError, PreconditionError
from .models.network import Network, check_assignment
from .utils.constants import NORMALIZATION_TOLERANCE

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Violation:
    """一条校验违规"""

    kind: str
    node: Optional[str]
    message: str
    row: Optional[int] = None

    def __str__(self) -> str:
        where = self.node or "<network>"
        if self.row is not None:
            where = f"{where}[row {self.row}]"
        return f"{self.kind} @ {where}: {self.message}"


def validate_network(net: Network) -> List[Violation]:
    """校验网络，返回全部违规（空列表表示合法）

    Args:
        net: 待校验网络

    Returns:
        List[Violation]: 违规列表，包含位置
    """
    report: List[Violation] = []
    cards: Dict[str, int] = {}

    for var in net.variables:
        if var.id in cards:
            report.append(Violation("duplicate_id", var.id, "变量 id 重复"))
            continue
        cards[var.id] = len(var.states)
        if len(var.states) < 2:
            report.append(Violation("states", var.id, "至少需要两个状态"))
        if len(set(var.states)) != len(var.states):
            report.append(Violation("states", var.id, "状态标签重复"))

    for node in net.cpts:
        if node not in cards:
            report.append(Violation("orphan_cpt", node, "条件概率表没有对应变量"))

    resolved_parents: Dict[str, List[str]] = {}
    for node, card in cards.items():
        cpt = net.cpts.get(node)
        if cpt is None:
            report.append(Violation("missing_cpt", node, "缺少条件概率表"))
            resolved_parents[node] = []
            continue

        dangling = [p for p in cpt.parents if p not in cards]
        for p in dangling:
            report.append(Violation("dangling_parent", node, f"父节点 '{p}' 不存在"))
        if len(set(cpt.parents)) != len(cpt.parents):
            report.append(Violation("duplicate_parent", node, "父节点重复"))
        resolved_parents[node] = [p for p in cpt.parents if p in cards]

        if not dangling:
            expected = math.prod(cards[p] for p in cpt.parents)
            if len(cpt.rows) != expected:
                report.append(
                    Violation(
                        "row_count",
                        node,
                        f"应有 {expected} 行，实际 {len(cpt.rows)} 行",
                    )
                )

        for i, row in enumerate(cpt.rows):
            if len(row) != card:
                report.append(
                    Violation("row_width", node, f"应有 {card} 列，实际 {len(row)} 列", i)
                )
                continue
            if any(not (0.0 <= p <= 1.0) for p in row):
                report.append(Violation("probability", node, "概率不在 [0,1] 内", i))
                continue
            total = math.fsum(row)
            if abs(total - 1.0) > NORMALIZATION_TOLERANCE:
                report.append(Violation("row_sum", node, f"行和为 {total!r}", i))

    unsorted = _kahn(list(cards), resolved_parents)[1]
    if unsorted:
        report.append(
            Violation("cycle", None, f"存在有向环，涉及节点: {', '.join(unsorted)}")
        )
    return report


def _kahn(
    order: List[str], parents: Mapping[str, List[str]]
) -> Tuple[List[str], List[str]]:
    """按声明顺序打破平局的 Kahn 排序，返回 (已排序, 未能排序)"""
    position = {node: i for i, node in enumerate(order)}
    waiting = {node: len(set(parents[node])) for node in order}
    children: Dict[str, List[str]] = {node: [] for node in order}
    for node in order:
        for p in set(parents[node]):
            children[p].append(node)

    heap = [position[n] for n in order if waiting[n] == 0]
    heapq.heapify(heap)
    result = []
    while heap:
        node = order[heapq.heappop(heap)]
        result.append(node)
        for child in children[node]:
            waiting[child] -= 1
            if waiting[child] == 0:
                heapq.heappush(heap, position[child])
    placed = set(result)
    return result, [n for n in order if n not in placed]


def topological_order(net: Network) -> List[str]:
    """拓扑序：每个变量排在其全部父节点之后，平局按声明顺序"""
    cached = net._cache.get("topological_order")
    if cached is None:
        ids = list(net.ids)
        ordered, unsorted = _kahn(ids, {n: list(net.parents(n)) for n in ids})
        if unsorted:
            raise CycleError(f"网络存在有向环，涉及节点: {', '.join(unsorted)}")
        cached = tuple(ordered)
        net._cache["topological_order"] = cached
    return list(cached)


def local_distribution(
    net: Network, node: str, parent_values: Mapping[str, int]
) -> np.ndarray:
    """给定父节点取值时 node 的概率行"""
    return net.table(node)[net.config_index(node, parent_values)]


def joint_probability(net: Network, full: Mapping[str, int]) -> float:
    """完整赋值的联合概率：各局部分布取值的乘积"""
    missing = [n for n in net.ids if n not in full]
    if missing:
        raise PreconditionError(f"赋值不完整，缺少: {', '.join(missing)}")
    check_assignment(net, full)
    result = 1.0
    for node in net.ids:
        result *= float(local_distribution(net, node, full)[full[node]])
        if result == 0.0:
            break
    return result


def is_normalized(row) -> bool:
    return abs(math.fsum(row) - 1.0) <= NORMALIZATION_TOLERANCE


@dataclass(frozen=True)
class CompiledNode:
    """采样用的节点结构：行与累积行都是 Python 列表"""

    id: str
    parents: Tuple[str, ...]
    strides: Tuple[int, ...]
    rows: Tuple[Tuple[float, ...], ...]
    cumulative: Tuple[Tuple[float, ...], ...]
    children: Tuple[str, ...]

    def row_index(self, values: Mapping[str, int]) -> int:
        index = 0
        for p, stride in zip(self.parents, self.strides):
            index += values[p] * stride
        return index

    def draw(self, index: int, u: float) -> int:
        """逆 CDF：返回累积概率首次超过 u 的状态"""
        cumulative = self.cumulative[index]
        j = bisect_right(cumulative, u)
        if j >= len(cumulative):
            # 浮点舍入使累积和略小于 1 时取最后一个非零状态
            row = self.rows[index]
            j = max(k for k, p in enumerate(row) if p > 0)
        return j


def compiled(net: Network) -> Tuple[CompiledNode, ...]:
    """按拓扑序编译网络，结果缓存在网络上"""
    cached = net._cache.get("compiled")
    if cached is None:
        nodes = []
        for node in topological_order(net):
            rows = tuple(tuple(r) for r in net.cpts[node].rows)
            nodes.append(
                CompiledNode(
                    id=node,
                    parents=net.parents(node),
                    strides=net.strides(node),
                    rows=rows,
                    cumulative=tuple(tuple(accumulate(r)) for r in rows),
                    children=net.children(node),
                )
            )
        cached = tuple(nodes)
        net._cache["compiled"] = cached
        logger.debug(f"编译网络 {net.name or '<unnamed>'}: {len(cached)} 个节点")
    return cached
