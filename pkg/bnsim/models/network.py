"""网络数据模型。

变量、条件概率表与网络本身。网络构造后不可变，所有变换都返回新网络。

条件概率表的行序约定：父节点配置按父节点列出的顺序编号，最后列出的父节点变化最快。
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import numpy as np

from ..errors import PreconditionError, UnknownNodeError

# 变量 id -> 状态下标
Assignment = Dict[str, int]
Evidence = Mapping[str, int]


@dataclass(frozen=True)
class Variable:
    """离散变量"""

    id: str
    states: Tuple[str, ...]

    @property
    def cardinality(self) -> int:
        return len(self.states)

    def state_index(self, label: str) -> int:
        """状态标签转下标，找不到时返回 -1"""
        try:
            return self.states.index(label)
        except ValueError:
            return -1

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Variable":
        return cls(id=data.get("id", ""), states=tuple(data.get("states", [])))


@dataclass(frozen=True)
class Cpt:
    """条件概率表：每个父节点配置一行，每行对应所属变量的各状态"""

    parents: Tuple[str, ...]
    rows: Tuple[Tuple[float, ...], ...]

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "Cpt":
        return cls(
            parents=tuple(data.get("parents", [])),
            rows=tuple(tuple(float(p) for p in row) for row in data.get("cpt", [])),
        )

    @classmethod
    def from_array(cls, parents: Sequence[str], table: np.ndarray) -> "Cpt":
        return cls(
            parents=tuple(parents),
            rows=tuple(tuple(float(p) for p in row) for row in np.asarray(table)),
        )


@dataclass(frozen=True, eq=False)
class Network:
    """贝叶斯网络

    相等比较是结构性的：与变量声明顺序无关。
    """

    variables: Tuple[Variable, ...]
    cpts: Mapping[str, Cpt]
    name: str = ""
    # 派生数据缓存（邻接表、数值表、编译后的采样计划）
    _cache: Dict[str, Any] = field(
        default_factory=dict, init=False, repr=False, compare=False
    )

    @classmethod
    def build(
        cls, variables: Sequence[Variable], cpts: Mapping[str, Cpt], name: str = ""
    ) -> "Network":
        return cls(variables=tuple(variables), cpts=dict(cpts), name=name)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Network):
            return NotImplemented
        return (
            self.name == other.name
            and {v.id: v for v in self.variables} == {v.id: v for v in other.variables}
            and dict(self.cpts) == dict(other.cpts)
        )

    __hash__ = None

    @property
    def ids(self) -> Tuple[str, ...]:
        return tuple(v.id for v in self.variables)

    def _index(self) -> Dict[str, Variable]:
        index = self._cache.get("index")
        if index is None:
            index = {v.id: v for v in self.variables}
            self._cache["index"] = index
        return index

    def has(self, node: str) -> bool:
        return node in self._index()

    def variable(self, node: str) -> Variable:
        try:
            return self._index()[node]
        except KeyError:
            raise UnknownNodeError(node) from None

    def cardinality(self, node: str) -> int:
        return self.variable(node).cardinality

    def parents(self, node: str) -> Tuple[str, ...]:
        self.variable(node)
        return self.cpts[node].parents

    def children(self, node: str) -> Tuple[str, ...]:
        """子节点，按声明顺序"""
        children = self._cache.get("children")
        if children is None:
            children = {v.id: [] for v in self.variables}
            for v in self.variables:
                cpt = self.cpts.get(v.id)
                for p in cpt.parents if cpt else ():
                    if p in children:
                        children[p].append(v.id)
            children = {k: tuple(c) for k, c in children.items()}
            self._cache["children"] = children
        self.variable(node)
        return children[node]

    def arcs(self) -> List[Tuple[str, str]]:
        return [(p, v.id) for v in self.variables for p in self.cpts[v.id].parents]

    def strides(self, node: str) -> Tuple[int, ...]:
        """父节点配置编号的步长（最后一个父节点步长为 1）"""
        strides = self._cache.setdefault("strides", {})
        if node not in strides:
            cards = [self.cardinality(p) for p in self.parents(node)]
            result = [1] * len(cards)
            for i in range(len(cards) - 2, -1, -1):
                result[i] = result[i + 1] * cards[i + 1]
            strides[node] = tuple(result)
        return strides[node]

    def config_count(self, node: str) -> int:
        count = 1
        for p in self.parents(node):
            count *= self.cardinality(p)
        return count

    def config_index(self, node: str, values: Mapping[str, int]) -> int:
        """父节点取值对应的行号"""
        index = 0
        for p, stride in zip(self.parents(node), self.strides(node)):
            if p not in values:
                raise PreconditionError(f"节点 '{node}' 的父节点 '{p}' 未赋值")
            index += values[p] * stride
        return index

    def table(self, node: str) -> np.ndarray:
        """条件概率表的只读数组，形状为 (配置数, 状态数)"""
        tables = self._cache.setdefault("tables", {})
        if node not in tables:
            self.variable(node)
            array = np.array(self.cpts[node].rows, dtype=float)
            array.setflags(write=False)
            tables[node] = array
        return tables[node]

    def replace_cpts(self, updates: Mapping[str, Cpt]) -> "Network":
        cpts = dict(self.cpts)
        cpts.update(updates)
        return Network(variables=self.variables, cpts=cpts, name=self.name)


def check_assignment(net: Network, assignment: Mapping[str, int]) -> None:
    """检查赋值引用的节点存在且下标在范围内"""
    for node, value in assignment.items():
        card = net.cardinality(node)
        if not isinstance(value, (int, np.integer)) or not 0 <= value < card:
            raise PreconditionError(
                f"节点 '{node}' 的取值 {value!r} 超出范围 [0, {card})"
            )


def state_labels(net: Network, assignment: Mapping[str, int]) -> Dict[str, str]:
    return {n: net.variable(n).states[v] for n, v in assignment.items()}


def binary_variable(node: str, states: Optional[Sequence[str]] = None) -> Variable:
    return Variable(node, tuple(states or ("true", "false")))
