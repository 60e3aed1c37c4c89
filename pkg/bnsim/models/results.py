"""推理结果数据模型。"""

import math
from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple

import numpy as np

from ..errors import PreconditionError, UndefinedEstimateError
from ..utils.constants import Algorithm


@dataclass(frozen=True)
class ExactResult:
    """穷举推理结果

    posterior: 节点 -> 各状态后验概率
    evidence_probability: P(E)
    """

    posterior: Dict[str, np.ndarray]
    evidence_probability: float

    def probability(self, node: str, state: int) -> float:
        return float(self.posterior[node][state])


@dataclass(frozen=True)
class ReversalStep:
    """一次弧反转的记录"""

    from_id: str
    to_id: str
    from_parents_before: Tuple[str, ...]
    to_parents_before: Tuple[str, ...]
    from_parents_after: Tuple[str, ...]
    to_parents_after: Tuple[str, ...]
    # P'(to|u) = 0 的配置数，这些行以均匀分布填充
    uniform_rows: int = 0

    def to_dict(self) -> Dict[str, Any]:
        return {
            "from": self.from_id,
            "to": self.to_id,
            "from_parents_before": list(self.from_parents_before),
            "to_parents_before": list(self.to_parents_before),
            "from_parents_after": list(self.from_parents_after),
            "to_parents_after": list(self.to_parents_after),
            "uniform_rows": self.uniform_rows,
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReversalStep":
        return cls(
            from_id=data.get("from", ""),
            to_id=data.get("to", ""),
            from_parents_before=tuple(data.get("from_parents_before", [])),
            to_parents_before=tuple(data.get("to_parents_before", [])),
            from_parents_after=tuple(data.get("from_parents_after", [])),
            to_parents_after=tuple(data.get("to_parents_after", [])),
            uniform_rows=data.get("uniform_rows", 0),
        )


@dataclass
class ReversalPlan:
    """证据集成过程中按顺序执行的弧反转"""

    mode: str = ""
    steps: List[ReversalStep] = field(default_factory=list)

    @property
    def arcs(self) -> List[Tuple[str, str]]:
        return [(s.from_id, s.to_id) for s in self.steps]

    @property
    def flagged(self) -> bool:
        """是否有零分母行被均匀填充"""
        return any(s.uniform_rows for s in self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def to_dict(self) -> Dict[str, Any]:
        return {"mode": self.mode, "steps": [s.to_dict() for s in self.steps]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> "ReversalPlan":
        return cls(
            mode=data.get("mode", ""),
            steps=[ReversalStep.from_dict(s) for s in data.get("steps", [])],
        )


@dataclass
class Estimate:
    """一次模拟运行的估计

    tallies 按节点记录各状态累计的计数或权重；evidence 节点为点质量。
    """

    algorithm: str
    tallies: Dict[str, np.ndarray]
    total_weight: float
    trials_run: int
    trials_accepted: Optional[int] = None  # 仅逻辑采样
    weight_square_sum: float = 0.0
    # 已知的精确证据概率（完全集成时由变换给出）
    exact_evidence_probability: Optional[float] = None

    def __post_init__(self):
        if self.trials_accepted is not None and self.trials_accepted > self.trials_run:
            raise PreconditionError("接受的试验数不能超过总试验数")

    @property
    def defined(self) -> bool:
        return self.total_weight > 0

    def posterior(self, node: str) -> np.ndarray:
        """归一化后的后验估计"""
        if not self.defined:
            raise UndefinedEstimateError(
                f"{self.algorithm}: {self.trials_run} 次试验的总权重为 0，估计无定义"
            )
        return self.tallies[node] / self.total_weight

    def posteriors(self) -> Dict[str, np.ndarray]:
        return {node: self.posterior(node) for node in self.tallies}

    @property
    def effective_sample_size(self) -> float:
        """(Σw)² / Σw²"""
        if self.weight_square_sum <= 0:
            return 0.0
        return self.total_weight ** 2 / self.weight_square_sum

    @property
    def evidence_probability(self) -> Optional[float]:
        """P(E) 的估计：接受率或平均权重

        Gibbs 的计数与证据概率无关，返回 None。
        """
        if self.algorithm == Algorithm.GIBBS:
            return None
        if self.exact_evidence_probability is not None:
            return self.exact_evidence_probability
        if self.trials_accepted is not None:
            return self.trials_accepted / self.trials_run
        return self.total_weight / self.trials_run if self.trials_run else 0.0


@dataclass
class RunStats:
    """一组重复运行的统计

    per_run_errors 中 None 表示该次运行估计无定义。
    """

    algorithm: str
    trials_per_run: int
    runs: int
    mean_error: float
    error_spread: float
    mean_time_per_trial: float
    per_run_errors: List[Optional[float]]
    # 成功运行的平均后验估计
    mean_posterior: Dict[str, np.ndarray] = field(default_factory=dict)

    def __post_init__(self):
        if self.runs != len(self.per_run_errors):
            raise PreconditionError("runs 与 per_run_errors 长度不一致")

    @property
    def failed_runs(self) -> int:
        return sum(1 for e in self.per_run_errors if e is None)

    @property
    def mean_run_time(self) -> float:
        return self.mean_time_per_trial * self.trials_per_run

    @property
    def defined(self) -> bool:
        return not math.isnan(self.mean_error)


@dataclass
class SweepResult:
    """同一算法在递增试验数下的统计"""

    algorithm: str
    points: List[Tuple[int, RunStats]] = field(default_factory=list)

    def __post_init__(self):
        trials = [t for t, _ in self.points]
        if any(b <= a for a, b in zip(trials, trials[1:])):
            raise PreconditionError(f"试验数必须严格递增: {trials}")

    @property
    def trials(self) -> List[int]:
        return [t for t, _ in self.points]

    @property
    def errors(self) -> List[float]:
        return [s.mean_error for _, s in self.points]

    @property
    def spreads(self) -> List[float]:
        return [s.error_spread for _, s in self.points]


@dataclass
class ComparisonCell:
    """比较表中的一格：成功时有 stats，失败时有 error"""

    algorithm: str
    trials: int
    stats: Optional[RunStats] = None
    error: Optional[str] = None

    @property
    def ok(self) -> bool:
        return self.stats is not None
