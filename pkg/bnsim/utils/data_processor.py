"""文档读写。

网络与证据使用 JSON，结果使用 CSV（pandas 写出，17 位有效数字）。
"""

import json
import logging
from pathlib import Path
from typing import Any, Dict, Iterable, List, Mapping, Optional, TextIO, Union

import numpy as np
import pandas as pd

from ..errors import (
    NetworkParseError,
    UndefinedEstimateError,
    UnknownNodeError,
    UnknownStateError,
    ValidationError,
)
from ..harness.metrics import accumulated_error
from ..inference.rng import derive_seed
from ..models.network import Cpt, Network, Variable, state_labels
from ..models.results import Estimate, ExactResult, RunStats
from ..network import topological_order, validate_network
from .constants import RESULT_COLUMNS

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

CSV_FLOAT_FORMAT = "%.17g"

# 可空整数列，避免 64 位种子被转成浮点数
_INT_COLUMNS = {"trials": "Int64", "runs": "Int64", "run": "Int64", "seed": "UInt64"}
_FLOAT_COLUMNS = ("estimate", "truth", "abs_error", "value")


def _loads(text: str, what: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkParseError(
            f"{what} JSON 语法错误: {e.msg}", f"line {e.lineno} column {e.colno}"
        ) from None


def _read_text(path: PathLike) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as e:
        raise NetworkParseError(f"无法读取文件: {e.strerror}", str(path)) from None


def _expect(value: Any, kind: type, location: str, description: str) -> Any:
    if not isinstance(value, kind) or isinstance(value, bool) and kind is not bool:
        raise NetworkParseError(f"应为{description}，实际为 {type(value).__name__}", location)
    return value


def _parse_node(data: Any, location: str) -> tuple:
    _expect(data, dict, location, "对象")
    if "id" not in data:
        raise NetworkParseError("缺少字段 'id'", location)
    _expect(data["id"], str, f"{location}.id", "字符串")

    states = _expect(data.get("states"), list, f"{location}.states", "列表")
    for j, label in enumerate(states):
        _expect(label, str, f"{location}.states[{j}]", "字符串")

    parents = _expect(data.get("parents", []), list, f"{location}.parents", "列表")
    for j, parent in enumerate(parents):
        _expect(parent, str, f"{location}.parents[{j}]", "字符串")

    rows = _expect(data.get("cpt"), list, f"{location}.cpt", "列表")
    for r, row in enumerate(rows):
        _expect(row, list, f"{location}.cpt[{r}]", "列表")
        for c, p in enumerate(row):
            _expect(p, (int, float), f"{location}.cpt[{r}][{c}]", "数值")

    variable = Variable.from_dict(data)
    cpt = Cpt.from_dict({"parents": parents, "cpt": rows})
    return variable, cpt


def network_from_dict(data: Any) -> Network:
    """由已解析的 JSON 对象构造网络（不校验）"""
    _expect(data, dict, "<document>", "对象")
    if "nodes" not in data:
        raise NetworkParseError("缺少字段 'nodes'", "<document>")
    nodes = _expect(data["nodes"], list, "nodes", "列表")
    name = _expect(data.get("name", ""), str, "name", "字符串")

    variables: List[Variable] = []
    cpts: Dict[str, Cpt] = {}
    for i, node in enumerate(nodes):
        variable, cpt = _parse_node(node, f"nodes[{i}]")
        variables.append(variable)
        cpts.setdefault(variable.id, cpt)
    return Network.build(variables, cpts, name=name)


def parse_network(text: str) -> Network:
    """解析网络文档并校验

    Raises:
        NetworkParseError: 语法或字段类型错误，location 指出行列或字段路径
        ValidationError: 网络不合法，附带完整违规列表
    """
    net = network_from_dict(_loads(text, "网络"))
    violations = validate_network(net)
    if violations:
        raise ValidationError(violations)
    return net


def network_to_dict(net: Network) -> Dict[str, Any]:
    return {
        "name": net.name,
        "nodes": [
            {
                "id": node,
                "states": list(net.variable(node).states),
                "parents": list(net.parents(node)),
                "cpt": [list(row) for row in net.cpts[node].rows],
            }
            for node in topological_order(net)
        ],
    }


def serialize_network(net: Network) -> str:
    """规范形式：节点按拓扑序，浮点数以 repr 精度写出"""
    return json.dumps(network_to_dict(net), indent=2, ensure_ascii=False) + "\n"


def parse_evidence(text: str, net: Network) -> Dict[str, int]:
    """解析 {节点: 状态标签} 形式的证据并转为下标

    Raises:
        UnknownNodeError: 节点不存在
        UnknownStateError: 状态标签不存在
    """
    if not text.strip():
        return {}
    data = _expect(_loads(text, "证据"), dict, "<evidence>", "对象")
    evidence: Dict[str, int] = {}
    for node, label in data.items():
        if not net.has(node):
            raise UnknownNodeError(node, f"evidence.{node}")
        _expect(label, str, f"evidence.{node}", "状态标签字符串")
        index = net.variable(node).state_index(label)
        if index < 0:
            raise UnknownStateError(node, label, f"evidence.{node}")
        evidence[node] = index
    return evidence


def serialize_evidence(net: Network, evidence: Mapping[str, int]) -> str:
    return json.dumps(state_labels(net, evidence), indent=2, ensure_ascii=False) + "\n"


def load_network(path: PathLike) -> Network:
    try:
        return parse_network(_read_text(path))
    except NetworkParseError as e:
        if e.location and not e.location.startswith(str(path)):
            raise NetworkParseError(str(e), str(path)) from None
        raise


def load_network_unchecked(path: PathLike) -> Network:
    """读取网络文档但不校验（供 validate 命令输出完整报告）"""
    return network_from_dict(_loads(_read_text(path), "网络"))


def load_evidence(path: Optional[PathLike], net: Network) -> Dict[str, int]:
    """读取证据文件，path 为 None 时返回空证据"""
    if path is None:
        return {}
    return parse_evidence(_read_text(path), net)


def records_frame(records: Iterable[Dict[str, Any]]) -> pd.DataFrame:
    """把结果记录整理成固定列的 DataFrame"""
    records = list(records)
    columns = {}
    for column in RESULT_COLUMNS:
        values = [r.get(column) for r in records]
        if column in _INT_COLUMNS:
            columns[column] = pd.array(values, dtype=_INT_COLUMNS[column])
        elif column in _FLOAT_COLUMNS:
            columns[column] = pd.Series(
                [np.nan if v is None else float(v) for v in values], dtype=float
            )
        else:
            columns[column] = ["" if v is None else str(v) for v in values]
    return pd.DataFrame(columns, columns=RESULT_COLUMNS)


def estimate_records(
    net: Network,
    estimate: Estimate,
    seed: int,
    truth: Optional[ExactResult] = None,
    nodes: Optional[Iterable[str]] = None,
) -> List[Dict[str, Any]]:
    """单次估计的记录：每个节点状态一行，外加诊断摘要行"""
    if not estimate.defined:
        raise UndefinedEstimateError(
            f"{estimate.algorithm}: {estimate.trials_run} 次试验没有有效样本，估计无定义"
        )
    base = {
        "algorithm": estimate.algorithm,
        "trials": estimate.trials_run,
        "runs": 1,
        "run": 0,
        "seed": seed,
    }
    records = []
    for node, row in estimate.posteriors().items():
        for j, value in enumerate(row):
            record = dict(base, kind="estimate", node=node, state=net.variable(node).states[j])
            record["estimate"] = float(value)
            if truth is not None:
                record["truth"] = truth.probability(node, j)
                record["abs_error"] = abs(record["estimate"] - record["truth"])
            records.append(record)

    metrics = {
        "total_weight": estimate.total_weight,
        "effective_sample_size": estimate.effective_sample_size,
    }
    if estimate.evidence_probability is not None:
        metrics["evidence_probability"] = estimate.evidence_probability
    if estimate.trials_accepted is not None:
        metrics["trials_accepted"] = estimate.trials_accepted
    if truth is not None:
        metrics["accumulated_error"] = accumulated_error(estimate, truth, nodes or [])
    for metric, value in metrics.items():
        records.append(dict(base, kind="summary", metric=metric, value=value))
    return records


def exact_records(net: Network, result: ExactResult) -> List[Dict[str, Any]]:
    records = [
        {
            "kind": "exact",
            "algorithm": "exact",
            "node": node,
            "state": net.variable(node).states[j],
            "truth": float(p),
        }
        for node in net.ids
        for j, p in enumerate(result.posterior[node])
    ]
    records.append(
        {
            "kind": "summary",
            "algorithm": "exact",
            "metric": "evidence_probability",
            "value": result.evidence_probability,
        }
    )
    return records


def run_stats_records(
    net: Network,
    stats: RunStats,
    master_seed: int,
    truth: ExactResult,
    nodes: Iterable[str],
) -> List[Dict[str, Any]]:
    """一组运行的记录：平均后验、逐次误差与汇总指标（不含计时）"""
    base = {
        "algorithm": stats.algorithm,
        "trials": stats.trials_per_run,
        "runs": stats.runs,
    }
    records = []
    for node in nodes:
        if node not in stats.mean_posterior:
            continue
        for j, value in enumerate(stats.mean_posterior[node]):
            expected = truth.probability(node, j)
            records.append(
                dict(
                    base,
                    kind="posterior",
                    seed=master_seed,
                    node=node,
                    state=net.variable(node).states[j],
                    estimate=float(value),
                    truth=expected,
                    abs_error=abs(float(value) - expected),
                )
            )
    for i, error in enumerate(stats.per_run_errors):
        records.append(
            dict(
                base,
                kind="run",
                run=i,
                seed=derive_seed(master_seed, i),
                metric="accumulated_error",
                value=error,
                message="" if error is not None else "undefined",
            )
        )
    for metric, value in (
        ("mean_error", stats.mean_error),
        ("error_spread", stats.error_spread),
        ("failed_runs", stats.failed_runs),
    ):
        records.append(dict(base, kind="summary", seed=master_seed, metric=metric, value=value))
    return records


def comparison_records(net: Network, report) -> List[Dict[str, Any]]:
    """比较表的全部记录，失败的格子输出一行 error"""
    records = []
    for cell in report.cells:
        if cell.ok:
            records.extend(
                run_stats_records(net, cell.stats, report.master_seed, report.truth, report.nodes)
            )
        else:
            records.append(
                {
                    "kind": "error",
                    "algorithm": cell.algorithm,
                    "trials": cell.trials,
                    "runs": report.runs,
                    "seed": report.master_seed,
                    "message": cell.error,
                }
            )
    return records


def write_csv(frame: pd.DataFrame, target: Union[PathLike, TextIO]) -> None:
    """写出 CSV：逗号分隔、点号小数、带表头"""
    if isinstance(target, (str, Path)):
        Path(target).parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(target, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator="\n")
