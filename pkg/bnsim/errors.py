"""异常定义。

每一类错误都带有命令行退出码，见 `bnsim.utils.constants.ExitCode`。
"""

from typing import List, Optional

from .utils.constants import ExitCode


class BnsimError(Exception):
    """所有库内错误的基类"""

    exit_code = ExitCode.GENERIC


class NetworkParseError(BnsimError):
    """网络/证据文档语法或字段错误"""

    exit_code = ExitCode.PARSE_ERROR

    def __init__(self, message: str, location: Optional[str] = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class UnknownNodeError(NetworkParseError, KeyError):
    """引用了不存在的节点"""

    def __init__(self, node: str, location: Optional[str] = None):
        self.node = node
        super().__init__(f"未知节点 '{node}'", location)

    def __str__(self) -> str:
        return self.args[0]


class UnknownStateError(NetworkParseError):
    """引用了节点上不存在的状态"""

    def __init__(self, node: str, state: str, location: Optional[str] = None):
        self.node = node
        self.state = state
        super().__init__(f"节点 '{node}' 没有状态 '{state}'", location)


class ValidationError(BnsimError):
    """网络未通过校验，`violations` 为完整报告"""

    exit_code = ExitCode.VALIDATION_ERROR

    def __init__(self, violations: List["Violation"]):  # noqa: F821
        self.violations = list(violations)
        lines = "; ".join(str(v) for v in self.violations)
        super().__init__(f"网络校验失败: {lines}")


class StructuralError(BnsimError):
    """图结构不满足操作要求（弧不存在等）"""

    exit_code = ExitCode.STRUCTURAL_ERROR


class CycleError(StructuralError):
    """图中存在环，或操作会产生环"""


class IntegrationError(StructuralError):
    """证据集成无法继续"""

    def __init__(self, node: str, message: str):
        self.node = node
        super().__init__(f"证据节点 '{node}' 集成失败: {message}")


class PreconditionError(BnsimError, ValueError):
    """调用前提不满足"""

    exit_code = ExitCode.PRECONDITION_ERROR


class ImpossibleEvidenceError(BnsimError):
    """证据概率为 0，后验无定义"""

    exit_code = ExitCode.IMPOSSIBLE_EVIDENCE


class CapacityError(BnsimError):
    """联合状态空间超过穷举上限"""

    exit_code = ExitCode.CAPACITY_ERROR


class UndefinedEstimateError(BnsimError):
    """估计没有任何有效权重"""

    exit_code = ExitCode.UNDEFINED_ESTIMATE


class UndefinedLogError(UndefinedEstimateError, ValueError):
    """误差为 0 或负数，无法取对数"""


class InconsistentStateError(BnsimError):
    """马尔可夫毯内所有取值的得分都为 0"""

    exit_code = ExitCode.INCONSISTENT_STATE


class InitializationError(InconsistentStateError):
    """Gibbs 初始化重试次数用尽"""
