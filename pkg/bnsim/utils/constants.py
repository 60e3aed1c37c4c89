#!/usr/bin/env python
# -*- coding: utf-8 -*-


class Algorithm:
    """模拟算法名称（命令行与结果文件中使用的标签）"""

    LOGIC = "logic"
    LW = "lw"
    LW_INT_FULL = "lw-int-full"
    LW_INT_PARTIAL = "lw-int-partial"
    GIBBS = "gibbs"

    ALL = (LOGIC, LW, LW_INT_FULL, LW_INT_PARTIAL, GIBBS)


class IntegrationMode:
    """证据集成模式"""

    FULL = "full"
    PARTIAL = "partial"

    ALL = (FULL, PARTIAL)


class ExtremalLayout:
    """极端似然网络的结构"""

    DIRECT = "direct"  # 证据直接挂在 B 下
    CHAINED = "chained"  # B -> C -> 证据

    ALL = (DIRECT, CHAINED)


class ExitCode:
    """命令行退出码"""

    OK = 0
    GENERIC = 1
    USAGE = 2  # argparse
    PARSE_ERROR = 3
    VALIDATION_ERROR = 4
    IMPOSSIBLE_EVIDENCE = 5
    CAPACITY_ERROR = 6
    UNDEFINED_ESTIMATE = 7
    STRUCTURAL_ERROR = 8
    PRECONDITION_ERROR = 9
    INCONSISTENT_STATE = 10


# 行和归一化容差
NORMALIZATION_TOLERANCE = 1e-9

# 穷举推理默认状态空间上限
DEFAULT_STATE_CAP = 2 ** 24

STATE_CAP_ENV = "BNSIM_STATE_CAP"

# 结果 CSV 列
RESULT_COLUMNS = [
    "kind",
    "algorithm",
    "trials",
    "runs",
    "run",
    "seed",
    "node",
    "state",
    "estimate",
    "truth",
    "abs_error",
    "metric",
    "value",
    "message",
]

PLOT_COLUMNS = ["algorithm", "trials", "metric", "value"]
