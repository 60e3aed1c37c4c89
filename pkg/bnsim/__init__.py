"""离散贝叶斯网络随机模拟推理库。

提供网络数据模型、穷举精确推理、弧反转与证据集成、四种随机模拟算法，
以及算法对比实验工具。
"""

__version__ = "0.1.0"
