"""可复现的均匀随机数流。

算法固定为 numpy 的 PCG64，每次取 ``Generator.random()`` 的 53 位双精度浮点数。
按块预取不改变序列。第 i 次运行的种子由主种子与 i 经 ``SeedSequence`` 派生。
"""

import numpy as np

SEED_MASK = (1 << 64) - 1
BLOCK_SIZE = 4096


def derive_seed(master_seed: int, index: int) -> int:
    """由主种子与运行编号派生 64 位种子（纯函数）"""
    sequence = np.random.SeedSequence(master_seed & SEED_MASK, spawn_key=(index,))
    return int(sequence.generate_state(1, dtype=np.uint64)[0])


class RandomStream:
    """[0,1) 均匀分布抽样流

    Attributes:
        seed: 64 位种子
        position: 已消耗的抽样次数
    """

    def __init__(self, seed: int):
        self.seed = seed & SEED_MASK
        self.position = 0
        self._generator = np.random.Generator(np.random.PCG64(self.seed))
        self._block: list = []
        self._offset = 0

    @classmethod
    def for_run(cls, master_seed: int, run_index: int) -> "RandomStream":
        return cls(derive_seed(master_seed, run_index))

    def uniform(self) -> float:
        if self._offset >= len(self._block):
            self._block = self._generator.random(BLOCK_SIZE).tolist()
            self._offset = 0
        u = self._block[self._offset]
        self._offset += 1
        self.position += 1
        return u

    def __repr__(self) -> str:
        return f"RandomStream(seed={self.seed}, position={self.position})"
