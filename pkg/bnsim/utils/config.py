"""配置加载。

配置文件为 TOML，缺失或无法解析时记录错误并使用默认值。
环境变量 BNSIM_STATE_CAP 优先于 [oracle] state_cap。
"""

import logging
import os
try:
    import tomllib
except ModuleNotFoundError:  # Python < 3.11
    import tomli as tomllib
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Dict, List, Optional, Union

from .constants import DEFAULT_STATE_CAP, STATE_CAP_ENV

logger = logging.getLogger(__name__)

DEFAULT_CONFIG_PATH = "bnsim.toml"
DEFAULT_TRIALS_LIST = [100, 200, 500, 1000, 2000]


@dataclass
class Config:
    log_level: str
    log_file: str  # 为空时不写文件
    log_max_size: int  # MB
    log_backup_count: int
    state_cap: int
    burn_in_fraction: float
    gibbs_init_retries: int
    runs: int
    trials_list: List[int] = field(default_factory=lambda: list(DEFAULT_TRIALS_LIST))
    master_seed: int = 0
    parallel: int = 1
    timing_runs: int = 10

    @classmethod
    def from_dict(cls, config_dict: Dict[str, Any]) -> "Config":
        basic = config_dict.get("basic", {})
        log = config_dict.get("log", {})
        oracle = config_dict.get("oracle", {})
        sampling = config_dict.get("sampling", {})
        harness = config_dict.get("harness", {})

        state_cap = oracle.get("state_cap", DEFAULT_STATE_CAP)
        env_cap = os.environ.get(STATE_CAP_ENV)
        if env_cap:
            try:
                state_cap = int(env_cap)
            except ValueError:
                logger.error(f"环境变量 {STATE_CAP_ENV}={env_cap!r} 不是整数，已忽略")

        return cls(
            log_level=basic.get("log_level", "INFO"),
            log_file=log.get("file", ""),
            log_max_size=log.get("max_size", 10),
            log_backup_count=log.get("backup_count", 5),
            state_cap=state_cap,
            burn_in_fraction=sampling.get("burn_in_fraction", 0.1),
            gibbs_init_retries=sampling.get("gibbs_init_retries", 1000),
            runs=harness.get("runs", 100),
            trials_list=list(harness.get("trials_list", DEFAULT_TRIALS_LIST)),
            master_seed=harness.get("master_seed", 0),
            parallel=harness.get("parallel", 1),
            timing_runs=harness.get("timing_runs", 10),
        )


def load_config(path: Optional[Union[str, Path]] = None) -> Config:
    """读取配置文件

    Args:
        path: 配置文件路径，None 时读取当前目录的 bnsim.toml（不存在则用默认值）
    """
    config_path = Path(path or DEFAULT_CONFIG_PATH)
    if config_path.exists():
        try:
            with open(config_path, "rb") as f:
                config_dict = tomllib.load(f)
            return Config.from_dict(config_dict)
        except Exception as e:
            logger.error(f"加载配置文件失败: {e}")
            return Config.from_dict({})
    if path is not None:
        logger.error(f"配置文件不存在: {config_path}")
    return Config.from_dict({})
