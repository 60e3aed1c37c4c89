"""工具模块。

常量、配置、日志与文档读写。
"""

from .constants import Algorithm, IntegrationMode, ExtremalLayout, ExitCode

__all__ = ["Algorithm", "IntegrationMode", "ExtremalLayout", "ExitCode"]
