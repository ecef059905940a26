"""
命令行模块
提供 seiffert 命令组（eval / table / certify / trace）
"""
from src.cli.commands import cli

__all__ = ["cli"]
