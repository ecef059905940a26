"""
日志工具
=======
提供统一的日志配置和记录功能。

核心功能：
- 日志记录器配置（控制台输出到 stderr，stdout 留给数据）
- 可选的文件输出与日志轮转
- 可选的 JSON 行格式（python-json-logger），便于批量验证任务收集
- 异常记录

依赖：
- src.config.ConfigLoader - 日志级别、格式、目录配置（可选）
- pythonjsonlogger - JSON 格式化器

使用示例：
    from src.utils.logger import get_logger, log_exception

    logger = get_logger(__name__)
    logger.info("扫描完成")

    try:
        verifier.scan_sign(params)
    except Exception as e:
        log_exception(logger, e, "网格扫描失败")
"""
import logging
import logging.handlers
import sys
from pathlib import Path
from typing import Optional

from pythonjsonlogger.json import JsonFormatter

DEFAULT_FORMAT = '%(asctime)s - %(name)s - %(levelname)s - %(message)s'


class _StderrHandler(logging.StreamHandler):
    """始终写入当前的 sys.stderr（CLI 测试中 stderr 会被替换）"""

    @property
    def stream(self):
        return sys.stderr

    @stream.setter
    def stream(self, value):
        pass


def _build_formatter(json_format: bool) -> logging.Formatter:
    """根据配置选择文本或 JSON 格式化器"""
    if json_format:
        return JsonFormatter(
            '%(asctime)s %(name)s %(levelname)s %(message)s',
            datefmt='%Y-%m-%dT%H:%M:%S'
        )
    return logging.Formatter(fmt=DEFAULT_FORMAT, datefmt='%Y-%m-%d %H:%M:%S')


def setup_logger(name: str = "src",
                 level: Optional[str] = None,
                 log_file: Optional[Path] = None,
                 json_format: Optional[bool] = None) -> logging.Logger:
    """
    配置日志记录器

    Args:
        name: 日志记录器名称（默认 "src"，所有模块日志都挂在它下面）
        level: 日志级别，None 时从 config 读取
        log_file: 日志文件路径。None 且配置启用文件日志时写入 logs/<name>.log
        json_format: 是否使用 JSON 格式，None 时从 config 读取

    Returns:
        配置好的Logger对象
    """
    logger = logging.getLogger(name)

    # ===== 从ConfigLoader补全未显式传入的参数 =====
    # 说明：延迟导入避免循环依赖；配置不可用时使用默认值
    file_enabled = log_file is not None
    max_bytes, backup_count = 10 * 1024 * 1024, 5
    try:
        from src.config import get_config
        config = get_config()
        level = level or config.log_level
        json_format = config.log_json if json_format is None else json_format
        if log_file is None and config.log_file_enabled:
            log_file = config.logs_dir_path / f"{name}.log"
            file_enabled = True
        max_bytes = config.rotating_max_bytes
        backup_count = config.rotating_backup_count
    except Exception:
        level = level or "WARNING"
        json_format = bool(json_format)

    logger.setLevel(getattr(logging, level.upper(), logging.WARNING))

    # 防止重复添加处理器
    if logger.handlers:
        return logger

    formatter = _build_formatter(json_format)

    # 控制台处理器写 stderr，stdout 留给数据
    console_handler = _StderrHandler()
    console_handler.setFormatter(formatter)
    logger.addHandler(console_handler)

    if file_enabled and log_file:
        log_file.parent.mkdir(parents=True, exist_ok=True)

        # 使用RotatingFileHandler进行日志轮转
        file_handler = logging.handlers.RotatingFileHandler(
            log_file,
            maxBytes=max_bytes,
            backupCount=backup_count,
            encoding='utf-8'
        )
        file_handler.setFormatter(formatter)
        logger.addHandler(file_handler)

    return logger


def get_logger(name: str) -> logging.Logger:
    """获取模块日志记录器"""
    return logging.getLogger(name)


def log_exception(logger: logging.Logger, exception: Exception, context: str = ""):
    """
    记录异常信息

    Args:
        logger: 日志记录器
        exception: 异常对象
        context: 上下文信息
    """
    msg = f"发生异常: {context}" if context else "发生异常"
    logger.exception(f"{msg}: {str(exception)}")
