"""
配置管理模块
从config/config.ini读取扫描、验证器、输出和日志配置，环境变量可覆盖
"""
from src.config.config_loader import ConfigLoader

# 全局配置加载器单例
_config_loader = None


def get_config() -> ConfigLoader:
    """获取全局配置加载器"""
    global _config_loader
    if _config_loader is None:
        _config_loader = ConfigLoader()
    return _config_loader


def reset_config():
    """丢弃缓存的配置（环境变量变化后重新读取，主要供测试使用）"""
    global _config_loader
    _config_loader = None


__all__ = ["get_config", "reset_config", "ConfigLoader"]
