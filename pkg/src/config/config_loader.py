"""
配置加载器 - 从config.ini读取配置，环境变量（含 .env 文件）可覆盖
"""
import configparser
import os
from pathlib import Path
from typing import Optional

from dotenv import load_dotenv


class ConfigLoader:
    """配置加载器类"""

    def __init__(self, config_path: Optional[Path] = None):
        """
        初始化配置加载器

        Args:
            config_path: 配置文件路径，默认使用 <项目根目录>/config/config.ini
        """
        # 初始化项目路径
        self.project_root = Path(__file__).parent.parent.parent

        # .env 中的变量不会覆盖已经存在的环境变量
        load_dotenv(self.project_root / ".env", override=False)

        self.config = configparser.ConfigParser()
        self.config_path = Path(config_path) if config_path else self._find_config_file()

        if self.config_path and self.config_path.exists():
            self.config.read(self.config_path, encoding='utf-8')
        else:
            raise FileNotFoundError(
                f"配置文件不存在: {self.config_path}。请检查 config/config.ini"
            )

    def _find_config_file(self) -> Path:
        """查找config.ini文件"""
        return self.project_root / "config" / "config.ini"

    def get(self, section: str, option: str, fallback=None):
        """获取配置值"""
        try:
            return self.config.get(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError):
            return fallback

    def get_int(self, section: str, option: str, fallback=None):
        """获取整数配置值"""
        try:
            return self.config.getint(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError, ValueError):
            return fallback

    def get_float(self, section: str, option: str, fallback=None):
        """获取浮点数配置值"""
        try:
            return self.config.getfloat(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError, ValueError):
            return fallback

    def get_bool(self, section: str, option: str, fallback=False):
        """获取布尔值配置"""
        try:
            return self.config.getboolean(section, option)
        except (configparser.NoSectionError, configparser.NoOptionError, ValueError):
            return fallback

    # ===== APP 配置 =====
    @property
    def app_name(self) -> str:
        return self.get("APP", "name", "seiffert-bounds")

    @property
    def app_description(self) -> str:
        return self.get("APP", "description", "Seiffert 均值精确阈值验证")

    @property
    def app_version(self) -> str:
        return self.get("APP", "version", "1.0.0")

    # ===== SCAN 配置 =====
    @property
    def scan_grid_size(self) -> int:
        return self.get_int("SCAN", "grid_size", 4096)

    @property
    def scan_x_min(self) -> float:
        return self.get_float("SCAN", "x_min", 1e-6)

    @property
    def scan_x_max(self) -> float:
        return self.get_float("SCAN", "x_max", 1.0 - 1e-9)

    @property
    def scan_refine_iters(self) -> int:
        return self.get_int("SCAN", "refine_iters", 60)

    @property
    def scan_geometric_ratio(self) -> float:
        return self.get_float("SCAN", "geometric_ratio", 0.5)

    @property
    def scan_sign_tolerances(self) -> dict:
        return {
            "abs_tol": self.get_float("SCAN", "sign_abs_tol", 1e-13),
            "x2_tol": self.get_float("SCAN", "sign_x2_tol", 1e-9),
        }

    # ===== VERIFIER 配置 =====
    @property
    def sharpness_delta(self) -> float:
        return self.get_float("VERIFIER", "sharpness_delta", 1e-3)

    @property
    def cross_check_samples(self) -> int:
        return self.get_int("VERIFIER", "cross_check_samples", 100000)

    @property
    def random_seed(self) -> int:
        """随机种子（支持环境变量 SEIFFERT_SEED 覆盖）"""
        seed = os.getenv("SEIFFERT_SEED") or self.get("VERIFIER", "random_seed")
        return int(seed) if seed else 20120101

    @property
    def monotone_points(self) -> int:
        return self.get_int("VERIFIER", "monotone_points", 9)

    @property
    def agreement_tol(self) -> float:
        return self.get_float("VERIFIER", "agreement_tol", 1e-10)

    @property
    def extremum_tol(self) -> float:
        return self.get_float("VERIFIER", "extremum_tol", 1e-12)

    @property
    def threshold_tol(self) -> float:
        """经验阈值与闭式阈值允许的偏差"""
        return self.get_float("VERIFIER", "threshold_tol", 1e-6)

    # ===== OUTPUT 配置 =====
    @property
    def default_output_format(self) -> str:
        return self.get("OUTPUT", "default_format", "csv").lower()

    # ===== LOGGING 配置 =====
    @property
    def logs_dir_path(self) -> Path:
        log_dir = self.get("LOGGING", "log_dir", "logs")
        if not Path(log_dir).is_absolute():
            return self.project_root / log_dir
        return Path(log_dir)

    @property
    def log_level(self) -> str:
        return os.getenv("SEIFFERT_LOG_LEVEL") or self.get("LOGGING", "log_level", "WARNING")

    @property
    def log_json(self) -> bool:
        return self.get_bool("LOGGING", "log_json", False)

    @property
    def log_file_enabled(self) -> bool:
        return self.get_bool("LOGGING", "file_enabled", False)

    @property
    def rotating_max_bytes(self) -> int:
        return self.get_int("LOGGING", "rotating_max_bytes", 10485760)  # 10MB

    @property
    def rotating_backup_count(self) -> int:
        return self.get_int("LOGGING", "rotating_backup_count", 5)
