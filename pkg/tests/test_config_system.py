#!/usr/bin/env python
# -*- coding: utf-8 -*-

"""
配置系统单元测试

测试配置加载器、环境变量覆盖和日志配置
"""

import json
import logging
import os
import sys
import tempfile
import unittest
from pathlib import Path
from unittest import mock

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.config import get_config, reset_config  # noqa: E402
from src.config.config_loader import ConfigLoader  # noqa: E402
from src.models.certificate import ScanConfig  # noqa: E402
from src.utils.logger import get_logger, log_exception, setup_logger  # noqa: E402


class TestConfigSystem(unittest.TestCase):
    """配置系统测试类"""

    def setUp(self):
        """测试前设置"""
        self.config = ConfigLoader()

    def test_basic_config_loading(self):
        """测试基本配置加载"""
        self.assertEqual(self.config.app_name, "seiffert-bounds")
        self.assertEqual(self.config.app_version, "1.0.0")
        self.assertIn("Q_{t,p}", self.config.app_description)

    def test_scan_section(self):
        """测试扫描配置与 ScanConfig 默认值一致"""
        self.assertEqual(self.config.scan_grid_size, 4096)
        self.assertEqual(self.config.scan_x_min, 1e-6)
        self.assertEqual(self.config.scan_x_max, 1 - 1e-9)
        self.assertEqual(self.config.scan_refine_iters, 60)
        self.assertEqual(self.config.scan_sign_tolerances, {'abs_tol': 1e-13, 'x2_tol': 1e-9})
        self.assertEqual(ScanConfig.from_config(self.config), ScanConfig())

    def test_verifier_section(self):
        """测试验证器配置"""
        self.assertEqual(self.config.sharpness_delta, 1e-3)
        self.assertEqual(self.config.cross_check_samples, 100000)
        self.assertEqual(self.config.monotone_points, 9)
        self.assertEqual(self.config.agreement_tol, 1e-10)
        self.assertEqual(self.config.extremum_tol, 1e-12)
        self.assertEqual(self.config.threshold_tol, 1e-6)

    def test_output_and_logging(self):
        """测试输出与日志配置"""
        self.assertEqual(self.config.default_output_format, "csv")
        self.assertFalse(self.config.log_file_enabled)
        self.assertTrue(self.config.logs_dir_path.is_absolute())

    def test_seed_env_override(self):
        """测试 SEIFFERT_SEED 覆盖随机种子"""
        with mock.patch.dict(os.environ, {"SEIFFERT_SEED": "7"}):
            self.assertEqual(self.config.random_seed, 7)
        with mock.patch.dict(os.environ, {}, clear=False):
            os.environ.pop("SEIFFERT_SEED", None)
            self.assertEqual(self.config.random_seed, 20120101)

    def test_log_level_env_override(self):
        """测试 SEIFFERT_LOG_LEVEL 覆盖日志级别"""
        with mock.patch.dict(os.environ, {"SEIFFERT_LOG_LEVEL": "DEBUG"}):
            self.assertEqual(self.config.log_level, "DEBUG")

    def test_fallbacks(self):
        """测试缺失选项时使用代码默认值"""
        with tempfile.TemporaryDirectory() as tmp:
            path = Path(tmp) / "config.ini"
            path.write_text("[SCAN]\ngrid_size = 128\n", encoding="utf-8")
            config = ConfigLoader(path)
            self.assertEqual(config.scan_grid_size, 128)
            self.assertEqual(config.scan_x_min, 1e-6)
            self.assertEqual(config.agreement_tol, 1e-10)

    def test_missing_file(self):
        """测试配置文件不存在"""
        with self.assertRaises(FileNotFoundError):
            ConfigLoader(Path("/nonexistent/config.ini"))

    def test_singleton(self):
        """测试全局配置单例"""
        self.assertIs(get_config(), get_config())
        first = get_config()
        reset_config()
        self.assertIsNot(get_config(), first)


class TestLogger(unittest.TestCase):
    """日志配置测试类"""

    def test_no_duplicate_handlers(self):
        """重复配置不会重复添加处理器"""
        logger = setup_logger("seiffert_test_logger", level="INFO", json_format=False)
        count = len(logger.handlers)
        setup_logger("seiffert_test_logger", level="DEBUG")
        self.assertEqual(len(logger.handlers), count)
        self.assertEqual(logger.level, logging.DEBUG)

    def test_json_formatter(self):
        """测试 JSON 格式"""
        logger = setup_logger("seiffert_json_logger", level="INFO", json_format=True)
        formatter = logger.handlers[0].formatter
        record = logging.LogRecord("x", logging.INFO, __file__, 1, "scan finished", None, None)
        data = json.loads(formatter.format(record))
        self.assertEqual(data["message"], "scan finished")
        self.assertEqual(data["levelname"], "INFO")

    def test_log_exception(self):
        """log_exception 记录上下文与异常信息"""
        logger = logging.getLogger("seiffert_exception_logger")
        with self.assertLogs(logger, level="ERROR") as captured:
            try:
                raise ValueError("扫描失败")
            except ValueError as e:
                log_exception(logger, e, "网格扫描")
        self.assertIn("发生异常: 网格扫描: 扫描失败", captured.output[0])

    def test_get_logger(self):
        self.assertIs(get_logger("src.services.verifier"), logging.getLogger("src.services.verifier"))

    def test_file_handler(self):
        """测试文件日志"""
        with tempfile.TemporaryDirectory() as tmp:
            log_file = Path(tmp) / "logs" / "verify.log"
            logger = setup_logger("seiffert_file_logger", level="INFO", log_file=log_file)
            logger.info("写入文件")
            for handler in logger.handlers:
                handler.flush()
            self.assertTrue(log_file.exists())
            for handler in list(logger.handlers):
                handler.close()
                logger.removeHandler(handler)


class TestConfigFiles(unittest.TestCase):
    """配置文件测试类"""

    def setUp(self):
        """测试前设置"""
        self.project_root = Path(__file__).parent.parent

    def test_main_config_exists(self):
        """测试主配置文件存在"""
        config_file = self.project_root / "config" / "config.ini"
        self.assertTrue(config_file.exists(), "主配置文件 config.ini 不存在")


if __name__ == '__main__':
    # 设置测试输出
    unittest.main(verbosity=2)
