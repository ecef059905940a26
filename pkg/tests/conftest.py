"""
pytest 公共配置与夹具
"""
import sys
from pathlib import Path

import pytest

# 添加项目根目录到Python路径
project_root = Path(__file__).parent.parent
sys.path.insert(0, str(project_root))

from src.config import get_config  # noqa: E402
from src.models.certificate import ScanConfig  # noqa: E402
from src.services.verifier import Verifier  # noqa: E402

# 验收用的 p 网格
ACCEPTANCE_PS = (0.5, 0.75, 1.0, 2.0, 5.0, 10.0)


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: 验收规模的测试（tests/test_runner.sh quick 会跳过）")


@pytest.fixture(scope="session")
def scan_config():
    """默认扫描配置"""
    return ScanConfig()


@pytest.fixture(scope="session")
def verifier(scan_config):
    """使用默认配置的验证器"""
    return Verifier(scan_config=scan_config, config=get_config())


@pytest.fixture(scope="session")
def coarse_verifier():
    """小网格验证器，用于只关心判定、不关心精度的测试"""
    return Verifier(scan_config=ScanConfig(grid_size=512), config=get_config())
