"""
Seiffert 均值阈值验证工具
命令行入口

使用 python app.py --help 查看命令
"""
import sys
from pathlib import Path

# 添加项目根目录到Python路径
sys.path.insert(0, str(Path(__file__).parent))

from src.cli import cli  # noqa: E402


def main():
    """命令行入口"""
    cli(prog_name="seiffert")


if __name__ == "__main__":
    main()
