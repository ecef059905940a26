"""
异常定义
=======
均值计算、引理核函数与数值验证器共用的异常体系。

核心类：
- SeiffertError：所有异常的基类，上层可以统一捕获
- DomainError：参数越界、非有限输入等定义域错误（同时是 ValueError）
- InconsistencyError：两条独立计算路径不一致、谓词非单调、形状检查失败
- IndeterminateScanError：网格扫描无法给出确定符号（例如恰好落在阈值上）

使用示例：
    from src.utils.errors import DomainError

    try:
        pair = PositivePair(-1.0, 2.0)
    except DomainError as e:
        print(f"参数错误: {e}")
"""
from typing import Any, Dict, Optional


class SeiffertError(Exception):
    """所有本项目异常的基类"""
    pass


class DomainError(SeiffertError, ValueError):
    """
    定义域错误

    说明：
    输入非正、非有限（NaN/inf），或参数超出允许区间时抛出。
    只在值类型构造时校验一次，运算函数本身不重复校验。
    """
    pass


class InconsistencyError(SeiffertError):
    """
    一致性错误

    说明：
    表示核函数实现存在缺陷，而不是输入有问题：
    直接路径与核函数路径数值不一致、二分谓词不单调、
    或者 f 的形状与理论分情形不符。
    """
    pass


class IndeterminateScanError(SeiffertError):
    """网格扫描无法分类（全部取值都落在零附近的容差带内）"""

    def __init__(self, message: str, u: float, p: float,
                 grid: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.u = u
        self.p = p
        self.grid = grid or {}

    def __str__(self) -> str:
        base = super().__str__()
        return f"{base} (u={self.u!r}, p={self.p!r}, grid={self.grid})"
