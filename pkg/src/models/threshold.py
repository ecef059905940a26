"""
阈值数据模型
==========
定理给出的精确阈值 t₁(p)、t₂(p) 以及 p=1/2、p=1 两个特例常数。

核心类：
- ThresholdPair：固定 p 下的 (t_lower, t_upper)
- ClassicalBounds：S 型界 (α, β) 与 C 型界 (λ, μ)
"""
from dataclasses import dataclass, asdict
from typing import Any, Dict


@dataclass(frozen=True)
class ThresholdPair:
    """
    精确阈值对

    t_lower 是下界权重 t₁ 可取的最大值，t_upper 是上界权重 t₂ 可取的最小值，
    对所有 p ≥ 1/2 满足 1/2 < t_lower < t_upper < 1。
    """
    p: float
    t_lower: float
    t_upper: float

    @property
    def gap(self) -> float:
        """两阈值之间的不确定带宽度"""
        return self.t_upper - self.t_lower

    @property
    def u_lower(self) -> float:
        s = 2.0 * self.t_lower - 1.0
        return s * s

    @property
    def u_upper(self) -> float:
        s = 2.0 * self.t_upper - 1.0
        return s * s

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典（含 gap）"""
        data = asdict(self)
        data['gap'] = self.gap
        return data


@dataclass(frozen=True)
class ClassicalBounds:
    """p=1/2（均方根）与 p=1（逆调和均值）两种特例下的阈值"""
    alpha: float
    beta: float
    lam: float
    mu: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)
