"""
均值参数模型
==========
定义二元均值计算的输入值类型，所有校验都在构造时完成一次。

核心类：
- PositivePair：正实数对 (a, b)，不要求 a ≥ b，所有均值对其对称
- WeightParam：凸组合权重 t ∈ [1/2, 1]，附带派生量 u = (2t−1)²
- ExponentParam：逆调和均值因子的幂次 p ≥ 1/2

使用示例：
    from src.models.means import PositivePair, WeightParam, ExponentParam

    pair = PositivePair(3.0, 1.0)
    w = WeightParam(0.75)      # w.u == 0.25
    p = ExponentParam(1.0)
"""
import math
import numbers
from dataclasses import dataclass

from src.utils.errors import DomainError


def require_finite(name: str, value: float):
    """校验实数且有限（NaN/inf 一律拒绝）"""
    if not isinstance(value, numbers.Real) or isinstance(value, bool):
        raise DomainError(f"{name} 必须是实数，实际为 {value!r}")
    if not math.isfinite(value):
        raise DomainError(f"{name} 必须是有限实数，实际为 {value!r}")


@dataclass(frozen=True)
class PositivePair:
    """正实数对"""
    a: float
    b: float

    def __post_init__(self):
        """构造时校验：有限且严格为正"""
        for name in ("a", "b"):
            value = getattr(self, name)
            require_finite(name, value)
            if value <= 0:
                raise DomainError(f"{name} 必须为正数，实际为 {value!r}")
            object.__setattr__(self, name, float(value))

    @property
    def is_diagonal(self) -> bool:
        """a == b 时均值由连续极限定义"""
        return self.a == self.b

    @property
    def half_spread(self) -> float:
        """|a−b|/2，按 (大−小)/2 计算，不会上溢"""
        lo, hi = sorted((self.a, self.b))
        return (hi - lo) / 2.0

    @property
    def center(self) -> float:
        """(a+b)/2，按 小 + (大−小)/2 计算，a、b 接近浮点上限时也不会上溢"""
        return min(self.a, self.b) + self.half_spread

    @property
    def gap(self) -> float:
        """归一化差 x = |a−b|/(a+b) ∈ [0, 1)"""
        return self.half_spread / self.center

    def swapped(self) -> 'PositivePair':
        return PositivePair(self.b, self.a)

    def scaled(self, k: float) -> 'PositivePair':
        return PositivePair(k * self.a, k * self.b)


@dataclass(frozen=True)
class WeightParam:
    """
    凸组合权重 t

    说明：
    定理只涉及开区间 (1/2, 1)，这里接受闭区间 [1/2, 1]，
    以便测试边界行为（t=1/2 时加权对退化为 (A, A)，t=1 时不变）。
    """
    t: float

    def __post_init__(self):
        require_finite("t", self.t)
        if not 0.5 <= self.t <= 1.0:
            raise DomainError(f"t 必须位于 [1/2, 1]，实际为 {self.t!r}")
        object.__setattr__(self, "t", float(self.t))

    @property
    def u(self) -> float:
        """u = (2t−1)² ∈ [0, 1]"""
        s = 2.0 * self.t - 1.0
        return s * s


@dataclass(frozen=True)
class ExponentParam:
    """幂次 p ≥ 1/2"""
    p: float

    def __post_init__(self):
        require_finite("p", self.p)
        if self.p < 0.5:
            raise DomainError(f"p 必须 ≥ 1/2，实际为 {self.p!r}")
        object.__setattr__(self, "p", float(self.p))
