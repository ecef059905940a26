"""
核函数参数模型
============
引理核函数 f_{u,p}、g、h_p 的输入值类型。

核心类：
- KernelPoint：约化变量 x = (a−b)/(a+b) ∈ (0, 1)
- KernelParams：(u, p)，u ∈ [0, 1]，p ≥ 1/2

u 与权重 t 的换算 u = (2t−1)² 放在 src.business.thresholds 中。
"""
from dataclasses import dataclass

from src.models.means import require_finite
from src.utils.errors import DomainError


@dataclass(frozen=True)
class KernelPoint:
    """核函数自变量 x ∈ (0, 1)"""
    x: float

    def __post_init__(self):
        require_finite("x", self.x)
        if not 0.0 < self.x < 1.0:
            raise DomainError(f"x 必须位于开区间 (0, 1)，实际为 {self.x!r}")
        object.__setattr__(self, "x", float(self.x))


@dataclass(frozen=True)
class KernelParams:
    """核函数参数 (u, p)"""
    u: float
    p: float

    def __post_init__(self):
        require_finite("u", self.u)
        require_finite("p", self.p)
        if not 0.0 <= self.u <= 1.0:
            raise DomainError(f"u 必须位于 [0, 1]，实际为 {self.u!r}")
        if self.p < 0.5:
            raise DomainError(f"p 必须 ≥ 1/2，实际为 {self.p!r}")
        object.__setattr__(self, "u", float(self.u))
        object.__setattr__(self, "p", float(self.p))

    @property
    def three_pu(self) -> float:
        """3pu，与 1 比较决定 x→0 处 f 的符号"""
        return 3.0 * self.p * self.u
