"""
二元均值计算
==========
算术平均 A、Seiffert 均值 T、均方根 S、逆调和均值 C，
加权对变换以及双参数族 Q_{t,p}。

核心功能：
- 所有均值对 (a, b) 对称、一次齐次
- 全部按 A = (a+b)/2 与 x = |a−b|/(a+b) 计算，a、b 接近浮点上下限时既不上溢也不下溢
- a = b 时 x = 0，结果等于 a（连续极限），无需调用方排除对角线
- T 在 x < 1e-4 时走级数路径，避免 0/0 抵消

依赖：
- src.models.means - PositivePair / WeightParam / ExponentParam（构造时已校验）

使用示例：
    from src.business.means_core import seiffert_mean, q_family
    from src.models.means import PositivePair, WeightParam, ExponentParam

    pair = PositivePair(3.0, 1.0)
    seiffert_mean(pair)                                          # ≈ 2.1568104
    q_family(pair, WeightParam(0.75), ExponentParam(1.0))        # 2.125
"""
import math
from typing import Dict

from src.models.means import PositivePair, WeightParam, ExponentParam

# x 低于该值时 arctan(x)/x 用截断级数计算
SEIFFERT_SERIES_CUTOFF = 1e-4


def seiffert_ratio(x: float) -> float:
    """
    arctan(x)/x，x ≥ 0

    x < 1e-4 时使用 1 − x²/3 + x⁴/5 − x⁶/7，截断误差小于 x⁸，
    低于双精度舍入。
    """
    if x < SEIFFERT_SERIES_CUTOFF:
        x2 = x * x
        return 1.0 + x2 * (-1.0 / 3.0 + x2 * (1.0 / 5.0 - x2 / 7.0))
    return math.atan(x) / x


def arithmetic_mean(pair: PositivePair) -> float:
    """A(a,b) = (a+b)/2"""
    return pair.center


def seiffert_mean(pair: PositivePair) -> float:
    """T(a,b) = (a−b)/(2·arctan((a−b)/(a+b))) = A/(arctan(x)/x)"""
    return pair.center / seiffert_ratio(pair.gap)


def root_mean_square(pair: PositivePair) -> float:
    """S(a,b) = sqrt((a²+b²)/2) = A·sqrt(1+x²)"""
    return pair.center * math.hypot(1.0, pair.gap)


def contraharmonic_mean(pair: PositivePair) -> float:
    """C(a,b) = (a²+b²)/(a+b) = A·(1+x²)"""
    x = pair.gap
    return pair.center * (1.0 + x * x)


def weighted_pair(pair: PositivePair, w: WeightParam) -> PositivePair:
    """
    加权对 (t·a+(1−t)·b, t·b+(1−t)·a)

    算术平均不变，归一化差缩小为 |2t−1|·|a−b|/(a+b)。
    """
    t = w.t
    s = 1.0 - t
    return PositivePair(t * pair.a + s * pair.b, t * pair.b + s * pair.a)


def q_family(pair: PositivePair, w: WeightParam, p: ExponentParam) -> float:
    """
    Q_{t,p}(a,b) = C^p(加权对) · A^(1−p)(a,b) = A·(1+u·x²)^p，u = (2t−1)²

    底数 1+u·x² ∈ [1, 2)，不先算 C 再取幂，a、b 的量级不影响中间结果。
    """
    x = pair.gap
    return pair.center * (1.0 + w.u * x * x) ** p.p


def means_table(pair: PositivePair) -> Dict[str, float]:
    """一次给出 A、T、S、C 四个均值"""
    return {
        'A': arithmetic_mean(pair),
        'T': seiffert_mean(pair),
        'S': root_mean_square(pair),
        'C': contraharmonic_mean(pair),
    }
