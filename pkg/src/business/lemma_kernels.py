"""
引理核函数
========
log(Q_{t,p}/T) 约化为单变量 x = (a−b)/(a+b) 后出现的辅助函数：

    f_{u,p}(x) = p·log(1+ux²) − log x + log arctan x
    g(x)       = g₁(x)/g₂(x)
                 g₁(x) = arctan x − x/(1+x²)
                 g₂(x) = (2p−1)x²·arctan x + x³/(1+x²)
    g₁′/g₂′    = 1/((2p−1)φ(x) + p x² + p + 1)，φ(x) = (1+x²)²·arctan(x)/x
    h_p(u)     = p·log(1+u) + log(π/4)            （f 在 x→1 的极限）

f′(x) = g₂(x)/(x(1+ux²)arctan x) · (u − g(x))，前因子在 (0,1) 上恒正，
所以 f 的单调性完全由 u 与 g(x) 的大小关系决定。

数值策略：
- x < 1e-2 时 log(arctan(x)/x) 与 g₁(x)/x³ 都走泰勒级数，
  直接公式在 x ≈ 1e-5 以下会丢失几乎全部有效数字
- g₂ 是两个非负项之和，不存在抵消，始终直接计算（提出公因子 x³）
- 每个函数都有 numpy 向量版本（*_grid），供验证器一次性评估整张网格

使用示例：
    from src.business.lemma_kernels import eval_f, eval_g, u_zero_of_h
    from src.models.kernel import KernelParams, KernelPoint

    eval_f(KernelParams(u=0.3, p=1.0), KernelPoint(0.5))
    eval_g(1.0, KernelPoint(1e-8))      # ≈ 1/3
    u_zero_of_h(1.0)                    # 4/π − 1
"""
import logging
import math
from typing import Tuple, Union

import numpy as np

from src.models.kernel import KernelParams, KernelPoint
from src.utils.errors import DomainError

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]

# 级数路径与直接公式的切换点
KERNEL_SERIES_CUTOFF = 1e-2

# π/4 在二进制下是 π 的精确缩放，log(π/4) 只有一次舍入
LOG_PI_OVER_4 = math.log(math.pi / 4.0)

# arctan(x)/x − 1 = Σ_{k≥1} (−1)^k x^{2k}/(2k+1)，按 x² 的升幂排列
_ATAN_RATIO_COEFFS = (-1.0 / 3.0, 1.0 / 5.0, -1.0 / 7.0, 1.0 / 9.0, -1.0 / 11.0)

# g₁(x)/x³ = Σ_{k≥1} (−1)^{k+1} (2k/(2k+1)) x^{2k−2}
_G1_COEFFS = (2.0 / 3.0, -4.0 / 5.0, 6.0 / 7.0, -8.0 / 9.0, 10.0 / 11.0, -12.0 / 13.0)


def _check_p(p: float):
    if not (math.isfinite(p) and p >= 0.5):
        raise DomainError(f"p 必须 ≥ 1/2，实际为 {p!r}")


def _check_u(u: float):
    if not (math.isfinite(u) and 0.0 <= u <= 1.0):
        raise DomainError(f"u 必须位于 [0, 1]，实际为 {u!r}")


def _poly_in_x2(coeffs: Tuple[float, ...], x2: ArrayLike) -> ArrayLike:
    """Horner 求 Σ coeffs[k]·(x²)^k"""
    acc = np.zeros_like(x2) + coeffs[-1]
    for c in reversed(coeffs[:-1]):
        acc = acc * x2 + c
    return acc


def _atan_ratio_minus_one_series(x: ArrayLike) -> ArrayLike:
    x2 = np.asarray(x, dtype=float) ** 2
    return x2 * _poly_in_x2(_ATAN_RATIO_COEFFS, x2)


def _atan_ratio_grid(x: ArrayLike) -> ArrayLike:
    """arctan(x)/x，小 x 走级数"""
    x = np.asarray(x, dtype=float)
    return np.where(x < KERNEL_SERIES_CUTOFF, 1.0 + _atan_ratio_minus_one_series(x), np.arctan(x) / x)


def _log_atan_ratio_series(x: ArrayLike) -> ArrayLike:
    """log(arctan(x)/x) 的级数路径（小 x）"""
    return np.log1p(_atan_ratio_minus_one_series(x))


def _log_atan_ratio_direct(x: ArrayLike) -> ArrayLike:
    """log(arctan(x)/x) 的直接路径"""
    x = np.asarray(x, dtype=float)
    return np.log(np.arctan(x) / x)


def log_atan_ratio(x: ArrayLike) -> ArrayLike:
    """log(arctan(x)/x)，在 1e-2 处切换级数/直接路径"""
    x = np.asarray(x, dtype=float)
    small = x < KERNEL_SERIES_CUTOFF
    # 两条路径都对整个数组求值，np.where 挑选；x 不会为 0
    return np.where(small, _log_atan_ratio_series(x), _log_atan_ratio_direct(x))


def phi_grid(x: ArrayLike) -> ArrayLike:
    """φ(x) = (1+x²)²·arctan(x)/x"""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    ratio = _atan_ratio_grid(x)
    return (1.0 + x2) ** 2 * ratio


def g1_over_x3_grid(x: ArrayLike) -> ArrayLike:
    """g₁(x)/x³，小 x 走级数"""
    x = np.asarray(x, dtype=float)
    x2 = x * x
    with np.errstate(divide='ignore', invalid='ignore', under='ignore'):
        direct = (np.arctan(x) - x / (1.0 + x2)) / (x2 * x)
    return np.where(x < KERNEL_SERIES_CUTOFF, _poly_in_x2(_G1_COEFFS, x2), direct)


def g2_over_x3_grid(p: ArrayLike, x: ArrayLike) -> ArrayLike:
    """g₂(x)/x³ = (2p−1)·arctan(x)/x + 1/(1+x²)"""
    x = np.asarray(x, dtype=float)
    ratio = _atan_ratio_grid(x)
    return (2.0 * p - 1.0) * ratio + 1.0 / (1.0 + x * x)


def eval_g_grid(p: ArrayLike, x: ArrayLike) -> ArrayLike:
    """g(x) = g₁(x)/g₂(x)（向量版本）"""
    return g1_over_x3_grid(x) / g2_over_x3_grid(p, x)


def eval_f_grid(u: ArrayLike, p: ArrayLike, x: ArrayLike) -> ArrayLike:
    """f_{u,p}(x) = p·log1p(u x²) + log(arctan(x)/x)（向量版本）"""
    x = np.asarray(x, dtype=float)
    return p * np.log1p(u * x * x) + log_atan_ratio(x)


def eval_f_derivative_grid(u: ArrayLike, p: ArrayLike, x: ArrayLike) -> ArrayLike:
    """
    f′(x) = g₂(x)/(x(1+ux²)arctan x) · (u − g(x))（向量版本）

    记 g₂ = x³·G₂、arctan x = x·R，前因子化为 x·G₂/((1+ux²)·R)，小 x 下不会下溢。
    """
    x = np.asarray(x, dtype=float)
    ratio = _atan_ratio_grid(x)
    prefactor = g2_over_x3_grid(p, x) * x / ((1.0 + u * x * x) * ratio)
    return prefactor * (u - eval_g_grid(p, x))


# ===== 标量接口（入参为已校验的值类型） =====

def eval_f(params: KernelParams, x: KernelPoint) -> float:
    """
    f_{u,p}(x)

    x→0 时 f→0；x→1 时 f→h_p(u)。
    """
    return float(eval_f_grid(params.u, params.p, x.x))


def eval_f_derivative(params: KernelParams, x: KernelPoint) -> float:
    """f_{u,p}′(x)，符号等于 u − g(x) 的符号"""
    return float(eval_f_derivative_grid(params.u, params.p, x.x))


def eval_g1(x: KernelPoint) -> float:
    """
    约化分子 g₁(x) = arctan x − x/(1+x²)

    等于 g 的原始分子 (1+x²)·arctan x − x 除以 (1+x²)；eval_g2 同样除以了 (1+x²)，
    所以比值 g 不变。需要原始分子时乘回 (1+x²)。
    """
    return float(g1_over_x3_grid(x.x)) * x.x ** 3


def eval_g2(p: float, x: KernelPoint) -> float:
    """约化分母 g₂(x) = (2p−1)x²·arctan x + x³/(1+x²)，原始分母除以 (1+x²)"""
    _check_p(p)
    return float(g2_over_x3_grid(p, x.x)) * x.x ** 3


def eval_g(p: float, x: KernelPoint) -> float:
    """
    g(x) = [(1+x²)arctan x − x] / [(2p−1)x²(1+x²)arctan x + x³]

    实现上用 g₁/g₂（分子分母同除以 1+x²），比值相同。
    在 (0,1) 上严格为正且严格递减，从 1/(3p) 降到 (π−2)/((2p−1)π+2)。
    """
    _check_p(p)
    return float(eval_g_grid(p, x.x))


def phi(x: KernelPoint) -> float:
    """φ(x) = (1+x²)²·arctan(x)/x，在 (0,1) 上从 1 严格增到 π"""
    return float(phi_grid(x.x))


def eval_g_derivative_ratio(p: float, x: KernelPoint) -> float:
    """g₁′(x)/g₂′(x) = 1/((2p−1)φ(x) + p x² + p + 1)"""
    _check_p(p)
    x2 = x.x * x.x
    return 1.0 / ((2.0 * p - 1.0) * phi(x) + p * x2 + p + 1.0)


def eval_h(p: float, u: float) -> float:
    """h_p(u) = p·log(1+u) + log(π/4)，关于 u 严格递增"""
    _check_p(p)
    _check_u(u)
    return p * math.log1p(u) + LOG_PI_OVER_4


def u_zero_of_h(p: float) -> float:
    """h_p 的唯一零点 u₀ = (4/π)^(1/p) − 1 = expm1(log(4/π)/p)"""
    _check_p(p)
    return math.expm1(-LOG_PI_OVER_4 / p)


def g_limit_at_zero(p: float) -> float:
    """lim_{x→0} g(x) = 1/(3p)"""
    _check_p(p)
    return 1.0 / (3.0 * p)


def g_limit_at_one(p: float) -> float:
    """lim_{x→1} g(x) = (π−2)/((2p−1)π+2)"""
    _check_p(p)
    return (math.pi - 2.0) / ((2.0 * p - 1.0) * math.pi + 2.0)


def case_bounds(p: float) -> Tuple[float, float, float]:
    """
    分情形的 u 分界点（升序）

    Returns:
        (g_limit_at_one(p), u_zero_of_h(p), g_limit_at_zero(p))；
        h_p 在三点处分别为负、零、正
    """
    bounds = (g_limit_at_one(p), u_zero_of_h(p), g_limit_at_zero(p))
    logger.debug(f"p={p} 的分界点: {bounds}")
    return bounds
