"""
精确阈值
=======
双边不等式 Q_{t₁,p}(a,b) < T(a,b) < Q_{t₂,p}(a,b) 对所有 a ≠ b 成立，
当且仅当 t₁ ≤ t_lower(p)、t₂ ≥ t_upper(p)，其中

    t_lower(p) = 1/2 + sqrt((4/π)^(1/p) − 1)/2
    t_upper(p) = 1/2 + sqrt(3p)/(6p) = 1/2 + 1/(2·sqrt(3p))

核心功能：
- t_lower / t_upper / threshold_pair：闭式阈值
- u_from_t / t_from_u：权重 t 与核参数 u = (2t−1)² 的换算
- classical_bounds：p=1/2 与 p=1 时的四个经典常数 α、β、λ、μ
- predicted_verdict：给定 (t, p)，按定理预测 f 的符号判定

使用示例：
    from src.business.thresholds import threshold_pair

    pair = threshold_pair(1.0)
    pair.t_lower    # ≈ 0.7613616
    pair.t_upper    # ≈ 0.7886751
"""
import math

from src.business.lemma_kernels import u_zero_of_h
from src.models.certificate import Verdict
from src.models.threshold import ClassicalBounds, ThresholdPair
from src.utils.errors import DomainError


def _check_p(p: float):
    if not (math.isfinite(p) and p >= 0.5):
        raise DomainError(f"p 必须 ≥ 1/2，实际为 {p!r}")


def _check_t(t: float):
    if not (math.isfinite(t) and 0.5 <= t <= 1.0):
        raise DomainError(f"t 必须位于 [1/2, 1]，实际为 {t!r}")


def u_from_t(t: float) -> float:
    """u = (2t−1)²，t ∈ [1/2, 1]"""
    _check_t(t)
    s = 2.0 * t - 1.0
    return s * s


def t_from_u(u: float) -> float:
    """t = 1/2 + sqrt(u)/2（取 t ≥ 1/2 的分支），u ∈ [0, 1]"""
    if not (math.isfinite(u) and 0.0 <= u <= 1.0):
        raise DomainError(f"u 必须位于 [0, 1]，实际为 {u!r}")
    return 0.5 + math.sqrt(u) / 2.0


def t_lower(p: float) -> float:
    """
    下界阈值 t₁ 的最大允许值

    (4/π)^(1/p) − 1 按 expm1(log(4/π)/p) 计算，与平台 pow 的精度无关。
    """
    _check_p(p)
    return 0.5 + math.sqrt(u_zero_of_h(p)) / 2.0


def t_upper(p: float) -> float:
    """上界阈值 t₂ 的最小允许值，其 u 像恰为 1/(3p)"""
    _check_p(p)
    return 0.5 + 0.5 / math.sqrt(3.0 * p)


def threshold_pair(p: float) -> ThresholdPair:
    """固定 p 下的 (t_lower, t_upper)"""
    return ThresholdPair(p=float(p), t_lower=t_lower(p), t_upper=t_upper(p))


def classical_bounds() -> ClassicalBounds:
    """
    p=1/2 与 p=1 两个特例

    S(αa+(1−α)b, αb+(1−α)a) < T < S(βa+(1−β)b, βb+(1−β)a) 当且仅当
    α ≤ (1+sqrt(16/π²−1))/2、β ≥ (3+√6)/6；
    C 型界的 λ ≤ (1+sqrt(4/π−1))/2、μ ≥ (3+√3)/6。
    """
    return ClassicalBounds(
        alpha=t_lower(0.5),
        beta=t_upper(0.5),
        lam=t_lower(1.0),
        mu=t_upper(1.0),
    )


def predicted_verdict(t: float, p: float) -> Verdict:
    """
    定理对 f_{u,p}（u = (2t−1)²）符号的预测

    t ≤ t_lower → ALL_NEGATIVE（Q < T）；t ≥ t_upper → ALL_POSITIVE（Q > T）；
    两者之间 → MIXED。
    """
    _check_t(t)
    if t <= t_lower(p):
        return Verdict.ALL_NEGATIVE
    if t >= t_upper(p):
        return Verdict.ALL_POSITIVE
    return Verdict.MIXED
