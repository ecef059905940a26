"""
数值验证器
=========
对精确阈值定理做独立的数值验证：f_{u,p} 在 (0,1) 上的网格符号扫描、
二分恢复经验阈值、分情形形状检查、log(Q/T) 双路径一致性校验和反例搜索。

核心功能：
- scan_sign：均匀网格 ∪ 靠近 0 的几何子网格上对 f 做符号分类，
  并把 x→1 的解析极限 h_p(u) 并入判定
- empirical_t_lower / empirical_t_upper：只依赖网格扫描的二分，
  不引用闭式阈值
- check_case_structure：按 g 的两个极限把 (u, p) 分为三种情形并核对 f 的形状
- certify_mean_inequality / cross_check：均值直接计算与核函数计算的一致性关口
- search_counterexamples / certify_classical_bounds：随机样本上的反例搜索
- certify_theorem：固定 p 下的阈值、锐性和阈值带的汇总证书

说明：
判定是浮点证据而不是严格证明。网格上 |f(x)| ≤ sign_abs_tol + sign_x2_tol·x²
的取值不算见证点，因为 f 在 x→0 处二次消失。

依赖：
- numpy - 网格向量化求值
- src.business.lemma_kernels / means_core / thresholds
- src.config.ConfigLoader - 扫描与验证器配置

使用示例：
    from src.services.verifier import get_verifier
    from src.models.kernel import KernelParams

    verifier = get_verifier()
    report = verifier.scan_sign(KernelParams(u=0.3, p=1.0))
    report.verdict                      # Verdict.MIXED
    verifier.empirical_t_lower(1.0)     # ≈ 0.7613616
"""
import logging
import math
from typing import Callable, Dict, List, Optional

import numpy as np

from src.business.lemma_kernels import (
    case_bounds,
    eval_f,
    eval_f_derivative_grid,
    eval_f_grid,
    eval_h,
    log_atan_ratio,
)
from src.business.means_core import q_family, seiffert_mean
from src.business.thresholds import threshold_pair, classical_bounds, u_from_t
from src.config import get_config
from src.models.certificate import (
    CaseLabel,
    CaseReport,
    CertificateReport,
    Counterexample,
    CrossCheckSummary,
    InequalityCertificate,
    ScanConfig,
    TheoremCertificate,
    Verdict,
    Witness,
)
from src.models.kernel import KernelParams, KernelPoint
from src.models.means import ExponentParam, PositivePair, WeightParam
from src.utils.errors import DomainError, InconsistencyError, IndeterminateScanError
from src.utils.sampling import make_rng, sample_exponents, sample_pairs, sample_weights

logger = logging.getLogger(__name__)

# 反例搜索的默认样本数
DEFAULT_SEARCH_SAMPLES = 10000

# 反例搜索的相对分辨率：差异在舍入误差以内的样本不计为反例
COUNTEREXAMPLE_RESOLUTION = 1e-14

# 形状检查时相邻差分的噪声倍数（相对 f 两个组成项的量级）
SHAPE_NOISE_ULPS = 8.0


class Verifier:
    """数值验证器"""

    def __init__(self, scan_config: Optional[ScanConfig] = None, config=None):
        """
        初始化验证器

        Args:
            scan_config: 默认扫描配置，None 时从 config.ini 构造
            config: ConfigLoader，None 时使用全局配置
        """
        config = config or get_config()
        self.scan_config = scan_config or ScanConfig.from_config(config)
        self.sharpness_delta = config.sharpness_delta
        self.cross_check_samples = config.cross_check_samples
        self.seed = config.random_seed
        self.monotone_points = max(config.monotone_points, 2)
        self.agreement_tol = config.agreement_tol
        self.extremum_tol = config.extremum_tol
        self.threshold_tol = config.threshold_tol

    # ===== 网格 =====

    def build_grid(self, cfg: Optional[ScanConfig] = None) -> np.ndarray:
        """
        均匀网格 ∪ 几何子网格 {x_max·r^k ≥ x_min} ∪ {x_min}，升序去重

        Args:
            cfg: 扫描配置

        Returns:
            升序 numpy 数组
        """
        cfg = cfg or self.scan_config
        uniform = np.linspace(cfg.x_min, cfg.x_max, cfg.grid_size)
        steps = int(math.floor(math.log(cfg.x_min / cfg.x_max) / math.log(cfg.geometric_ratio))) + 1
        geometric = cfg.x_max * cfg.geometric_ratio ** np.arange(steps)
        geometric = geometric[geometric >= cfg.x_min]
        return np.unique(np.concatenate([uniform, geometric, [cfg.x_min]]))

    @staticmethod
    def _sign_band(xs: np.ndarray, cfg: ScanConfig) -> np.ndarray:
        return cfg.sign_abs_tol + cfg.sign_x2_tol * xs * xs

    # ===== 符号扫描 =====

    def scan_sign(self, params: KernelParams, cfg: Optional[ScanConfig] = None) -> CertificateReport:
        """
        对 f_{u,p} 做网格符号扫描

        Args:
            params: 核参数 (u, p)
            cfg: 扫描配置，None 时使用默认配置

        Returns:
            CertificateReport

        Raises:
            IndeterminateScanError: 没有任何见证点；只有负见证点而端点极限为正但落在容差带内；
                或只有正见证点而网格上存在落在容差带内的负值
        """
        return self._scan(params, cfg or self.scan_config, locate_extremum=True)

    def _scan(self, params: KernelParams, cfg: ScanConfig, locate_extremum: bool) -> CertificateReport:
        u, p = params.u, params.p
        xs = self.build_grid(cfg)
        fs = eval_f_grid(u, p, xs)
        band = self._sign_band(xs, cfg)
        endpoint = eval_h(p, u)
        grid_meta = {'size': int(xs.size), 'x_min': cfg.x_min, 'x_max': cfg.x_max}

        negative_witness = None
        positive_witness = None

        negative = fs < -band
        if negative.any():
            i = int(np.argmin(np.where(negative, fs, np.inf)))
            negative_witness = Witness(x=float(xs[i]), value=float(fs[i]))
        elif endpoint < -cfg.sign_abs_tol:
            negative_witness = Witness(x=1.0, value=endpoint, is_limit=True)

        positive = fs > band
        if positive.any():
            i = int(np.argmax(np.where(positive, fs, -np.inf)))
            positive_witness = Witness(x=float(xs[i]), value=float(fs[i]))
        elif endpoint > cfg.sign_abs_tol:
            positive_witness = Witness(x=1.0, value=endpoint, is_limit=True)

        if negative_witness and positive_witness:
            verdict = Verdict.MIXED
        elif negative_witness:
            if endpoint > 0:
                raise IndeterminateScanError(
                    f"端点极限 h={endpoint!r} 落在容差带内，无法区分 ALL_NEGATIVE 与 MIXED",
                    u=u, p=p, grid=grid_meta,
                )
            verdict = Verdict.ALL_NEGATIVE
        elif positive_witness:
            if (fs < 0).any():
                i = int(np.argmin(fs))
                raise IndeterminateScanError(
                    f"x={float(xs[i])!r} 处 f={float(fs[i])!r} 为负但落在容差带内，无法区分 ALL_POSITIVE 与 MIXED",
                    u=u, p=p, grid=grid_meta,
                )
            verdict = Verdict.ALL_POSITIVE
        else:
            raise IndeterminateScanError("网格上所有取值都在零附近的容差带内", u=u, p=p, grid=grid_meta)

        extremum_x0 = None
        if locate_extremum and verdict == Verdict.MIXED:
            extremum_x0 = self._bisect_extremum(params, xs)

        logger.debug(f"scan u={u!r} p={p!r}: {verdict.value}, h={endpoint!r}")
        return CertificateReport(
            verdict=verdict,
            u=u,
            p=p,
            endpoint_value=endpoint,
            grid_points=int(xs.size),
            x_min=cfg.x_min,
            x_max=cfg.x_max,
            negative_witness=negative_witness,
            positive_witness=positive_witness,
            extremum_x0=extremum_x0,
        )

    # ===== 极小点 =====

    def locate_extremum(self, params: KernelParams, cfg: Optional[ScanConfig] = None) -> Optional[float]:
        """
        f 先减后增时的内部极小点 x0

        在网格上找到 f′ 由负变正的区间，再按 f′ 的符号二分到 extremum_tol。

        Returns:
            x0；f′ 在网格上不变号时返回 None
        """
        return self._bisect_extremum(params, self.build_grid(cfg or self.scan_config))

    def _bisect_extremum(self, params: KernelParams, xs: np.ndarray) -> Optional[float]:
        u, p = params.u, params.p
        ds = eval_f_derivative_grid(u, p, xs)
        crossings = np.nonzero((ds[:-1] < 0) & (ds[1:] >= 0))[0]
        if crossings.size == 0:
            return None
        if crossings.size > 1:
            raise InconsistencyError(f"f′ 在网格上出现 {crossings.size} 次由负变正 (u={u!r}, p={p!r})")

        i = int(crossings[0])
        lo, hi = float(xs[i]), float(xs[i + 1])
        while hi - lo > self.extremum_tol:
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            if float(eval_f_derivative_grid(u, p, mid)) < 0:
                lo = mid
            else:
                hi = mid
        return 0.5 * (lo + hi)

    # ===== 经验阈值 =====

    def empirical_t_lower(self, p: float, cfg: Optional[ScanConfig] = None) -> float:
        """谓词 "scan_sign = ALL_NEGATIVE" 在 t 上的边界（t=1/2 处成立）"""
        return self._bisect_threshold(p, cfg or self.scan_config, Verdict.ALL_NEGATIVE, holds_at_half=True)

    def empirical_t_upper(self, p: float, cfg: Optional[ScanConfig] = None) -> float:
        """谓词 "scan_sign = ALL_POSITIVE" 在 t 上的边界（t=1 处成立）"""
        return self._bisect_threshold(p, cfg or self.scan_config, Verdict.ALL_POSITIVE, holds_at_half=False)

    def _verdict_predicate(self, p: float, cfg: ScanConfig, target: Verdict) -> Callable[[float], Optional[bool]]:
        def predicate(t: float) -> Optional[bool]:
            try:
                report = self._scan(KernelParams(u_from_t(t), p), cfg, locate_extremum=False)
            except IndeterminateScanError as e:
                logger.debug(f"t={t!r} 处扫描无法分类: {e}")
                return None
            return report.verdict == target
        return predicate

    def _bisect_threshold(self, p: float, cfg: ScanConfig, target: Verdict, holds_at_half: bool) -> float:
        """
        在 [1/2, 1] 上二分单调谓词的边界

        先在 monotone_points 个等距检查点上检查：两端取值符合预期，且中间只翻转一次。
        二分过程中遇到无法分类的扫描时，说明已经贴着阈值，直接返回当前中点。

        Raises:
            InconsistencyError: 谓词在检查网格上不单调或端点取值与预期相反
        """
        p = ExponentParam(p).p
        predicate = self._verdict_predicate(p, cfg, target)

        checkpoints = np.linspace(0.5, 1.0, self.monotone_points)
        known = [(float(t), v) for t, v in ((t, predicate(float(t))) for t in checkpoints) if v is not None]
        values = [v for _, v in known]
        flips = sum(1 for a, b in zip(values, values[1:]) if a != b)
        if (len(values) < 2 or values[0] != holds_at_half
                or values[-1] == holds_at_half or flips != 1):
            raise InconsistencyError(
                f"谓词 {target.value} 在检查网格上不单调 (p={p!r}): "
                + ", ".join(f"t={t:.4f}:{v}" for t, v in known)
            )

        flip = next(k for k in range(len(known) - 1) if known[k][1] != known[k + 1][1])
        lo, hi = known[flip][0], known[flip + 1][0]

        for _ in range(cfg.refine_iters):
            mid = 0.5 * (lo + hi)
            if mid <= lo or mid >= hi:
                break
            value = predicate(mid)
            if value is None:
                return mid
            if value == holds_at_half:
                lo = mid
            else:
                hi = mid

        boundary = 0.5 * (lo + hi)
        logger.debug(f"{target.value} 边界 p={p!r}: t≈{boundary!r}")
        return boundary

    # ===== 双路径一致性 =====

    def certify_mean_inequality(self, pair: PositivePair, w: WeightParam,
                                p: ExponentParam) -> InequalityCertificate:
        """
        log(Q_{t,p}/T) 的两条独立计算路径

        (i) 由 means_core 直接计算；(ii) 在 x = |a−b|/(a+b)、u = (2t−1)² 处求 f。

        Raises:
            DomainError: a = b（严格比较无意义）
            InconsistencyError: 两条路径的绝对偏差超过 agreement_tol
        """
        if pair.is_diagonal:
            raise DomainError(f"a = b = {pair.a!r} 时严格比较无意义")

        direct = math.log(q_family(pair, w, p) / seiffert_mean(pair))
        kernel = eval_f(KernelParams(u_from_t(w.t), p.p), KernelPoint(pair.gap))
        certificate = InequalityCertificate(
            x=pair.gap, u=u_from_t(w.t), p=p.p, direct_value=direct, kernel_value=kernel
        )
        if certificate.deviation > self.agreement_tol:
            raise InconsistencyError(
                f"log(Q/T) 两条路径不一致: direct={direct!r}, kernel={kernel!r} "
                f"(a={pair.a!r}, b={pair.b!r}, t={w.t!r}, p={p.p!r})"
            )
        return certificate

    def cross_check(self, samples: Optional[int] = None, seed: Optional[int] = None) -> CrossCheckSummary:
        """
        在随机 (pair, t, p) 上批量执行双路径校验

        直接路径逐个样本计算，核函数路径整批向量化求值。

        Raises:
            InconsistencyError: 任一样本偏差超过 agreement_tol
        """
        samples = self.cross_check_samples if samples is None else samples
        seed = self.seed if seed is None else seed
        rng = make_rng(seed)
        pairs = sample_pairs(rng, samples)
        ts = sample_weights(rng, samples)
        ps = sample_exponents(rng, samples)

        a, b = pairs[:, 0], pairs[:, 1]
        xs = np.abs(a - b) / (a + b)
        us = (2.0 * ts - 1.0) ** 2
        kernel = eval_f_grid(us, ps, xs)

        direct = np.empty(samples)
        for i in range(samples):
            pair = PositivePair(float(a[i]), float(b[i]))
            direct[i] = math.log(
                q_family(pair, WeightParam(float(ts[i])), ExponentParam(float(ps[i]))) / seiffert_mean(pair)
            )

        deviations = np.abs(direct - kernel)
        worst = int(np.argmax(deviations)) if samples else 0
        max_deviation = float(deviations[worst]) if samples else 0.0
        summary = CrossCheckSummary(samples=samples, seed=seed, max_deviation=max_deviation,
                                    tolerance=self.agreement_tol)
        if not summary.passed:
            raise InconsistencyError(
                f"交叉校验失败: 最大偏差 {max_deviation!r} "
                f"(a={a[worst]!r}, b={b[worst]!r}, t={ts[worst]!r}, p={ps[worst]!r})"
            )
        logger.info(f"交叉校验通过: {samples} 个样本，最大偏差 {max_deviation:.3e}")
        return summary

    # ===== 分情形 =====

    def check_case_structure(self, params: KernelParams, cfg: Optional[ScanConfig] = None) -> CaseReport:
        """
        按 u 与 g 的两个极限分情形，并在网格上核对 f 的形状

        CASE1 单增、CASE2 单减、CASE3 先减后增（报告 x0）。
        相邻差分落在舍入噪声以内时不参与判断。

        Raises:
            InconsistencyError: 形状与分情形不符
            IndeterminateScanError: CASE3 的极小点不在网格范围内
        """
        cfg = cfg or self.scan_config
        u, p = params.u, params.p
        g_at_one, _, g_at_zero = case_bounds(p)
        if u >= g_at_zero:
            case = CaseLabel.CASE1
        elif u <= g_at_one:
            case = CaseLabel.CASE2
        else:
            case = CaseLabel.CASE3

        xs = self.build_grid(cfg)
        growth = p * np.log1p(u * xs * xs)
        shrink = log_atan_ratio(xs)
        fs = growth + shrink
        scale = growth + np.abs(shrink)
        diffs = np.diff(fs)
        # 直接路径的 log(arctan(x)/x) 有约 1 ulp 的绝对误差，噪声带额外加 1
        noise = SHAPE_NOISE_ULPS * np.finfo(float).eps * (scale[:-1] + scale[1:] + 1.0)
        signs = np.sign(diffs[np.abs(diffs) > noise])
        sign_changes = int(np.count_nonzero(signs[1:] != signs[:-1]))

        def violation(expected: str) -> InconsistencyError:
            return InconsistencyError(
                f"{case.value} 要求 f {expected}，网格上观察到 {sign_changes} 次单调性变化 (u={u!r}, p={p!r})"
            )

        extremum_x0 = None
        if case == CaseLabel.CASE1:
            if (signs < 0).any():
                raise violation("严格递增")
        elif case == CaseLabel.CASE2:
            if (signs > 0).any():
                raise violation("严格递减")
        else:
            if sign_changes > 1 or (sign_changes == 1 and signs[0] > 0):
                raise violation("先减后增")
            extremum_x0 = self._bisect_extremum(params, xs)
            if extremum_x0 is None:
                raise IndeterminateScanError(
                    "极小点 x0 不在扫描范围内", u=u, p=p,
                    grid={'size': int(xs.size), 'x_min': cfg.x_min, 'x_max': cfg.x_max},
                )

        logger.debug(f"u={u!r} p={p!r} 属于 {case.value}，单调性变化 {sign_changes} 次")
        return CaseReport(case=case, u=u, p=p, sign_changes=sign_changes, extremum_x0=extremum_x0)

    # ===== 反例搜索 =====

    @staticmethod
    def check_double_inequality(pair: PositivePair, t1: float, t2: float, p: float) -> bool:
        """Q_{t1,p}(a,b) < T(a,b) < Q_{t2,p}(a,b) 是否成立（直接计算）"""
        if pair.is_diagonal:
            raise DomainError(f"a = b = {pair.a!r} 时严格比较无意义")
        exponent = ExponentParam(p)
        seiffert = seiffert_mean(pair)
        return (q_family(pair, WeightParam(t1), exponent) < seiffert
                < q_family(pair, WeightParam(t2), exponent))

    def search_counterexamples(self, t1: float, t2: float, p: float,
                               samples: Optional[int] = None,
                               seed: Optional[int] = None) -> List[Counterexample]:
        """
        在随机正实数对上搜索双边不等式的反例

        在精确阈值 (t_lower, t_upper) 处应为空，越过阈值后应能找到反例。
        Q 与 T 的差异不超过 COUNTEREXAMPLE_RESOLUTION 倍 T 时视为舍入，不计入。
        """
        samples = DEFAULT_SEARCH_SAMPLES if samples is None else samples
        seed = self.seed if seed is None else seed
        lower_w, upper_w, exponent = WeightParam(t1), WeightParam(t2), ExponentParam(p)

        found = []
        for a, b in sample_pairs(make_rng(seed), samples):
            pair = PositivePair(float(a), float(b))
            if pair.is_diagonal:
                continue
            lower = q_family(pair, lower_w, exponent)
            seiffert = seiffert_mean(pair)
            upper = q_family(pair, upper_w, exponent)
            margin = COUNTEREXAMPLE_RESOLUTION * seiffert
            if lower - seiffert > margin or seiffert - upper > margin:
                found.append(Counterexample(a=pair.a, b=pair.b, lower_mean=lower,
                                            seiffert=seiffert, upper_mean=upper))

        logger.info(f"t1={t1!r}, t2={t2!r}, p={p!r}: {samples} 个样本中找到 {len(found)} 个反例")
        return found

    def certify_classical_bounds(self, samples: Optional[int] = None,
                                 seed: Optional[int] = None) -> Dict[str, List[Counterexample]]:
        """
        两个经典特例的反例搜索

        'S'：p=1/2，(α, β)；'C'：p=1，(λ, μ)。两个列表都应为空。
        """
        bounds = classical_bounds()
        return {
            'S': self.search_counterexamples(bounds.alpha, bounds.beta, 0.5, samples, seed),
            'C': self.search_counterexamples(bounds.lam, bounds.mu, 1.0, samples, seed),
        }

    # ===== 定理证书 =====

    def certify_theorem(self, p: float, cfg: Optional[ScanConfig] = None,
                        delta: Optional[float] = None) -> TheoremCertificate:
        """
        固定 p 下的完整验证

        Args:
            p: 幂次 p ≥ 1/2
            cfg: 扫描配置
            delta: 锐性检验的 t 偏移量，默认取配置值

        Returns:
            TheoremCertificate；passed 为 False 表示与定理矛盾
        """
        cfg = cfg or self.scan_config
        delta = self.sharpness_delta if delta is None else delta
        thresholds = threshold_pair(p)

        empirical_lower = self.empirical_t_lower(p, cfg)
        empirical_upper = self.empirical_t_upper(p, cfg)

        t_above_lower = min(thresholds.t_lower + delta, 1.0)
        t_below_upper = max(thresholds.t_upper - delta, 0.5)
        t_band = 0.5 * (thresholds.t_lower + thresholds.t_upper)

        notes = []
        if t_below_upper <= thresholds.t_lower or t_above_lower >= thresholds.t_upper:
            notes.append(f"δ={delta!r} 大于阈值间隔 {thresholds.gap!r}，锐性检查点越过了阈值带")

        certificate = TheoremCertificate(
            thresholds=thresholds,
            empirical_t_lower=empirical_lower,
            empirical_t_upper=empirical_upper,
            tolerance=self.threshold_tol,
            delta=delta,
            lower_sharpness=self.scan_sign(KernelParams(u_from_t(t_above_lower), p), cfg),
            upper_sharpness=self.scan_sign(KernelParams(u_from_t(t_below_upper), p), cfg),
            band=self.scan_sign(KernelParams(u_from_t(t_band), p), cfg),
            notes=notes,
        )

        if certificate.passed:
            logger.info(
                f"p={p!r} 验证通过: t_lower 偏差 {certificate.lower_error:.3e}, "
                f"t_upper 偏差 {certificate.upper_error:.3e}"
            )
        else:
            logger.warning(f"p={p!r} 验证失败: {'; '.join(certificate.failures())}")
        return certificate


# 全局单例
_verifier: Optional[Verifier] = None


def get_verifier() -> Verifier:
    """获取验证器单例"""
    global _verifier
    if _verifier is None:
        _verifier = Verifier()
    return _verifier
