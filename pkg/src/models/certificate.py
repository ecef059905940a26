"""
验证结果数据模型
==============
定义网格扫描配置、符号证书、分情形报告、交叉校验汇总和定理证书。

核心类：
- Verdict：符号判定（全负、全正、混合）
- CaseLabel：f 的形状分情形（单增、单减、先减后增）
- ScanConfig：扫描网格与容差配置
- Witness：符号见证点 (x, f(x))
- CertificateReport：scan_sign 的结果
- CaseReport：check_case_structure 的结果
- InequalityCertificate：单个 (pair, t, p) 上 log(Q/T) 两条路径的比对
- CrossCheckSummary：批量交叉校验汇总
- Counterexample：双边不等式的反例
- TheoremCertificate：固定 p 下的完整验证结果

说明：
所有报告都是不可变值，可在线程间自由共享。
"""
from dataclasses import dataclass, asdict, field
from enum import Enum
from typing import Any, Dict, List, Optional

from src.models.threshold import ThresholdPair
from src.utils.errors import DomainError, InconsistencyError


class Verdict(str, Enum):
    """符号判定"""
    ALL_NEGATIVE = "ALL_NEGATIVE"
    ALL_POSITIVE = "ALL_POSITIVE"
    MIXED = "MIXED"


class CaseLabel(str, Enum):
    """f 的形状分情形"""
    CASE1 = "CASE1"  # u ≥ 1/(3p)：严格递增
    CASE2 = "CASE2"  # u ≤ (π−2)/((2p−1)π+2)：严格递减
    CASE3 = "CASE3"  # 两者之间：先减后增，内部极小点 x0


@dataclass(frozen=True)
class ScanConfig:
    """扫描配置"""
    grid_size: int = 4096
    x_min: float = 1e-6
    x_max: float = 1.0 - 1e-9
    refine_iters: int = 60
    geometric_ratio: float = 0.5
    sign_abs_tol: float = 1e-13
    sign_x2_tol: float = 1e-9

    def __post_init__(self):
        """校验：0 < x_min < x_max < 1，grid_size ≥ 16"""
        if not 0.0 < self.x_min < self.x_max < 1.0:
            raise DomainError(
                f"需要 0 < x_min < x_max < 1，实际为 x_min={self.x_min!r}, x_max={self.x_max!r}"
            )
        if self.grid_size < 16:
            raise DomainError(f"grid_size 必须 ≥ 16，实际为 {self.grid_size!r}")
        if self.refine_iters < 1:
            raise DomainError(f"refine_iters 必须为正整数，实际为 {self.refine_iters!r}")
        if not 0.0 < self.geometric_ratio < 1.0:
            raise DomainError(f"geometric_ratio 必须位于 (0, 1)，实际为 {self.geometric_ratio!r}")
        if self.sign_abs_tol < 0 or self.sign_x2_tol < 0:
            raise DomainError("符号容差不能为负")

    @classmethod
    def from_config(cls, config=None, **overrides) -> 'ScanConfig':
        """从 ConfigLoader 构造，overrides 中非 None 的值优先"""
        if config is None:
            from src.config import get_config
            config = get_config()
        tolerances = config.scan_sign_tolerances
        values = {
            'grid_size': config.scan_grid_size,
            'x_min': config.scan_x_min,
            'x_max': config.scan_x_max,
            'refine_iters': config.scan_refine_iters,
            'geometric_ratio': config.scan_geometric_ratio,
            'sign_abs_tol': tolerances['abs_tol'],
            'sign_x2_tol': tolerances['x2_tol'],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class Witness:
    """符号见证点；is_limit 为 True 表示取自 x→1 的解析极限 h_p(u)"""
    x: float
    value: float
    is_limit: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class CertificateReport:
    """网格符号扫描结果"""
    verdict: Verdict
    u: float
    p: float
    endpoint_value: float
    grid_points: int
    x_min: float
    x_max: float
    negative_witness: Optional[Witness] = None
    positive_witness: Optional[Witness] = None
    extremum_x0: Optional[float] = None

    def __post_init__(self):
        """报告自身的不变量"""
        if self.verdict == Verdict.MIXED:
            if self.negative_witness is None or self.positive_witness is None:
                raise InconsistencyError("MIXED 判定必须同时给出正负见证点")
            if not (self.negative_witness.value < 0 < self.positive_witness.value):
                raise InconsistencyError("MIXED 判定的见证点符号必须严格相反")
        if self.verdict == Verdict.ALL_NEGATIVE:
            if self.positive_witness is not None or self.endpoint_value > 0:
                raise InconsistencyError("ALL_NEGATIVE 判定不能有正见证点，且端点极限必须 ≤ 0")
        if self.verdict == Verdict.ALL_POSITIVE and self.negative_witness is not None:
            raise InconsistencyError("ALL_POSITIVE 判定不能有负见证点")

    @property
    def grid(self) -> Dict[str, Any]:
        """网格元数据"""
        return {'size': self.grid_points, 'x_min': self.x_min, 'x_max': self.x_max}

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典（JSON 友好）"""
        return {
            'verdict': self.verdict.value,
            'u': self.u,
            'p': self.p,
            'endpoint_value': self.endpoint_value,
            'negative_witness': self.negative_witness.to_dict() if self.negative_witness else None,
            'positive_witness': self.positive_witness.to_dict() if self.positive_witness else None,
            'extremum_x0': self.extremum_x0,
            'grid': self.grid,
        }


@dataclass(frozen=True)
class CaseReport:
    """分情形检查结果"""
    case: CaseLabel
    u: float
    p: float
    sign_changes: int
    extremum_x0: Optional[float] = None

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['case'] = self.case.value
        return data


@dataclass(frozen=True)
class InequalityCertificate:
    """log(Q_{t,p}/T) 的两条独立计算路径"""
    x: float
    u: float
    p: float
    direct_value: float
    kernel_value: float

    @property
    def deviation(self) -> float:
        return abs(self.direct_value - self.kernel_value)

    @property
    def sign(self) -> int:
        """log(Q/T) 的符号：-1 表示 Q < T，1 表示 Q > T"""
        if self.kernel_value > 0:
            return 1
        if self.kernel_value < 0:
            return -1
        return 0


@dataclass(frozen=True)
class CrossCheckSummary:
    """批量交叉校验汇总"""
    samples: int
    seed: int
    max_deviation: float
    tolerance: float

    @property
    def passed(self) -> bool:
        return self.max_deviation <= self.tolerance

    def to_dict(self) -> Dict[str, Any]:
        data = asdict(self)
        data['passed'] = self.passed
        return data


@dataclass(frozen=True)
class Counterexample:
    """Q_{t1,p} < T < Q_{t2,p} 不成立的样本"""
    a: float
    b: float
    lower_mean: float
    seiffert: float
    upper_mean: float

    def to_dict(self) -> Dict[str, Any]:
        return asdict(self)


@dataclass(frozen=True)
class TheoremCertificate:
    """
    固定 p 下的定理验证结果

    包含：网格+二分得到的经验阈值与闭式阈值的比对、
    t_lower+δ 处的正见证（t₁ 不能再增大）、t_upper−δ 处的负见证（t₂ 不能再减小）、
    以及两阈值中点处的 MIXED 判定。
    """
    thresholds: ThresholdPair
    empirical_t_lower: float
    empirical_t_upper: float
    tolerance: float
    delta: float
    lower_sharpness: CertificateReport
    upper_sharpness: CertificateReport
    band: CertificateReport
    notes: List[str] = field(default_factory=list)

    @property
    def p(self) -> float:
        return self.thresholds.p

    @property
    def lower_error(self) -> float:
        return abs(self.empirical_t_lower - self.thresholds.t_lower)

    @property
    def upper_error(self) -> float:
        return abs(self.empirical_t_upper - self.thresholds.t_upper)

    def failures(self) -> List[str]:
        """与定理矛盾的条目（空列表表示全部通过）"""
        problems = []
        if self.lower_error >= self.tolerance:
            problems.append(f"t_lower 偏差 {self.lower_error:.3e} 超出容差")
        if self.upper_error >= self.tolerance:
            problems.append(f"t_upper 偏差 {self.upper_error:.3e} 超出容差")
        if self.lower_sharpness.positive_witness is None:
            problems.append("t_lower+δ 处没有找到 f>0 的见证点")
        if self.upper_sharpness.negative_witness is None:
            problems.append("t_upper−δ 处没有找到 f<0 的见证点")
        if self.band.verdict != Verdict.MIXED:
            problems.append(f"阈值带中点判定为 {self.band.verdict.value}，应为 MIXED")
        return problems

    @property
    def passed(self) -> bool:
        return not self.failures()

    def to_dict(self) -> Dict[str, Any]:
        """转换为字典（JSON 友好）"""
        return {
            'p': self.p,
            't_lower': self.thresholds.t_lower,
            't_upper': self.thresholds.t_upper,
            'empirical_t_lower': self.empirical_t_lower,
            'empirical_t_upper': self.empirical_t_upper,
            'lower_error': self.lower_error,
            'upper_error': self.upper_error,
            'tolerance': self.tolerance,
            'delta': self.delta,
            'lower_sharpness': self.lower_sharpness.to_dict(),
            'upper_sharpness': self.upper_sharpness.to_dict(),
            'band': self.band.to_dict(),
            'passed': self.passed,
            'failures': self.failures(),
            'notes': list(self.notes),
        }
