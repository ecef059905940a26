"""
测试精确阈值
"""
import math

import mpmath
import pytest
from hypothesis import given, strategies as st

from src.business.lemma_kernels import eval_h, g_limit_at_zero
from src.business.thresholds import (
    classical_bounds,
    predicted_verdict,
    t_from_u,
    t_lower,
    t_upper,
    threshold_pair,
    u_from_t,
)
from src.models.certificate import Verdict
from src.utils.errors import DomainError

exponents = st.floats(min_value=0.5, max_value=1e3)
moderate_exponents = st.floats(min_value=0.5, max_value=100.0)


class TestClosedForms:
    """测试闭式阈值"""

    @pytest.mark.parametrize("p,lower,upper", [
        (0.5, 0.8940618, 0.9082483),
        (1.0, 0.7613616, 0.7886751),
    ])
    def test_known_values(self, p, lower, upper):
        assert t_lower(p) == pytest.approx(lower, abs=1e-7)
        assert t_upper(p) == pytest.approx(upper, abs=1e-7)

    @pytest.mark.parametrize("p", [0.5, 0.75, 1.0, 2.0, 5.0, 10.0])
    def test_against_mpmath(self, p):
        with mpmath.workdps(50):
            lower = 0.5 + mpmath.sqrt((4 / mpmath.pi) ** (1 / mpmath.mpf(p)) - 1) / 2
            upper = 0.5 + 1 / (2 * mpmath.sqrt(3 * mpmath.mpf(p)))
        assert t_lower(p) == pytest.approx(float(lower), rel=1e-15)
        assert t_upper(p) == pytest.approx(float(upper), rel=1e-15)

    def test_classical_constants(self):
        bounds = classical_bounds()
        assert bounds.alpha == pytest.approx((1 + math.sqrt(16 / math.pi ** 2 - 1)) / 2, rel=1e-15)
        assert bounds.beta == pytest.approx((3 + math.sqrt(6)) / 6, rel=1e-15)
        assert bounds.lam == pytest.approx((1 + math.sqrt(4 / math.pi - 1)) / 2, rel=1e-15)
        assert bounds.mu == pytest.approx((3 + math.sqrt(3)) / 6, rel=1e-15)

    def test_classical_bounds_to_dict(self):
        assert set(classical_bounds().to_dict()) == {'alpha', 'beta', 'lam', 'mu'}

    @given(p=exponents)
    def test_separation(self, p):
        pair = threshold_pair(p)
        assert 0.5 < pair.t_lower < pair.t_upper < 1.0
        assert pair.gap > 0

    @given(p=moderate_exponents)
    def test_images_in_u(self, p):
        pair = threshold_pair(p)
        assert abs(eval_h(p, pair.u_lower)) < 1e-14
        assert pair.u_upper == pytest.approx(g_limit_at_zero(p), rel=1e-14)

    def test_monotone_in_p(self):
        ps = [0.5, 0.75, 1.0, 2.0, 5.0, 10.0, 100.0]
        lowers = [t_lower(p) for p in ps]
        uppers = [t_upper(p) for p in ps]
        assert lowers == sorted(lowers, reverse=True)
        assert uppers == sorted(uppers, reverse=True)

    def test_large_p_approaches_one_half(self):
        assert t_upper(1e8) - 0.5 < 1e-4
        assert t_lower(1e8) - 0.5 < 1e-4

    @pytest.mark.parametrize("p", [0.4, float('nan'), float('inf')])
    def test_invalid_p(self, p):
        with pytest.raises(DomainError):
            t_lower(p)
        with pytest.raises(DomainError):
            t_upper(p)

    def test_to_dict(self):
        data = threshold_pair(1.0).to_dict()
        assert data['gap'] == pytest.approx(data['t_upper'] - data['t_lower'])


class TestConversions:
    """测试 t 与 u 的换算"""

    @given(t=st.floats(min_value=0.5, max_value=1.0))
    def test_round_trip(self, t):
        assert abs(t_from_u(u_from_t(t)) - t) <= 1e-15

    def test_known_values(self):
        assert u_from_t(0.75) == 0.25
        assert t_from_u(0.25) == 0.75
        assert u_from_t(0.5) == 0.0

    @pytest.mark.parametrize("t", [0.49, 1.01])
    def test_invalid_t(self, t):
        with pytest.raises(DomainError):
            u_from_t(t)

    def test_invalid_u(self):
        with pytest.raises(DomainError):
            t_from_u(-0.1)


class TestPredictedVerdict:
    """测试定理预测"""

    def test_regions(self):
        pair = threshold_pair(1.0)
        assert predicted_verdict(pair.t_lower, 1.0) == Verdict.ALL_NEGATIVE
        assert predicted_verdict(0.5, 1.0) == Verdict.ALL_NEGATIVE
        assert predicted_verdict(0.77, 1.0) == Verdict.MIXED
        assert predicted_verdict(pair.t_upper, 1.0) == Verdict.ALL_POSITIVE
        assert predicted_verdict(1.0, 1.0) == Verdict.ALL_POSITIVE
