"""
Tests for generalized norms, balls, metrics and Cauchy limits on GD_K
"""

import math

import pytest

from ColombeauEngine.core.Errors import NotCauchyError, PreconditionError
from ColombeauEngine.core.ExactNet import ExactNet
from ColombeauEngine.core.GeneralizedNumber import GeneralizedPoint, d_eps
from ColombeauEngine.core.Grid import default_grid
from ColombeauEngine.topology.Balls import absorbent_witness, ball_member, c_set_member, u_set_member
from ColombeauEngine.topology.Completeness import cauchy_limit
from ColombeauEngine.topology.Metrics import gauge_P, gauge_valuation, metric, tail_e, term_e
from ColombeauEngine.topology.Norms import P_m, norm_m, norm_m_global, norm_table, v_m
from ColombeauEngine.tests.helpers.net_helper import NetHelper


class TestNorms:
    """Tests for ||f||_m and its valuation"""

    def test_zero_function(self):
        """Test the zero function has an exact zero norm"""
        config = NetHelper.small_config()
        zero = NetHelper.supported("0", config=config)
        norm = norm_m(zero, 2, config)
        assert norm.is_zero
        assert v_m(norm) == math.inf
        assert P_m(norm) == 0.0

    def test_bump_norms(self):
        """Test v_m(bump) = 0"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        table = norm_table(f, 2, config=config)
        assert [n.order for n in table] == [0, 1, 2]
        for norm in table:
            assert norm.valuation(config) == pytest.approx(0.0, abs=1e-6)

    def test_norm_order_not_bounded_by_derivative_order(self):
        """Test ||bump||_2 is computed when max_derivative_order is 1"""
        config = NetHelper.small_config().with_overrides(max_derivative_order=1)
        f = NetHelper.supported("bump(x1)", config=config)
        with pytest.raises(PreconditionError):
            f.derivative((2,), config)
        assert v_m(f, 2, config) == pytest.approx(0.0, abs=1e-6)

    def test_scaled_bump_norms(self):
        """Test v_m(eps^-1 bump(x1/eps)) = -(m + 1)"""
        config = NetHelper.small_config()
        f = NetHelper.supported("eps^-1 * bump(x1/eps)", config=config)
        assert v_m(f, 0, config) == pytest.approx(-1.0, abs=0.05)
        assert v_m(f, 1, config) == pytest.approx(-2.0, abs=0.05)

    def test_payload(self):
        """Test the norm payload carries one sample per grid point"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        payload = norm_m(f, 0, config).to_payload(config)
        assert payload.valuation.reliable
        assert len(payload.samples) == len(default_grid(config))
        assert payload.samples[0] == pytest.approx(1.0, abs=1e-6)

    def test_global_norm_matches(self):
        """Test the sup over R^n agrees with the sup over the witness"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        norm = norm_m_global(f, 0, config)
        assert norm.source == "global"
        assert not norm.mismatch

    def test_order_limits(self):
        """Test negative and too large orders are refused"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        with pytest.raises(PreconditionError):
            norm_m(f, -1, config)
        with pytest.raises(PreconditionError):
            norm_m(f, config.max_norm_order + 1, config)


class TestBalls:
    """Tests for the sharp topology on GD_K"""

    def test_ball_member(self):
        """Test ||bump||_0 = 1 lies below 2 but not below 1/2"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        assert ball_member(f, None, 0, 2, config).is_true
        assert ball_member(f, None, 0, 0.5, config).is_false

    def test_ball_radius(self):
        """Test the radius must be strictly positive"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        with pytest.raises(PreconditionError):
            ball_member(f, None, 0, 0, config)

    def test_c_set(self):
        """Test P_0(bump) = 1"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        assert c_set_member(f, None, 0, 2.0, config)
        assert not c_set_member(f, None, 0, 0.5, config)
        with pytest.raises(PreconditionError):
            c_set_member(f, None, 0, 0.0, config)

    def test_u_set(self):
        """Test ||bump||_0 / rho is infinitesimal for rho = eps^-1 only"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        assert u_set_member(f, None, 0, d_eps(-1), config).is_true
        assert u_set_member(f, None, 0, 1, config).is_false

    def test_u_set_of_equal_functions(self):
        """Test f lies in every U^m_rho(f)"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        assert u_set_member(f, f, 1, d_eps(3), config).is_true

    def test_absorbent_witness(self):
        """Test bump lies in eps^-2 * U^0_eps(0)"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        witness = absorbent_witness(f, d_eps(1), 0, config)
        assert witness.verified
        assert witness.p == pytest.approx(1.0)
        assert witness.b < witness.q - witness.p
        assert witness.b in (-2, -3)


class TestMetrics:
    """Tests for d_e and d_2"""

    def test_term(self):
        """Test the d_e terms"""
        assert term_e(3, 2.0) == pytest.approx(math.exp(-3))
        assert term_e(1, 2.0) == pytest.approx(math.exp(-2))
        assert term_e(2, math.inf) == 0.0

    def test_identical_functions(self):
        """Test d_e(f, f) = d_2(f, f) = 0"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        report = metric(f, f, 4, config)
        assert report.d_e == 0.0
        assert report.d_2 == 0.0
        assert report.valuations[1] == math.inf

    def test_closed_form(self):
        """Test v_n(f - g) = 2 gives d_e = 2 e^-2 + sum_{n=3}^N e^-n"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        g = NetHelper.supported("bump(x1) + eps^2*bump(x1)", config=config)
        N = 4
        report = metric(f, g, N, config)
        expected = 2 * math.exp(-2) + sum(math.exp(-n) for n in range(3, N + 1))
        assert report.d_e == pytest.approx(expected, abs=1e-9 + tail_e(N))
        assert report.unreliable_orders == []
        assert report.upper_bound_holds
        assert report.to_payload().truncation == N

    def test_gauge_valuation(self):
        """Test V_{A_1}(bump) = v_1(bump) - 1"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        assert gauge_valuation(f, 1, config) == pytest.approx(-1.0, abs=1e-6)

    def test_gauge_P(self):
        """Test P_{A_1}(bump) = e, P_{A_1}(eps bump) = 1 and P of the zero function is 0"""
        config = NetHelper.small_config()
        bump, small, zero = NetHelper.supported_family(["bump(x1)", "eps * bump(x1)", "0"], config=config)
        assert gauge_P(bump, 1, config) == pytest.approx(math.e, rel=1e-5)
        assert gauge_P(small, 1, config) == pytest.approx(1.0, rel=1e-5)
        assert gauge_P(zero, 1, config) == 0.0


class TestCompleteness:
    """Tests for limits of Cauchy schedules"""

    def test_constant_sequence(self):
        """Test the limit of a constant sequence is the constant"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        result = cauchy_limit([f, f], config=config)
        assert result.converged
        assert result.limit.eval_scalar(GeneralizedPoint.of(0), config).exact == ExactNet.constant(1)

    def test_not_cauchy(self):
        """Test a jump of size 2 at order 0 breaks the schedule"""
        config = NetHelper.small_config()
        u0, u1 = NetHelper.supported_family(["0", "2*bump(x1)"], config=config)
        with pytest.raises(NotCauchyError):
            cauchy_limit([u0, u1], config=config)

    def test_too_short(self):
        """Test a single term has no limit"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        with pytest.raises(PreconditionError):
            cauchy_limit([f], config=config)

    def test_geometric_sum(self):
        """Test partial sums of eps^(2k) bump converge with certificates"""
        config = NetHelper.small_config()
        texts = ["bump(x1)", "bump(x1) * (1 + eps^2)", "bump(x1) * (1 + eps^2 + eps^4)"]
        result = cauchy_limit(NetHelper.supported_family(texts, config=config), config=config)
        assert result.converged
        assert [c["p"] for c in result.certificates] == [1, 2]
        assert result.schedule == [0, 1, 2]
