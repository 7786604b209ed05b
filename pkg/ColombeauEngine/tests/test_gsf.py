"""
Tests for generalized smooth functions, their extremes and compact support
"""

import math
from fractions import Fraction

import pytest

from ColombeauEngine.core.Errors import ExpressionParseError, PreconditionError
from ColombeauEngine.core.ExactNet import ExactNet
from ColombeauEngine.core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, d_eps
from ColombeauEngine.core.Order import is_negligible
from ColombeauEngine.gsf.Constructions import cutoff_embed_cgf, delta_embedding, mollified_representative
from ColombeauEngine.gsf.Extremes import extreme_values, image_enclosure, image_member
from ColombeauEngine.gsf.Gsf import CompactlySupportedGsf, Counterexample, Gsf
from ColombeauEngine.gsf.SmoothExpr import SmoothExpr, multi_indices
from ColombeauEngine.gsf.Support import (
    extend_global,
    moderateness_certificate,
    support_positive_at,
    verify_compact_support,
)
from ColombeauEngine.sets.BoxNet import BoxNet
from ColombeauEngine.sets.FunctionallyCompact import FunctionallyCompactSet, interval
from ColombeauEngine.sets.InternalSets import AllOfRtilde, StronglyInternalSet
from ColombeauEngine.tests.helpers.net_helper import NetHelper


class TestSmoothExpr:
    """Tests for parsing and differentiating expressions"""

    def test_variable_outside_dimension(self):
        """Test x3 is rejected for a function of two variables"""
        with pytest.raises(ExpressionParseError):
            SmoothExpr.parse("x1 + x3", 2)

    def test_derivative(self):
        """Test d/dx1 x1^3 = 3 x1^2"""
        f = Gsf.of(["x1^3"], 1)
        assert f.derivative((1,)).to_text() == "3*x1^2"

    def test_derivative_order_limit(self):
        """Test order 7 is refused under the default max_derivative_order of 6"""
        f = Gsf.of(["x1^8"], 1)
        assert f.derivative((6,)).to_text() == "20160*x1^2"
        with pytest.raises(PreconditionError):
            f.derivative((7,))

    def test_derivative_order_follows_config(self):
        """Test raising max_derivative_order admits order 7"""
        config = NetHelper.config(max_derivative_order=7)
        assert Gsf.of(["x1^8"], 1).derivative((7,), config).to_text() == "40320*x1"

    def test_multi_indices(self):
        """Test all multi-indices of order <= 1 in two variables"""
        assert sorted(multi_indices(2, 1)) == [(0, 0), (0, 1), (1, 0)]


class TestEvaluation:
    """Tests for evaluating a GSF at generalized points"""

    def test_exact_fast_path(self):
        """Test eps^-1 bump(x1/eps) at 0 is exactly eps^-1"""
        f = NetHelper.gsf("eps^-1 * bump(x1/eps)")
        value = f.eval_scalar(GeneralizedPoint.of(0))
        assert value.is_exact
        assert value.exact == ExactNet.monomial(1, -1)

    def test_off_support_is_negligible(self):
        """Test eps^-1 bump(x1/eps) vanishes at 2"""
        config = NetHelper.small_config()
        value = NetHelper.gsf("eps^-1 * bump(x1/eps)").eval_scalar(GeneralizedPoint.of(2), config)
        assert value.vanishes_on_grid

    def test_bump_values(self):
        """Test bump(0) = 1, bump(1/2) = exp(-1/3) and bump(1) = 0"""
        config = NetHelper.small_config()
        f = NetHelper.gsf("bump(x1)")
        assert f.eval_scalar(GeneralizedPoint.of(0), config).exact == ExactNet.constant(1)
        half = f.eval_scalar(GeneralizedPoint.of(Fraction(1, 2)), config)
        assert half.values()[0] == pytest.approx(math.exp(-1 / 3))
        assert f.eval_scalar(GeneralizedPoint.of(1), config).is_exact_zero

    def test_plateau_values(self):
        """Test plateau is 1 on |t| <= 1/2 and 0 on |t| >= 1"""
        config = NetHelper.small_config()
        f = NetHelper.gsf("plateau(x1)")
        assert f.eval_scalar(GeneralizedPoint.of(Fraction(1, 2)), config).exact == ExactNet.constant(1)
        assert f.eval_scalar(GeneralizedPoint.of(-1), config).is_exact_zero
        middle = f.eval_scalar(GeneralizedPoint.of(Fraction(3, 4)), config).values()[0]
        assert 0.0 < middle < 1.0

    def test_point_outside_domain(self):
        """Test evaluation checks the domain"""
        f = Gsf.of(["x1"], 1, StronglyInternalSet(BoxNet.of([[(-1, 1)]])))
        with pytest.raises(PreconditionError):
            f.eval(GeneralizedPoint.of(2))

    def test_dimension_mismatch(self):
        """Test points must match the number of variables"""
        with pytest.raises(PreconditionError):
            NetHelper.gsf("x1").eval(GeneralizedPoint.of(0, 0))

    def test_vector_valued(self):
        """Test componentwise evaluation"""
        f = Gsf.of(["x1 + x2", "x1*x2"], 2)
        value = f.eval(GeneralizedPoint.of(d_eps(1), 2))
        assert value[0].exact == ExactNet.from_pairs([(2, 0), (1, 1)])
        assert value[1].exact == ExactNet.monomial(2, 1)


class TestDelta:
    """Tests for the delta embedding"""

    def test_value_at_origin(self):
        """Test delta(0) = eps^-1"""
        value = delta_embedding(1, 1).eval_scalar(GeneralizedPoint.of(0))
        assert value.exact == ExactNet.monomial(1, -1)

    def test_plateau_radius(self):
        """Test delta is eps^-1 on |x| <= p eps"""
        value = delta_embedding(1, 1).eval_scalar(GeneralizedPoint.of(d_eps(1)))
        assert value.exact == ExactNet.monomial(1, -1)

    def test_two_dimensional(self):
        """Test delta in R~^2 scales like eps^-2"""
        value = delta_embedding(2, 1).eval_scalar(GeneralizedPoint.of(0, 0))
        assert value.exact == ExactNet.monomial(1, -2)

    def test_radius_must_be_positive(self):
        """Test p <= 0 is rejected"""
        with pytest.raises(PreconditionError):
            delta_embedding(1, 0)


class TestCompactSupport:
    """Tests for support verification"""

    def test_bump_is_supported_in_unit_interval(self):
        """Test bump(x1) lies in GD_[-1,1]"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        assert isinstance(f, CompactlySupportedGsf)
        assert f.verified_to_order == 2
        assert f.exterior_sample_log[0].kind == "far"

    def test_constant_fails_at_far_point(self):
        """Test 1 is not compactly supported"""
        config = NetHelper.small_config()
        result = verify_compact_support(NetHelper.gsf("1"), interval(-1, 1, config), config=config)
        assert isinstance(result, Counterexample)
        assert result.decided
        assert result.kind == "far"

    def test_wide_bump_fails_near_witness(self):
        """Test bump(x1/2) is not supported in [-1, 1]"""
        config = NetHelper.small_config()
        result = verify_compact_support(NetHelper.gsf("bump(x1/2)"), interval(-1, 1, config), config=config)
        assert isinstance(result, Counterexample)
        assert result.decided
        assert result.to_dict()["decided"] is True

    def test_support_positive_at(self):
        """Test {|f| > 0} holds inside the bump and fails outside"""
        f = NetHelper.gsf("bump(x1)")
        assert support_positive_at(f, GeneralizedPoint.of(0)).is_true
        assert support_positive_at(f, GeneralizedPoint.of(2)).is_false

    def test_negative_order_rejected(self):
        """Test the verification order must be nonnegative"""
        with pytest.raises(PreconditionError):
            verify_compact_support(NetHelper.gsf("bump(x1)"), interval(-1, 1), order=-1)

    def test_derivative_keeps_witness(self):
        """Test differentiation lowers the verified order"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        df = f.derivative((1,))
        assert df.witness is f.witness
        assert df.verified_to_order == 1


class TestExtremes:
    """Tests for extreme values and image enclosures"""

    def test_square_on_unit_interval(self):
        """Test min and max of x1^2 on [-1, 1] snap to exact values"""
        config = NetHelper.small_config()
        ext = extreme_values(NetHelper.gsf("x1^2"), interval(-1, 1, config), config)
        assert ext.min.is_exact_zero
        assert ext.max.exact == ExactNet.constant(1)
        assert ext.argmin[0].is_exact_zero
        assert ext.argmax[0].exact.abs() == ExactNet.constant(1)
        assert set(ext.to_dict()) >= {"argmin", "argmax", "min", "max"}

    def test_scaled_bump(self):
        """Test max of eps^-1 bump(x1/eps) has valuation -1"""
        config = NetHelper.small_config()
        ext = extreme_values(NetHelper.gsf("eps^-1 * bump(x1/eps)"), interval(-1, 1, config), config)
        assert ext.max.valuation(config) == pytest.approx(-1.0, abs=1e-3)
        assert is_negligible(ext.min, config).is_true

    def test_image_enclosure(self):
        """Test x1^2 maps [-1, 1] onto [0, 1]"""
        config = NetHelper.small_config()
        f = NetHelper.gsf("x1^2")
        image = image_enclosure(f, interval(-1, 1, config), config)
        assert image.boxnet.to_payload() == [[["0", "1"]]]
        assert image.exact
        assert image.reason is None
        assert image_member(f, GeneralizedPoint.of(Fraction(1, 2)), image, config).is_true

    def test_image_on_disconnected_set_is_an_enclosure(self):
        """Test x1 on [-2, -1] u [1, 2] gives the hull [-2, 2], marked inexact"""
        config = NetHelper.small_config()
        K = FunctionallyCompactSet.from_boxnet(BoxNet.of([[(-2, -1)], [(1, 2)]]), config)
        image = image_enclosure(NetHelper.gsf("x1"), K, config)
        assert not image.exact
        assert "connected" in image.reason
        assert image.to_dict()["exact"] is False

    def test_image_of_vector_function_is_an_enclosure(self):
        """Test (x1, x1^2) on [-1, 1] is only enclosed by a box"""
        config = NetHelper.small_config()
        f = Gsf.of(["x1", "x1^2"], 1)
        image = image_enclosure(f, interval(-1, 1, config), config)
        assert not image.exact
        assert "vector-valued" in image.reason
        assert image.boxnet.dimension == 2


class TestConstructions:
    """Tests for extension, cutoff and mollification"""

    def test_extend_global_certificate(self):
        """Test the global extension carries a moderateness certificate"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        g = extend_global(f, config)
        assert isinstance(g.domain, AllOfRtilde)
        assert g.certificates[0]["kind"] == "global_moderateness"
        assert "(0,)" in g.certificates[0]["sups"]

    def test_moderateness_certificate(self):
        """Test the scaled bump has moderate value and slope at 0 and eps/2"""
        config = NetHelper.small_config()
        f = NetHelper.gsf("eps^-1 * bump(x1/eps)")
        points = [GeneralizedPoint.of(0), GeneralizedPoint.of(d_eps(1) / 2)]
        g = moderateness_certificate(f, points, 1, config)
        certificate = g.certificates[-1]
        assert certificate["kind"] == "moderate_samples"
        assert certificate["points"] == 2
        assert certificate["checked"] == 4
        assert certificate["failures"] == []
        assert certificate["grid"]["k_max"] == 28
        assert f.certificates == ()

    def test_extend_global_vanishes_outside_domain(self):
        """Test the extension of a function on (-2, 2) is 0 at 3"""
        config = NetHelper.small_config()
        f = Gsf.of(["bump(x1)"], 1, StronglyInternalSet(BoxNet.of([[(-2, 2)]])))
        supported = verify_compact_support(f, interval(-1, 1, config), config=config)
        assert isinstance(supported, CompactlySupportedGsf)
        g = extend_global(supported, config)
        assert g.eval_scalar(GeneralizedPoint.of(3), config).is_exact_zero
        assert g.eval_scalar(GeneralizedPoint.of(0), config).exact == ExactNet.constant(1)

    def test_cutoff_embedding_of_constant(self):
        """Test plateau(x1 / J) * 1 is supported in [-J, J] for J = eps^-1"""
        config = NetHelper.small_config()
        f = cutoff_embed_cgf(NetHelper.gsf("1"), d_eps(-1), config)
        assert f.witness.sharp_bound == 1
        assert f.eval_scalar(GeneralizedPoint.of(0), config).exact == ExactNet.constant(1)

    def test_cutoff_radius_must_diverge(self):
        """Test bounded and sampled radii are refused"""
        config = NetHelper.small_config()
        with pytest.raises(PreconditionError):
            cutoff_embed_cgf(NetHelper.gsf("1"), 1, config)
        sampled = GeneralizedNumber.from_generator(lambda eps: 1 / eps, config=config)
        with pytest.raises(PreconditionError):
            cutoff_embed_cgf(NetHelper.gsf("1"), sampled, config)

    def test_mollified_representative(self):
        """Test the mollified net is supported in K + eps^a"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        g = mollified_representative(f, 1, config)
        lo, hi = g.witness.boxnet.boxes[0].bounds()[0]
        assert lo.exact == ExactNet.from_pairs([(-1, 0), (-1, 1)])
        assert hi.exact == ExactNet.from_pairs([(1, 0), (1, 1)])

    def test_mollification_exponent_too_small(self):
        """Test a below the covering index is refused"""
        config = NetHelper.small_config()
        f = NetHelper.supported("bump(x1)", config=config)
        with pytest.raises(PreconditionError):
            mollified_representative(f, -1, config)
