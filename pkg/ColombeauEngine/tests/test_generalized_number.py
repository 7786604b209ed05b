"""
Tests for GeneralizedNumber arithmetic, valuations and the sharp norm
"""

import math
from fractions import Fraction

import mpmath
import pytest

from ColombeauEngine.core.Errors import GridMismatchError, NotInvertibleError, ValuationUnreliable
from ColombeauEngine.core.ExactNet import ExactNet
from ColombeauEngine.core.GeneralizedNumber import (
    GeneralizedNumber,
    GeneralizedPoint,
    d_eps,
    e_norm,
    maximum,
    minimum,
    sharp_distance,
    valuation,
)
from ColombeauEngine.core.Grid import default_grid
from ColombeauEngine.tests.helpers.net_helper import NetHelper


class TestExactFastPath:
    """Exact operands stay exact"""

    def test_of_int_and_fraction(self):
        """Test plain numbers embed as constants"""
        assert GeneralizedNumber.of(3).exact == ExactNet.constant(3)
        assert GeneralizedNumber.of(Fraction(1, 3)).exact == ExactNet.constant(Fraction(1, 3))
        assert GeneralizedNumber.of(0.5).exact == ExactNet.constant(Fraction(1, 2))

    def test_of_rejects_strings(self):
        """Test text must go through the parser"""
        with pytest.raises(TypeError):
            GeneralizedNumber.of("eps")

    def test_sum_and_product(self):
        """Test exact ring operations"""
        x = d_eps(-1) * 3 + GeneralizedNumber.monomial(5, 2)
        assert x.is_exact
        assert x.to_text() == "3*eps^-1 + 5*eps^2"
        assert (d_eps(1) * d_eps(2)).exact == ExactNet.monomial(1, 3)

    def test_division_by_monomial_is_exact(self):
        """Test (1 + eps) / eps = eps^-1 + 1"""
        q = (1 + d_eps(1)) / d_eps(1)
        assert q.is_exact
        assert q.exact.to_pairs() == [["1", "-1"], ["1", "0"]]

    def test_division_by_sum_is_sampled(self):
        """Test eps / (1 + eps) falls back to samples with valuation 1"""
        config = NetHelper.small_config()
        q = d_eps(1) / (1 + d_eps(1))
        assert not q.is_exact
        assert q.valuation(config) == pytest.approx(1.0, abs=1e-3)

    def test_reciprocal_of_zero(self):
        """Test the zero number is not invertible"""
        with pytest.raises(NotInvertibleError):
            GeneralizedNumber.zero().reciprocal()

    def test_negative_power_of_monomial(self):
        """Test (2 eps)^-2 = (1/4) eps^-2"""
        assert (GeneralizedNumber.monomial(2, 1) ** -2).exact == ExactNet.monomial(Fraction(1, 4), -2)

    def test_sqrt(self):
        """Test square roots of perfect-square monomials stay exact"""
        assert GeneralizedNumber.monomial(4, 2).sqrt().exact == ExactNet.monomial(2, 1)
        assert d_eps(1).sqrt().exact == ExactNet.monomial(1, Fraction(1, 2))
        assert not GeneralizedNumber.monomial(2, 1).sqrt().is_exact

    def test_max_min_by_leading_term(self):
        """Test eventual max and min of exact numbers"""
        assert maximum(d_eps(1), d_eps(2)).exact == ExactNet.monomial(1, 1)
        assert minimum(d_eps(1), d_eps(2)).exact == ExactNet.monomial(1, 2)
        assert maximum(-1, d_eps(3)).exact == ExactNet.monomial(1, 3)

    def test_to_dict(self):
        """Test the exact payload"""
        data = GeneralizedNumber.monomial(3, -1).to_dict()
        assert data == {"variant": "exact", "terms": [["3", "-1"]], "text": "3*eps^-1"}


class TestValuation:
    """Tests for valuations and the sharp norm"""

    def test_exact_valuation(self):
        """Test v(3 eps^-1 + 5 eps^2) = -1 and v(0) = +inf"""
        assert valuation(GeneralizedNumber.monomial(3, -1) + GeneralizedNumber.monomial(5, 2)) == -1
        assert valuation(0) == math.inf

    def test_exact_estimate(self):
        """Test the estimate of an exact number is flagged exact"""
        est = d_eps(2).estimate()
        assert est.exact
        assert est.value == 2.0
        assert est.reliable

    def test_sampled_power(self):
        """Test the regression recovers the exponent of eps^2"""
        config = NetHelper.small_config()
        x = GeneralizedNumber.from_generator(lambda eps: eps ** 2, label="eps^2", config=config)
        est = x.estimate(config)
        assert not est.exact
        assert est.reliable
        assert est.value == pytest.approx(2.0, abs=1e-6)

    def test_oscillating_net_is_unreliable(self):
        """Test a net jumping between e^1.5 and e^-1.5 has residual near 1.5 and is flagged"""
        config = NetHelper.small_config()
        grid = default_grid(config)
        values = [math.exp(1.5) if i % 2 else math.exp(-1.5) for i in range(len(grid))]
        x = GeneralizedNumber.from_values(values, grid)
        with pytest.warns(ValuationUnreliable):
            est = x.estimate(config)
        assert not est.reliable
        assert est.residual > 1.0

    def test_small_wobble_stays_reliable(self):
        """Test eps^2 (1 +- 1%) keeps a residual far below the threshold"""
        config = NetHelper.small_config()
        grid = default_grid(config)
        values = [eps ** 2 * (1.01 if i % 2 else 0.99) for i, eps in enumerate(grid.points)]
        est = GeneralizedNumber.from_values(values, grid).estimate(config)
        assert est.reliable
        assert est.residual < 0.05
        assert est.value == pytest.approx(2.0, abs=0.05)

    def test_sampled_plus_exact(self):
        """Test sampled + exact is sampled with the right valuation"""
        config = NetHelper.small_config()
        x = GeneralizedNumber.from_generator(lambda eps: eps ** 2, config=config) + 1
        assert not x.is_exact
        assert x.valuation(config) == pytest.approx(0.0, abs=1e-3)

    def test_negligible(self):
        """Test exp(-1/eps) is classified negligible"""
        config = NetHelper.small_config()
        est = NetHelper.negligible(config).estimate(config)
        assert est.negligible
        assert est.value == math.inf

    def test_e_norm(self):
        """Test |eps|_e = e^-1, |1|_e = 1 and |0|_e = 0"""
        assert e_norm(d_eps(1)) == pytest.approx(math.exp(-1))
        assert e_norm(1) == 1.0
        assert e_norm(0) == 0.0

    def test_sharp_distance(self):
        """Test d(1, 1 + eps^3) = e^-3"""
        assert sharp_distance(1, 1 + d_eps(3)) == pytest.approx(math.exp(-3))

    def test_grid_mismatch(self):
        """Test sampled nets on different grids do not mix"""
        short = GeneralizedNumber.from_generator(lambda eps: eps, config=NetHelper.small_config())
        long = GeneralizedNumber.from_generator(lambda eps: eps, config=NetHelper.config())
        with pytest.raises(GridMismatchError):
            short + long

    def test_mp_values_follow_grid(self):
        """Test exact numbers evaluate on every grid point"""
        grid = default_grid(NetHelper.small_config())
        values = d_eps(1).mp_values(grid)
        assert len(values) == len(grid)
        assert values[0] == mpmath.mpf(2) ** -grid.k_min


class TestGeneralizedPoint:
    """Tests for points of R~^n"""

    def test_dimension_and_text(self):
        """Test basic structure"""
        p = GeneralizedPoint.of(0, d_eps(2))
        assert p.dimension == 2
        assert p.to_text() == "(0, eps^2)"

    def test_euclidean_norm_single_component(self):
        """Test |(0, -eps^2)| = eps^2 exactly"""
        assert GeneralizedPoint.of(0, -d_eps(2)).euclidean_norm().exact == ExactNet.monomial(1, 2)

    def test_euclidean_norm_pythagorean(self):
        """Test |(3 eps, 4 eps)| = 5 eps exactly"""
        p = GeneralizedPoint.of(GeneralizedNumber.monomial(3, 1), GeneralizedNumber.monomial(4, 1))
        assert p.euclidean_norm().exact == ExactNet.monomial(5, 1)

    def test_dimension_mismatch(self):
        """Test points of different dimension cannot be added"""
        with pytest.raises(ValueError):
            GeneralizedPoint.of(0) + GeneralizedPoint.of(0, 0)

    def test_with_component(self):
        """Test replacing one coordinate"""
        p = GeneralizedPoint.of(0, 0).with_component(1, d_eps(1))
        assert p[1].exact == ExactNet.monomial(1, 1)
        assert p[0].is_exact_zero
