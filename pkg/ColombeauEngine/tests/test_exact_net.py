"""
Tests for ExactNet arithmetic
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings as hyp_settings, strategies as st

from ColombeauEngine.core.ExactNet import AsymptoticTerm, ExactNet

quarters = st.integers(min_value=-8, max_value=12).map(lambda k: Fraction(k, 4))
coefficients = st.integers(min_value=-5, max_value=5).filter(lambda c: c != 0).map(Fraction)
nets = st.lists(st.tuples(coefficients, quarters), max_size=3).map(ExactNet.from_pairs)


class TestExactNetConstruction:
    """Tests for building exact nets"""

    def test_from_pairs_collects_exponents(self):
        """Test equal exponents are summed and zero terms dropped"""
        net = ExactNet.from_pairs([(3, 1), (-3, 1), (2, 0), (1, 0)])
        assert net.terms == (AsymptoticTerm(Fraction(3), Fraction(0)),)

    def test_terms_sorted_by_exponent(self):
        """Test terms come out in increasing exponent order"""
        net = ExactNet.from_pairs([(5, 2), (3, -1)])
        assert [t.expo for t in net.terms] == [-1, 2]

    def test_zero_term_rejected(self):
        """Test an AsymptoticTerm cannot carry a zero coefficient"""
        with pytest.raises(ValueError):
            AsymptoticTerm(Fraction(0), Fraction(1))

    def test_valuation(self):
        """Test the valuation is the leading exponent, +inf for zero"""
        assert ExactNet.monomial(1, 2).valuation == 2
        assert ExactNet.zero().valuation == float("inf")

    def test_to_text(self):
        """Test text rendering of a few nets"""
        assert ExactNet.zero().to_text() == "0"
        assert ExactNet.from_pairs([(3, -1), (5, 2)]).to_text() == "3*eps^-1 + 5*eps^2"
        assert ExactNet.from_pairs([(1, 0), (-1, 1)]).to_text() == "1 - eps"


class TestExactNetArithmetic:
    """Tests for exact ring operations"""

    def test_additive_inverse_cancels(self):
        """Test eps^2 + (-eps^2) is the empty net"""
        assert (ExactNet.monomial(1, 2) + ExactNet.monomial(-1, 2)).is_zero

    def test_disjoint_sum(self):
        """Test (3 eps^-1) + (5 eps^2) concatenates the terms"""
        net = ExactNet.monomial(3, -1) + ExactNet.monomial(5, 2)
        assert net.to_pairs() == [["3", "-1"], ["5", "2"]]

    def test_monomial_product(self):
        """Test (2 eps)(3 eps^2) = 6 eps^3"""
        assert ExactNet.monomial(2, 1) * ExactNet.monomial(3, 2) == ExactNet.monomial(6, 3)

    def test_times_zero(self):
        """Test zero is absorbing"""
        assert (ExactNet.monomial(7, -3) * ExactNet.zero()).is_zero

    def test_square_of_binomial(self):
        """Test (eps^-1 + 1)^2 = eps^-2 + 2 eps^-1 + 1"""
        net = (ExactNet.monomial(1, -1) + ExactNet.constant(1)) ** 2
        assert net.to_pairs() == [["1", "-2"], ["2", "-1"], ["1", "0"]]

    def test_reciprocal_of_monomial(self):
        """Test exact inverse of a monomial"""
        assert ExactNet.monomial(4, 3).reciprocal() == ExactNet.monomial(Fraction(1, 4), -3)

    def test_reciprocal_of_sum_rejected(self):
        """Test sums have no exact reciprocal"""
        with pytest.raises(ValueError):
            (ExactNet.constant(1) + ExactNet.monomial(1, 1)).reciprocal()

    def test_sign_and_abs(self):
        """Test the eventual sign follows the leading coefficient"""
        net = ExactNet.from_pairs([(-1, 1), (1, 2)])
        assert net.sign == -1
        assert net.abs().sign == 1
        assert ExactNet.zero().sign == 0

    def test_shift(self):
        """Test multiplication by eps^a"""
        assert ExactNet.monomial(3, 1).shift(Fraction(1, 2)) == ExactNet.monomial(3, Fraction(3, 2))


class TestExactNetProperties:
    """Ring axioms and valuation rules on random exact nets"""

    @hyp_settings(max_examples=100, deadline=None)
    @given(nets, nets, nets)
    def test_associativity(self, a, b, c):
        """Test (a + b) + c = a + (b + c) and (ab)c = a(bc)"""
        assert (a + b) + c == a + (b + c)
        assert (a * b) * c == a * (b * c)

    @hyp_settings(max_examples=100, deadline=None)
    @given(nets, nets)
    def test_commutativity(self, a, b):
        """Test a + b = b + a and ab = ba"""
        assert a + b == b + a
        assert a * b == b * a

    @hyp_settings(max_examples=100, deadline=None)
    @given(nets, nets, nets)
    def test_distributivity(self, a, b, c):
        """Test a(b + c) = ab + ac"""
        assert a * (b + c) == a * b + a * c

    @hyp_settings(max_examples=100, deadline=None)
    @given(nets)
    def test_additive_inverse(self, a):
        """Test a - a = 0"""
        assert (a - a).is_zero

    @hyp_settings(max_examples=100, deadline=None)
    @given(nets, nets)
    def test_valuation_multiplicative(self, a, b):
        """Test v(ab) = v(a) + v(b)"""
        assert (a * b).valuation == a.valuation + b.valuation

    @hyp_settings(max_examples=100, deadline=None)
    @given(nets, nets)
    def test_ultrametric(self, a, b):
        """Test v(a + b) >= min(v(a), v(b))"""
        assert (a + b).valuation >= min(a.valuation, b.valuation)
