"""
Tests for index sets, idempotents and interleaving
"""

import numpy as np
import pytest
from pydantic import TypeAdapter, ValidationError

from ColombeauEngine.core.Errors import PartitionError
from ColombeauEngine.core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, d_eps
from ColombeauEngine.core.Grid import default_grid
from ColombeauEngine.core.Idempotents import (
    DyadicBlockSet,
    FiniteIndexSet,
    IndexSet,
    IntervalUnionSet,
    alternating_blocks,
    full_index_set,
    idempotent,
    interleave,
    interleave_points,
)
from ColombeauEngine.core.Order import is_negligible, leq, strictly_positive
from ColombeauEngine.tests.helpers.net_helper import NetHelper


class TestIndexSets:
    """Tests for representable subsets of (0, 1]"""

    def test_interval_union_contains(self):
        """Test half-open interval membership"""
        S = IntervalUnionSet(intervals=[(0.0, 0.25), (0.5, 1.0)])
        assert S.contains(0.25)
        assert not S.contains(0.4)
        assert S.contains(1.0)
        assert S.zero_in_closure_S

    def test_interval_outside_unit_interval(self):
        """Test intervals must lie in (0, 1]"""
        with pytest.raises(ValidationError):
            IntervalUnionSet(intervals=[(0.5, 2.0)])

    def test_dyadic_blocks_alternate(self):
        """Test parity-0 blocks hold the even powers of 1/2"""
        even, odd = alternating_blocks()
        assert even.contains(2.0 ** -4)
        assert odd.contains(2.0 ** -5)
        assert not even.contains(2.0 ** -5)
        assert even.zero_in_closure_S and even.zero_in_closure_complement

    def test_complement_of_complement(self):
        """Test double complement returns the original set"""
        even, _ = alternating_blocks()
        assert even.complement().complement() == even
        assert even.complement().contains(2.0 ** -5)

    def test_payload_round_trip(self):
        """Test index sets are discriminated on kind"""
        parsed = TypeAdapter(IndexSet).validate_python({"kind": "dyadic_blocks", "parity": 1})
        assert isinstance(parsed, DyadicBlockSet)
        assert parsed.parity == 1


class TestIdempotents:
    """Tests for e_S"""

    def test_full_set_is_one(self):
        """Test e_(0,1] = 1"""
        config = NetHelper.small_config()
        e = idempotent(full_index_set(), config=config)
        assert np.all(e.values() == 1.0)

    def test_idempotent_and_partition_of_unity(self):
        """Test e_S^2 = e_S and e_S + e_Sc = 1"""
        config = NetHelper.small_config()
        S, Sc = alternating_blocks()
        e, ec = idempotent(S, config=config), idempotent(Sc, config=config)
        assert np.array_equal((e * e).values(), e.values())
        assert np.all((e + ec).values() == 1.0)
        assert (e * ec).vanishes_on_grid

    def test_zero_divisor(self):
        """Test e_S is neither zero nor invertible when both S and its complement reach 0"""
        config = NetHelper.small_config()
        e = idempotent(alternating_blocks()[0], config=config)
        assert is_negligible(e, config).is_false
        assert strictly_positive(e, config).is_false
        assert leq(e, 1, config).is_true

    def test_finite_set_is_zero(self):
        """Test a finite index set gives the zero class"""
        config = NetHelper.small_config()
        e = idempotent(FiniteIndexSet(points=[0.3]), config=config)
        assert e.vanishes_on_grid


class TestInterleave:
    """Tests for interl(a_j, S_j)"""

    def test_values_follow_parts(self):
        """Test interl(0, 3) over alternating blocks"""
        config = NetHelper.small_config()
        grid = default_grid(config)
        x = interleave([0, 3], list(alternating_blocks()), config=config)
        for k, v in zip(grid.exponents, x.values(grid)):
            assert v == pytest.approx(0.0 if k % 2 == 0 else 3.0)

    def test_single_part(self):
        """Test a single part returns the number itself"""
        x = d_eps(2)
        assert interleave([x], [full_index_set()]) is x

    def test_not_a_partition(self):
        """Test overlapping parts are rejected"""
        with pytest.raises(PartitionError):
            interleave([0, 1], [full_index_set(), full_index_set()], config=NetHelper.small_config())

    def test_length_mismatch(self):
        """Test every point needs a part"""
        with pytest.raises(PartitionError):
            interleave([0, 1], [full_index_set()])

    def test_interleave_points(self):
        """Test componentwise interleaving keeps the dimension"""
        config = NetHelper.small_config()
        p = interleave_points([GeneralizedPoint.of(0, 1), GeneralizedPoint.of(3, 1)],
                              list(alternating_blocks()), config=config)
        assert p.dimension == 2
        assert np.all(p[1].values(default_grid(config)) == 1.0)

    def test_interleaving_stays_evaluable(self):
        """Test the interleaved net keeps an mpmath generator"""
        config = NetHelper.small_config()
        x = interleave([GeneralizedNumber.of(0), d_eps(-1)], list(alternating_blocks()), config=config)
        assert x.sampled.generator is not None
