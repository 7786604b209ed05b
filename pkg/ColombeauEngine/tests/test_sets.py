"""
Tests for internal, strongly internal and functionally compact sets
"""

import pytest

from ColombeauEngine.core.Errors import ContainmentError, PreconditionError
from ColombeauEngine.core.ExactNet import ExactNet
from ColombeauEngine.core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, d_eps
from ColombeauEngine.core.rng import DeterministicRNG
from ColombeauEngine.models.payloads import BoxNetPayload
from ColombeauEngine.sets.BoxNet import Box, BoxNet
from ColombeauEngine.sets.Exhaustion import exhaustion, find_covering_index
from ColombeauEngine.sets.FunctionallyCompact import (
    FunctionallyCompactSet,
    box,
    interleaving_union,
    intersection,
    interval,
    is_functionally_compact,
    member_exterior,
    product,
    sample_members,
)
from ColombeauEngine.sets.InternalSets import (
    AllOfRtilde,
    StronglyInternalSet,
    hausdorff_equal,
    member_internal,
    member_strongly_internal,
)
from ColombeauEngine.sets.Validator import BoxNetValidator, ValidationError, validate_boxnet
from ColombeauEngine.tests.helpers.net_helper import NetHelper


def _unit_domain() -> StronglyInternalSet:
    return StronglyInternalSet(BoxNet.of([[(-1, 1)]]))


class TestFunctionallyCompactSets:
    """Tests for building functionally compact sets"""

    def test_interval_sharp_bound(self):
        """Test [-1, 1] is bounded with N = 0 and [0, eps^-3] with N = 3"""
        assert interval(-1, 1).sharp_bound == 0
        assert interval(0, d_eps(-3)).sharp_bound == 3

    def test_interval_needs_order(self):
        """Test [1, 0] is rejected"""
        with pytest.raises(PreconditionError):
            interval(1, 0)

    def test_box(self):
        """Test a product of intervals"""
        K = box([(-1, 1), (0, 2)])
        assert K.dimension == 2
        assert K.sharp_bound == 1

    def test_unbounded_corners(self):
        """Test corners beyond eps^-m_max are not functionally compact"""
        net = BoxNet.of([[(0, d_eps(-20))]])
        assert is_functionally_compact(net) == (False, None)
        with pytest.raises(PreconditionError):
            FunctionallyCompactSet.from_boxnet(net)

    def test_intersection(self):
        """Test [-1, 1] n [0, 2] = [0, 1]"""
        K = intersection(interval(-1, 1), interval(0, 2))
        assert K.boxnet.to_payload() == [[["0", "1"]]]

    def test_intersection_drops_empty_boxes(self):
        """Test disjoint intervals intersect to the empty set"""
        assert intersection(interval(-1, 0), interval(1, 2)).is_empty

    def test_product_and_union(self):
        """Test dimensions and box counts"""
        assert product(interval(-1, 1), interval(0, 1)).dimension == 2
        joined = interleaving_union(interval(-1, 0), interval(1, 2))
        assert len(joined.boxnet.boxes) == 2
        assert joined.dimension == 1

    def test_sample_members(self):
        """Test sampled members lie in K"""
        K = interval(-1, d_eps(-1))
        members = sample_members(K, 10, DeterministicRNG(1))
        assert len(members) == 10
        assert all(member_internal(x, K.internal).is_true for x in members)


class TestMembership:
    """Tests for internal, strongly internal and exterior membership"""

    def test_internal(self):
        """Test 0 is in [-1, 1] and 2 is not"""
        K = interval(-1, 1)
        assert member_internal(GeneralizedPoint.of(0), K.internal).is_true
        assert member_internal(GeneralizedPoint.of(2), K.internal).is_false

    def test_internal_up_to_negligible(self):
        """Test 1 + exp(-1/eps) is in [-1, 1]"""
        config = NetHelper.small_config()
        K = interval(-1, 1, config)
        x = GeneralizedPoint.of(1 + NetHelper.negligible(config))
        assert member_internal(x, K.internal, config).is_true

    def test_exterior_witness(self):
        """Test the exterior witness q = floor(v(d^2) / 2) + 1"""
        K = interval(-1, 1)
        far = member_exterior(GeneralizedPoint.of(2), K)
        near = member_exterior(GeneralizedPoint.of(1 + d_eps(1)), K)
        assert far.is_true and far.witness == 1
        assert near.is_true and near.witness == 2
        assert member_exterior(GeneralizedPoint.of(0), K).is_false

    def test_exterior_of_empty_set(self):
        """Test the exterior of the empty set is not tested"""
        empty = FunctionallyCompactSet.from_boxnet(BoxNet.empty(1))
        with pytest.raises(PreconditionError):
            member_exterior(GeneralizedPoint.of(0), empty)

    def test_strongly_internal(self):
        """Test 1 - eps is strongly inside (-1, 1) but 1 is not"""
        U = _unit_domain()
        assert member_strongly_internal(GeneralizedPoint.of(1 - d_eps(1)), U).is_true
        assert member_strongly_internal(GeneralizedPoint.of(1), U).is_false

    def test_touching_boxes_keep_their_gap(self):
        """Test the common endpoint of (0, 1) and (1, 2) is not strongly inside their union"""
        U = StronglyInternalSet(BoxNet.of([[(0, 1)], [(1, 2)]]))
        assert len(U.cover.boxes) == 2
        assert member_strongly_internal(GeneralizedPoint.of(1), U).is_false

    def test_moderateness_witness(self):
        """Test the centre of (-1, 1) keeps distance 1 > eps^1"""
        assert _unit_domain().moderateness_witness() == 1

    def test_all_of_rtilde(self):
        """Test every point of the right dimension is in R~^n"""
        assert member_strongly_internal(GeneralizedPoint.of(d_eps(-5)), AllOfRtilde(1)).is_true


class TestMergedBoxes:
    """Tests for joining overlapping open boxes"""

    def test_overlapping_intervals_join(self):
        """Test (0, 2) and (1, 3) become (0, 3) while (5, 6) stays apart"""
        merged = BoxNet.of([[(0, 2)], [(5, 6)], [(1, 3)]]).merged()
        assert len(merged.boxes) == 2
        (lo, hi), = merged.boxes[0].bounds()
        assert lo.exact == GeneralizedNumber.of(0).exact
        assert hi.exact == GeneralizedNumber.of(3).exact

    def test_nested_boxes_join(self):
        """Test a box inside another is absorbed"""
        merged = BoxNet.of([[(0, 3), (0, 3)], [(1, 2), (1, 2)]]).merged()
        assert len(merged.boxes) == 1

    def test_boxes_join_along_one_axis(self):
        """Test two unit squares overlapping along x1 join into a rectangle"""
        merged = BoxNet.of([[(0, 2), (0, 1)], [(1, 3), (0, 1)]]).merged()
        assert len(merged.boxes) == 1

    def test_l_shaped_union_stays_split(self):
        """Test boxes whose union is not a box are kept apart"""
        merged = BoxNet.of([[(0, 2), (0, 1)], [(1, 3), (0, 2)]]).merged()
        assert len(merged.boxes) == 2


class TestHausdorff:
    """Tests for equality of internal sets"""

    def test_same_set(self):
        """Test K = K"""
        K = interval(-1, 1)
        assert hausdorff_equal(K.internal, K.internal).is_true

    def test_distinct_sets(self):
        """Test [-1, 1] and [-1, 1 + eps] differ"""
        config = NetHelper.small_config()
        K, L = interval(-1, 1, config), interval(-1, 1 + d_eps(1), config)
        assert hausdorff_equal(K.internal, L.internal, config).is_false

    def test_square_split_in_halves(self):
        """Test [-1, 1]^2 equals the union of its left and right halves"""
        config = NetHelper.small_config()
        K = FunctionallyCompactSet.from_boxnet(BoxNet.of([[(-1, 1), (-1, 1)]]), config)
        L = FunctionallyCompactSet.from_boxnet(BoxNet.of([[(-1, 0), (-1, 1)], [(0, 1), (-1, 1)]]), config)
        assert hausdorff_equal(K.internal, L.internal, config).is_true

    def test_square_and_taller_rectangle_differ(self):
        """Test [-1, 1]^2 and [-1, 1] x [-1, 1 + eps] differ"""
        config = NetHelper.small_config()
        K = FunctionallyCompactSet.from_boxnet(BoxNet.of([[(-1, 1), (-1, 1)]]), config)
        L = FunctionallyCompactSet.from_boxnet(BoxNet.of([[(-1, 1), (-1, 1 + d_eps(1))]]), config)
        assert hausdorff_equal(K.internal, L.internal, config).is_false

    def test_negligible_hole(self):
        """Test removing (-exp(-1/eps), exp(-1/eps)) leaves the same internal set"""
        config = NetHelper.small_config()
        hole = NetHelper.negligible(config)
        K = interval(-1, 1, config)
        L = FunctionallyCompactSet.from_boxnet(BoxNet((Box.of([(-1, -hole)]), Box.of([(hole, 1)])), 1),
                                               config)
        assert hausdorff_equal(K.internal, L.internal, config).is_true


class TestExhaustion:
    """Tests for K_j and covering indices"""

    def test_exhaustion_of_interval(self):
        """Test K_1 of (-1, 1) is [-1 + eps, 1 - eps]"""
        K1 = exhaustion(_unit_domain(), 1)
        (lo, hi), = K1.boxnet.boxes[0].bounds()
        assert lo.exact == ExactNet.from_pairs([(-1, 0), (1, 1)])
        assert hi.exact == ExactNet.from_pairs([(1, 0), (-1, 1)])

    def test_exhaustion_index_below_witness(self):
        """Test j must reach the moderateness witness"""
        with pytest.raises(PreconditionError):
            exhaustion(_unit_domain(), 0)

    def test_exhaustion_of_whole_space(self):
        """Test K_j of R~ is the cube of radius eps^-j"""
        K2 = exhaustion(AllOfRtilde(1), 2)
        assert K2.sharp_bound == 2

    def test_covering_index_from_distance(self):
        """Test [-1 + eps^2, 1 - eps^2] is covered by K_2"""
        K = interval(-1 + d_eps(2), 1 - d_eps(2))
        index = find_covering_index(K, _unit_domain(), samples=12)
        assert index.j_distance == 2
        assert index.j == 2

    def test_covering_index_of_standard_interval(self):
        """Test the least j with eps^j <= 1/2 is 1"""
        index = find_covering_index(interval(-0.5, 0.5), _unit_domain(), samples=12)
        assert index.j_distance == 1
        assert index.j == 1

    def test_covering_index_from_bound(self):
        """Test [0, eps^-3] in R~ is covered by K_3"""
        index = find_covering_index(interval(0, d_eps(-3)), AllOfRtilde(1), samples=12)
        assert index.j_distance is None
        assert index.j == 3

    def test_not_contained(self):
        """Test [-1, 1] touches the boundary of (-1, 1)"""
        with pytest.raises(ContainmentError):
            find_covering_index(interval(-1, 1), _unit_domain(), samples=12)

    def test_covering_index_across_overlapping_boxes(self):
        """Test [0.5, 2.5] is covered inside (0, 2) u (1, 3) though no single box holds it"""
        U = StronglyInternalSet(BoxNet.of([[(0, 2)], [(1, 3)]]))
        index = find_covering_index(interval(0.5, 2.5), U, samples=12)
        assert index.j_distance == 1

    def test_exhaustion_of_overlapping_boxes(self):
        """Test K_1 of (0, 2) u (1, 3) is the single interval [eps, 3 - eps]"""
        U = StronglyInternalSet(BoxNet.of([[(0, 2)], [(1, 3)]]))
        K1 = exhaustion(U, 1)
        assert len(K1.boxnet.boxes) == 1
        (lo, hi), = K1.boxnet.boxes[0].bounds()
        assert lo.exact == ExactNet.from_pairs([(1, 1)])
        assert hi.exact == ExactNet.from_pairs([(3, 0), (-1, 1)])


class TestBoxNetValidator:
    """Tests for validating box-net payloads"""

    def test_valid_payload(self):
        """Test a well-formed interval builds"""
        validator = BoxNetValidator(BoxNetPayload.parse('[["-1 + eps^2", "1 - eps^2"]]'))
        assert validator.validate()
        K = validator.build_compact()
        assert K.sharp_bound == 0

    def test_dimension_mismatch(self):
        """Test boxes must share a dimension"""
        payload = BoxNetPayload(boxes=[[("-1", "1")], [("-1", "1"), ("0", "1")]])
        ok, errors, _ = validate_boxnet(payload)
        assert not ok
        assert errors == ["Box 1 has dimension 2; expected 1."]

    def test_order(self):
        """Test lo <= hi is required"""
        ok, errors, _ = validate_boxnet(BoxNetPayload.parse("[[1, 0]]"))
        assert not ok
        assert errors == ["Box 0, coordinate 0: lo <= hi fails."]

    def test_parse_error_collected(self):
        """Test parse errors are reported per coordinate"""
        ok, errors, _ = validate_boxnet(BoxNetPayload(boxes=[[("eps +", "1")]]))
        assert not ok
        assert errors[0].startswith("Box 0, coordinate 0:")

    def test_open_domain_needs_strict_order(self):
        """Test degenerate boxes are not open domains"""
        validator = BoxNetValidator(BoxNetPayload.parse("[[0, 0]]"))
        with pytest.raises(ValidationError):
            validator.build_domain()

    def test_empty_needs_dimension(self):
        """Test an empty box list needs an explicit dimension"""
        ok, errors, _ = validate_boxnet(BoxNetPayload(boxes=[]))
        assert not ok
        assert errors == ["Empty box list needs an explicit dimension."]

    def test_build_domain(self):
        """Test an open interval becomes a strongly internal set"""
        U = BoxNetValidator(BoxNetPayload.parse("[[-1, 1]]")).build_domain()
        assert isinstance(U, StronglyInternalSet)
        assert U.moderateness_witness() == 1
