"""
Internal, strongly internal and functionally compact sets
"""

from .BoxNet import Box, BoxNet
from .Exhaustion import CoveringIndex, distance_to_complement, exhaustion, find_covering_index
from .FunctionallyCompact import (
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
from .InternalSets import (
    AllOfRtilde,
    Domain,
    InternalSet,
    StronglyInternalSet,
    hausdorff_distance,
    hausdorff_equal,
    member_internal,
    member_strongly_internal,
)
from .Validator import BoxNetValidator, ValidationError, validate_boxnet
