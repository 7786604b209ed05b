"""
Exhaustion of a strongly internal set U by functionally compact sets

    K_j = [{x : d(x, U_eps^c) >= eps^j, |x| <= eps^-j}]

and the index j at which a given functionally compact K is covered.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, List, Optional

from ..core.Errors import ContainmentError, PreconditionError
from ..core.GeneralizedNumber import GeneralizedNumber, _settings, d_eps, maximum, minimum
from ..core.Order import leq, strictly_positive
from ..core.rng import DeterministicRNG
from .BoxNet import Box, BoxNet
from .FunctionallyCompact import FunctionallyCompactSet, sample_members
from .InternalSets import AllOfRtilde, Domain, InternalSet, member_internal, member_strongly_internal

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)


def exhaustion(U: Domain, j: int, config: Optional["Settings"] = None) -> FunctionallyCompactSet:
    """K_j: each box of U contracted by eps^j, clipped to the cube of radius eps^-j"""
    N = U.moderateness_witness(config)
    if j < N:
        raise PreconditionError(f"exhaustion index {j} is below the moderateness witness {N}")
    radius = d_eps(-j)
    if isinstance(U, AllOfRtilde):
        cube = Box(tuple(-radius for _ in range(U.n)), tuple(radius for _ in range(U.n)))
        boxnet = BoxNet((cube,), U.n)
    else:
        boxnet = U.cover.contract(d_eps(j)).clip(radius).drop_empty(config)
    return FunctionallyCompactSet.from_boxnet(boxnet, config)


def distance_to_complement(K: FunctionallyCompactSet, U: Domain) -> Optional[GeneralizedNumber]:
    """Lower bound for min over K_eps of d(., U_eps^c); None when U^c is empty"""
    if isinstance(U, AllOfRtilde):
        return None
    per_box = []
    for inner in K.boxnet.boxes:
        best = None
        for outer in U.cover.boxes:
            margin = outer.margin_around(inner)
            best = margin if best is None else maximum(best, margin)
        per_box.append(best)
    result = per_box[0]
    for value in per_box[1:]:
        result = minimum(result, value)
    return result


@dataclass
class CoveringIndex:
    """j with K contained in K_j, and where it came from"""
    j: int
    j_distance: Optional[int]
    j_bound: int
    j_domain: int
    tested_members: int = 0
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "j": self.j,
            "j_distance": self.j_distance,
            "j_bound": self.j_bound,
            "j_domain": self.j_domain,
            "tested_members": self.tested_members,
            "notes": list(self.notes),
        }


def _distance_index(dist: GeneralizedNumber, config: "Settings") -> int:
    """Least integer j >= ceil(v(dist)) with dist >= eps^j"""
    v = dist.valuation(config)
    start = math.ceil(v)
    for j in range(start, start + config.m_max + 1):
        if leq(d_eps(j), dist, config).is_true:
            return j
    raise ContainmentError(f"no j <= {start + config.m_max} with dist >= eps^j")


def find_covering_index(K: FunctionallyCompactSet, U: Domain, config: Optional["Settings"] = None,
                        rng: Optional[DeterministicRNG] = None, samples: int = 100) -> CoveringIndex:
    """j = max(j_distance, sharp bound of K, moderateness witness of U) with K in K_j"""
    config = _settings(config)
    rng = rng or DeterministicRNG(config.seed).spawn("covering-index")
    j_domain = U.moderateness_witness(config)
    if K.is_empty:
        return CoveringIndex(j=max(j_domain, 0), j_distance=None, j_bound=0, j_domain=j_domain)

    members = sample_members(K, samples, rng)
    for x in members:
        if not member_strongly_internal(x, U, config).is_true:
            raise ContainmentError(f"member {x.to_text()} of K is not strongly inside the domain")

    j_distance = None
    dist = distance_to_complement(K, U)
    if dist is not None:
        if not strictly_positive(dist, config).is_true:
            raise ContainmentError("K does not keep an invertible distance from the domain boundary")
        j_distance = _distance_index(dist, config)

    j = max(j_distance if j_distance is not None else j_domain, K.sharp_bound, j_domain)
    logger.debug("Covering index: distance %s, bound %s, domain %s -> %s",
                 j_distance, K.sharp_bound, j_domain, j)

    result = CoveringIndex(j=j, j_distance=j_distance, j_bound=K.sharp_bound, j_domain=j_domain,
                           tested_members=len(members))
    K_j = exhaustion(U, j, config)
    for x in members:
        if not member_internal(x, K_j.internal, config).is_true:
            raise ContainmentError(f"member {x.to_text()} of K is not in K_{j}")
    return result
