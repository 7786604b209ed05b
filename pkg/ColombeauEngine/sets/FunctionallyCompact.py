"""
Functionally compact sets: internal sets generated by sharply bounded nets
of compact sets, with the union/intersection/product calculus and the
strong exterior.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, List, Optional, Tuple, Union

from ..core.Errors import EmptySetError, PreconditionError
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, NumberLike, _settings, d_eps
from ..core.Order import leq, strictly_positive
from ..core.rng import DeterministicRNG
from ..core.TriState import Decision
from .BoxNet import Box, BoxNet
from .InternalSets import InternalSet, member_internal

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class FunctionallyCompactSet:
    """K = [K_eps] with |x| <= eps^-N on every K_eps"""
    internal: InternalSet
    sharp_bound: int

    @classmethod
    def from_boxnet(cls, boxnet: BoxNet, config: Optional["Settings"] = None) -> "FunctionallyCompactSet":
        ok, bound = is_functionally_compact(InternalSet(boxnet), config)
        if not ok:
            raise PreconditionError("box net corners are not sharply bounded within m_max")
        return cls(InternalSet(boxnet), bound)

    @classmethod
    def of(cls, boxes, config: Optional["Settings"] = None) -> "FunctionallyCompactSet":
        """From a list of boxes, each a list of (lo, hi) pairs"""
        return cls.from_boxnet(BoxNet.of(boxes), config)

    @property
    def boxnet(self) -> BoxNet:
        return self.internal.boxnet

    @property
    def dimension(self) -> int:
        return self.internal.dimension

    @property
    def is_empty(self) -> bool:
        return self.boxnet.is_empty

    def contains(self, x: GeneralizedPoint, config: Optional["Settings"] = None) -> Decision:
        return member_internal(x, self.internal, config)

    def describe(self) -> dict:
        return {"kind": "functionally_compact", "boxes": self.boxnet.to_payload(),
                "sharp_bound": self.sharp_bound}


def is_functionally_compact(K: Union[InternalSet, BoxNet],
                            config: Optional["Settings"] = None) -> Tuple[bool, Optional[int]]:
    """Least N <= m_max with every corner bounded by eps^-N, or (False, None)"""
    config = _settings(config)
    boxnet = K.boxnet if isinstance(K, InternalSet) else K
    corners = [abs(c) for c in boxnet.corner_values()]
    for N in range(0, config.m_max + 1):
        bound = d_eps(-N)
        if all(leq(c, bound, config).is_true for c in corners):
            return True, N
    return False, None


def interval(a: NumberLike, b: NumberLike, config: Optional["Settings"] = None) -> FunctionallyCompactSet:
    """[a, b] for a <= b"""
    a, b = GeneralizedNumber.of(a), GeneralizedNumber.of(b)
    order = leq(a, b, config)
    if not order.is_true:
        raise PreconditionError(f"interval needs {a.to_text()} <= {b.to_text()} ({order.state.value})")
    return FunctionallyCompactSet.from_boxnet(BoxNet((Box((a,), (b,)),), 1), config)


def box(bounds, config: Optional["Settings"] = None) -> FunctionallyCompactSet:
    """prod_i [a_i, b_i]"""
    result = interval(*bounds[0], config=config)
    for a, b in bounds[1:]:
        result = product(result, interval(a, b, config), config)
    return result


def interleaving_union(K: FunctionallyCompactSet, H: FunctionallyCompactSet) -> FunctionallyCompactSet:
    """interl(K u H) = [K_eps u H_eps]"""
    return FunctionallyCompactSet(InternalSet(K.boxnet.union(H.boxnet)),
                                  max(K.sharp_bound, H.sharp_bound))


def intersection(K: FunctionallyCompactSet, H: FunctionallyCompactSet,
                 config: Optional["Settings"] = None) -> FunctionallyCompactSet:
    return FunctionallyCompactSet.from_boxnet(K.boxnet.intersection(H.boxnet, config), config)


def product(K: FunctionallyCompactSet, H: FunctionallyCompactSet,
            config: Optional["Settings"] = None) -> FunctionallyCompactSet:
    return FunctionallyCompactSet(InternalSet(K.boxnet.product(H.boxnet)),
                                  max(K.sharp_bound, H.sharp_bound))


def member_exterior(x: GeneralizedPoint, K: FunctionallyCompactSet,
                    config: Optional["Settings"] = None) -> Decision:
    """x in ext(K): d(x_eps, K_eps) >= eps^q eventually; witness q"""
    if K.is_empty:
        raise PreconditionError("the strong exterior is only tested for nonempty sets")
    config = _settings(config)
    d2 = K.boxnet.squared_distance(x)
    decision = strictly_positive(d2, config)
    if not decision.is_true:
        return decision
    v = d2.valuation(config)
    q = math.floor(float(v) / 2) + 1
    return Decision.true(witness=q)


def sample_members(K: FunctionallyCompactSet, count: int, rng: DeterministicRNG,
                   include_corners: bool = True) -> List[GeneralizedPoint]:
    """Exact members of K: box corners plus rational convex combinations"""
    if K.is_empty:
        raise EmptySetError("cannot sample members of an empty set")
    members: List[GeneralizedPoint] = []
    if include_corners:
        for b in K.boxnet.boxes:
            members.extend(b.corners())
    while len(members) < count:
        b = rng.choice(K.boxnet.boxes)
        coords = []
        for lo, hi in b.bounds():
            t = Fraction(rng.randint(0, 16), 16)
            coords.append(lo + (hi - lo) * t)
        members.append(GeneralizedPoint(coords))
    return members[:count] if count >= 1 else members
