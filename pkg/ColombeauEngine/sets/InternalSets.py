"""
Internal sets [A_eps], strongly internal sets <A_eps> and the whole space.

Internal membership is eventual: x lies in [K_eps] when d(x_eps, K_eps) is
negligible. Strong membership uses the distance criterion
d(x_eps, A_eps^c) > eps^q for some q.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from functools import cached_property
from typing import TYPE_CHECKING, List, Optional, Protocol, Sequence, runtime_checkable

import mpmath

from ..core.Errors import PreconditionError
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, _settings
from ..core.Grid import MP_DPS, EpsilonGrid, default_grid
from ..core.Order import is_negligible, strictly_positive
from ..core.SampledNet import SampledNet
from ..core.TriState import Decision
from .BoxNet import BoxNet

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)


@runtime_checkable
class Domain(Protocol):
    """A strongly internal domain of a generalized smooth function"""

    @property
    def dimension(self) -> int: ...

    def complement_distance(self, x: GeneralizedPoint) -> Optional[GeneralizedNumber]: ...

    def contains(self, x: GeneralizedPoint, config: Optional["Settings"] = None) -> Decision: ...

    def moderateness_witness(self, config: Optional["Settings"] = None) -> int: ...

    def describe(self) -> dict: ...


@dataclass(frozen=True)
class InternalSet:
    """[K_eps] for a box net K"""
    boxnet: BoxNet

    @property
    def dimension(self) -> int:
        return self.boxnet.dimension

    def contains(self, x: GeneralizedPoint, config: Optional["Settings"] = None) -> Decision:
        return member_internal(x, self, config)

    def describe(self) -> dict:
        return {"kind": "internal", "boxes": self.boxnet.to_payload()}


@dataclass(frozen=True)
class StronglyInternalSet:
    """<U_eps> for a net of open boxes U"""
    boxnet: BoxNet

    @property
    def dimension(self) -> int:
        return self.boxnet.dimension

    @cached_property
    def cover(self) -> BoxNet:
        """The boxes of U with overlapping pieces joined"""
        return self.boxnet.merged()

    def complement_distance(self, x: GeneralizedPoint) -> Optional[GeneralizedNumber]:
        return self.cover.complement_distance(x)

    def contains(self, x: GeneralizedPoint, config: Optional["Settings"] = None) -> Decision:
        return member_strongly_internal(x, self, config)

    def moderateness_witness(self, config: Optional["Settings"] = None) -> int:
        """N with d(c_eps, U_eps^c) > eps^N for the centre c of the first box"""
        if self.boxnet.is_empty:
            raise PreconditionError("an empty strongly internal set has no members")
        centre = self.boxnet.boxes[0].centre()
        decision = strictly_positive(self.complement_distance(centre), config)
        if not decision.is_true:
            raise PreconditionError("the first box of the domain is not eventually open and nonempty")
        return int(decision.witness)

    def describe(self) -> dict:
        return {"kind": "strongly_internal", "boxes": self.boxnet.to_payload()}


@dataclass(frozen=True)
class AllOfRtilde:
    """The whole space R~^n; its complement is empty"""
    n: int

    @property
    def dimension(self) -> int:
        return self.n

    def complement_distance(self, x: GeneralizedPoint) -> Optional[GeneralizedNumber]:
        return None

    def contains(self, x: GeneralizedPoint, config: Optional["Settings"] = None) -> Decision:
        if x.dimension != self.n:
            raise PreconditionError(f"point of dimension {x.dimension} for R~^{self.n}")
        return Decision.true()

    def moderateness_witness(self, config: Optional["Settings"] = None) -> int:
        return 0

    def describe(self) -> dict:
        return {"kind": "all", "dimension": self.n}


def member_internal(x: GeneralizedPoint, K: InternalSet, config: Optional["Settings"] = None) -> Decision:
    """x in [K_eps]: the distance net d(x_eps, K_eps) is negligible"""
    if x.dimension != K.dimension:
        raise PreconditionError(f"point of dimension {x.dimension} for a set in R~^{K.dimension}")
    if K.boxnet.is_empty:
        return Decision.false(note="empty set")
    return is_negligible(K.boxnet.squared_distance(x), config)


def member_strongly_internal(x: GeneralizedPoint, U: Domain, config: Optional["Settings"] = None) -> Decision:
    """x in <U_eps>: d(x_eps, U_eps^c) > eps^q eventually, witness q"""
    if isinstance(U, AllOfRtilde):
        return U.contains(x, config)
    if U.boxnet.is_empty:
        return Decision.false(note="empty set")
    return strictly_positive(U.complement_distance(x), config)


# ----------------------------------------------------------------------
# Hausdorff distance
# ----------------------------------------------------------------------

def _boxes_at(boxnet: BoxNet, grid: EpsilonGrid):
    """Per grid point: list of nonempty (lo, hi) coordinate lists"""
    per_box = [b.mp_bounds(grid) for b in boxnet.boxes]
    result = []
    for i in range(len(grid)):
        current = []
        for lo_rows, hi_rows in per_box:
            lo, hi = lo_rows[i], hi_rows[i]
            if all(a <= b for a, b in zip(lo, hi)):
                current.append((lo, hi))
        result.append(current)
    return result


def _distance_to_boxes(p: Sequence[mpmath.mpf], boxes) -> mpmath.mpf:
    best = None
    for lo, hi in boxes:
        total = mpmath.mpf(0)
        for c, a, b in zip(p, lo, hi):
            g = max(a - c, mpmath.mpf(0), c - b)
            total += g * g
        best = total if best is None else min(best, total)
    return mpmath.sqrt(best)


def _lattice(coords: List[mpmath.mpf]) -> List[mpmath.mpf]:
    values = sorted(set(coords))
    mids = [(a + b) / 2 for a, b in zip(values, values[1:])]
    return sorted(values + mids)


def _directed(source, target, axes) -> mpmath.mpf:
    """sup over lattice points of source of the distance to target"""
    worst = mpmath.mpf(0)
    for lo, hi in source:
        local_axes = [[c for c in axis if a <= c <= b] for axis, a, b in zip(axes, lo, hi)]
        for p in itertools.product(*local_axes):
            worst = max(worst, _distance_to_boxes(p, target))
    return worst


def hausdorff_distance(K: InternalSet, L: InternalSet, grid: Optional[EpsilonGrid] = None,
                       config: Optional["Settings"] = None) -> Optional[GeneralizedNumber]:
    """Net d_H(K_eps, L_eps) on a corner/midpoint lattice.

    Exact in dimension 1. For n >= 2 the sup is only taken over the lattice
    points, so the value is a lower bound of the true distance. It vanishes
    only when the true distance does: every cell of the corner grid lies
    inside or outside each box, and its centre is a lattice point.

    Returns None when exactly one of the two sets is empty somewhere on the tail.
    """
    config = _settings(config)
    grid = grid or default_grid(config)
    k_boxes, l_boxes = _boxes_at(K.boxnet, grid), _boxes_at(L.boxnet, grid)
    values = []
    with mpmath.workdps(MP_DPS):
        for i in range(len(grid)):
            kb, lb = k_boxes[i], l_boxes[i]
            if not kb and not lb:
                values.append(mpmath.mpf(0))
                continue
            if not kb or not lb:
                if i >= grid.tail.start:
                    return None
                values.append(mpmath.mpf(1))
                continue
            axes = [
                _lattice([box[0][d] for box in kb + lb] + [box[1][d] for box in kb + lb])
                for d in range(K.dimension)
            ]
            values.append(max(_directed(kb, lb, axes), _directed(lb, kb, axes)))
    return GeneralizedNumber(sampled=SampledNet.from_mp_values(grid, values, label="d_H"))


def hausdorff_equal(K: InternalSet, L: InternalSet, config: Optional["Settings"] = None) -> Decision:
    """[K_eps] = [L_eps] tested through negligibility of the Hausdorff distance"""
    if K.dimension != L.dimension:
        raise PreconditionError("sets of different dimension")
    if K is L:
        return Decision.true()
    grid = next((c.grid for c in K.boxnet.corner_values() + L.boxnet.corner_values()
                 if c.grid is not None), None)
    d = hausdorff_distance(K, L, grid=grid, config=config)
    if d is None:
        return Decision.false(note="one set is empty where the other is not")
    decision = is_negligible(d, config)
    logger.debug("Hausdorff distance valuation %s -> %s", d.estimate(config).value, decision.state.value)
    return decision
