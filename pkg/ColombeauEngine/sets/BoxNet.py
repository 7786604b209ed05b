"""
BoxNet - a net of finite unions of closed axis-aligned boxes whose corner
coordinates are generalized numbers.

All set computations (distances, contraction, clipping, intersections) are
carried out with GeneralizedNumber arithmetic, so they stay exact whenever
the corners and the point are exact.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable, List, Optional, Sequence, Tuple

import mpmath
import numpy as np

from ..core.Errors import EmptySetError, PreconditionError
from ..core.GeneralizedNumber import (
    GeneralizedNumber,
    GeneralizedPoint,
    NumberLike,
    maximum,
    minimum,
)
from ..core.Grid import EpsilonGrid
from ..core.Order import leq, strictly_positive
from ..core.TriState import Decision

if TYPE_CHECKING:
    from ..config import Settings


@dataclass(frozen=True)
class Box:
    """Closed box prod_i [lo_i, hi_i] with generalized corners"""
    lo: Tuple[GeneralizedNumber, ...]
    hi: Tuple[GeneralizedNumber, ...]

    def __post_init__(self):
        if len(self.lo) != len(self.hi) or not self.lo:
            raise PreconditionError("box corners must have the same positive dimension")

    @classmethod
    def of(cls, bounds: Sequence[Tuple[NumberLike, NumberLike]]) -> "Box":
        return cls(tuple(GeneralizedNumber.of(a) for a, _ in bounds),
                   tuple(GeneralizedNumber.of(b) for _, b in bounds))

    @property
    def dimension(self) -> int:
        return len(self.lo)

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.lo + self.hi)

    def bounds(self) -> List[Tuple[GeneralizedNumber, GeneralizedNumber]]:
        return list(zip(self.lo, self.hi))

    def gap(self, x: GeneralizedPoint) -> GeneralizedPoint:
        """Per-coordinate distance max(lo - x, 0, x - hi)"""
        return GeneralizedPoint([
            maximum(maximum(lo - xi, 0), xi - hi) for xi, lo, hi in zip(x, self.lo, self.hi)
        ])

    def squared_distance(self, x: GeneralizedPoint) -> GeneralizedNumber:
        return self.gap(x).squared_norm()

    def inner_distance(self, x: GeneralizedPoint) -> GeneralizedNumber:
        """Signed distance from x to the complement of the open box (negative outside)"""
        margins = [minimum(xi - lo, hi - xi) for xi, lo, hi in zip(x, self.lo, self.hi)]
        return _reduce_min(margins)

    def margin_around(self, inner: "Box") -> GeneralizedNumber:
        """Distance from the box `inner` to the complement of this open box"""
        margins = [
            minimum(ilo - lo, hi - ihi)
            for lo, hi, ilo, ihi in zip(self.lo, self.hi, inner.lo, inner.hi)
        ]
        return _reduce_min(margins)

    def contract(self, r: NumberLike) -> "Box":
        return Box(tuple(c + r for c in self.lo), tuple(c - r for c in self.hi))

    def fatten(self, r: NumberLike) -> "Box":
        return Box(tuple(c - r for c in self.lo), tuple(c + r for c in self.hi))

    def clip(self, radius: NumberLike) -> "Box":
        """Intersection with the cube [-radius, radius]^n"""
        R = GeneralizedNumber.of(radius)
        return Box(tuple(maximum(c, -R) for c in self.lo), tuple(minimum(c, R) for c in self.hi))

    def intersect(self, other: "Box") -> "Box":
        return Box(tuple(maximum(a, b) for a, b in zip(self.lo, other.lo)),
                   tuple(minimum(a, b) for a, b in zip(self.hi, other.hi)))

    def product(self, other: "Box") -> "Box":
        return Box(self.lo + other.lo, self.hi + other.hi)

    def join(self, other: "Box", config: Optional["Settings"] = None) -> Optional["Box"]:
        """The union of the two open boxes when it is again a box, else None"""
        if self.contains_box(other, config).is_true:
            return self
        if other.contains_box(self, config).is_true:
            return other
        differing = [k for k in range(self.dimension)
                     if not (_same(self.lo[k], other.lo[k]) and _same(self.hi[k], other.hi[k]))]
        if len(differing) != 1:
            return None
        k = differing[0]
        # touching open intervals do not join
        overlap = (strictly_positive(self.hi[k] - other.lo[k], config)
                   & strictly_positive(other.hi[k] - self.lo[k], config))
        if not overlap.is_true:
            return None
        lo, hi = list(self.lo), list(self.hi)
        lo[k], hi[k] = minimum(self.lo[k], other.lo[k]), maximum(self.hi[k], other.hi[k])
        return Box(tuple(lo), tuple(hi))

    def nonempty(self, config: Optional["Settings"] = None) -> Decision:
        """lo <= hi eventually in every coordinate"""
        decision = Decision.true()
        for lo, hi in zip(self.lo, self.hi):
            decision = decision & leq(lo, hi, config)
        return decision

    def centre(self) -> GeneralizedPoint:
        return GeneralizedPoint([(lo + hi) / 2 for lo, hi in zip(self.lo, self.hi)])

    def corners(self) -> List[GeneralizedPoint]:
        return [GeneralizedPoint(list(choice)) for choice in itertools.product(*self.bounds())]

    def contains_box(self, inner: "Box", config: Optional["Settings"] = None) -> Decision:
        decision = Decision.true()
        for lo, hi, ilo, ihi in zip(self.lo, self.hi, inner.lo, inner.hi):
            decision = decision & leq(lo, ilo, config) & leq(ihi, hi, config)
        return decision

    def float_bounds(self, grid: EpsilonGrid) -> Tuple[np.ndarray, np.ndarray]:
        """Corner samples as arrays of shape (len(grid), n)"""
        lo = np.column_stack([c.values(grid) for c in self.lo])
        hi = np.column_stack([c.values(grid) for c in self.hi])
        return lo, hi

    def mp_bounds(self, grid: EpsilonGrid) -> Tuple[List[List[mpmath.mpf]], List[List[mpmath.mpf]]]:
        """Corner samples per grid point as mpmath lists"""
        lo = [c.mp_values(grid) for c in self.lo]
        hi = [c.mp_values(grid) for c in self.hi]
        return ([list(col) for col in zip(*lo)], [list(col) for col in zip(*hi)])

    def to_payload(self) -> List[List[str]]:
        return [[lo.to_text(), hi.to_text()] for lo, hi in zip(self.lo, self.hi)]


def _same(a: GeneralizedNumber, b: GeneralizedNumber) -> bool:
    if a is b:
        return True
    return a.is_exact and b.is_exact and a.exact == b.exact


def _reduce_min(values: Iterable[GeneralizedNumber]) -> GeneralizedNumber:
    values = list(values)
    result = values[0]
    for v in values[1:]:
        result = minimum(result, v)
    return result


def _reduce_max(values: Iterable[GeneralizedNumber]) -> GeneralizedNumber:
    values = list(values)
    result = values[0]
    for v in values[1:]:
        result = maximum(result, v)
    return result


@dataclass(frozen=True)
class BoxNet:
    """Finite union of boxes in R^n, one union per eps"""
    boxes: Tuple[Box, ...]
    dimension: int

    def __post_init__(self):
        for b in self.boxes:
            if b.dimension != self.dimension:
                raise PreconditionError(
                    f"box of dimension {b.dimension} in a net of dimension {self.dimension}"
                )

    @classmethod
    def of(cls, boxes: Sequence[Sequence[Tuple[NumberLike, NumberLike]]],
           dimension: Optional[int] = None) -> "BoxNet":
        built = tuple(Box.of(b) for b in boxes)
        if dimension is None:
            if not built:
                raise PreconditionError("an empty box net needs an explicit dimension")
            dimension = built[0].dimension
        return cls(built, dimension)

    @classmethod
    def empty(cls, dimension: int) -> "BoxNet":
        return cls((), dimension)

    @property
    def is_empty(self) -> bool:
        return not self.boxes

    @property
    def is_exact(self) -> bool:
        return all(b.is_exact for b in self.boxes)

    def corner_values(self) -> List[GeneralizedNumber]:
        return [c for b in self.boxes for c in b.lo + b.hi]

    def squared_distance(self, x: GeneralizedPoint) -> GeneralizedNumber:
        """d(x_eps, K_eps)^2 as a generalized number (per-eps minimum over boxes)"""
        if self.is_empty:
            raise EmptySetError("distance to an empty box net")
        if x.dimension != self.dimension:
            raise PreconditionError(f"point of dimension {x.dimension} for a set in R^{self.dimension}")
        return _reduce_min(b.squared_distance(x) for b in self.boxes)

    def complement_distance(self, x: GeneralizedPoint) -> GeneralizedNumber:
        """Lower bound for d(x_eps, complement of the union of open boxes)"""
        if self.is_empty:
            raise EmptySetError("complement distance for an empty box net")
        return _reduce_max(b.inner_distance(x) for b in self.boxes)

    def union(self, other: "BoxNet") -> "BoxNet":
        self._same_dimension(other)
        return BoxNet(self.boxes + other.boxes, self.dimension)

    def intersection(self, other: "BoxNet", config: Optional["Settings"] = None) -> "BoxNet":
        """Pairwise box intersections, dropping the eventually empty ones"""
        self._same_dimension(other)
        kept = []
        for a in self.boxes:
            for b in other.boxes:
                c = a.intersect(b)
                if not c.nonempty(config).is_false:
                    kept.append(c)
        return BoxNet(tuple(kept), self.dimension)

    def product(self, other: "BoxNet") -> "BoxNet":
        return BoxNet(tuple(a.product(b) for a in self.boxes for b in other.boxes),
                      self.dimension + other.dimension)

    def merged(self, config: Optional["Settings"] = None) -> "BoxNet":
        """Same union of open boxes with overlapping pieces joined into single boxes.

        In dimension 1 this is the exact decomposition into disjoint intervals
        whenever the corners are exact; in higher dimension boxes are joined
        only when their union is itself a box.
        """
        boxes = list(self.boxes)
        joined = True
        while joined:
            joined = False
            for i, j in itertools.combinations(range(len(boxes)), 2):
                union = boxes[i].join(boxes[j], config)
                if union is not None:
                    boxes[i] = union
                    del boxes[j]
                    joined = True
                    break
        return BoxNet(tuple(boxes), self.dimension)

    def contract(self, r: NumberLike) -> "BoxNet":
        return BoxNet(tuple(b.contract(r) for b in self.boxes), self.dimension)

    def fatten(self, r: NumberLike) -> "BoxNet":
        return BoxNet(tuple(b.fatten(r) for b in self.boxes), self.dimension)

    def clip(self, radius: NumberLike) -> "BoxNet":
        return BoxNet(tuple(b.clip(radius) for b in self.boxes), self.dimension)

    def drop_empty(self, config: Optional["Settings"] = None) -> "BoxNet":
        return BoxNet(tuple(b for b in self.boxes if not b.nonempty(config).is_false), self.dimension)

    def float_boxes(self, grid: EpsilonGrid) -> List[Tuple[np.ndarray, np.ndarray]]:
        return [b.float_bounds(grid) for b in self.boxes]

    def to_payload(self) -> List[List[List[str]]]:
        return [b.to_payload() for b in self.boxes]

    def _same_dimension(self, other: "BoxNet") -> None:
        if other.dimension != self.dimension:
            raise PreconditionError(f"dimension mismatch: {self.dimension} vs {other.dimension}")

    def __repr__(self) -> str:
        return f"BoxNet({self.to_payload()})"
