"""
Representable subsets S of I = (0,1], their idempotents e_S and interleavings.

Index sets are pydantic models discriminated on `kind`, the same way
expression nodes are modelled elsewhere in the engine, so they round-trip
through JSON payloads.
"""
from __future__ import annotations

import math
from typing import TYPE_CHECKING, Annotated, List, Literal, Optional, Sequence, Tuple, Union

import mpmath
import numpy as np
from pydantic import BaseModel, ConfigDict, Field, field_validator

from .Errors import PartitionError
from .GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, NumberLike, _settings
from .Grid import EpsilonGrid, default_grid
from .SampledNet import SampledNet

if TYPE_CHECKING:
    from ..config import Settings


class IndexSetBase(BaseModel):
    model_config = ConfigDict(frozen=True)

    def contains(self, eps: float) -> bool:
        raise NotImplementedError

    @property
    def zero_in_closure_S(self) -> bool:
        raise NotImplementedError

    @property
    def zero_in_closure_complement(self) -> bool:
        raise NotImplementedError

    def mask(self, grid: EpsilonGrid) -> np.ndarray:
        return np.array([self.contains(float(e)) for e in grid.points], dtype=bool)

    def complement(self) -> "ComplementSet":
        return ComplementSet(of=self)


class IntervalUnionSet(IndexSetBase):
    """Finite union of half-open intervals (a, b] inside (0, 1]"""
    kind: Literal["interval_union"] = "interval_union"
    intervals: List[Tuple[float, float]]

    @field_validator("intervals")
    @classmethod
    def _inside_unit_interval(cls, value: List[Tuple[float, float]]) -> List[Tuple[float, float]]:
        for a, b in value:
            if not 0.0 <= a < b <= 1.0:
                raise ValueError(f"interval ({a}, {b}] is not inside (0, 1]")
        return value

    def contains(self, eps: float) -> bool:
        return any(a < eps <= b for a, b in self.intervals)

    @property
    def zero_in_closure_S(self) -> bool:
        return any(a == 0.0 for a, _ in self.intervals)

    @property
    def zero_in_closure_complement(self) -> bool:
        return not self.zero_in_closure_S


class DyadicBlockSet(IndexSetBase):
    """eps with floor(log_base(1/eps) / block) of the given parity

    Alternating blocks accumulate at 0 together with their complement.
    """
    kind: Literal["dyadic_blocks"] = "dyadic_blocks"
    base: float = 2.0
    block: int = 1
    parity: Literal[0, 1] = 0

    def contains(self, eps: float) -> bool:
        level = math.log(1.0 / eps) / math.log(self.base)
        return (math.floor(level / self.block + 1e-9) % 2) == self.parity

    @property
    def zero_in_closure_S(self) -> bool:
        return True

    @property
    def zero_in_closure_complement(self) -> bool:
        return True


class FiniteIndexSet(IndexSetBase):
    """A finite set of eps values; e_S is the zero class"""
    kind: Literal["finite"] = "finite"
    points: List[float] = Field(default_factory=list)

    def contains(self, eps: float) -> bool:
        return any(math.isclose(eps, p, rel_tol=1e-12) for p in self.points)

    @property
    def zero_in_closure_S(self) -> bool:
        return False

    @property
    def zero_in_closure_complement(self) -> bool:
        return True


class ComplementSet(IndexSetBase):
    kind: Literal["complement"] = "complement"
    of: "IndexSet"

    def contains(self, eps: float) -> bool:
        return not self.of.contains(eps)

    @property
    def zero_in_closure_S(self) -> bool:
        return self.of.zero_in_closure_complement

    @property
    def zero_in_closure_complement(self) -> bool:
        return self.of.zero_in_closure_S

    def complement(self) -> "IndexSet":
        return self.of


IndexSet = Annotated[
    Union[IntervalUnionSet, DyadicBlockSet, FiniteIndexSet, ComplementSet],
    Field(discriminator="kind"),
]

ComplementSet.model_rebuild()


def full_index_set() -> IntervalUnionSet:
    return IntervalUnionSet(intervals=[(0.0, 1.0)])


def alternating_blocks(base: float = 2.0, block: int = 1) -> Tuple[DyadicBlockSet, DyadicBlockSet]:
    """The two halves of the alternating dyadic partition"""
    return (DyadicBlockSet(base=base, block=block, parity=0),
            DyadicBlockSet(base=base, block=block, parity=1))


def idempotent(S: IndexSetBase, grid: Optional[EpsilonGrid] = None,
               config: Optional["Settings"] = None) -> GeneralizedNumber:
    """e_S = [1_S(eps)]"""
    grid = grid or default_grid(_settings(config))
    one, zero = mpmath.mpf(1), mpmath.mpf(0)
    net = SampledNet.from_generator(
        grid, lambda eps: one if S.contains(float(eps)) else zero, label=f"e_{S.kind}"
    )
    return GeneralizedNumber(sampled=net)


def _part_masks(parts: Sequence[IndexSetBase], grid: EpsilonGrid) -> np.ndarray:
    masks = np.array([p.mask(grid) for p in parts])
    counts = masks.sum(axis=0)
    if np.any(counts != 1):
        bad = int(np.argmax(counts != 1))
        raise PartitionError(
            f"index sets are not a partition: eps = {grid.base}^-{int(grid.exponents[bad])} "
            f"lies in {int(counts[bad])} parts"
        )
    return masks


def interleave(points: Sequence[NumberLike], parts: Sequence[IndexSetBase],
               grid: Optional[EpsilonGrid] = None,
               config: Optional["Settings"] = None) -> GeneralizedNumber:
    """sum_j e_{S_j} * a_j, taking the value a_{j,eps} when eps lies in S_j"""
    if len(points) != len(parts):
        raise PartitionError("points and parts must have equal length")
    if not points:
        raise PartitionError("interleaving needs at least one part")
    values = [GeneralizedNumber.of(p) for p in points]
    grid = grid or next((v.grid for v in values if v.grid is not None), None) or default_grid(_settings(config))
    masks = _part_masks(parts, grid)
    if len(values) == 1:
        return values[0]

    sampled = [v.to_sampled(grid, config) for v in values]
    index = np.argmax(masks, axis=0)
    sign = np.choose(index, [s.sign for s in sampled]).astype(np.int8)
    logmag = np.choose(index, [s.logmag for s in sampled])

    generator = None
    if all(s.generator is not None for s in sampled):
        gens = [s.generator for s in sampled]

        def generator(eps):
            for part, gen in zip(parts, gens):
                if part.contains(float(eps)):
                    return gen(eps)
            raise PartitionError(f"eps = {eps} lies in no part")

    return GeneralizedNumber(sampled=SampledNet(grid, sign, logmag, generator=generator,
                                                label="interl(" + ", ".join(s.label for s in sampled) + ")"))


def interleave_points(points: Sequence[GeneralizedPoint], parts: Sequence[IndexSetBase],
                      grid: Optional[EpsilonGrid] = None,
                      config: Optional["Settings"] = None) -> GeneralizedPoint:
    """Componentwise interleaving of points of R~^n"""
    n = points[0].dimension
    return GeneralizedPoint([
        interleave([p[i] for p in points], parts, grid=grid, config=config) for i in range(n)
    ])
