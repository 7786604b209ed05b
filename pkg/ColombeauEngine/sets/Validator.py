"""
BoxNetValidator - checks a box-net payload before it becomes a set.

Call validate(); check get_errors() / get_warnings() before calling
build_compact() or build_domain().
"""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING, List, Optional, Tuple

from ..core.Errors import ColombeauError, ExpressionParseError
from ..core.GeneralizedNumber import GeneralizedNumber, _settings
from ..core.Grid import EpsilonGrid
from ..core.Order import leq, strictly_positive
from ..models.payloads import BoxNetPayload
from .BoxNet import Box, BoxNet
from .FunctionallyCompact import FunctionallyCompactSet, is_functionally_compact
from .InternalSets import StronglyInternalSet

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)


class ValidationError(ColombeauError):
    pass


class BoxNetValidator:
    """Validates a BoxNetPayload as a functionally compact set or an open domain."""

    def __init__(self, payload: BoxNetPayload, config: Optional["Settings"] = None,
                 grid: Optional[EpsilonGrid] = None):
        self._payload = payload
        self._config = _settings(config)
        self._grid = grid
        self._errors: list[str] = []
        self._warnings: list[str] = []
        self._boxes: List[Box] = []

    def validate(self, open_domain: bool = False) -> bool:
        """Run all checks. Returns True if no errors (warnings are allowed)."""
        self._errors.clear()
        self._warnings.clear()
        self._boxes = []
        self._check_dimensions()
        if self._errors:
            return False
        self._parse_bounds()
        if self._errors:
            return False
        self._check_order(strict=open_domain)
        if not open_domain:
            self._check_sharp_bound()
        return len(self._errors) == 0

    def get_errors(self) -> list[str]:
        return list(self._errors)

    def get_warnings(self) -> list[str]:
        return list(self._warnings)

    # ------------------------------------------------------------------
    # Building
    # ------------------------------------------------------------------

    def boxnet(self) -> BoxNet:
        return BoxNet(tuple(self._boxes), self._dimension())

    def build_compact(self) -> FunctionallyCompactSet:
        if not self.validate(open_domain=False):
            raise ValidationError("; ".join(self._errors))
        return FunctionallyCompactSet.from_boxnet(self.boxnet(), self._config)

    def build_domain(self) -> StronglyInternalSet:
        if not self.validate(open_domain=True):
            raise ValidationError("; ".join(self._errors))
        return StronglyInternalSet(self.boxnet())

    # ------------------------------------------------------------------
    # Internal checks
    # ------------------------------------------------------------------

    def _dimension(self) -> int:
        if self._payload.dimension is not None:
            return self._payload.dimension
        return len(self._payload.boxes[0]) if self._payload.boxes else 0

    def _check_dimensions(self) -> None:
        if not self._payload.boxes:
            if self._payload.dimension is None:
                self._errors.append("Empty box list needs an explicit dimension.")
            else:
                self._warnings.append("Box net is empty.")
            return
        n = self._dimension()
        for i, bounds in enumerate(self._payload.boxes):
            if len(bounds) != n:
                self._errors.append(f"Box {i} has dimension {len(bounds)}; expected {n}.")

    def _parse_bounds(self) -> None:
        for i, bounds in enumerate(self._payload.boxes):
            lo: List[GeneralizedNumber] = []
            hi: List[GeneralizedNumber] = []
            for j, (a, b) in enumerate(bounds):
                try:
                    lo.append(GeneralizedNumber.parse(a, grid=self._grid, config=self._config))
                    hi.append(GeneralizedNumber.parse(b, grid=self._grid, config=self._config))
                except ExpressionParseError as e:
                    self._errors.append(f"Box {i}, coordinate {j}: {e}")
            if len(lo) == len(bounds) and len(hi) == len(bounds):
                self._boxes.append(Box(tuple(lo), tuple(hi)))

    def _check_order(self, strict: bool) -> None:
        for i, b in enumerate(self._boxes):
            for j, (lo, hi) in enumerate(b.bounds()):
                decision = strictly_positive(hi - lo, self._config) if strict else leq(lo, hi, self._config)
                relation = "lo < hi" if strict else "lo <= hi"
                if decision.is_false:
                    self._errors.append(f"Box {i}, coordinate {j}: {relation} fails.")
                elif decision.is_undecidable:
                    self._warnings.append(f"Box {i}, coordinate {j}: {relation} is undecidable on the grid.")

    def _check_sharp_bound(self) -> None:
        if not self._boxes:
            return
        ok, bound = is_functionally_compact(self.boxnet(), self._config)
        if not ok:
            self._errors.append(
                f"Corners are not bounded by eps^-N for any N <= {self._config.m_max}."
            )
        else:
            logger.debug("Box net sharply bounded with N=%s", bound)


def validate_boxnet(payload: BoxNetPayload, config: Optional["Settings"] = None,
                    open_domain: bool = False) -> Tuple[bool, list[str], list[str]]:
    validator = BoxNetValidator(payload, config)
    ok = validator.validate(open_domain=open_domain)
    return ok, validator.get_errors(), validator.get_warnings()
