"""
Extreme values of a GSF on a functionally compact set and the image
enclosure f(K).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, List, Optional

import numpy as np

from ..core.ExactNet import ExactNet
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, _settings
from ..sets.BoxNet import Box, BoxNet
from ..sets.FunctionallyCompact import FunctionallyCompactSet
from .Gsf import Gsf, check_inside, evaluate_expr
from .Optimizer import OptimizerResult, optimize
from .SmoothExpr import SmoothExpr

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExtremeValues:
    """f(argmin) <= f(x) <= f(argmax) on K"""
    argmin: GeneralizedPoint
    argmax: GeneralizedPoint
    min: GeneralizedNumber
    max: GeneralizedNumber
    notes: tuple = ()

    def to_dict(self) -> dict:
        return {
            "argmin": self.argmin.to_dict(),
            "argmax": self.argmax.to_dict(),
            "min": self.min.to_dict(),
            "max": self.max.to_dict(),
            "notes": list(self.notes),
        }


def _snap(result: OptimizerResult, expr: SmoothExpr, config: "Settings") -> Optional[tuple]:
    """Exact point and value when the optimum sits at one small-denominator point"""
    if not result.separable:
        return None
    coords = []
    for v in result.arg[0]:
        frac = Fraction(float(v)).limit_denominator(64)
        if abs(float(frac) - float(v)) > 1e-9 * max(1.0, abs(float(v))):
            return None
        coords.append(GeneralizedNumber(exact=ExactNet.constant(frac)))
    point = GeneralizedPoint(coords)
    exact = expr.exact_value([c.exact for c in coords])
    if exact is None:
        return None
    value = GeneralizedNumber(exact=exact)
    sampled = np.array([float(v) for v in result.values])
    candidate = value.values(result.grid)
    scale = np.maximum(np.abs(sampled), 1e-300)
    if np.any(np.abs(candidate - sampled) / scale > config.optimizer_tolerance):
        return None
    return point, value


def _extreme(expr: SmoothExpr, K: FunctionallyCompactSet, mode: str, config: "Settings"):
    result = optimize(expr, K.boxnet, mode, config=config)
    snapped = _snap(result, expr, config)
    if snapped is not None:
        return snapped[0], snapped[1], result.notes
    return result.point(label=f"arg{mode} {expr.to_text()}"), result.number(
        label=f"{mode} {expr.to_text()}", config=config), result.notes


def extreme_values(f: Gsf, K: FunctionallyCompactSet, config: Optional["Settings"] = None) -> ExtremeValues:
    """Per-eps global minimum and maximum of a scalar GSF over K_eps"""
    config = _settings(config)
    check_inside(f, K, config)
    expr = f.expr
    argmin, vmin, notes_min = _extreme(expr, K, "min", config)
    argmax, vmax, notes_max = _extreme(expr, K, "max", config)
    return ExtremeValues(argmin, argmax, vmin, vmax, tuple(notes_min + notes_max))


@dataclass(frozen=True)
class ImageEnclosure:
    """Componentwise [min, max] box of f over K; `exact` when it equals f(K)"""
    set: FunctionallyCompactSet
    exact: bool
    reason: Optional[str] = None

    @property
    def boxnet(self) -> BoxNet:
        return self.set.boxnet

    def contains(self, y: GeneralizedPoint, config: Optional["Settings"] = None):
        return self.set.contains(y, config)

    def to_dict(self) -> dict:
        return {**self.set.describe(), "exact": self.exact, "reason": self.reason}


def _inexact_reason(f: Gsf, K: FunctionallyCompactSet, config: "Settings") -> Optional[str]:
    if f.d > 1:
        return f"vector-valued function (d = {f.d}): the box encloses f(K)"
    pieces = len(K.boxnet.merged(config).boxes)
    if pieces > 1:
        return f"K_eps is not known to be connected ({pieces} boxes): the interval encloses f(K)"
    return None


def image_enclosure(f: Gsf, K: FunctionallyCompactSet,
                    config: Optional["Settings"] = None) -> ImageEnclosure:
    """Per-eps componentwise [min, max] box of f over K_eps.

    For scalar f on a connected K_eps this is the image f(K) itself and the
    result is marked exact; otherwise it is an enclosure and carries the
    reason.
    """
    config = _settings(config)
    check_inside(f, K, config)
    lo: List[GeneralizedNumber] = []
    hi: List[GeneralizedNumber] = []
    for component in f.components:
        _, vmin, _ = _extreme(component, K, "min", config)
        _, vmax, _ = _extreme(component, K, "max", config)
        lo.append(vmin)
        hi.append(vmax)
    reason = _inexact_reason(f, K, config)
    if reason is not None:
        logger.warning("Image of %s is only enclosed: %s", f.to_text(), reason)
    box = FunctionallyCompactSet.from_boxnet(BoxNet((Box(tuple(lo), tuple(hi)),), f.d), config)
    return ImageEnclosure(set=box, exact=reason is None, reason=reason)


def image_member(f: Gsf, x: GeneralizedPoint, enclosure: ImageEnclosure,
                 config: Optional["Settings"] = None):
    """Decision for f(x) in the enclosure"""
    config = _settings(config)
    value = GeneralizedPoint([evaluate_expr(c, x, config) for c in f.components])
    return enclosure.contains(value, config)
