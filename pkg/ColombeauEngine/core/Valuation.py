"""
Valuation of sampled nets.

The valuation v(x) = sup{b : |x_eps| = O(eps^b)} is estimated as the
least-squares slope of log|x_eps| against log(eps) over the tail of the
grid. Exact zero samples are left out of the fit; a tail that vanishes on
its last quarter is classified negligible.
"""
from __future__ import annotations

import logging
import math
import warnings
from dataclasses import dataclass
from typing import Any, Dict

import numpy as np

from .Errors import ValuationUnreliable
from .SampledNet import SampledNet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ValuationEstimate:
    """Result of a valuation regression"""
    value: float
    residual: float = 0.0
    reliable: bool = True
    negligible: bool = False
    moderate: bool = True
    samples_used: int = 0
    exact: bool = False

    def to_dict(self) -> Dict[str, Any]:
        return {
            "value": _json_float(self.value),
            "residual": _json_float(self.residual),
            "reliable": self.reliable,
            "negligible": self.negligible,
            "moderate": self.moderate,
            "samples_used": self.samples_used,
            "exact": self.exact,
        }


def _json_float(value: float) -> Any:
    if math.isinf(value):
        return "inf" if value > 0 else "-inf"
    return value


def estimate_valuation(net: SampledNet, v_cut: float = 12.0,
                       residual_threshold: float = 0.1) -> ValuationEstimate:
    """Least-squares valuation estimate over the tail half of the grid"""
    grid = net.grid
    tail = grid.tail
    sign = net.sign[tail]
    logmag = net.logmag[tail]
    logeps = grid.log_points[tail]

    nonzero = sign != 0
    used = int(nonzero.sum())
    if not np.any(net.sign[grid.last_quarter] != 0) or used < 2:
        return ValuationEstimate(value=math.inf, negligible=True, samples_used=used)

    x = logeps[nonzero]
    y = logmag[nonzero]
    slope, intercept = np.polyfit(x, y, 1)
    slope = float(slope)
    fitted = slope * x + intercept
    # RMS misfit of log|x_eps|, in natural-log units
    residual = float(np.sqrt(np.mean((y - fitted) ** 2)))

    if slope >= v_cut:
        return ValuationEstimate(value=math.inf, residual=residual, negligible=True,
                                 samples_used=used)

    reliable = residual <= residual_threshold
    if not reliable:
        logger.warning("Valuation of %s unreliable: slope %.4f, residual %.4f",
                       net.label or "net", slope, residual)
        warnings.warn(
            f"valuation fit residual {residual:.4f} exceeds {residual_threshold}",
            ValuationUnreliable,
            stacklevel=2,
        )
    return ValuationEstimate(
        value=max(slope, -v_cut),
        residual=residual,
        reliable=reliable,
        moderate=slope > -v_cut,
        samples_used=used,
    )
