"""
Generalized norms of compactly supported GSF

    ||f||_m = [ max_{|alpha| <= m, i} sup_{x in K_eps} |d^alpha u^i_eps(x)| ]

with the valuation v_m(f) = v(||f||_m) and the ultra-pseudo-norm
P_m(f) = exp(-v_m(f)).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, List, Optional, Union

import mpmath
import numpy as np

from ..core.Errors import PreconditionError
from ..core.GeneralizedNumber import GeneralizedNumber, _settings
from ..core.Grid import EpsilonGrid
from ..core.SampledNet import SampledNet
from ..gsf.Gsf import CompactlySupportedGsf
from ..gsf.Optimizer import optimize
from ..gsf.SmoothExpr import SmoothExpr, multi_indices
from ..gsf.Support import GLOBAL_MARGIN
from ..models.payloads import NormPayload, ValuationPayload, json_float
from ..sets.FunctionallyCompact import FunctionallyCompactSet

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)

# Relative per-eps difference tolerated between global and on-K norms
GLOBAL_MATCH_TOLERANCE = 1e-6


@dataclass
class NormValue:
    """||f||_m over a witness set"""
    value: GeneralizedNumber
    order: int
    source: str
    mismatch: bool = False
    notes: List[str] = field(default_factory=list)

    @property
    def is_zero(self) -> bool:
        return self.value.is_exact_zero

    def valuation(self, config: Optional["Settings"] = None) -> float:
        return float(self.value.valuation(config))

    def to_payload(self, config: Optional["Settings"] = None) -> NormPayload:
        config = _settings(config)
        estimate = self.value.estimate(config)
        samples = [] if self.value.is_exact else [json_float(float(v)) for v in self.value.mp_values()]
        return NormPayload(
            order=self.order,
            source=self.source,
            valuation=ValuationPayload(**estimate.to_dict()),
            samples=samples,
            mismatch=self.mismatch,
            notes=list(self.notes),
        )


# ----------------------------------------------------------------------
# Per-order sup tables
# ----------------------------------------------------------------------

def _sup_values(expr: SmoothExpr, K: FunctionallyCompactSet, grid: Optional[EpsilonGrid],
                config: "Settings", notes: List[str]):
    result = optimize(expr, K.boxnet, "absmax", grid=grid, config=config)
    notes.extend(result.notes)
    return result.grid, result.values


def norm_table(f: CompactlySupportedGsf, m: int, K: Optional[FunctionallyCompactSet] = None,
               config: Optional["Settings"] = None, source: str = "K") -> List[NormValue]:
    """[||f||_0, ..., ||f||_m], each a running max over the derivative orders"""
    config = _settings(config)
    if m < 0:
        raise PreconditionError("norm order must be nonnegative")
    if m > config.max_norm_order:
        raise PreconditionError(f"norm order {m} above max_norm_order {config.max_norm_order}")
    K = K or f.witness
    if K.dimension != f.n:
        raise PreconditionError(f"set of dimension {K.dimension} for a function of {f.n} variables")

    grid: Optional[EpsilonGrid] = None
    running: Optional[List[mpmath.mpf]] = None
    table: List[NormValue] = []
    notes: List[str] = []
    by_order = {k: [a for a in multi_indices(f.n, m) if sum(a) == k] for k in range(m + 1)}
    for k in range(m + 1):
        for alpha in by_order[k]:
            for component in f.gsf.components:
                expr = component.derivative(alpha)
                if expr.is_zero:
                    continue
                grid, values = _sup_values(expr, K, grid, config, notes)
                running = list(values) if running is None else [max(a, b) for a, b in zip(running, values)]
        if running is None:
            value = GeneralizedNumber.zero()
        else:
            value = GeneralizedNumber(sampled=SampledNet.from_mp_values(
                grid, running, label=f"||{f.gsf.to_text()}||_{k}", magnitude_cap=config.magnitude_cap))
        table.append(NormValue(value=value, order=k, source=source, notes=list(dict.fromkeys(notes))))
    return table


def norm_m(f: CompactlySupportedGsf, m: int, config: Optional["Settings"] = None,
           K: Optional[FunctionallyCompactSet] = None) -> NormValue:
    """||f||_{m,K} over the witness (or a given K containing the support)"""
    return norm_table(f, m, K, config)[-1]


def norm_m_global(f: CompactlySupportedGsf, m: int, config: Optional["Settings"] = None) -> NormValue:
    """Sup over R^n, computed on the witness fattened by a unit margin"""
    config = _settings(config)
    if f.verified_to_order < 0:
        raise PreconditionError("global norms need a verified compact-support witness")
    fattened = FunctionallyCompactSet.from_boxnet(f.witness.boxnet.fatten(GLOBAL_MARGIN), config)
    global_norm = norm_table(f, m, fattened, config, source="global")[-1]
    local = norm_m(f, m, config)
    if global_norm.is_zero or local.is_zero:
        global_norm.mismatch = global_norm.is_zero != local.is_zero
    else:
        a = np.array([float(v) for v in global_norm.value.mp_values()])
        b = np.array([float(v) for v in local.value.mp_values()])
        scale = np.maximum(np.abs(a), np.abs(b))
        with np.errstate(invalid="ignore", divide="ignore"):
            relative = np.where(scale > 0, np.abs(a - b) / scale, 0.0)
        global_norm.mismatch = bool(np.any(relative > GLOBAL_MATCH_TOLERANCE))
    if global_norm.mismatch:
        logger.warning("Global and on-K norms of %s differ; support verification is suspect",
                       f.gsf.to_text())
        global_norm.notes.append("global norm differs from the on-K norm")
    return global_norm


def v_m(f: Union[CompactlySupportedGsf, NormValue], m: Optional[int] = None,
        config: Optional["Settings"] = None) -> float:
    """v(||f||_m), +inf for the zero function"""
    norm = f if isinstance(f, NormValue) else norm_m(f, m, config)
    return norm.valuation(config)


def P_m(f: Union[CompactlySupportedGsf, NormValue], m: Optional[int] = None,
        config: Optional["Settings"] = None) -> float:
    """exp(-v_m(f)), 0 for the zero function"""
    v = v_m(f, m, config)
    return 0.0 if v == math.inf else math.exp(-v)
