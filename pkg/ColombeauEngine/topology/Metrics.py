"""
The metrics d_2 and d_e on GD_K built from the valuations v_n(f - g):

    d_e(f, g) = sum_n exp(min(n - v_n, 0) - n)
    d_2(f, g) = sum_n 2^-n * exp(min(n - v_n, 0))

Sums are truncated at N with the tails e^-N / (e - 1) and 2^-N. A term
whose valuation is unreliable is bracketed between 0 and its largest value
(e^-n, 2^-n), which widens the reported intervals.
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, Dict, List, Optional, Tuple

from ..core.GeneralizedNumber import _settings
from ..gsf.Gsf import CompactlySupportedGsf
from ..models.payloads import MetricReportPayload, json_float
from .Norms import norm_m, norm_table

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)


@dataclass
class MetricReport:
    """d_e and d_2 with truncation data and the v_n table"""
    d_e: float
    d_2: float
    d_e_interval: Tuple[float, float]
    d_2_interval: Tuple[float, float]
    truncation: int
    tail_bound_e: float
    tail_bound_2: float
    valuations: Dict[int, float]
    unreliable_orders: List[int] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def upper_bound_holds(self) -> bool:
        """d_e <= d_2"""
        return self.d_e <= self.d_2 * (1 + 1e-12)

    @property
    def lower_bound_holds(self) -> bool:
        """d_2 / 2 <= d_e; false in general once a term with n >= 3 is active"""
        return self.d_2 / 2 <= self.d_e * (1 + 1e-12)

    def to_payload(self) -> MetricReportPayload:
        return MetricReportPayload(
            d_e=self.d_e,
            d_2=self.d_2,
            d_e_interval=self.d_e_interval,
            d_2_interval=self.d_2_interval,
            truncation=self.truncation,
            tail_bound_e=self.tail_bound_e,
            tail_bound_2=self.tail_bound_2,
            valuations={str(n): json_float(v) for n, v in self.valuations.items()},
            unreliable_orders=list(self.unreliable_orders),
            upper_bound_holds=self.upper_bound_holds,
            lower_bound_holds=self.lower_bound_holds,
            notes=list(self.notes),
        )


def term_e(n: int, v: float) -> float:
    return math.exp(min(n - v, 0.0) - n)


def term_2(n: int, v: float) -> float:
    return 2.0 ** (-n) * math.exp(min(n - v, 0.0))


def tail_e(N: int) -> float:
    return math.exp(-N) / (math.e - 1)


def tail_2(N: int) -> float:
    return 2.0 ** (-N)


def metric(f: CompactlySupportedGsf, g: CompactlySupportedGsf, truncation: Optional[int] = None,
           config: Optional["Settings"] = None) -> MetricReport:
    """d_e(f, g) and d_2(f, g) from v_1..v_N of f - g"""
    config = _settings(config)
    N = truncation or config.metric_truncation
    notes: List[str] = []
    if N > config.max_norm_order:
        logger.warning("Metric truncation %d lowered to max_norm_order %d", N, config.max_norm_order)
        notes.append(f"truncation lowered from {N} to {config.max_norm_order}")
        N = config.max_norm_order

    diff = f - g
    table = norm_table(diff, N, config=config)
    valuations: Dict[int, float] = {}
    unreliable: List[int] = []
    d_e = d_2 = 0.0
    e_lo = e_hi = two_lo = two_hi = 0.0
    for n in range(1, N + 1):
        norm = table[n].value
        estimate = norm.estimate(config)
        v = math.inf if estimate.negligible else estimate.value
        valuations[n] = v
        te, t2 = term_e(n, v), term_2(n, v)
        d_e += te
        d_2 += t2
        if estimate.reliable:
            e_lo, e_hi, two_lo, two_hi = e_lo + te, e_hi + te, two_lo + t2, two_hi + t2
        else:
            unreliable.append(n)
            e_hi += math.exp(-n)
            two_hi += 2.0 ** (-n)
    if unreliable:
        logger.warning("Metric terms %s bracketed: unreliable valuations", unreliable)
    report = MetricReport(
        d_e=d_e,
        d_2=d_2,
        d_e_interval=(e_lo, e_hi + tail_e(N)),
        d_2_interval=(two_lo, two_hi + tail_2(N)),
        truncation=N,
        tail_bound_e=tail_e(N),
        tail_bound_2=tail_2(N),
        valuations=valuations,
        unreliable_orders=unreliable,
        notes=notes,
    )
    if not report.lower_bound_holds:
        report.notes.append("d_2/2 <= d_e fails for these valuations")
    return report


def gauge_valuation(u: CompactlySupportedGsf, n: int, config: Optional["Settings"] = None) -> float:
    """V_{A_n}(u) = v_n(u) - n"""
    return norm_m(u, n, config).valuation(config) - n


def gauge_P(u: CompactlySupportedGsf, n: int, config: Optional["Settings"] = None) -> float:
    """P_{A_n}(u) = exp(-V_{A_n}(u))"""
    V = gauge_valuation(u, n, config)
    return 0.0 if V == math.inf else math.exp(-V)
