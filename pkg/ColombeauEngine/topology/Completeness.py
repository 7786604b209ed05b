"""
Limits of Cauchy sequences in GD_K.

For a schedule n_0 < n_1 < ... with ||u_{n_{k+1}} - u_{n_k}||_k < eps^k the
limit net is

    u_eps = u_{n_0, eps} + sum_k h_{k, eps} * [eps <= eps_k],   h_k = u_{n_{k+1}} - u_{n_k}

where eps_k is the largest grid eps from which the k-th inequality holds on
the rest of the grid (non-increasing in k).
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import TYPE_CHECKING, List, Optional, Sequence

import numpy as np
import sympy

from ..core.Errors import NotCauchyError, PreconditionError
from ..core.GeneralizedNumber import _settings, d_eps
from ..core.Grid import EpsilonGrid, default_grid
from ..core.Order import strictly_positive
from ..core.Parsing import EPS
from ..gsf.Gsf import CompactlySupportedGsf, Gsf
from ..gsf.Primitives import below
from ..gsf.SmoothExpr import SmoothExpr
from ..sets.FunctionallyCompact import FunctionallyCompactSet, interleaving_union
from .Norms import NormValue, norm_m

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)


@dataclass
class CauchyLimit:
    """Limit of a Cauchy schedule with its cutoffs and convergence certificates"""
    limit: CompactlySupportedGsf
    schedule: List[int]
    cutoffs: List[float]
    certificates: List[dict] = field(default_factory=list)

    @property
    def gsf(self) -> Gsf:
        return self.limit.gsf

    @property
    def converged(self) -> bool:
        return all(c["holds"] for c in self.certificates)

    def to_dict(self) -> dict:
        return {
            "limit": self.limit.gsf.to_text(),
            "schedule": list(self.schedule),
            "cutoffs": list(self.cutoffs),
            "certificates": list(self.certificates),
            "converged": self.converged,
        }


def _shared_witness(seq: Sequence[CompactlySupportedGsf]) -> FunctionallyCompactSet:
    K = seq[0].witness
    for u in seq[1:]:
        if u.witness.boxnet != K.boxnet:
            K = interleaving_union(K, u.witness)
    return K


def _expand(g: Gsf) -> Gsf:
    return Gsf(tuple(SmoothExpr(sympy.expand(c.expr), c.n) for c in g.components), g.domain)


def _first_good_index(norm: NormValue, k: int, grid: EpsilonGrid) -> int:
    """Least grid index from which ||h_k|| < eps^k holds at every later grid point"""
    if norm.is_zero:
        return 0
    logmag = norm.value.to_sampled(grid).logmag
    good = logmag < k * grid.log_points
    bad = np.nonzero(~good)[0]
    return 0 if bad.size == 0 else int(bad[-1]) + 1


def _grid_point(grid: EpsilonGrid, index: int) -> sympy.Expr:
    base = Fraction(grid.base).limit_denominator(10 ** 6)
    return sympy.Rational(base.numerator, base.denominator) ** (-(grid.k_min + index))


def cauchy_limit(seq: Sequence[CompactlySupportedGsf], schedule: Optional[Sequence[int]] = None,
                 config: Optional["Settings"] = None) -> CauchyLimit:
    """Limit of u_{n_k} along the schedule, with ||u - u_{n_p}||_p < eps^(p-1) certified"""
    config = _settings(config)
    if len(seq) < 2:
        raise PreconditionError("a Cauchy limit needs at least two terms")
    schedule = list(range(len(seq))) if schedule is None else list(schedule)
    if any(b <= a for a, b in zip(schedule, schedule[1:])) or schedule[0] < 0 or schedule[-1] >= len(seq):
        raise PreconditionError(f"schedule {schedule} is not increasing within the sequence")
    if len(schedule) - 1 > config.max_norm_order:
        raise PreconditionError("schedule longer than the available norm orders")

    K = _shared_witness([seq[i] for i in schedule])
    grid = default_grid(config)
    first = seq[schedule[0]]
    terms = [_expand(first.gsf)]
    cutoffs: List[float] = []
    previous_index = 0
    for k, (a, b) in enumerate(zip(schedule, schedule[1:])):
        h = seq[b] - seq[a]
        h = CompactlySupportedGsf(_expand(h.gsf), K, h.verified_to_order)
        norm = norm_m(h, k, config)
        gap = strictly_positive(d_eps(k) - norm.value, config)
        if not gap.is_true:
            raise NotCauchyError(f"||u_{b} - u_{a}||_{k} < eps^{k} is {gap.state.value}")
        index = max(_first_good_index(norm, k, grid), previous_index)
        previous_index = index
        cut = _grid_point(grid, index)
        cutoffs.append(float(cut))
        logger.debug("Cauchy step %d: cutoff eps_%d = %s (grid index %d)", k, k, cut, index)
        terms.append(Gsf(tuple(SmoothExpr(c.expr * below(EPS, cut), c.n) for c in h.gsf.components),
                         h.gsf.domain))

    limit_gsf = terms[0]
    for t in terms[1:]:
        limit_gsf = limit_gsf + t
    order = min(u.verified_to_order for u in seq)
    limit = CompactlySupportedGsf(_expand(limit_gsf), K, order)

    certificates = []
    for p in range(1, len(schedule)):
        remainder = CompactlySupportedGsf(_expand((limit - seq[schedule[p]]).gsf), K, order)
        norm = norm_m(remainder, p, config)
        holds = norm.is_zero or strictly_positive(d_eps(p - 1) - norm.value, config).is_true
        certificates.append({"p": p, "order": p, "bound": f"eps^{p - 1}",
                             "valuation": _json(norm.valuation(config)), "holds": holds})
        if not holds:
            logger.warning("Cauchy certificate ||u - u_%d||_%d < eps^%d not verified",
                           schedule[p], p, p - 1)
    return CauchyLimit(limit=limit, schedule=schedule, cutoffs=cutoffs, certificates=certificates)


def _json(value: float):
    return "inf" if value == float("inf") else value
