"""
Order, positivity and negligibility decisions.

Exact numbers are decided by their leading term. Sampled numbers are
semi-decided on the tail of the grid and may come back UNDECIDABLE.
"""
from __future__ import annotations

import math
from typing import TYPE_CHECKING, Optional

import numpy as np

from .Errors import PreconditionError
from .GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, NumberLike, _settings
from .TriState import Decision

if TYPE_CHECKING:
    from ..config import Settings


def is_negligible(x: NumberLike, config: Optional["Settings"] = None) -> Decision:
    x = GeneralizedNumber.of(x)
    if x.exact is not None:
        return Decision.of(x.exact.is_zero)
    config = _settings(config)
    est = x.estimate(config)
    if est.negligible:
        return Decision.true(note="valuation classified +inf")
    if est.reliable and est.value < config.v_cut - 1.0:
        return Decision.false()
    return Decision.undecidable(f"valuation {est.value:.3f} near the negligibility cut {config.v_cut}")


def is_infinitesimal(x: NumberLike, config: Optional["Settings"] = None) -> Decision:
    x = GeneralizedNumber.of(x)
    if x.exact is not None:
        return Decision.of(x.exact.is_zero or x.exact.leading.expo > 0)
    config = _settings(config)
    est = x.estimate(config)
    if est.negligible or est.value > config.infinitesimal_margin:
        return Decision.true(witness=est.value if math.isfinite(est.value) else None)
    if est.reliable:
        return Decision.false()
    return Decision.undecidable(f"unreliable valuation {est.value:.3f}")


def strictly_positive(x: NumberLike, config: Optional["Settings"] = None) -> Decision:
    """x > 0 in the sense x_eps > eps^m eventually; witness m on success"""
    x = GeneralizedNumber.of(x)
    if x.exact is not None:
        if x.exact.is_zero or x.exact.sign < 0:
            return Decision.false()
        return Decision.true(witness=math.floor(x.exact.leading.expo) + 1)

    config = _settings(config)
    if is_negligible(x, config).is_true:
        return Decision.false(note="negligible")
    net = x.sampled
    grid = net.grid
    tail = grid.tail
    sign = net.sign[tail]
    logmag = net.logmag[tail]
    logeps = grid.log_points[tail]
    if np.all(sign > 0):
        for m in range(-config.m_max, config.m_max + 1):
            # x_eps > eps^m  <=>  log|x| > m log eps
            if np.all(logmag > m * logeps):
                return Decision.true(witness=m)
    if np.any(net.sign[grid.last_quarter] <= 0):
        return Decision.false(note="nonpositive samples at the smallest eps")
    return Decision.undecidable(f"no m <= {config.m_max} with x > eps^m on the tail")


def leq(x: NumberLike, y: NumberLike, config: Optional["Settings"] = None) -> Decision:
    """x <= y in R~"""
    d = GeneralizedNumber.of(y) - x
    if d.exact is not None:
        return Decision.of(d.exact.is_zero or d.exact.sign > 0)

    config = _settings(config)
    if is_negligible(d, config).is_true:
        return Decision.true(note="difference negligible")
    positive = strictly_positive(d, config)
    if positive.is_true:
        return positive
    net = d.sampled
    grid = net.grid
    # violation: d_eps < -eps^v_cut
    violating = (net.sign < 0) & (net.logmag > config.v_cut * grid.log_points)
    if not np.any(violating[grid.tail]):
        return Decision.true(note=f"difference >= -eps^{config.v_cut} on the tail")
    if strictly_positive(-d, config).is_true or np.any(violating[grid.last_quarter]):
        return Decision.false()
    return Decision.undecidable("order violations only early in the tail")


def less(x: NumberLike, y: NumberLike, config: Optional["Settings"] = None) -> Decision:
    """x < y, i.e. y - x strictly positive"""
    return strictly_positive(GeneralizedNumber.of(y) - x, config)


def is_invertible(x: NumberLike, config: Optional["Settings"] = None) -> Decision:
    return strictly_positive(abs(GeneralizedNumber.of(x)), config)


def ball_member_point(y: GeneralizedPoint, x: GeneralizedPoint, rho: NumberLike,
                      config: Optional["Settings"] = None) -> Decision:
    """|y - x| < rho for the componentwise Euclidean norm"""
    rho = GeneralizedNumber.of(rho)
    if not strictly_positive(rho, config).is_true:
        raise PreconditionError("ball radius must be strictly positive")
    return strictly_positive(rho - (y - x).euclidean_norm(config), config)
