"""
Worked scenarios with their documented outcomes asserted.

Each demo builds a small configuration, checks the expected facts and
returns a DemoReportPayload; a failing assertion is listed in `diff`.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Callable, Dict, Optional

import mpmath

from ..core.Errors import PreconditionError
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, _settings, d_eps
from ..core.Idempotents import alternating_blocks, interleave
from ..gsf.Constructions import delta_embedding
from ..gsf.Gsf import CompactlySupportedGsf, Counterexample, Gsf
from ..gsf.Support import DEFAULT_VERIFY_ORDER, support_positive_at, verify_compact_support
from ..models.payloads import DemoReportPayload
from ..sets.BoxNet import Box, BoxNet
from ..sets.FunctionallyCompact import FunctionallyCompactSet, interleaving_union, interval, member_exterior
from ..sets.InternalSets import (
    AllOfRtilde,
    StronglyInternalSet,
    hausdorff_equal,
    member_internal,
    member_strongly_internal,
)
from ..topology.Completeness import cauchy_limit
from ..topology.Norms import v_m

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)

DELTA_ORDERS = 5
DELTA_TOLERANCE = 0.05
CAUCHY_TERMS = 9


def _report(name: str, assertions: Dict[str, bool], data: Dict[str, Any]) -> DemoReportPayload:
    failed = [k for k, ok in assertions.items() if not ok]
    diff = None
    if failed:
        diff = "\n".join(f"- {k}: expected true, got false" for k in failed)
        logger.warning("Demo %s: %d assertion(s) failed", name, len(failed))
    return DemoReportPayload(name=name, passed=not failed, assertions=assertions, data=data, diff=diff)


# ----------------------------------------------------------------------
# Demos
# ----------------------------------------------------------------------

def interleaving_gap(config: Optional["Settings"] = None) -> DemoReportPayload:
    """U = (-1, 1) u (2, 4) does not contain interl(H u K) for H, K compact in U"""
    config = _settings(config)
    left = StronglyInternalSet(BoxNet.of([[(-1, 1)]]))
    right = StronglyInternalSet(BoxNet.of([[(2, 4)]]))
    H = interval(Fraction(-1, 2), Fraction(1, 2), config)
    K = interval(Fraction(5, 2), Fraction(7, 2), config)
    joined = interleaving_union(H, K)

    x = GeneralizedPoint([interleave([0, 3], list(alternating_blocks()), config=config)])
    in_joined = member_internal(x, joined.internal, config)
    in_left = member_strongly_internal(x, left, config)
    in_right = member_strongly_internal(x, right, config)
    in_union_net = member_strongly_internal(x, StronglyInternalSet(left.boxnet.union(right.boxnet)), config)

    phi_psi = Gsf.of(["bump(2*x1) + bump(2*(x1 - 3))"], 1, AllOfRtilde(1))
    support = verify_compact_support(phi_psi, joined, config=config)

    assertions = {
        "x_in_interleaving_union": in_joined.is_true,
        "x_not_in_U": not (in_left | in_right).is_true,
        "sum_supported_in_interleaving_union": not isinstance(support, Counterexample),
    }
    data = {
        "x": x.to_text(),
        "member_left": in_left.to_dict(),
        "member_right": in_right.to_dict(),
        "member_eps_wise_union": in_union_net.to_dict(),
        "witness": joined.describe(),
    }
    return _report("interleaving-gap", assertions, data)


def delta_norms(config: Optional["Settings"] = None) -> DemoReportPayload:
    """v_m(delta) = -(m + 1) for the plateau embedding of delta"""
    config = _settings(config)
    delta = CompactlySupportedGsf(delta_embedding(1, 1), interval(-1, 1, config), DEFAULT_VERIFY_ORDER)
    table = {m: v_m(delta, m, config) for m in range(DELTA_ORDERS)}
    assertions = {f"v_{m}": abs(v + (m + 1)) <= DELTA_TOLERANCE for m, v in table.items()}
    at_zero = delta.eval_scalar(GeneralizedPoint.of(0), config)
    assertions["value_at_0"] = at_zero.is_exact and at_zero.exact == d_eps(-1).exact
    return _report("delta-norms", assertions, {
        "valuations": {str(m): v for m, v in table.items()},
        "expected": {str(m): -(m + 1) for m in table},
        "value_at_0": at_zero.to_text(),
    })


def hausdorff_equal_sets(config: Optional["Settings"] = None) -> DemoReportPayload:
    """[-1, 1] and [-1, 1] with a hole of radius exp(-1/eps) are the same internal set"""
    config = _settings(config)
    hole = GeneralizedNumber.from_generator(lambda eps: mpmath.exp(-1 / eps), label="exp(-1/eps)",
                                            config=config)
    K = interval(-1, 1, config)
    L = FunctionallyCompactSet.from_boxnet(
        BoxNet((Box.of([(-1, -hole)]), Box.of([(hole, 1)])), 1), config)
    equal = hausdorff_equal(K.internal, L.internal, config)
    origin, outside = GeneralizedPoint.of(0), GeneralizedPoint.of(2)
    plateau_net = Gsf.of(["plateau(x1)"], 1, AllOfRtilde(1))

    assertions = {
        "internal_sets_equal": equal.is_true,
        "origin_in_L": member_internal(origin, L.internal, config).is_true,
        "origin_not_exterior_to_L": member_exterior(origin, L, config).is_false,
        "exterior_agrees_at_2": member_exterior(outside, K, config).is_true
                                and member_exterior(outside, L, config).is_true,
        "function_positive_in_the_hole": support_positive_at(plateau_net, origin, config).is_true,
    }
    return _report("hausdorff-equal", assertions, {
        "K": K.describe(),
        "L": L.describe(),
        "hausdorff_equal": equal.to_dict(),
    })


def completeness(config: Optional["Settings"] = None) -> DemoReportPayload:
    """Limit of u_n = bump(x) * sum_{k <= n} eps^(2k) with the convergence certificates"""
    config = _settings(config)
    witness = interval(-1, 1, config)
    sequence = []
    for n in range(CAUCHY_TERMS):
        text = "bump(x1) * (" + " + ".join(f"eps^{2 * k}" for k in range(n + 1)) + ")"
        sequence.append(CompactlySupportedGsf(Gsf.of([text], 1, AllOfRtilde(1)), witness,
                                              DEFAULT_VERIFY_ORDER))
    limit = cauchy_limit(sequence, config=config)
    assertions = {f"certificate_{c['p']}": bool(c["holds"]) for c in limit.certificates}
    assertions["converged"] = limit.converged
    return _report("completeness", assertions, limit.to_dict())


DEMOS: Dict[str, Callable[[Optional["Settings"]], DemoReportPayload]] = {
    "interleaving-gap": interleaving_gap,
    "delta-norms": delta_norms,
    "hausdorff-equal": hausdorff_equal_sets,
    "completeness": completeness,
}


def run_demo(name: str, config: Optional["Settings"] = None) -> DemoReportPayload:
    try:
        demo = DEMOS[name]
    except KeyError:
        raise PreconditionError(f"unknown demo '{name}'; expected one of {', '.join(DEMOS)}") from None
    logger.info("Running demo %s", name)
    return demo(config)
