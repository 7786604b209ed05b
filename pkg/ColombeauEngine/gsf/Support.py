"""
Support tests, compact-support verification against a functionally compact
witness, and the global extension of compactly supported GSF.

Verification samples the strong exterior of K at per-eps distances eps^q
(q = 0..m_max) from the boxes of K, plus one far point beyond the sharp
bound, and checks that every derivative up to the requested order is
negligible there. It is a semi-decision: a returned CompactlySupportedGsf
is verified on the logged samples only.
"""
from __future__ import annotations

import logging
from typing import TYPE_CHECKING, Iterator, List, Optional, Tuple, Union

from ..core.Errors import PreconditionError
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, _settings, d_eps
from ..core.Order import is_negligible, strictly_positive
from ..core.rng import DeterministicRNG
from ..core.TriState import Decision
from ..sets.BoxNet import Box
from ..sets.FunctionallyCompact import FunctionallyCompactSet, member_exterior
from ..sets.InternalSets import AllOfRtilde, member_strongly_internal
from .Gsf import CompactlySupportedGsf, Counterexample, ExteriorSample, Gsf, as_point, check_inside, evaluate_expr
from .Optimizer import optimize
from .SmoothExpr import SmoothExpr, multi_indices

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)

DEFAULT_VERIFY_ORDER = 2

# Margin around K for global sups
GLOBAL_MARGIN = 1


def support_positive_at(f: Gsf, x, config: Optional["Settings"] = None) -> Decision:
    """Point test for the open set {|f| > 0} whose closure is supp(f)"""
    config = _settings(config)
    x = as_point(x)
    value = f.eval(x, config)
    size = abs(value[0]) if f.d == 1 else value.euclidean_norm(config)
    return strictly_positive(size, config)


# ----------------------------------------------------------------------
# Exterior sampling
# ----------------------------------------------------------------------

def far_point(K: FunctionallyCompactSet) -> GeneralizedPoint:
    """(eps^-(N+1), 0, ..., 0) beyond the sharp bound N of K"""
    return GeneralizedPoint([d_eps(-(K.sharp_bound + 1))] + [0] * (K.dimension - 1))


def _face_point(b: Box, q: int, rng: DeterministicRNG) -> GeneralizedPoint:
    i = rng.randint(0, b.dimension - 1)
    gap = d_eps(q)
    value = b.hi[i] + gap if rng.random() < 0.5 else b.lo[i] - gap
    return b.centre().with_component(i, value)


def _diagonal_point(b: Box, q: int, rng: DeterministicRNG) -> GeneralizedPoint:
    gap = d_eps(q)
    return GeneralizedPoint([hi + gap if rng.random() < 0.5 else lo - gap for lo, hi in b.bounds()])


def exterior_candidates(K: FunctionallyCompactSet, config: "Settings",
                        rng: DeterministicRNG) -> Iterator[Tuple[GeneralizedPoint, str, Optional[int]]]:
    """Far point first, then face and diagonal points at distance eps^q for q = 0..m_max"""
    yield far_point(K), "far", None
    for q in range(0, config.m_max + 1):
        b = rng.choice(K.boxnet.boxes)
        yield _face_point(b, q, rng), "face", q
        yield _diagonal_point(b, q, rng), "diagonal", q


# ----------------------------------------------------------------------
# Verification
# ----------------------------------------------------------------------

def verify_compact_support(f: Gsf, K: FunctionallyCompactSet, order: int = DEFAULT_VERIFY_ORDER,
                           budget: Optional[int] = None, config: Optional["Settings"] = None,
                           rng: Optional[DeterministicRNG] = None
                           ) -> Union[CompactlySupportedGsf, Counterexample]:
    """f in GD_K(U): every derivative up to `order` negligible at sampled exterior points"""
    config = _settings(config)
    if order < 0:
        raise PreconditionError("verification order must be nonnegative")
    if K.dimension != f.n:
        raise PreconditionError(f"witness of dimension {K.dimension} for a function of {f.n} variables")
    check_inside(f, K, config)
    budget = budget or config.support_budget
    rng = rng or DeterministicRNG(config.seed).spawn("exterior-samples")

    derivatives: List[Tuple[Tuple[int, ...], Tuple[SmoothExpr, ...]]] = [
        (alpha, tuple(c.derivative(alpha) for c in f.components)) for alpha in multi_indices(f.n, order)
    ]
    log: List[ExteriorSample] = []
    for x, kind, q in exterior_candidates(K, config, rng):
        if len(log) >= budget:
            break
        if not member_exterior(x, K, config).is_true:
            logger.debug("Skipping %s point %s: not decidably exterior", kind, x.to_text())
            continue
        if not member_strongly_internal(x, f.domain, config).is_true:
            logger.debug("Skipping %s point %s: outside the domain", kind, x.to_text())
            continue
        for alpha, exprs in derivatives:
            for expr in exprs:
                value = evaluate_expr(expr, x, config)
                decision = is_negligible(value, config)
                if decision.is_true:
                    continue
                logger.info("Compact support of %s in %s fails at %s (alpha %s, %s)",
                            f.to_text(), K.boxnet.to_payload(), x.to_text(), alpha, decision.state.value)
                return Counterexample(point=x, alpha=alpha, value=value, decided=decision.is_false,
                                      kind=kind, q=q, note=decision.note)
        log.append(ExteriorSample(point=x.to_text(), kind=kind, q=q, order=order))

    if not log:
        logger.warning("No exterior sample of %s lies in the domain; support unverified",
                       K.boxnet.to_payload())
    return CompactlySupportedGsf(f, K, order, tuple(log))


# ----------------------------------------------------------------------
# Global extension
# ----------------------------------------------------------------------

def global_sup(expr: SmoothExpr, K: FunctionallyCompactSet,
               config: Optional["Settings"] = None) -> GeneralizedNumber:
    """sup over R^n of |expr| for a net vanishing off K: sup over K fattened by the margin"""
    config = _settings(config)
    if expr.is_zero:
        return GeneralizedNumber.zero()
    result = optimize(expr, K.boxnet.fatten(GLOBAL_MARGIN), "absmax", config=config)
    return result.number(label=f"sup |{expr.to_text()}|", config=config)


def extend_global(f: CompactlySupportedGsf, config: Optional["Settings"] = None,
                  certify_order: int = 0) -> Gsf:
    """The unique GSF on R~^n agreeing with f on its domain and vanishing outside"""
    config = _settings(config)
    if f.verified_to_order < 0:
        raise PreconditionError("extension needs a verified compact-support witness")
    original = f.gsf.domain
    extended = Gsf(f.gsf.components, AllOfRtilde(f.n),
                   extended_from=None if isinstance(original, AllOfRtilde) else original)

    bounds = {}
    for alpha in multi_indices(f.n, certify_order):
        sups = [global_sup(c.derivative(alpha), f.witness, config) for c in f.gsf.components]
        worst = sups[0]
        for s in sups[1:]:
            worst = worst + s
        bounds[str(alpha)] = {"valuation": _float_valuation(worst, config), "text": worst.to_text()}
    certificate = {
        "kind": "global_moderateness",
        "order": certify_order,
        "margin": GLOBAL_MARGIN,
        "witness": f.witness.boxnet.to_payload(),
        "grid": {"base": config.grid_base, "k_min": config.k_min, "k_max": config.k_max},
        "sups": bounds,
    }
    logger.debug("Global extension of %s with certificate %s", f.gsf.to_text(), certificate)
    return extended.with_certificate(certificate)


def moderateness_certificate(f: Gsf, points: List[GeneralizedPoint], order: int,
                             config: Optional["Settings"] = None) -> Gsf:
    """Record that every derivative up to `order` is moderate at the given domain points"""
    config = _settings(config)
    checked, failures = 0, []
    for x in points:
        for alpha in multi_indices(f.n, order):
            for c in f.components:
                value = evaluate_expr(c.derivative(alpha), x, config)
                if not value.estimate(config).moderate:
                    failures.append({"point": x.to_text(), "alpha": list(alpha)})
                checked += 1
    if failures:
        logger.warning("%d derivative samples of %s are not moderate", len(failures), f.to_text())
    return f.with_certificate({
        "kind": "moderate_samples",
        "order": order,
        "points": len(points),
        "checked": checked,
        "failures": failures,
        "grid": {"base": config.grid_base, "k_min": config.k_min, "k_max": config.k_max},
    })


def _float_valuation(value: GeneralizedNumber, config: "Settings"):
    v = float(value.valuation(config))
    return "inf" if v == float("inf") else v
