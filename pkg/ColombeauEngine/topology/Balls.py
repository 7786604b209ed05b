"""
Balls B^m_rho(f), sets C^m_r(f) and U^m_rho(f) of the sharp topology on
GD_K, and absorbency witnesses for U^m_rho(0).
"""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field
from typing import TYPE_CHECKING, List, Optional

from ..core.Errors import PreconditionError
from ..core.GeneralizedNumber import GeneralizedNumber, NumberLike, _settings, d_eps
from ..core.Order import is_infinitesimal, strictly_positive
from ..core.TriState import Decision
from ..gsf.Gsf import CompactlySupportedGsf
from .Norms import P_m, norm_m

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)

# Extra widening steps for the absorbency exponent
ABSORBENT_RETRIES = 3


def _difference(f: CompactlySupportedGsf, g: Optional[CompactlySupportedGsf]) -> CompactlySupportedGsf:
    return f if g is None else f - g


def _radius(rho: NumberLike, config: "Settings") -> GeneralizedNumber:
    rho = GeneralizedNumber.of(rho)
    if not strictly_positive(rho, config).is_true:
        raise PreconditionError(f"radius {rho.to_text()} is not strictly positive")
    return rho


def ball_member(f: CompactlySupportedGsf, g: Optional[CompactlySupportedGsf], m: int, rho: NumberLike,
                config: Optional["Settings"] = None) -> Decision:
    """g in B^m_rho(f): ||f - g||_m < rho (g None means 0)"""
    config = _settings(config)
    rho = _radius(rho, config)
    norm = norm_m(_difference(f, g), m, config)
    return strictly_positive(rho - norm.value, config)


def c_set_member(f: CompactlySupportedGsf, g: Optional[CompactlySupportedGsf], m: int, r: float,
                 config: Optional["Settings"] = None) -> bool:
    """g in C^m_r(f): P_m(f - g) < r"""
    if r <= 0:
        raise PreconditionError("C-set radius must be a positive real")
    return P_m(_difference(f, g), m, config) < r


def u_set_member(f: CompactlySupportedGsf, g: Optional[CompactlySupportedGsf], m: int, rho: NumberLike,
                 config: Optional["Settings"] = None) -> Decision:
    """g in U^m_rho(f): ||f - g||_m / rho is infinitesimal"""
    config = _settings(config)
    rho = _radius(rho, config)
    norm = norm_m(_difference(f, g), m, config)
    if norm.is_zero:
        return Decision.true(note="zero norm")
    return is_infinitesimal(norm.value / rho, config)


@dataclass
class AbsorbentWitness:
    """b with u in eps^b * U^m_rho(0)"""
    b: int
    q: float
    p: float
    verified: bool
    notes: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {"b": self.b, "q": _json(self.q), "p": _json(self.p), "verified": self.verified,
                "notes": list(self.notes)}


def _json(value: float):
    return "inf" if value == math.inf else value


def absorbent_witness(u: CompactlySupportedGsf, rho: NumberLike, m: int,
                      config: Optional["Settings"] = None) -> AbsorbentWitness:
    """b < v_m(u) - v(rho), checked by u / eps^b in U^m_rho(0)"""
    config = _settings(config)
    rho = _radius(rho, config)
    q = norm_m(u, m, config).valuation(config)
    p = float(rho.valuation(config))
    notes: List[str] = []
    b = 0 if q == math.inf else math.floor(q - p) - 1
    for attempt in range(ABSORBENT_RETRIES + 1):
        scaled = u.scale(d_eps(-b))
        decision = u_set_member(scaled, None, m, rho, config)
        if decision.is_true:
            return AbsorbentWitness(b=b, q=q, p=p, verified=True, notes=notes)
        if attempt == ABSORBENT_RETRIES:
            break
        logger.warning("Absorbency exponent %d not verified (%s); widening", b, decision.state.value)
        notes.append(f"b = {b} not verified ({decision.state.value})")
        b -= 1
    return AbsorbentWitness(b=b, q=q, p=p, verified=False, notes=notes)
