"""
ColombeauEngine - computable generalized numbers and compactly supported GSF

Generalized numbers are nets sampled on a geometric epsilon grid, with an
exact fast path for finite sums of powers of eps. On top of them sit
functionally compact sets, generalized smooth functions given as
expressions in eps and x1..xn, their compact-support witnesses, the
generalized norms ||f||_m and the metrics d_e and d_2.

Quick start
-----------
    from ColombeauEngine import Gsf, interval, verify_compact_support, norm_m, v_m

    K = interval(-1, 1)
    f = verify_compact_support(Gsf.of(["eps^-1 * bump(x1/eps)"], 1), K)
    v_m(f, 0)                     # -1.0
    norm_m(f, 2).to_payload()     # NormPayload with the sampled net

    from ColombeauEngine import parse_number, strictly_positive
    strictly_positive(parse_number("eps - eps^2")).is_true   # True, witness 2
"""

from .config import Settings, load_settings, settings

from .core.Errors import ColombeauError, ExpressionParseError, PreconditionError, UndecidableError
from .core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, d_eps
from .core.Order import is_infinitesimal, is_negligible, leq, strictly_positive
from .core.Parsing import parse_number, parse_point
from .core.TriState import Decision, TriState

from .sets.BoxNet import Box, BoxNet
from .sets.FunctionallyCompact import FunctionallyCompactSet, box, interleaving_union, interval, member_exterior
from .sets.InternalSets import AllOfRtilde, StronglyInternalSet, member_internal, member_strongly_internal
from .sets.Exhaustion import exhaustion, find_covering_index

from .gsf.Gsf import CompactlySupportedGsf, Counterexample, Gsf
from .gsf.Support import verify_compact_support
from .gsf.Extremes import extreme_values
from .gsf.Constructions import delta_embedding

from .topology.Norms import norm_m, v_m
from .topology.Balls import ball_member, c_set_member, u_set_member
from .topology.Metrics import metric
from .topology.Completeness import cauchy_limit

__version__ = "1.0.0"
__author__ = "Colombeau Engine Team"

__all__ = [
    # Config
    "Settings",
    "load_settings",
    "settings",
    # Numbers
    "ColombeauError",
    "ExpressionParseError",
    "PreconditionError",
    "UndecidableError",
    "GeneralizedNumber",
    "GeneralizedPoint",
    "d_eps",
    "strictly_positive",
    "leq",
    "is_negligible",
    "is_infinitesimal",
    "parse_number",
    "parse_point",
    "Decision",
    "TriState",
    # Sets
    "Box",
    "BoxNet",
    "FunctionallyCompactSet",
    "box",
    "interval",
    "interleaving_union",
    "member_exterior",
    "AllOfRtilde",
    "StronglyInternalSet",
    "member_internal",
    "member_strongly_internal",
    "exhaustion",
    "find_covering_index",
    # Functions
    "Gsf",
    "CompactlySupportedGsf",
    "Counterexample",
    "verify_compact_support",
    "extreme_values",
    "delta_embedding",
    # Topology
    "norm_m",
    "v_m",
    "ball_member",
    "c_set_member",
    "u_set_member",
    "metric",
    "cauchy_limit",
]
