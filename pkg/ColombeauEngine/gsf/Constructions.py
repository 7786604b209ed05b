"""
Closed-form constructions of compactly supported GSF: smoothed box
indicators, the delta embedding, the cutoff embedding of a generalized
function on a box domain, and the mollified defining net of a compactly
supported GSF.
"""
from __future__ import annotations

import logging
from fractions import Fraction
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple, Union

import sympy

from ..core.Errors import PreconditionError
from ..core.ExactNet import as_fraction
from ..core.GeneralizedNumber import GeneralizedNumber, NumberLike, _settings, d_eps
from ..core.Order import strictly_positive
from ..core.Parsing import EPS, exact_net_to_sympy
from ..sets.BoxNet import Box, BoxNet
from ..sets.Exhaustion import find_covering_index
from ..sets.FunctionallyCompact import FunctionallyCompactSet
from ..sets.InternalSets import AllOfRtilde, StronglyInternalSet
from .Gsf import CompactlySupportedGsf, Counterexample, Gsf
from .Primitives import plateau
from .SmoothExpr import SmoothExpr, variables
from .Support import DEFAULT_VERIFY_ORDER, verify_compact_support

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)

SympyBox = Tuple[Tuple[sympy.Expr, ...], Tuple[sympy.Expr, ...]]

THREE_QUARTERS = sympy.Rational(3, 4)


def _exact(value: GeneralizedNumber, what: str) -> sympy.Expr:
    if not value.is_exact:
        raise PreconditionError(f"{what} must have Exact corners, got {value.to_text()}")
    return exact_net_to_sympy(value.exact)


def _rational(value: Union[int, float, Fraction]) -> sympy.Rational:
    f = as_fraction(value)
    return sympy.Rational(f.numerator, f.denominator)


def sympy_boxes(boxnet: BoxNet, what: str = "box net") -> List[SympyBox]:
    return [(tuple(_exact(c, what) for c in b.lo), tuple(_exact(c, what) for c in b.hi))
            for b in boxnet.boxes]


def _width(width: Union[NumberLike, sympy.Expr]) -> sympy.Expr:
    if isinstance(width, sympy.Expr):
        return width
    return _exact(GeneralizedNumber.of(width), "indicator width")


# ----------------------------------------------------------------------
# Smoothed indicators
# ----------------------------------------------------------------------

def face_factor(distance_inside: sympy.Expr, width: sympy.Expr) -> sympy.Expr:
    """1 where distance_inside >= 0, 0 where distance_inside <= -width"""
    return plateau(THREE_QUARTERS - THREE_QUARTERS * sympy.tanh(2 * (distance_inside + width / 2) / width))


def box_indicator(bounds: SympyBox, width: sympy.Expr, n: int) -> sympy.Expr:
    xs = variables(n)
    factors = []
    for x, lo, hi in zip(xs, bounds[0], bounds[1]):
        factors.append(face_factor(x - lo, width))
        factors.append(face_factor(hi - x, width))
    return sympy.Mul(*factors)


def indicator_expr(boxes: Sequence[SympyBox], width: sympy.Expr, n: int) -> sympy.Expr:
    if not boxes:
        return sympy.S.Zero
    if len(boxes) == 1:
        return box_indicator(boxes[0], width, n)
    return 1 - sympy.Mul(*[1 - box_indicator(b, width, n) for b in boxes])


def smoothed_box_indicator(boxnet: BoxNet, width: Union[NumberLike, sympy.Expr]) -> SmoothExpr:
    """Smooth function equal to 1 on the boxes and 0 outside their width-fattening"""
    w = _width(width)
    return SmoothExpr(indicator_expr(sympy_boxes(boxnet), w, boxnet.dimension), boxnet.dimension)


# ----------------------------------------------------------------------
# Delta
# ----------------------------------------------------------------------

def delta_embedding(n: int = 1, p: Union[int, float, Fraction] = 1) -> Gsf:
    """eps^-n * prod plateau(x_i / (2 p eps)), equal to eps^-n on |x_i| <= p eps"""
    if as_fraction(p) <= 0:
        raise PreconditionError("the plateau radius must be positive")
    radius = 2 * _rational(p) * EPS
    expr = EPS ** (-n) * sympy.Mul(*[plateau(x / radius) for x in variables(n)])
    return Gsf((SmoothExpr(expr, n),), AllOfRtilde(n))


# ----------------------------------------------------------------------
# Cutoff embedding
# ----------------------------------------------------------------------

def _check_divergent(J: GeneralizedNumber, config: "Settings") -> None:
    if not J.is_exact:
        raise PreconditionError("the cutoff radius must be an Exact generalized number")
    if not strictly_positive(J, config).is_true or J.exact.leading.expo >= 0:
        raise PreconditionError(f"cutoff radius {J.to_text()} does not diverge to +infinity")


def cutoff_embed_cgf(f: Gsf, J: NumberLike, config: Optional["Settings"] = None,
                     order: int = DEFAULT_VERIFY_ORDER) -> CompactlySupportedGsf:
    """prod plateau(x_i / J) * u, times the indicator of the domain boxes pulled in by 1/J"""
    config = _settings(config)
    J = GeneralizedNumber.of(J)
    _check_divergent(J, config)
    n = f.n
    j_expr = exact_net_to_sympy(J.exact)
    cutoff = sympy.Mul(*[plateau(x / j_expr) for x in variables(n)])

    cube = BoxNet((Box(tuple(-J for _ in range(n)), tuple(J for _ in range(n))),), n)
    if isinstance(f.domain, AllOfRtilde):
        witness = cube
    elif isinstance(f.domain, StronglyInternalSet):
        inner = [(tuple(lo + 1 / j_expr for lo in b[0]), tuple(hi - 1 / j_expr for hi in b[1]))
                 for b in sympy_boxes(f.domain.cover, "domain")]
        cutoff = cutoff * indicator_expr(inner, 1 / (2 * j_expr), n)
        half_gap = J.reciprocal(config) / 2
        witness = f.domain.cover.contract(half_gap).intersection(cube, config).drop_empty(config)
    else:
        raise PreconditionError(f"cutoff embedding on an unsupported domain {f.domain.describe()}")

    embedded = Gsf(tuple(SmoothExpr(cutoff * c.expr, n) for c in f.components), f.domain)
    K = FunctionallyCompactSet.from_boxnet(witness, config)
    logger.debug("Cutoff embedding of %s with J = %s, witness %s", f.to_text(), J.to_text(),
                 witness.to_payload())
    return _verified(embedded, K, order, config, "cutoff embedding")


# ----------------------------------------------------------------------
# Mollified representative
# ----------------------------------------------------------------------

def mollified_representative(f: CompactlySupportedGsf, a: Union[int, float, Fraction],
                             config: Optional["Settings"] = None) -> CompactlySupportedGsf:
    """Net (indicator of K + eps^a/2, transition eps^a/2) * u with support in K + eps^a"""
    config = _settings(config)
    a = as_fraction(a)
    covering = find_covering_index(f.witness, f.domain, config)
    if a < covering.j:
        raise PreconditionError(f"mollification exponent {a} below the covering index {covering.j}")
    if a == covering.j and not isinstance(f.domain, AllOfRtilde):
        raise PreconditionError(f"mollification exponent {a} must exceed the covering index "
                                f"{covering.j} on a bounded domain")
    half = d_eps(a) / 2
    w = _rational(Fraction(1, 2)) * EPS ** _rational(a)
    boxes = sympy_boxes(f.witness.boxnet.fatten(half), "witness")
    indicator = indicator_expr(boxes, w, f.n)
    net = Gsf(tuple(SmoothExpr(indicator * c.expr, f.n) for c in f.gsf.components), f.domain)
    H = FunctionallyCompactSet.from_boxnet(f.witness.boxnet.fatten(d_eps(a)), config)
    order = max(f.verified_to_order, 0)
    return _verified(net, H, order, config, "mollified representative")


def _verified(g: Gsf, K: FunctionallyCompactSet, order: int, config: "Settings",
              what: str) -> CompactlySupportedGsf:
    result = verify_compact_support(g, K, order=order, config=config)
    if isinstance(result, Counterexample):
        raise PreconditionError(f"{what} failed support verification at {result.point.to_text()} "
                                f"(alpha {result.alpha})")
    return result
