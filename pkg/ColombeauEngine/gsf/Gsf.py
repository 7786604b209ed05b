"""
Gsf - generalized smooth functions f([x_eps]) = [u_eps(x_eps)] given by a
SmoothExpr per codomain component on a strongly internal domain, and the
compactly supported variant carrying a functionally compact witness.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict, Optional, Sequence, Tuple, Union

import sympy

from ..core.Errors import ContainmentError, EmptySetError, EvalDomainError, MagnitudeOverflow, PreconditionError
from ..core.ExactNet import as_fraction
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, NumberLike, _settings
from ..core.Grid import default_grid
from ..core.Parsing import exact_net_to_sympy
from ..sets.FunctionallyCompact import FunctionallyCompactSet, interleaving_union
from ..sets.InternalSets import AllOfRtilde, Domain, member_strongly_internal
from .SmoothExpr import SmoothExpr, checked_value

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)

Scalar = Union[int, float, Fraction, GeneralizedNumber]


def scalar_to_sympy(value: Scalar) -> sympy.Expr:
    """Real or Exact generalized scalar as a sympy expression in eps"""
    if isinstance(value, GeneralizedNumber):
        if not value.is_exact:
            raise PreconditionError("only Exact generalized scalars can multiply a function net")
        return exact_net_to_sympy(value.exact)
    f = as_fraction(value)
    return sympy.Rational(f.numerator, f.denominator)


def as_point(x: Union[GeneralizedPoint, Sequence[NumberLike], NumberLike]) -> GeneralizedPoint:
    if isinstance(x, GeneralizedPoint):
        return x
    if isinstance(x, (list, tuple)):
        return GeneralizedPoint(x)
    return GeneralizedPoint([x])


def check_inside(f: "Gsf", K: FunctionallyCompactSet, config: Optional["Settings"] = None) -> None:
    """K must lie in the domain of f; tested at the corners of K"""
    if K.is_empty:
        raise EmptySetError("empty functionally compact set")
    if isinstance(f.domain, AllOfRtilde):
        return
    for b in K.boxnet.boxes:
        for corner in b.corners():
            if member_strongly_internal(corner, f.domain, config).is_false:
                raise ContainmentError(f"corner {corner.to_text()} of K is outside the domain")


@dataclass(frozen=True)
class Gsf:
    """f in GC^inf(U, R~^d)"""
    components: Tuple[SmoothExpr, ...]
    domain: Domain
    certificates: Tuple[Dict[str, Any], ...] = field(default=(), compare=False)
    # net valid on this domain only; the function is 0 outside it
    extended_from: Optional[Domain] = None

    def __post_init__(self):
        if not self.components:
            raise PreconditionError("a GSF needs at least one component")
        n = self.domain.dimension
        if any(c.n > n for c in self.components):
            raise PreconditionError(f"component uses more than the {n} domain variables")
        lifted = tuple(c if c.n == n else SmoothExpr(c.expr, n, c.text) for c in self.components)
        object.__setattr__(self, "components", lifted)

    @classmethod
    def of(cls, texts: Union[str, Sequence[str]], n: Optional[int] = None,
           domain: Optional[Domain] = None) -> "Gsf":
        texts = [texts] if isinstance(texts, str) else list(texts)
        if domain is not None:
            n = domain.dimension
        exprs = [SmoothExpr.parse(t, n) for t in texts]
        n = n or max(e.n for e in exprs)
        return cls(tuple(exprs), domain or AllOfRtilde(n))

    @classmethod
    def zero(cls, n: int = 1, domain: Optional[Domain] = None) -> "Gsf":
        return cls((SmoothExpr.of(0, n),), domain or AllOfRtilde(n))

    # ------------------------------------------------------------------
    # Shape
    # ------------------------------------------------------------------

    @property
    def n(self) -> int:
        return self.domain.dimension

    @property
    def d(self) -> int:
        return len(self.components)

    @property
    def expr(self) -> SmoothExpr:
        if self.d != 1:
            raise PreconditionError("scalar operation on a vector-valued GSF")
        return self.components[0]

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.components)

    def component(self, i: int) -> "Gsf":
        return Gsf((self.components[i],), self.domain, extended_from=self.extended_from)

    def to_text(self) -> str:
        return ", ".join(c.to_text() for c in self.components)

    def describe(self) -> dict:
        return {"components": [c.to_text() for c in self.components],
                "domain": self.domain.describe()}

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def _common_domain(self, other: "Gsf") -> Domain:
        if self.extended_from != other.extended_from:
            raise PreconditionError("GSF arithmetic between different global extensions")
        if self.domain == other.domain or isinstance(other.domain, AllOfRtilde):
            return self.domain
        if isinstance(self.domain, AllOfRtilde):
            return other.domain
        raise PreconditionError("GSF arithmetic needs a common domain; restrict first")

    def _pairs(self, other: "Gsf"):
        if self.d == other.d:
            return zip(self.components, other.components)
        if other.d == 1:
            return ((c, other.components[0]) for c in self.components)
        if self.d == 1:
            return ((self.components[0], c) for c in other.components)
        raise PreconditionError(f"codomain dimensions {self.d} and {other.d} do not match")

    def __add__(self, other: "Gsf") -> "Gsf":
        domain = self._common_domain(other)
        return Gsf(tuple(a + b for a, b in self._pairs(other)), domain, extended_from=self.extended_from)

    def __sub__(self, other: "Gsf") -> "Gsf":
        domain = self._common_domain(other)
        return Gsf(tuple(a - b for a, b in self._pairs(other)), domain, extended_from=self.extended_from)

    def __neg__(self) -> "Gsf":
        return replace(self, components=tuple(-c for c in self.components), certificates=())

    def __mul__(self, other: Union["Gsf", Scalar]) -> "Gsf":
        if isinstance(other, Gsf):
            domain = self._common_domain(other)
            return Gsf(tuple(a * b for a, b in self._pairs(other)), domain, extended_from=self.extended_from)
        return self.scale(other)

    __rmul__ = __mul__

    def scale(self, factor: Scalar) -> "Gsf":
        c = scalar_to_sympy(factor)
        return replace(self, components=tuple(e.scale(c) for e in self.components), certificates=())

    def derivative(self, alpha: Sequence[int], config: Optional["Settings"] = None) -> "Gsf":
        """Componentwise partial derivative, |alpha| <= max_derivative_order.

        Norms differentiate the components directly and are bounded by
        max_norm_order instead.
        """
        config = _settings(config)
        if sum(alpha) > config.max_derivative_order:
            raise PreconditionError(
                f"derivative order {sum(alpha)} above max_derivative_order {config.max_derivative_order}")
        return replace(self, components=tuple(c.derivative(alpha) for c in self.components), certificates=())

    def restrict(self, U: Domain, config: Optional["Settings"] = None) -> "Gsf":
        """Same net on a smaller strongly internal domain"""
        if U.dimension != self.n:
            raise PreconditionError(f"domain of dimension {U.dimension} for a function of {self.n} variables")
        if not isinstance(self.domain, AllOfRtilde) and not isinstance(U, AllOfRtilde):
            for b in U.boxnet.boxes:
                if all(outer.contains_box(b, config).is_false for outer in self.domain.cover.boxes):
                    raise PreconditionError("restriction domain leaves the original domain")
        elif isinstance(U, AllOfRtilde) and not isinstance(self.domain, AllOfRtilde):
            raise PreconditionError("cannot restrict to a larger domain")
        return Gsf(self.components, U)

    def with_certificate(self, certificate: Dict[str, Any]) -> "Gsf":
        return replace(self, certificates=self.certificates + (certificate,))

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def eval(self, x, config: Optional["Settings"] = None, check_domain: bool = True) -> GeneralizedPoint:
        """[u_eps(x_eps)] componentwise"""
        config = _settings(config)
        x = as_point(x)
        if x.dimension != self.n:
            raise PreconditionError(f"point of dimension {x.dimension} for a function of {self.n} variables")
        if check_domain:
            decision = member_strongly_internal(x, self.domain, config)
            if decision.is_false:
                raise PreconditionError(f"{x.to_text()} is not in the domain")
            if decision.is_undecidable:
                logger.warning("Domain membership of %s is undecidable on the grid", x.to_text())
        if self.extended_from is not None and member_strongly_internal(x, self.extended_from, config).is_false:
            return GeneralizedPoint.zeros(self.d)
        return GeneralizedPoint([evaluate_expr(c, x, config) for c in self.components])

    def eval_scalar(self, x, config: Optional["Settings"] = None,
                    check_domain: bool = True) -> GeneralizedNumber:
        if self.d != 1:
            raise PreconditionError("eval_scalar on a vector-valued GSF")
        return self.eval(x, config, check_domain)[0]

    __call__ = eval


def evaluate_expr(expr: SmoothExpr, x: GeneralizedPoint, config: "Settings") -> GeneralizedNumber:
    """u(x) with the Exact fast path for exact points"""
    label = f"{expr.to_text()} at {x.to_text()}"
    if x.is_exact:
        point = [c.exact for c in x]
        exact = expr.exact_value(point)
        if exact is not None:
            return GeneralizedNumber(exact=exact)
        generator = expr.eps_generator(point)
        grid = default_grid(config)
    else:
        grid = next(c.grid for c in x if c.grid is not None)
        coordinate_generators = [c.to_sampled(grid, config).lookup() for c in x]
        fn = expr.mpmath_function()

        def generator(eps):
            return checked_value(fn(*[g(eps) for g in coordinate_generators], eps), expr)
    try:
        return GeneralizedNumber.from_generator(generator, grid=grid, label=label, config=config)
    except ZeroDivisionError as exc:
        raise EvalDomainError(f"division by zero evaluating {label}") from exc
    except MagnitudeOverflow as exc:
        if "non-finite" in str(exc):
            raise EvalDomainError(f"{label} is not finite") from exc
        raise


# ----------------------------------------------------------------------
# Compactly supported functions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ExteriorSample:
    """One tested point of the strong exterior of the witness"""
    point: str
    kind: str
    q: Optional[int]
    order: int

    def to_dict(self) -> dict:
        return {"point": self.point, "kind": self.kind, "q": self.q, "order": self.order}


@dataclass(frozen=True)
class Counterexample:
    """Exterior point where some derivative is not (or not decidably) negligible"""
    point: GeneralizedPoint
    alpha: Tuple[int, ...]
    value: GeneralizedNumber
    decided: bool
    kind: str = ""
    q: Optional[int] = None
    note: Optional[str] = None

    def to_dict(self) -> dict:
        return {
            "point": self.point.to_text(),
            "alpha": list(self.alpha),
            "value": self.value.to_text(),
            "valuation": _json_valuation(self.value),
            "decided": self.decided,
            "kind": self.kind,
            "q": self.q,
            "note": self.note,
        }


def _json_valuation(value: GeneralizedNumber):
    v = float(value.valuation())
    if v == float("inf"):
        return "inf"
    return v


@dataclass(frozen=True)
class CompactlySupportedGsf:
    """f in GD_K(U, R~^d) with its verification record"""
    gsf: Gsf
    witness: FunctionallyCompactSet
    verified_to_order: int
    exterior_sample_log: Tuple[ExteriorSample, ...] = ()

    @property
    def n(self) -> int:
        return self.gsf.n

    @property
    def d(self) -> int:
        return self.gsf.d

    @property
    def domain(self) -> Domain:
        return self.gsf.domain

    def eval(self, x, config: Optional["Settings"] = None) -> GeneralizedPoint:
        return self.gsf.eval(x, config)

    def eval_scalar(self, x, config: Optional["Settings"] = None) -> GeneralizedNumber:
        return self.gsf.eval_scalar(x, config)

    def derivative(self, alpha: Sequence[int], config: Optional["Settings"] = None) -> "CompactlySupportedGsf":
        """The witness is kept; verification drops by |alpha|"""
        return CompactlySupportedGsf(self.gsf.derivative(alpha, config), self.witness,
                                     max(self.verified_to_order - sum(alpha), 0),
                                     self.exterior_sample_log)

    def __add__(self, other: "CompactlySupportedGsf") -> "CompactlySupportedGsf":
        return CompactlySupportedGsf(self.gsf + other.gsf, interleaving_union(self.witness, other.witness),
                                     min(self.verified_to_order, other.verified_to_order))

    def __sub__(self, other: "CompactlySupportedGsf") -> "CompactlySupportedGsf":
        return CompactlySupportedGsf(self.gsf - other.gsf, interleaving_union(self.witness, other.witness),
                                     min(self.verified_to_order, other.verified_to_order))

    def __neg__(self) -> "CompactlySupportedGsf":
        return replace(self, gsf=-self.gsf)

    def scale(self, factor: Scalar) -> "CompactlySupportedGsf":
        return replace(self, gsf=self.gsf.scale(factor))

    def __mul__(self, other: Union["CompactlySupportedGsf", Gsf, Scalar]) -> "CompactlySupportedGsf":
        if isinstance(other, CompactlySupportedGsf):
            return CompactlySupportedGsf(self.gsf * other.gsf, self.witness,
                                         min(self.verified_to_order, other.verified_to_order))
        if isinstance(other, Gsf):
            return CompactlySupportedGsf(self.gsf * other, self.witness, self.verified_to_order)
        return self.scale(other)

    __rmul__ = __mul__

    def describe(self) -> dict:
        return {
            "gsf": self.gsf.describe(),
            "witness": self.witness.describe(),
            "verified_to_order": self.verified_to_order,
            "exterior_samples": [s.to_dict() for s in self.exterior_sample_log],
        }
