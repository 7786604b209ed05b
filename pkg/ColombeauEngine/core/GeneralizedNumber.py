"""
GeneralizedNumber - an element of the ring of Colombeau generalized numbers,
backed either by an ExactNet or by a SampledNet.

Exact op Exact stays Exact whenever the result is a finite asymptotic
series; anything else is coerced to a SampledNet on the grid of the sampled
operand (or the configured default grid).
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict, Iterator, List, Optional, Sequence, Union

import mpmath
import numpy as np

from .Errors import GridMismatchError, NotInvertibleError
from .ExactNet import ExactNet, as_fraction
from .Grid import EpsilonGrid, default_grid
from .SampledNet import Generator, SampledNet
from .Valuation import ValuationEstimate, estimate_valuation

if TYPE_CHECKING:
    from ..config import Settings

Scalar = Union[int, Fraction, float]
NumberLike = Union["GeneralizedNumber", Scalar]


def _settings(config: Optional["Settings"]) -> "Settings":
    if config is None:
        from ..config import settings
        return settings
    return config


class GeneralizedNumber:
    """Element of R~ with an Exact or a Sampled representative"""

    __slots__ = ("exact", "sampled")

    def __init__(self, exact: Optional[ExactNet] = None, sampled: Optional[SampledNet] = None):
        if (exact is None) == (sampled is None):
            raise ValueError("a GeneralizedNumber needs exactly one representative")
        self.exact = exact
        self.sampled = sampled

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def of(cls, value: NumberLike) -> "GeneralizedNumber":
        if isinstance(value, GeneralizedNumber):
            return value
        if isinstance(value, (int, Fraction, float, np.integer, np.floating)):
            v = value.item() if isinstance(value, (np.integer, np.floating)) else value
            return cls(exact=ExactNet.constant(as_fraction(v)))
        raise TypeError(f"cannot make a generalized number from {type(value).__name__}")

    @classmethod
    def zero(cls) -> "GeneralizedNumber":
        return cls(exact=ExactNet.zero())

    @classmethod
    def one(cls) -> "GeneralizedNumber":
        return cls(exact=ExactNet.constant(1))

    @classmethod
    def monomial(cls, coeff: Scalar, expo: Scalar) -> "GeneralizedNumber":
        return cls(exact=ExactNet.monomial(as_fraction(coeff), as_fraction(expo)))

    @classmethod
    def from_generator(cls, generator: Generator, grid: Optional[EpsilonGrid] = None,
                       label: str = "", config: Optional["Settings"] = None) -> "GeneralizedNumber":
        config = _settings(config)
        grid = grid or default_grid(config)
        return cls(sampled=SampledNet.from_generator(grid, generator, label=label,
                                                     magnitude_cap=config.magnitude_cap))

    @classmethod
    def from_values(cls, values: Sequence[float], grid: EpsilonGrid,
                    label: str = "") -> "GeneralizedNumber":
        return cls(sampled=SampledNet.from_values(grid, values, label=label))

    @classmethod
    def parse(cls, text: str, grid: Optional[EpsilonGrid] = None,
              config: Optional["Settings"] = None) -> "GeneralizedNumber":
        from .Parsing import parse_number
        return parse_number(text, grid=grid, config=config)

    # ------------------------------------------------------------------
    # Representation
    # ------------------------------------------------------------------

    @property
    def is_exact(self) -> bool:
        return self.exact is not None

    @property
    def variant(self) -> str:
        return "exact" if self.is_exact else "sampled"

    @property
    def grid(self) -> Optional[EpsilonGrid]:
        return self.sampled.grid if self.sampled is not None else None

    @property
    def is_exact_zero(self) -> bool:
        return self.exact is not None and self.exact.is_zero

    @property
    def vanishes_on_grid(self) -> bool:
        if self.exact is not None:
            return self.exact.is_zero
        return self.sampled.is_zero_everywhere

    def to_sampled(self, grid: Optional[EpsilonGrid] = None,
                   config: Optional["Settings"] = None) -> SampledNet:
        if self.sampled is not None:
            if grid is not None and grid != self.sampled.grid:
                raise GridMismatchError(f"number lives on {self.sampled.grid}, not {grid}")
            return self.sampled
        config = _settings(config)
        grid = grid or default_grid(config)
        return SampledNet.from_generator(grid, self.exact.evaluate_mp, label=self.exact.to_text(),
                                         magnitude_cap=config.magnitude_cap)

    def as_sampled(self, grid: Optional[EpsilonGrid] = None,
                   config: Optional["Settings"] = None) -> "GeneralizedNumber":
        return GeneralizedNumber(sampled=self.to_sampled(grid, config))

    def generator(self) -> Generator:
        """mpmath function of eps giving the representative"""
        if self.exact is not None:
            return self.exact.evaluate_mp
        return self.sampled.lookup()

    def values(self, grid: Optional[EpsilonGrid] = None) -> np.ndarray:
        """Float samples on a grid"""
        if self.exact is not None:
            grid = grid or default_grid()
            with np.errstate(over="ignore"):
                return np.array([self.exact.evaluate(float(e)) for e in grid.points])
        return self.to_sampled(grid).values()

    def mp_values(self, grid: Optional[EpsilonGrid] = None) -> List[mpmath.mpf]:
        if self.exact is not None:
            grid = grid or default_grid()
            return [self.exact.evaluate_mp(e) for e in grid.mp_points]
        return self.to_sampled(grid).mp_values()

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def _sampled_pair(self, other: "GeneralizedNumber") -> tuple[SampledNet, SampledNet]:
        grid = self.grid or other.grid
        return self.to_sampled(grid), other.to_sampled(grid)

    def __add__(self, other: NumberLike) -> "GeneralizedNumber":
        other = GeneralizedNumber.of(other)
        if self.exact is not None and other.exact is not None:
            return GeneralizedNumber(exact=self.exact + other.exact)
        a, b = self._sampled_pair(other)
        return GeneralizedNumber(sampled=a + b)

    __radd__ = __add__

    def __neg__(self) -> "GeneralizedNumber":
        if self.exact is not None:
            return GeneralizedNumber(exact=-self.exact)
        return GeneralizedNumber(sampled=-self.sampled)

    def __sub__(self, other: NumberLike) -> "GeneralizedNumber":
        return self + (-GeneralizedNumber.of(other))

    def __rsub__(self, other: NumberLike) -> "GeneralizedNumber":
        return GeneralizedNumber.of(other) + (-self)

    def __mul__(self, other: NumberLike) -> "GeneralizedNumber":
        if isinstance(other, GeneralizedPoint):
            return NotImplemented
        other = GeneralizedNumber.of(other)
        if self.exact is not None and other.exact is not None:
            return GeneralizedNumber(exact=self.exact * other.exact)
        a, b = self._sampled_pair(other)
        return GeneralizedNumber(sampled=a * b)

    __rmul__ = __mul__

    def reciprocal(self, config: Optional["Settings"] = None) -> "GeneralizedNumber":
        if self.exact is not None:
            if self.exact.is_zero:
                raise NotInvertibleError("division by the zero number")
            if self.exact.is_monomial:
                return GeneralizedNumber(exact=self.exact.reciprocal())
        return GeneralizedNumber(sampled=self.to_sampled(config=config).reciprocal())

    def __truediv__(self, other: NumberLike) -> "GeneralizedNumber":
        other = GeneralizedNumber.of(other)
        if self.exact is not None and other.exact is not None:
            return self * other.reciprocal()
        a, b = self._sampled_pair(other)
        return GeneralizedNumber(sampled=a / b)

    def __rtruediv__(self, other: NumberLike) -> "GeneralizedNumber":
        return GeneralizedNumber.of(other) / self

    def __pow__(self, n: int) -> "GeneralizedNumber":
        if self.exact is not None:
            if n >= 0 or self.exact.is_monomial:
                return GeneralizedNumber(exact=self.exact ** n)
            return GeneralizedNumber(sampled=self.to_sampled() ** n)
        return GeneralizedNumber(sampled=self.sampled ** n)

    def __abs__(self) -> "GeneralizedNumber":
        if self.exact is not None:
            return GeneralizedNumber(exact=self.exact.abs())
        return GeneralizedNumber(sampled=self.sampled.abs())

    def sqrt(self, config: Optional["Settings"] = None) -> "GeneralizedNumber":
        """Square root of a nonnegative number; exact for perfect-square monomials"""
        if self.exact is not None:
            if self.exact.is_zero:
                return self
            if self.exact.is_monomial and self.exact.leading.coeff > 0:
                c = self.exact.leading.coeff
                rn, rd = math.isqrt(c.numerator), math.isqrt(c.denominator)
                if rn * rn == c.numerator and rd * rd == c.denominator:
                    return GeneralizedNumber.monomial(Fraction(rn, rd), self.exact.leading.expo / 2)
        return GeneralizedNumber(sampled=self.to_sampled(config=config).sqrt())

    # ------------------------------------------------------------------
    # Valuation and sharp norm
    # ------------------------------------------------------------------

    def estimate(self, config: Optional["Settings"] = None) -> ValuationEstimate:
        if self.exact is not None:
            v = self.exact.valuation
            return ValuationEstimate(value=float(v), negligible=self.exact.is_zero,
                                     samples_used=0, exact=True)
        config = _settings(config)
        return estimate_valuation(self.sampled, v_cut=config.v_cut,
                                  residual_threshold=config.residual_threshold)

    def valuation(self, config: Optional["Settings"] = None) -> Union[Fraction, float]:
        """Exact leading exponent (Fraction, +inf for zero) or the sampled estimate"""
        if self.exact is not None:
            return self.exact.valuation
        return self.estimate(config).value

    # ------------------------------------------------------------------
    # Text / payloads
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        if self.exact is not None:
            return self.exact.to_text()
        return self.sampled.label or "<sampled>"

    def to_dict(self) -> Dict[str, Any]:
        if self.exact is not None:
            return {"variant": "exact", "terms": self.exact.to_pairs(), "text": self.exact.to_text()}
        s = self.sampled
        return {
            "variant": "sampled",
            "label": s.label,
            "grid": s.grid.to_dict(),
            "samples": {
                "sign": [int(v) for v in s.sign.tolist()],
                "logmag": [None if math.isinf(v) else round(float(v), 12) for v in s.logmag.tolist()],
            },
        }

    def __repr__(self) -> str:
        return f"GeneralizedNumber[{self.variant}]({self.to_text()})"


# ----------------------------------------------------------------------
# Module-level ring operations
# ----------------------------------------------------------------------

def add(x: NumberLike, y: NumberLike) -> GeneralizedNumber:
    return GeneralizedNumber.of(x) + y


def sub(x: NumberLike, y: NumberLike) -> GeneralizedNumber:
    return GeneralizedNumber.of(x) - y


def mul(x: NumberLike, y: Union[NumberLike, "GeneralizedPoint"]):
    if isinstance(y, GeneralizedPoint):
        return y.scale(x)
    return GeneralizedNumber.of(x) * y


def d_eps(a: Scalar) -> GeneralizedNumber:
    """The generalized number [eps^a]"""
    return GeneralizedNumber.monomial(1, a)


def maximum(x: NumberLike, y: NumberLike) -> GeneralizedNumber:
    """Eventual maximum; Exact inputs are compared by the leading term of x - y"""
    x, y = GeneralizedNumber.of(x), GeneralizedNumber.of(y)
    if x.exact is not None and y.exact is not None:
        return x if (x.exact - y.exact).sign >= 0 else y
    a, b = x._sampled_pair(y)
    return GeneralizedNumber(sampled=a.maximum(b))


def minimum(x: NumberLike, y: NumberLike) -> GeneralizedNumber:
    x, y = GeneralizedNumber.of(x), GeneralizedNumber.of(y)
    if x.exact is not None and y.exact is not None:
        return x if (x.exact - y.exact).sign <= 0 else y
    a, b = x._sampled_pair(y)
    return GeneralizedNumber(sampled=a.minimum(b))


def valuation(x: NumberLike, config: Optional["Settings"] = None) -> Union[Fraction, float]:
    return GeneralizedNumber.of(x).valuation(config)


def e_norm(x: NumberLike, config: Optional["Settings"] = None) -> float:
    """|x|_e = exp(-v(x)), with exp(-inf) = 0"""
    v = valuation(x, config)
    if v == math.inf:
        return 0.0
    return math.exp(-float(v))


def sharp_distance(x: NumberLike, y: NumberLike, config: Optional["Settings"] = None) -> float:
    return e_norm(GeneralizedNumber.of(x) - y, config)


# ----------------------------------------------------------------------
# Points of R~^n
# ----------------------------------------------------------------------

class GeneralizedPoint:
    """Point of R~^n with componentwise operations"""

    __slots__ = ("components",)

    def __init__(self, components: Sequence[NumberLike]):
        if not components:
            raise ValueError("a point needs at least one component")
        self.components = tuple(GeneralizedNumber.of(c) for c in components)

    @classmethod
    def of(cls, *values: NumberLike) -> "GeneralizedPoint":
        return cls(values)

    @classmethod
    def zeros(cls, n: int) -> "GeneralizedPoint":
        return cls([0] * n)

    @classmethod
    def from_arrays(cls, values: np.ndarray, grid: EpsilonGrid, label: str = "") -> "GeneralizedPoint":
        """Sampled point from an array of shape (len(grid), n)"""
        values = np.asarray(values, dtype=float)
        return cls([
            GeneralizedNumber.from_values(values[:, i], grid, label=f"{label}[{i}]")
            for i in range(values.shape[1])
        ])

    @property
    def dimension(self) -> int:
        return len(self.components)

    @property
    def is_exact(self) -> bool:
        return all(c.is_exact for c in self.components)

    def __len__(self) -> int:
        return len(self.components)

    def __iter__(self) -> Iterator[GeneralizedNumber]:
        return iter(self.components)

    def __getitem__(self, index: int) -> GeneralizedNumber:
        return self.components[index]

    def _check(self, other: "GeneralizedPoint") -> None:
        if other.dimension != self.dimension:
            raise ValueError(f"dimension mismatch: {self.dimension} vs {other.dimension}")

    def __add__(self, other: "GeneralizedPoint") -> "GeneralizedPoint":
        self._check(other)
        return GeneralizedPoint([a + b for a, b in zip(self, other)])

    def __sub__(self, other: "GeneralizedPoint") -> "GeneralizedPoint":
        self._check(other)
        return GeneralizedPoint([a - b for a, b in zip(self, other)])

    def __neg__(self) -> "GeneralizedPoint":
        return GeneralizedPoint([-a for a in self])

    def scale(self, factor: NumberLike) -> "GeneralizedPoint":
        return GeneralizedPoint([c * factor for c in self])

    __mul__ = scale
    __rmul__ = scale

    def with_component(self, index: int, value: NumberLike) -> "GeneralizedPoint":
        parts = list(self.components)
        parts[index] = GeneralizedNumber.of(value)
        return GeneralizedPoint(parts)

    def squared_norm(self) -> GeneralizedNumber:
        total = GeneralizedNumber.zero()
        for c in self.components:
            total = total + c * c
        return total

    def euclidean_norm(self, config: Optional["Settings"] = None) -> GeneralizedNumber:
        """|x| extended componentwise; exact when at most one component is nonzero"""
        nonzero = [c for c in self.components if not c.vanishes_on_grid]
        if not nonzero:
            return GeneralizedNumber.zero()
        if len(nonzero) == 1:
            return abs(nonzero[0])
        return self.squared_norm().sqrt(config)

    def to_text(self) -> str:
        return "(" + ", ".join(c.to_text() for c in self.components) + ")"

    def to_dict(self) -> Dict[str, Any]:
        return {"components": [c.to_dict() for c in self.components]}

    def __repr__(self) -> str:
        return f"GeneralizedPoint{self.to_text()}"
