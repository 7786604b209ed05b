"""
SampledNet - a representative evaluated on an EpsilonGrid.

Samples are stored in the log domain as (sign, log|value|) so that values
like eps^-20 at eps = 2^-48, or exp(-1/eps), never overflow or underflow.
When a generator (an mpmath function of eps) is known, arithmetic composes
generators and re-evaluates at working precision; otherwise it falls back
to log-domain arithmetic on the stored samples.
"""
from __future__ import annotations

import math
from typing import Callable, List, Optional, Sequence

import mpmath
import numpy as np

from .Errors import GridMismatchError, MagnitudeOverflow, NotInvertibleError
from .Grid import MP_DPS, EpsilonGrid

Generator = Callable[[mpmath.mpf], mpmath.mpf]

# Log-magnitude cap; instances are checked against it on construction
DEFAULT_MAGNITUDE_CAP = 700.0


def _mp_sign_log(value: mpmath.mpf) -> tuple[int, float]:
    if value == 0:
        return 0, -math.inf
    if not mpmath.isfinite(value):
        raise MagnitudeOverflow(f"non-finite sample {value}")
    return (1 if value > 0 else -1), float(mpmath.log(abs(value)))


class SampledNet:
    """Sign and log-magnitude of a net at every grid point"""

    def __init__(self, grid: EpsilonGrid, sign: np.ndarray, logmag: np.ndarray,
                 generator: Optional[Generator] = None, label: str = "",
                 magnitude_cap: float = DEFAULT_MAGNITUDE_CAP):
        sign = np.asarray(sign, dtype=np.int8)
        logmag = np.asarray(logmag, dtype=float)
        if sign.shape != (len(grid),) or logmag.shape != (len(grid),):
            raise GridMismatchError("sample arrays do not match the grid length")
        logmag = np.where(sign == 0, -np.inf, logmag)
        if np.any(np.isnan(logmag)):
            raise MagnitudeOverflow(f"undefined sample in {label or 'net'}")
        if np.any(logmag > magnitude_cap):
            k = int(grid.exponents[int(np.argmax(logmag > magnitude_cap))])
            raise MagnitudeOverflow(
                f"log-magnitude above {magnitude_cap} at eps = {grid.base}^-{k} in {label or 'net'}"
            )
        self.grid = grid
        self.sign = sign
        self.logmag = logmag
        self.generator = generator
        self.label = label
        self.magnitude_cap = magnitude_cap

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def from_generator(cls, grid: EpsilonGrid, generator: Generator, label: str = "",
                       magnitude_cap: float = DEFAULT_MAGNITUDE_CAP) -> "SampledNet":
        with mpmath.workdps(MP_DPS):
            values = [generator(eps) for eps in grid.mp_points]
        return cls.from_mp_values(grid, values, generator=generator, label=label,
                                  magnitude_cap=magnitude_cap)

    @classmethod
    def from_mp_values(cls, grid: EpsilonGrid, values: Sequence[mpmath.mpf],
                       generator: Optional[Generator] = None, label: str = "",
                       magnitude_cap: float = DEFAULT_MAGNITUDE_CAP) -> "SampledNet":
        pairs = [_mp_sign_log(mpmath.mpf(v)) for v in values]
        sign = np.array([p[0] for p in pairs], dtype=np.int8)
        logmag = np.array([p[1] for p in pairs], dtype=float)
        return cls(grid, sign, logmag, generator=generator, label=label,
                   magnitude_cap=magnitude_cap)

    @classmethod
    def from_values(cls, grid: EpsilonGrid, values: Sequence[float], label: str = "",
                    magnitude_cap: float = DEFAULT_MAGNITUDE_CAP) -> "SampledNet":
        values = np.asarray(values, dtype=float)
        if not np.all(np.isfinite(values)):
            raise MagnitudeOverflow(f"non-finite sample in {label or 'net'}")
        with np.errstate(divide="ignore"):
            logmag = np.log(np.abs(values))
        return cls(grid, np.sign(values).astype(np.int8), logmag, label=label,
                   magnitude_cap=magnitude_cap)

    @classmethod
    def constant(cls, grid: EpsilonGrid, value: float) -> "SampledNet":
        c = mpmath.mpf(value)
        return cls.from_generator(grid, lambda eps: c, label=str(value))

    # ------------------------------------------------------------------
    # Access
    # ------------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.grid)

    def values(self) -> np.ndarray:
        """Float samples; magnitudes beyond float range become +/-inf"""
        with np.errstate(over="ignore"):
            return self.sign * np.exp(self.logmag)

    def mp_values(self) -> List[mpmath.mpf]:
        with mpmath.workdps(MP_DPS):
            if self.generator is not None:
                return [mpmath.mpf(self.generator(eps)) for eps in self.grid.mp_points]
            return [
                mpmath.mpf(0) if s == 0 else s * mpmath.exp(mpmath.mpf(l))
                for s, l in zip(self.sign.tolist(), self.logmag.tolist())
            ]

    def mp_value_at(self, index: int) -> mpmath.mpf:
        with mpmath.workdps(MP_DPS):
            if self.generator is not None:
                return mpmath.mpf(self.generator(self.grid.mp_points[index]))
            s, l = int(self.sign[index]), float(self.logmag[index])
            return mpmath.mpf(0) if s == 0 else s * mpmath.exp(mpmath.mpf(l))

    def lookup(self) -> Generator:
        """A generator that reads stored samples at grid points"""
        if self.generator is not None:
            return self.generator
        grid = self.grid
        stored = self.mp_values()

        def from_table(eps: mpmath.mpf) -> mpmath.mpf:
            index = grid.index_of(float(eps))
            if index is None:
                raise GridMismatchError(f"{self.label or 'net'} is only known on its grid")
            return stored[index]
        return from_table

    @property
    def is_zero_everywhere(self) -> bool:
        return bool(np.all(self.sign == 0))

    def _check_grid(self, other: "SampledNet") -> None:
        if self.grid != other.grid:
            raise GridMismatchError(f"grids differ: {self.grid} vs {other.grid}")

    def _derived(self, sign, logmag, generator, label) -> "SampledNet":
        return SampledNet(self.grid, sign, logmag, generator=generator, label=label,
                          magnitude_cap=self.magnitude_cap)

    def _compose(self, other: Optional["SampledNet"], fn, label: str) -> Optional["SampledNet"]:
        """Re-evaluate fn over the generators when all of them are known"""
        if self.generator is None or (other is not None and other.generator is None):
            return None
        ga = self.generator
        if other is None:
            gen = lambda eps: fn(ga(eps))
        else:
            gb = other.generator
            gen = lambda eps: fn(ga(eps), gb(eps))
        return SampledNet.from_generator(self.grid, gen, label=label,
                                         magnitude_cap=self.magnitude_cap)

    # ------------------------------------------------------------------
    # Arithmetic
    # ------------------------------------------------------------------

    def __add__(self, other: "SampledNet") -> "SampledNet":
        self._check_grid(other)
        label = f"({self.label}) + ({other.label})"
        composed = self._compose(other, lambda a, b: a + b, label)
        if composed is not None:
            return composed
        sign, logmag = log_add(self.sign, self.logmag, other.sign, other.logmag)
        return self._derived(sign, logmag, None, label)

    def __neg__(self) -> "SampledNet":
        gen = None
        if self.generator is not None:
            ga = self.generator
            gen = lambda eps: -ga(eps)
        return self._derived(-self.sign, self.logmag.copy(), gen, f"-({self.label})")

    def __sub__(self, other: "SampledNet") -> "SampledNet":
        return self + (-other)

    def __mul__(self, other: "SampledNet") -> "SampledNet":
        self._check_grid(other)
        gen = None
        if self.generator is not None and other.generator is not None:
            ga, gb = self.generator, other.generator
            gen = lambda eps: ga(eps) * gb(eps)
        sign = (self.sign * other.sign).astype(np.int8)
        with np.errstate(invalid="ignore"):
            logmag = np.where(sign == 0, -np.inf, self.logmag + other.logmag)
        return self._derived(sign, logmag, gen, f"({self.label})*({other.label})")

    def reciprocal(self) -> "SampledNet":
        if np.any(self.sign == 0):
            raise NotInvertibleError(f"{self.label or 'net'} has zero samples")
        gen = None
        if self.generator is not None:
            ga = self.generator
            gen = lambda eps: 1 / ga(eps)
        return self._derived(self.sign.copy(), -self.logmag, gen, f"1/({self.label})")

    def __truediv__(self, other: "SampledNet") -> "SampledNet":
        return self * other.reciprocal()

    def __pow__(self, n: int) -> "SampledNet":
        if n < 0:
            return self.reciprocal() ** (-n)
        gen = None
        if self.generator is not None:
            ga = self.generator
            gen = lambda eps: ga(eps) ** n
        if n == 0:
            return self._derived(np.ones_like(self.sign), np.zeros(len(self)), gen, "1")
        sign = (self.sign.astype(int) ** n).astype(np.int8)
        with np.errstate(invalid="ignore"):
            logmag = np.where(sign == 0, -np.inf, self.logmag * n)
        return self._derived(sign, logmag, gen, f"({self.label})^{n}")

    def abs(self) -> "SampledNet":
        gen = None
        if self.generator is not None:
            ga = self.generator
            gen = lambda eps: abs(ga(eps))
        return self._derived(np.abs(self.sign), self.logmag.copy(), gen, f"|{self.label}|")

    def sqrt(self) -> "SampledNet":
        """Square root of a nonnegative net"""
        if np.any(self.sign < 0):
            raise ValueError(f"square root of a net with negative samples: {self.label}")
        gen = None
        if self.generator is not None:
            ga = self.generator
            gen = lambda eps: mpmath.sqrt(ga(eps))
        return self._derived(self.sign.copy(), self.logmag / 2.0, gen, f"sqrt({self.label})")

    def maximum(self, other: "SampledNet") -> "SampledNet":
        self._check_grid(other)
        composed = self._compose(other, lambda a, b: a if a >= b else b,
                                 f"max({self.label}, {other.label})")
        if composed is not None:
            return composed
        pick = greater_equal(self.sign, self.logmag, other.sign, other.logmag)
        return self._derived(np.where(pick, self.sign, other.sign),
                             np.where(pick, self.logmag, other.logmag), None,
                             f"max({self.label}, {other.label})")

    def minimum(self, other: "SampledNet") -> "SampledNet":
        return -((-self).maximum(-other))

    def select(self, mask: np.ndarray, other: "SampledNet") -> "SampledNet":
        """Samples of self where mask holds, of other elsewhere"""
        self._check_grid(other)
        return self._derived(np.where(mask, self.sign, other.sign),
                             np.where(mask, self.logmag, other.logmag), None,
                             f"select({self.label}, {other.label})")

    def __repr__(self) -> str:
        return f"SampledNet({self.label or '<samples>'}, n={len(self)})"


def log_add(sa: np.ndarray, la: np.ndarray, sb: np.ndarray, lb: np.ndarray):
    """Signed log-domain addition; -inf marks exact zeros"""
    m = np.maximum(la, lb)
    finite = np.isfinite(m)
    shift = np.where(finite, m, 0.0)
    with np.errstate(over="ignore", invalid="ignore"):
        total = sa * np.exp(la - shift) + sb * np.exp(lb - shift)
    sign = np.sign(total).astype(np.int8)
    with np.errstate(divide="ignore"):
        logmag = np.where(sign == 0, -np.inf, shift + np.log(np.abs(total)))
    sign = np.where(finite, sign, 0).astype(np.int8)
    return sign, logmag


def greater_equal(sa: np.ndarray, la: np.ndarray, sb: np.ndarray, lb: np.ndarray) -> np.ndarray:
    """Pointwise a >= b for signed log-domain samples"""
    same = sa == sb
    by_sign = sa > sb
    # equal signs: compare magnitudes, reversed for negatives
    by_mag = np.where(sa >= 0, la >= lb, la <= lb)
    return np.where(same, by_mag, by_sign)
