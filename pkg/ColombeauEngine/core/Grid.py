"""
EpsilonGrid - the finite set of epsilon values every sampled net lives on.

Points are eps_k = base^(-k) for k_min <= k <= k_max, strictly decreasing.
The "tail" is the smallest-eps half of the grid; asymptotic decisions only
look at the tail, and some of them only at its last quarter.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import List, Optional, TYPE_CHECKING

import mpmath
import numpy as np

if TYPE_CHECKING:
    from ..config import Settings

# Working precision for mpmath evaluation of generators
MP_DPS = 60


@dataclass(frozen=True)
class EpsilonGrid:
    """Grid eps_k = base^(-k), k = k_min..k_max"""
    base: float = 2.0
    k_min: int = 4
    k_max: int = 48

    def __post_init__(self):
        if self.base <= 1.0:
            raise ValueError("grid base must be > 1")
        if self.k_min < 0:
            raise ValueError("k_min must be >= 0")
        if self.k_max - self.k_min + 1 < 8:
            raise ValueError("the epsilon grid needs at least 8 points")

    @classmethod
    def from_settings(cls, config: "Settings") -> "EpsilonGrid":
        return cls(base=config.grid_base, k_min=config.k_min, k_max=config.k_max)

    def __len__(self) -> int:
        return self.k_max - self.k_min + 1

    @property
    def exponents(self) -> np.ndarray:
        return np.arange(self.k_min, self.k_max + 1)

    @property
    def points(self) -> np.ndarray:
        return self.base ** (-self.exponents.astype(float))

    @property
    def log_points(self) -> np.ndarray:
        """log(eps_k), computed without underflow"""
        return -self.exponents.astype(float) * math.log(self.base)

    @property
    def mp_points(self) -> List[mpmath.mpf]:
        return _mp_points(self.base, self.k_min, self.k_max)

    @property
    def tail(self) -> slice:
        """Smallest-eps half of the grid"""
        return slice(len(self) // 2, len(self))

    @property
    def last_quarter(self) -> slice:
        return slice(len(self) - max(2, len(self) // 4), len(self))

    def index_of(self, eps: float) -> Optional[int]:
        """Grid index of eps, or None when eps is not a grid point"""
        if eps <= 0:
            return None
        k = round(-math.log(eps) / math.log(self.base))
        if self.k_min <= k <= self.k_max and math.isclose(self.base ** (-k), eps, rel_tol=1e-12):
            return k - self.k_min
        return None

    def to_dict(self) -> dict:
        return {"base": self.base, "k_min": self.k_min, "k_max": self.k_max}


@lru_cache(maxsize=32)
def _mp_points(base: float, k_min: int, k_max: int) -> List[mpmath.mpf]:
    with mpmath.workdps(MP_DPS):
        b = mpmath.mpf(base)
        return [b ** (-k) for k in range(k_min, k_max + 1)]


def default_grid(config: Optional["Settings"] = None) -> EpsilonGrid:
    """Grid described by the given settings (global settings by default)"""
    if config is None:
        from ..config import settings as config
    return EpsilonGrid.from_settings(config)
