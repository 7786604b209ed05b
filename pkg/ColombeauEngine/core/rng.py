"""
DeterministicRNG - seeded random number generator for reproducible runs.

Every randomised procedure (property suites, exterior sampling, optimizer
jitter) draws from one of these so a seed reproduces a report byte for byte.
"""

import hashlib
from fractions import Fraction
from typing import Any, Sequence

import numpy as np


class DeterministicRNG:
    """Deterministic RNG wrapping a numpy Generator"""

    def __init__(self, seed: int):
        self.seed = seed
        self.rng = np.random.default_rng(seed)

    def random(self) -> float:
        """Get a random float between 0.0 and 1.0"""
        return float(self.rng.random())

    def randint(self, a: int, b: int) -> int:
        """Get a random integer between a and b (inclusive)"""
        return int(self.rng.integers(a, b + 1))

    def choice(self, seq: Sequence[Any]) -> Any:
        """Choose a random element from a sequence"""
        return seq[int(self.rng.integers(0, len(seq)))]

    def fraction(self, lo: int, hi: int, denominator: int = 4) -> Fraction:
        """Random rational in [lo, hi] with the given denominator"""
        return Fraction(self.randint(lo * denominator, hi * denominator), denominator)

    def nonzero_fraction(self, lo: int, hi: int, denominator: int = 4) -> Fraction:
        """Random nonzero rational in [lo, hi]"""
        while True:
            value = self.fraction(lo, hi, denominator)
            if value != 0:
                return value

    def spawn(self, label: str) -> "DeterministicRNG":
        """Independent child stream whose seed depends only on (seed, label)"""
        digest = hashlib.sha256(f"{self.seed}:{label}".encode("utf-8")).digest()
        return DeterministicRNG(int.from_bytes(digest[:8], "little"))
