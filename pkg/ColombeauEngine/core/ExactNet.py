"""
ExactNet - canonical representatives sum_i c_i * eps^(a_i) with rational
coefficients and exponents.

Arithmetic is exact (fractions.Fraction), so every order and valuation
question on an ExactNet is decided by its leading term.
"""
from __future__ import annotations

import math
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Tuple, Union

import mpmath

from .Grid import MP_DPS

Rational = Union[int, Fraction]


def as_fraction(value: Union[int, float, Fraction, str]) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite coefficient {value}")
        return Fraction(value).limit_denominator(10**12)
    return Fraction(value)


@dataclass(frozen=True)
class AsymptoticTerm:
    """coeff * eps^expo"""
    coeff: Fraction
    expo: Fraction

    def __post_init__(self):
        if self.coeff == 0:
            raise ValueError("AsymptoticTerm coefficient must be nonzero")

    def to_text(self) -> str:
        c, a = self.coeff, self.expo
        if a == 0:
            return _fmt(c)
        base = "eps" if a == 1 else f"eps^{_fmt(a, paren=True)}"
        if c == 1:
            return base
        if c == -1:
            return f"-{base}"
        return f"{_fmt(c, paren=True)}*{base}"


def _fmt(value: Fraction, paren: bool = False) -> str:
    text = str(value)
    if paren and value.denominator != 1:
        return f"({text})"
    return text


@dataclass(frozen=True)
class ExactNet:
    """Finite asymptotic series with strictly increasing exponents; () is zero"""
    terms: Tuple[AsymptoticTerm, ...] = ()

    @classmethod
    def from_pairs(cls, pairs: Iterable[Tuple[Rational, Rational]]) -> "ExactNet":
        """Collect (coeff, expo) pairs, summing equal exponents and dropping zeros"""
        collected: Dict[Fraction, Fraction] = defaultdict(Fraction)
        for coeff, expo in pairs:
            collected[as_fraction(expo)] += as_fraction(coeff)
        return cls(tuple(
            AsymptoticTerm(coeff, expo)
            for expo, coeff in sorted(collected.items())
            if coeff != 0
        ))

    @classmethod
    def zero(cls) -> "ExactNet":
        return cls(())

    @classmethod
    def constant(cls, value: Rational) -> "ExactNet":
        return cls.from_pairs([(value, 0)])

    @classmethod
    def monomial(cls, coeff: Rational, expo: Rational) -> "ExactNet":
        return cls.from_pairs([(coeff, expo)])

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @property
    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    @property
    def leading(self) -> AsymptoticTerm:
        if not self.terms:
            raise ValueError("the zero net has no leading term")
        return self.terms[0]

    @property
    def valuation(self) -> Union[Fraction, float]:
        """Leading exponent, +inf for zero"""
        return self.terms[0].expo if self.terms else math.inf

    @property
    def sign(self) -> int:
        """Eventual sign: sign of the leading coefficient"""
        if not self.terms:
            return 0
        return 1 if self.terms[0].coeff > 0 else -1

    # ------------------------------------------------------------------
    # Ring operations
    # ------------------------------------------------------------------

    def __add__(self, other: "ExactNet") -> "ExactNet":
        return ExactNet.from_pairs(
            [(t.coeff, t.expo) for t in self.terms] + [(t.coeff, t.expo) for t in other.terms]
        )

    def __neg__(self) -> "ExactNet":
        return ExactNet(tuple(AsymptoticTerm(-t.coeff, t.expo) for t in self.terms))

    def __sub__(self, other: "ExactNet") -> "ExactNet":
        return self + (-other)

    def __mul__(self, other: "ExactNet") -> "ExactNet":
        return ExactNet.from_pairs(
            (s.coeff * t.coeff, s.expo + t.expo) for s in self.terms for t in other.terms
        )

    def scale(self, factor: Rational) -> "ExactNet":
        return ExactNet.from_pairs((t.coeff * as_fraction(factor), t.expo) for t in self.terms)

    def shift(self, expo: Rational) -> "ExactNet":
        """Multiply by eps^expo"""
        a = as_fraction(expo)
        return ExactNet(tuple(AsymptoticTerm(t.coeff, t.expo + a) for t in self.terms))

    def __pow__(self, n: int) -> "ExactNet":
        if not isinstance(n, int):
            raise TypeError("ExactNet powers must be integers")
        if n < 0:
            return self.reciprocal() ** (-n)
        result = ExactNet.constant(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def reciprocal(self) -> "ExactNet":
        """Exact inverse, defined for monomials only"""
        if not self.is_monomial:
            raise ValueError("only monomials have an exact reciprocal")
        t = self.terms[0]
        return ExactNet((AsymptoticTerm(1 / t.coeff, -t.expo),))

    def abs(self) -> "ExactNet":
        return -self if self.sign < 0 else self

    # ------------------------------------------------------------------
    # Evaluation
    # ------------------------------------------------------------------

    def evaluate(self, eps: float) -> float:
        return float(sum(float(t.coeff) * eps ** float(t.expo) for t in self.terms))

    def evaluate_mp(self, eps: mpmath.mpf) -> mpmath.mpf:
        with mpmath.workdps(MP_DPS):
            total = mpmath.mpf(0)
            for t in self.terms:
                c = mpmath.mpf(t.coeff.numerator) / t.coeff.denominator
                a = mpmath.mpf(t.expo.numerator) / t.expo.denominator
                total += c * mpmath.power(eps, a)
            return total

    # ------------------------------------------------------------------
    # Text
    # ------------------------------------------------------------------

    def to_text(self) -> str:
        if not self.terms:
            return "0"
        text = " + ".join(t.to_text() for t in self.terms)
        return text.replace("+ -", "- ")

    def to_pairs(self) -> list[list[str]]:
        return [[str(t.coeff), str(t.expo)] for t in self.terms]

    def __repr__(self) -> str:
        return f"ExactNet({self.to_text()})"
