"""
Random case builders for the property suites.

Everything is drawn from a DeterministicRNG stream, so a suite seed fixes
every number, function and set a suite looks at. Functions are sums of
scaled bumps c * bump((x1 - s) / r) supported inside WITNESS_RADIUS; one
pair of functions shares a single eps power so that their sums, differences
and products keep the separable form c(eps) * u(x) the optimizer solves once.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

import sympy

from ..core.ExactNet import ExactNet
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint
from ..core.Parsing import EPS
from ..core.rng import DeterministicRNG
from ..gsf.Gsf import CompactlySupportedGsf, Gsf
from ..gsf.Primitives import bump
from ..gsf.SmoothExpr import SmoothExpr, variables
from ..gsf.Support import DEFAULT_VERIFY_ORDER
from ..sets.FunctionallyCompact import FunctionallyCompactSet, interval
from ..sets.InternalSets import AllOfRtilde

if TYPE_CHECKING:
    from ..config import Settings

WITNESS_RADIUS = 2
BUMP_CENTRES = (Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1))
BUMP_RADII = (Fraction(1, 2), Fraction(1))


# ----------------------------------------------------------------------
# Numbers
# ----------------------------------------------------------------------

def random_exact(rng: DeterministicRNG, max_terms: int = 3, lo: int = -2, hi: int = 3,
                 allow_zero: bool = True) -> GeneralizedNumber:
    """Sum of up to max_terms terms c * eps^a, a a half-integer in [lo, hi]"""
    low = 0 if allow_zero else 1
    count = rng.randint(low, max_terms)
    pairs = [(rng.nonzero_fraction(-3, 3), rng.fraction(lo, hi, 2)) for _ in range(count)]
    net = ExactNet.from_pairs(pairs)
    if net.is_zero and not allow_zero:
        net = ExactNet.monomial(rng.nonzero_fraction(-3, 3), rng.fraction(lo, hi, 2))
    return GeneralizedNumber(exact=net)


def random_exact_triple(rng: DeterministicRNG) -> Tuple[GeneralizedNumber, GeneralizedNumber, GeneralizedNumber]:
    return random_exact(rng), random_exact(rng), random_exact(rng)


def random_positive_exponent(rng: DeterministicRNG, lo: int = 0, hi: int = 4) -> Fraction:
    return rng.fraction(lo, hi, 2)


# ----------------------------------------------------------------------
# Functions
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class BumpTerm:
    """coeff * bump((x1 - centre) / radius)"""
    coeff: Fraction
    centre: Fraction
    radius: Fraction

    def expr(self) -> sympy.Expr:
        x = variables(1)[0]
        t = (x - _rational(self.centre)) / _rational(self.radius)
        return _rational(self.coeff) * bump(t)

    def to_dict(self) -> dict:
        return {"coeff": str(self.coeff), "centre": str(self.centre), "radius": str(self.radius)}


def _rational(value: Fraction) -> sympy.Rational:
    return sympy.Rational(value.numerator, value.denominator)


def random_bump_terms(rng: DeterministicRNG, max_terms: int = 2, max_coeff: int = 2) -> List[BumpTerm]:
    count = rng.randint(1, max_terms)
    return [BumpTerm(rng.nonzero_fraction(-max_coeff, max_coeff), rng.choice(BUMP_CENTRES),
                     rng.choice(BUMP_RADII)) for _ in range(count)]


def bump_witness(config: Optional["Settings"] = None) -> FunctionallyCompactSet:
    return interval(-WITNESS_RADIUS, WITNESS_RADIUS, config)


def bump_function(terms: Sequence[BumpTerm], power: Fraction = Fraction(0),
                  witness: Optional[FunctionallyCompactSet] = None,
                  config: Optional["Settings"] = None) -> CompactlySupportedGsf:
    """eps^power * sum of bump terms, supported in the witness by construction"""
    body = sympy.Add(*[t.expr() for t in terms])
    expr = EPS ** _rational(Fraction(power)) * body
    gsf = Gsf((SmoothExpr(expr, 1),), AllOfRtilde(1))
    return CompactlySupportedGsf(gsf, witness or bump_witness(config), DEFAULT_VERIFY_ORDER)


def random_bump_function(rng: DeterministicRNG, power: Optional[Fraction] = None,
                         config: Optional["Settings"] = None, max_terms: int = 2,
                         max_coeff: int = 2) -> Tuple[CompactlySupportedGsf, dict]:
    """A random bump combination with the data that built it"""
    power = Fraction(rng.randint(0, 2)) if power is None else power
    terms = random_bump_terms(rng, max_terms, max_coeff)
    f = bump_function(terms, power, config=config)
    return f, {"power": str(power), "terms": [t.to_dict() for t in terms]}


def random_bump_family(rng: DeterministicRNG, size: int, powers: Sequence[int] = (0, 1, 2),
                       config: Optional["Settings"] = None, max_terms: int = 2,
                       max_coeff: int = 2) -> Tuple[List[CompactlySupportedGsf], dict]:
    """`size` bump combinations sharing one eps power"""
    power = Fraction(rng.choice(list(powers)))
    members, data = [], []
    witness = bump_witness(config)
    for _ in range(size):
        terms = random_bump_terms(rng, max_terms, max_coeff)
        members.append(bump_function(terms, power, witness=witness, config=config))
        data.append([t.to_dict() for t in terms])
    return members, {"power": str(power), "functions": data}


# ----------------------------------------------------------------------
# Sets
# ----------------------------------------------------------------------

def random_interval_bounds(rng: DeterministicRNG) -> Tuple[Fraction, Fraction]:
    a = rng.fraction(-3, 2, 4)
    return a, a + rng.fraction(1, 3, 4)


def random_interval(rng: DeterministicRNG, config: Optional["Settings"] = None) -> FunctionallyCompactSet:
    a, b = random_interval_bounds(rng)
    return interval(a, b, config)


def exact_point(*values) -> GeneralizedPoint:
    return GeneralizedPoint([GeneralizedNumber.of(v) for v in values])
