"""
Generalized numbers: nets, valuation, order and idempotents
"""

from .Errors import (
    ColombeauError,
    ContainmentError,
    EmptySetError,
    EvalDomainError,
    ExpressionParseError,
    GridMismatchError,
    MagnitudeOverflow,
    NotCauchyError,
    NotInvertibleError,
    PartitionError,
    PreconditionError,
    UndecidableError,
    ValuationUnreliable,
)
from .ExactNet import AsymptoticTerm, ExactNet
from .GeneralizedNumber import (
    GeneralizedNumber,
    GeneralizedPoint,
    add,
    d_eps,
    e_norm,
    maximum,
    minimum,
    mul,
    sharp_distance,
    sub,
    valuation,
)
from .Grid import EpsilonGrid, default_grid
from .Idempotents import (
    ComplementSet,
    DyadicBlockSet,
    FiniteIndexSet,
    IndexSet,
    IntervalUnionSet,
    alternating_blocks,
    full_index_set,
    idempotent,
    interleave,
    interleave_points,
)
from .Order import (
    ball_member_point,
    is_infinitesimal,
    is_invertible,
    is_negligible,
    leq,
    less,
    strictly_positive,
)
from .Parsing import parse_number, parse_point
from .rng import DeterministicRNG
from .SampledNet import SampledNet
from .TriState import Decision, TriState
from .Valuation import ValuationEstimate, estimate_valuation
