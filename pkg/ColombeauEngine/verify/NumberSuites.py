"""
Property suites over R~: ring laws, the ultrametric inequality and the order.
"""
from __future__ import annotations

import math
from typing import List

import mpmath
import numpy as np

from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, d_eps
from ..core.Grid import default_grid
from ..core.Idempotents import DyadicBlockSet, IntervalUnionSet, full_index_set, idempotent, interleave
from ..core.Order import ball_member_point, is_invertible, is_negligible, leq, strictly_positive
from .Factories import random_exact, random_exact_triple
from .Properties import PropertyTally, SuiteContext

RING_CASES = 200
ULTRAMETRIC_CASES = 1000
ORDER_CASES = 500
IDEMPOTENT_CASES = 20


def _same(a: GeneralizedNumber, b: GeneralizedNumber) -> bool:
    return a.exact == b.exact


def _sum_v(a, b):
    return math.inf if math.inf in (a, b) else a + b


# ----------------------------------------------------------------------
# Ring
# ----------------------------------------------------------------------

def ring_suite(ctx: SuiteContext) -> List[PropertyTally]:
    rng = ctx.stream("ring")
    n = ctx.count(RING_CASES)
    assoc = ctx.tally("ring.associativity")
    comm = ctx.tally("ring.commutativity")
    dist = ctx.tally("ring.distributivity")
    inverse = ctx.tally("ring.additive_inverse")
    v_mul = ctx.tally("ring.valuation_multiplicative")
    v_add = ctx.tally("ring.valuation_of_sum")

    for i in range(n):
        x, y, z = random_exact_triple(rng)
        case = {"x": x, "y": y, "z": z}
        with assoc.case(**case):
            assoc.check(_same((x + y) + z, x + (y + z)) and _same((x * y) * z, x * (y * z)), **case)
        with comm.case(**case):
            comm.check(_same(x + y, y + x) and _same(x * y, y * x), **case)
        with dist.case(**case):
            dist.check(_same(x * (y + z), x * y + x * z), **case)
        with inverse.case(x=x):
            inverse.check((x + (-x)).is_exact_zero and (x - x).is_exact_zero, x=x)
        with v_mul.case(**case):
            v_mul.check((x * y).valuation() == _sum_v(x.valuation(), y.valuation()), x=x, y=y)
        with v_add.case(**case):
            v_add.check((x + y).valuation() >= min(x.valuation(), y.valuation()), x=x, y=y)

    tallies = [assoc, comm, dist, inverse, v_mul, v_add]
    tallies.extend(_idempotent_properties(ctx))
    return tallies


def _random_index_set(rng):
    if rng.random() < 0.5:
        return DyadicBlockSet(base=2.0, block=rng.randint(1, 3), parity=rng.randint(0, 1))
    a = rng.choice([0.0, 1e-9, 1e-6])
    b = rng.choice([1e-4, 1e-3, 1e-2])
    return IntervalUnionSet(intervals=[(a, b)])


def _idempotent_properties(ctx: SuiteContext) -> List[PropertyTally]:
    rng = ctx.stream("idempotents")
    grid = default_grid(ctx.config)
    square = ctx.tally("ring.idempotent_square")
    partition = ctx.tally("ring.idempotent_partition_of_unity")
    trivial = ctx.tally("ring.trivial_interleave")
    for _ in range(ctx.count(IDEMPOTENT_CASES)):
        S = _random_index_set(rng)
        with square.case(S=S.model_dump()):
            e = idempotent(S, grid, ctx.config)
            square.check(bool(np.array_equal((e * e).values(grid), e.values(grid))), S=S.model_dump())
        with partition.case(S=S.model_dump()):
            total = idempotent(S, grid, ctx.config) + idempotent(S.complement(), grid, ctx.config)
            partition.check(bool(np.allclose(total.values(grid), 1.0)), S=S.model_dump())
        x = random_exact(rng)
        with trivial.case(x=x):
            trivial.check(interleave([x], [full_index_set()], grid, ctx.config) is x, x=x)
    return [square, partition, trivial]


# ----------------------------------------------------------------------
# Ultrametric
# ----------------------------------------------------------------------

def ultrametric_suite(ctx: SuiteContext) -> List[PropertyTally]:
    rng = ctx.stream("ultrametric")
    tally = ctx.tally("ultrametric.strong_triangle")

    def body(_):
        x, y, z = random_exact_triple(rng)
        lhs = (x - z).valuation()
        rhs = min((x - y).valuation(), (y - z).valuation())
        tally.check(lhs >= rhs, x=x, y=y, z=z, lhs=str(lhs), rhs=str(rhs))

    tally.run(ctx.count(ULTRAMETRIC_CASES), body)
    return [tally]


# ----------------------------------------------------------------------
# Order
# ----------------------------------------------------------------------

def order_suite(ctx: SuiteContext) -> List[PropertyTally]:
    rng = ctx.stream("order")
    config = ctx.config
    coherence = ctx.tally("order.positivity_coherence")
    reflexive = ctx.tally("order.reflexive")
    antisymmetric = ctx.tally("order.antisymmetric")
    total = ctx.tally("order.total_on_exact")

    for _ in range(ctx.count(ORDER_CASES)):
        x = random_exact(rng, allow_zero=False)
        with coherence.case(x=x):
            positive = strictly_positive(x, config)
            leading_positive = x.exact.leading.coeff > 0
            agrees = positive.is_true == leading_positive
            agrees &= leq(0, x, config).is_true == leading_positive
            agrees &= is_invertible(x, config).is_true
            if positive.is_true:
                agrees &= leq(d_eps(positive.witness), x, config).is_true
            coherence.check(agrees, x=x, witness=positive.witness)

        y = random_exact(rng)
        with reflexive.case(x=x):
            reflexive.check(leq(x, x, config).is_true, x=x)
        with antisymmetric.case(x=x, y=y):
            if leq(x, y, config).is_true and leq(y, x, config).is_true:
                antisymmetric.check(_same(x, y), x=x, y=y)
            else:
                antisymmetric.skip()
        with total.case(x=x, y=y):
            total.check(leq(x, y, config).is_true or leq(y, x, config).is_true, x=x, y=y)

    return [coherence, reflexive, antisymmetric, total, *_order_examples(ctx)]


def _order_examples(ctx: SuiteContext) -> List[PropertyTally]:
    config = ctx.config
    negligible = ctx.tally("order.exp_minus_inverse_eps_negligible")
    with negligible.case():
        x = GeneralizedNumber.from_generator(lambda eps: mpmath.exp(-1 / eps), label="exp(-1/eps)",
                                             config=config)
        negligible.check(is_negligible(x, config).is_true and not strictly_positive(x, config).is_true)

    balls = ctx.tally("order.point_balls")
    origin = GeneralizedPoint.of(0, 1)
    near = GeneralizedPoint.of(d_eps(2), 1)
    far = GeneralizedPoint.of(1, 1)
    with balls.case():
        balls.check(ball_member_point(near, origin, d_eps(1), config).is_true, y="near")
        balls.check(ball_member_point(far, origin, d_eps(1), config).is_false, y="far")
        balls.check(ball_member_point(far, origin, 2, config).is_true, y="far, radius 2")
    return [negligible, balls]
