"""
Property suites over functionally compact sets and compact supports.
"""
from __future__ import annotations

from fractions import Fraction
from typing import List

import numpy as np

from ..core.ExactNet import ExactNet
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, d_eps
from ..core.Grid import default_grid
from ..core.Idempotents import alternating_blocks, interleave, interleave_points
from ..core.Order import leq
from ..gsf.Constructions import delta_embedding
from ..gsf.Extremes import extreme_values, image_enclosure, image_member
from ..gsf.Gsf import Counterexample, Gsf
from ..gsf.Support import exterior_candidates, support_positive_at, verify_compact_support
from ..sets.BoxNet import BoxNet
from ..sets.Exhaustion import exhaustion, find_covering_index
from ..sets.FunctionallyCompact import box, interleaving_union, interval, member_exterior, sample_members
from ..sets.InternalSets import AllOfRtilde, StronglyInternalSet, member_internal
from .Factories import BumpTerm, bump_function, random_bump_function, random_interval_bounds
from .Properties import PropertyTally, SkipCase, SuiteContext

SET_CASES = 50
EXTERIOR_CASES = 50
SUPPORT_BUDGET = 8
MEMBER_SAMPLES = 6


def _point(value) -> GeneralizedPoint:
    return GeneralizedPoint([value])


# ----------------------------------------------------------------------
# Sets
# ----------------------------------------------------------------------

def sets_suite(ctx: SuiteContext) -> List[PropertyTally]:
    return [
        _exterior_characterization(ctx),
        _interleaving_union_closure(ctx),
        _sampled_members(ctx),
        _exhaustion_monotone(ctx),
        _covering_index(ctx),
    ]


def _exterior_characterization(ctx: SuiteContext) -> PropertyTally:
    """x in ext(K) exactly when no interleaving of x with a member of K lies in K"""
    config = ctx.config
    rng = ctx.stream("exterior-characterization")
    grid = default_grid(config)
    parts = alternating_blocks()
    tally = ctx.tally("sets.exterior_characterization")

    def body(_):
        a, b = random_interval_bounds(rng)
        K = interval(a, b, config)
        w = GeneralizedNumber.of((a + b) / 2)
        kind = rng.choice(["above", "below", "mixed", "corner"])
        q = rng.randint(0, 5)
        if kind == "above":
            x = GeneralizedNumber.of(b) + d_eps(q)
        elif kind == "below":
            x = GeneralizedNumber.of(a) - d_eps(q)
        elif kind == "mixed":
            x = interleave([w, GeneralizedNumber.of(b + 1)], list(parts), grid, config)
        else:
            x = GeneralizedNumber.of(b)
        exterior = member_exterior(_point(x), K, config)
        mixed = interleave_points([_point(x), _point(w)], list(parts), grid, config)
        inside = member_internal(mixed, K.internal, config)
        case = {"K": [str(a), str(b)], "kind": kind, "q": q, "x": x}
        if kind in ("above", "below"):
            tally.check(exterior.is_true and not inside.is_true, **case)
        else:
            tally.check(exterior.is_false and inside.is_true, **case)

    return tally.run(ctx.count(EXTERIOR_CASES), body)


def _interleaving_union_closure(ctx: SuiteContext) -> PropertyTally:
    config = ctx.config
    rng = ctx.stream("interleaving-union")
    grid = default_grid(config)
    parts = list(alternating_blocks())
    tally = ctx.tally("sets.interleaving_union_closure")

    def body(_):
        (a, b), (c, d) = random_interval_bounds(rng), random_interval_bounds(rng)
        K, H = interval(a, b, config), interval(c, d, config)
        L = interleaving_union(K, H)
        k = sample_members(K, 2, rng, include_corners=False)[0]
        h = sample_members(H, 2, rng, include_corners=False)[0]
        mixed = interleave_points([k, h], parts, grid, config)
        holds = all(member_internal(x, L.internal, config).is_true for x in (k, h, mixed))
        tally.check(holds, K=[str(a), str(b)], H=[str(c), str(d)], k=k, h=h)

    return tally.run(ctx.count(SET_CASES), body)


def _sampled_members(ctx: SuiteContext) -> PropertyTally:
    config = ctx.config
    rng = ctx.stream("sample-members")
    tally = ctx.tally("sets.sample_members_inside")

    def body(_):
        bounds = [random_interval_bounds(rng), random_interval_bounds(rng)]
        K = box(bounds, config)
        members = sample_members(K, MEMBER_SAMPLES, rng)
        outside = [x for x in members if not member_internal(x, K.internal, config).is_true]
        tally.check(not outside, K=[[str(a), str(b)] for a, b in bounds], outside=outside)

    return tally.run(ctx.count(SET_CASES), body)


def _exhaustion_monotone(ctx: SuiteContext) -> PropertyTally:
    """Corners of K_j lie in K_{j+1}"""
    config = ctx.config
    rng = ctx.stream("exhaustion")
    tally = ctx.tally("sets.exhaustion_monotone")

    def body(_):
        a, b = random_interval_bounds(rng)
        U = StronglyInternalSet(BoxNet.of([[(a, b)]]))
        j = U.moderateness_witness(config) + rng.randint(0, 2)
        inner, outer = exhaustion(U, j, config), exhaustion(U, j + 1, config)
        corners = [c for bx in inner.boxnet.boxes for c in bx.corners()]
        holds = all(member_internal(c, outer.internal, config).is_true for c in corners)
        tally.check(holds, U=[str(a), str(b)], j=j)

    return tally.run(ctx.count(SET_CASES), body)


def _covering_index(ctx: SuiteContext) -> PropertyTally:
    config = ctx.config
    rng = ctx.stream("covering-index")
    tally = ctx.tally("sets.covering_index")

    def body(i):
        a, b = random_interval_bounds(rng)
        K = interval(a, b, config)
        U = StronglyInternalSet(BoxNet.of([[(a - 1, b + 1)]]))
        found = find_covering_index(K, U, config, rng=ctx.stream(f"covering-{i}"), samples=MEMBER_SAMPLES)
        tally.check(found.j >= K.sharp_bound and found.j >= found.j_domain, K=[str(a), str(b)],
                    found=found.to_dict())

    return tally.run(ctx.count(SET_CASES), body)


# ----------------------------------------------------------------------
# Compact support
# ----------------------------------------------------------------------

def support_suite(ctx: SuiteContext) -> List[PropertyTally]:
    return [
        *_verified_bumps(ctx),
        _support_detected(ctx),
        _extreme_value_properties(ctx),
        _delta_values(ctx),
    ]


def _verified_bumps(ctx: SuiteContext) -> List[PropertyTally]:
    """Bump combinations pass verification, and stay verified under widening and derivatives"""
    config = ctx.config
    rng = ctx.stream("support")
    verified = ctx.tally("support.bumps_verified")
    exterior_zero = ctx.tally("support.vanishes_on_exterior")
    monotone = ctx.tally("support.monotone_in_witness")
    derivative = ctx.tally("support.derivative_closure")
    wider = interval(-3, 3, config)

    for i in range(ctx.count(EXTERIOR_CASES)):
        f, data = random_bump_function(rng, config=config)
        label = f"support-{i}"
        with verified.case(f=data):
            result = verify_compact_support(f.gsf, f.witness, budget=SUPPORT_BUDGET, config=config,
                                            rng=ctx.stream(label))
            if not verified.check(not isinstance(result, Counterexample), f=data,
                                  counterexample=getattr(result, "to_dict", lambda: None)()):
                continue

        with exterior_zero.case(f=data):
            candidates = exterior_candidates(f.witness, config, ctx.stream(label))
            for _, (x, kind, q) in zip(range(SUPPORT_BUDGET), candidates):
                if member_exterior(x, f.witness, config).is_true:
                    exterior_zero.check(not support_positive_at(f.gsf, x, config).is_true,
                                        f=data, x=x, kind=kind, q=q)

        with monotone.case(f=data):
            wide = verify_compact_support(f.gsf, wider, budget=SUPPORT_BUDGET, config=config,
                                          rng=ctx.stream(f"{label}-wide"))
            monotone.check(not isinstance(wide, Counterexample), f=data)

        with derivative.case(f=data):
            fprime = f.derivative((1,), config)
            result = verify_compact_support(fprime.gsf, f.witness, order=1, budget=SUPPORT_BUDGET,
                                            config=config, rng=ctx.stream(f"{label}-prime"))
            derivative.check(not isinstance(result, Counterexample), f=data)

    return [verified, exterior_zero, monotone, derivative]


def _support_detected(ctx: SuiteContext) -> PropertyTally:
    """A point where |f| > 0 outside K produces a counterexample"""
    config = ctx.config
    rng = ctx.stream("support-detected")
    tally = ctx.tally("support.counterexample_found")

    def body(i):
        term = BumpTerm(rng.nonzero_fraction(-2, 2), rng.fraction(-1, 1, 2), rng.choice([Fraction(1, 2), Fraction(1)]))
        f = bump_function([term], config=config)
        s, r = term.centre, term.radius
        K = interval(s + r / 4, s + 2 * r, config)
        x = _point(GeneralizedNumber.of(s))
        positive = support_positive_at(f.gsf, x, config)
        exterior = member_exterior(x, K, config)
        if not (positive.is_true and exterior.is_true):
            raise SkipCase("premise undecided")
        result = verify_compact_support(f.gsf, K, config=config, rng=ctx.stream(f"detected-{i}"))
        tally.check(isinstance(result, Counterexample), term=term.to_dict())

    return tally.run(ctx.count(SET_CASES), body)


def _extreme_value_properties(ctx: SuiteContext) -> PropertyTally:
    config = ctx.config
    grid = default_grid(config)
    rng = ctx.stream("extremes")
    tally = ctx.tally("support.extreme_values")
    with tally.case():
        f = Gsf.of(["x1*(1 - x1)"], 1, AllOfRtilde(1))
        K = interval(0, 1, config)
        extremes = extreme_values(f, K, config)
        tally.check(bool(np.all(np.abs(extremes.max.values(grid) - 0.25) < 1e-6)), what="max 1/4")
        tally.check(bool(np.all(np.abs(extremes.min.values(grid)) < 1e-6)), what="min 0")
        enclosure = image_enclosure(f, K, config)
        for x in sample_members(K, MEMBER_SAMPLES, rng):
            value = f.eval_scalar(x, config)
            sandwiched = not leq(extremes.min, value, config).is_false
            sandwiched &= not leq(value, extremes.max, config).is_false
            tally.check(sandwiched, x=x)
            tally.check(not image_member(f, x, enclosure, config).is_false, x=x, what="image")
    return tally


def _delta_values(ctx: SuiteContext) -> PropertyTally:
    config = ctx.config
    tally = ctx.tally("support.delta_values")
    expected = ExactNet.monomial(1, -1)
    with tally.case():
        delta = delta_embedding(1, 1)
        for x in (GeneralizedNumber.zero(), d_eps(1) / 2, -d_eps(1) / 2):
            tally.check(delta.eval_scalar(_point(x), config).exact == expected, x=x)
    return tally
