"""
Property suites over GD_K: generalized norms, the sharp topology and the
metrics d_e and d_2.

Norm comparisons are made per grid eps on the sampled sup values; all
functions in one case share an eps power so the optimizer stays on its
separable path.
"""
from __future__ import annotations

import math
from fractions import Fraction
from typing import List

import numpy as np

from ..core.Errors import ColombeauError
from ..core.GeneralizedNumber import GeneralizedNumber, d_eps
from ..core.Grid import EpsilonGrid, default_grid
from ..gsf.Constructions import delta_embedding
from ..gsf.Gsf import CompactlySupportedGsf
from ..gsf.Support import DEFAULT_VERIFY_ORDER
from ..sets.FunctionallyCompact import interval
from ..topology.Balls import absorbent_witness, ball_member, c_set_member, u_set_member
from ..topology.Metrics import metric, tail_e
from ..topology.Norms import NormValue, norm_m, v_m
from .Factories import BumpTerm, bump_function, random_bump_family, random_bump_function
from .Properties import PropertyTally, SkipCase, SuiteContext

NORM_CASES = 200
TOPOLOGY_CASES = 100
METRIC_CASES = 100

TRIANGLE_SLACK = 1e-9
HOMOGENEITY_TOLERANCE = 1e-6
K_INDEPENDENCE_TOLERANCE = 1e-6
VALUATION_SLACK = 0.1
DELTA_TOLERANCE = 0.05
MAX_SUITE_ORDER = 2
# Metric truncation for random pairs; the closed-form case uses its own
SUITE_TRUNCATION = 6
CLOSED_FORM_TRUNCATION = 8


def _per_eps(norm: NormValue, grid: EpsilonGrid) -> np.ndarray:
    if norm.value.is_exact:
        return np.asarray(norm.value.values(grid), dtype=float)
    return np.array([float(v) for v in norm.value.mp_values()])


def _leq(lhs: np.ndarray, rhs: np.ndarray, slack: float = TRIANGLE_SLACK) -> bool:
    return bool(np.all(lhs <= rhs * (1 + slack) + 1e-300))


def _relative_gap(a: np.ndarray, b: np.ndarray) -> float:
    scale = np.maximum(np.abs(a), np.abs(b))
    with np.errstate(invalid="ignore", divide="ignore"):
        rel = np.where(scale > 0, np.abs(a - b) / scale, 0.0)
    return float(np.max(rel))


def unit_bump(power=0, config=None) -> CompactlySupportedGsf:
    """eps^power * bump(x1)"""
    return bump_function([BumpTerm(Fraction(1), Fraction(0), Fraction(1))], Fraction(power), config=config)


def delta_function(config=None) -> CompactlySupportedGsf:
    return CompactlySupportedGsf(delta_embedding(1, 1), interval(-1, 1, config), DEFAULT_VERIFY_ORDER)


# ----------------------------------------------------------------------
# Norms
# ----------------------------------------------------------------------

def norms_suite(ctx: SuiteContext) -> List[PropertyTally]:
    config = ctx.config
    grid = default_grid(config)
    rng = ctx.stream("norms")
    triangle = ctx.tally("norms.triangle")
    homogeneity = ctx.tally("norms.homogeneity")
    product = ctx.tally("norms.product_bound")
    zero = ctx.tally("norms.nonnegative_and_zero")
    v_sum = ctx.tally("norms.valuation_of_sum")
    v_scale = ctx.tally("norms.valuation_of_scaling")
    continuity = ctx.tally("norms.product_continuity")

    for _ in range(ctx.count(NORM_CASES)):
        (f, g, f0, g0), data = random_bump_family(rng, 4, config=config)
        m = rng.randint(0, MAX_SUITE_ORDER)
        case = {"functions": data, "m": m}
        try:
            nf, ng = norm_m(f, m, config), norm_m(g, m, config)
        except ColombeauError as exc:
            triangle.check(False, error=f"{type(exc).__name__}: {exc}", **case)
            continue
        a, b = _per_eps(nf, grid), _per_eps(ng, grid)

        with triangle.case(**case):
            total = _per_eps(norm_m(f + g, m, config), grid)
            triangle.check(_leq(total, a + b), **case)

        with homogeneity.case(**case):
            lam = rng.nonzero_fraction(-4, 4)
            scaled = _per_eps(norm_m(f.scale(lam), m, config), grid)
            gap = _relative_gap(scaled, abs(float(lam)) * a)
            homogeneity.check(gap <= HOMOGENEITY_TOLERANCE, lam=str(lam), gap=gap, **case)

        with product.case(**case):
            fg = _per_eps(norm_m(f * g, m, config), grid)
            product.check(_leq(fg, 2 ** m * a * b), **case)

        with zero.case(**case):
            holds = bool(np.all(a >= 0)) and nf.is_zero == f.gsf.is_zero
            holds &= norm_m(f - f, m, config).is_zero
            zero.check(holds, **case)

        with v_sum.case(**case):
            lhs = v_m(f + g, m, config)
            v_sum.check(lhs >= min(v_m(nf, config=config), v_m(ng, config=config)) - VALUATION_SLACK,
                        lhs=lhs, **case)

        with v_scale.case(**case):
            lam = GeneralizedNumber.monomial(rng.nonzero_fraction(-3, 3), rng.fraction(-2, 2, 2))
            lhs = v_m(f.scale(lam), m, config)
            rhs = float(lam.valuation()) + v_m(nf, config=config)
            v_scale.check(lhs >= rhs - DELTA_TOLERANCE, lam=lam, lhs=lhs, rhs=rhs, **case)

        with continuity.case(**case):
            df, dg = norm_m(f - f0, m, config), norm_m(g - g0, m, config)
            n_f0, n_g0 = _per_eps(norm_m(f0, m, config), grid), _per_eps(norm_m(g0, m, config), grid)
            lhs = _per_eps(norm_m(f * g - f0 * g0, m, config), grid)
            df, dg = _per_eps(df, grid), _per_eps(dg, grid)
            rhs = 2 ** m * (df * dg + df * n_g0 + n_f0 * dg)
            continuity.check(_leq(lhs, rhs), **case)

    return [triangle, homogeneity, product, zero, v_sum, v_scale, continuity,
            _k_independence(ctx), _delta_valuations(ctx), _real_scalings(ctx)]


def _k_independence(ctx: SuiteContext) -> PropertyTally:
    config = ctx.config
    grid = default_grid(config)
    tally = ctx.tally("norms.witness_independence")
    with tally.case():
        inner = unit_bump(config=config)
        f = CompactlySupportedGsf(inner.gsf, interval(-1, 1, config), DEFAULT_VERIFY_ORDER)
        wide = interval(-2, 2, config)
        for m in range(4):
            gap = _relative_gap(_per_eps(norm_m(f, m, config), grid),
                                _per_eps(norm_m(f, m, config, K=wide), grid))
            tally.check(gap <= K_INDEPENDENCE_TOLERANCE, m=m, gap=gap)
    return tally


def _delta_valuations(ctx: SuiteContext) -> PropertyTally:
    config = ctx.config
    tally = ctx.tally("norms.delta_valuations")
    with tally.case():
        delta = delta_function(config)
        for m in range(5):
            v = v_m(delta, m, config)
            tally.check(abs(v + (m + 1)) <= DELTA_TOLERANCE, m=m, valuation=v)
    return tally


def _real_scalings(ctx: SuiteContext) -> PropertyTally:
    """Real multiples of delta never enter the ball of radius 1 in the order-0 norm"""
    config = ctx.config
    tally = ctx.tally("norms.real_scaling_unbounded")
    with tally.case():
        delta = delta_function(config)
        for k in range(-6, 7):
            for sign in (1, -1):
                lam = sign * Fraction(10) ** k
                v = v_m(delta.scale(lam), 0, config)
                tally.check(v <= -1 + DELTA_TOLERANCE, lam=str(lam), valuation=v)
    return tally


# ----------------------------------------------------------------------
# Sharp topology
# ----------------------------------------------------------------------

def _perturbed(f: CompactlySupportedGsf, a: int, config) -> CompactlySupportedGsf:
    return f + unit_bump(a, config)


def topology_suite(ctx: SuiteContext) -> List[PropertyTally]:
    config = ctx.config
    rng = ctx.stream("topology")
    c_in_ball = ctx.tally("topology.c_set_inside_ball")
    ball_in_c = ctx.tally("topology.ball_inside_c_set")
    u_in_ball = ctx.tally("topology.u_set_inside_ball")
    ball_in_u = ctx.tally("topology.ball_inside_u_set_of_root")
    convex = ctx.tally("topology.ball_convex")
    absorbent = ctx.tally("topology.absorbent")

    for i in range(ctx.count(TOPOLOGY_CASES)):
        f, data = random_bump_function(rng, config=config)
        a = rng.randint(0, 4)
        m = rng.randint(0, 1)
        g = _perturbed(f, a, config)
        case = {"f": data, "a": a, "m": m}

        with c_in_ball.case(**case):
            t = Fraction(rng.choice([3, 5, 7]), 2)
            q = rng.choice([t - Fraction(1, 2), t / 2])
            if not c_set_member(f, g, m, math.exp(-t), config):
                raise SkipCase("not in the C-set")
            c_in_ball.check(ball_member(f, g, m, d_eps(q), config).is_true, t=str(t), q=str(q), **case)

        with ball_in_c.case(**case):
            u = rng.randint(1, 3)
            q = u + rng.choice([Fraction(0), Fraction(1, 2), Fraction(1)])
            r = math.exp(-float(q) + rng.choice([0.25, 0.5, 1.0]))
            ball = ball_member(f, g, m, d_eps(q), config)
            if not ball.is_true:
                raise SkipCase(f"ball membership {ball.state.value}")
            ball_in_c.check(c_set_member(f, g, m, r, config), q=str(q), r=r, **case)

        with u_in_ball.case(**case):
            q = rng.randint(0, 3)
            if not u_set_member(f, g, m, d_eps(q), config).is_true:
                raise SkipCase("not in the U-set")
            u_in_ball.check(ball_member(f, g, m, d_eps(q), config).is_true, q=q, **case)

        with ball_in_u.case(**case):
            q = rng.randint(1, 4)
            if not ball_member(f, g, m, d_eps(q), config).is_true:
                raise SkipCase("not in the ball")
            ball_in_u.check(u_set_member(f, g, m, d_eps(Fraction(q, 2)), config).is_true, q=q, **case)

        with convex.case(**case):
            (h1, h2), family = random_bump_family(rng, 2, powers=(1, 2, 3), config=config)
            q = int(family["power"]) - 1
            g1, g2 = f + h1, f + h2
            rho = d_eps(q)
            if not (ball_member(f, g1, m, rho, config).is_true and ball_member(f, g2, m, rho, config).is_true):
                raise SkipCase("endpoints outside the ball")
            t = Fraction(rng.randint(0, 8), 8)
            mix = f + h1.scale(t) + h2.scale(1 - t)
            convex.check(ball_member(f, mix, m, rho, config).is_true, t=str(t), family=family, **case)

        with absorbent.case(**case):
            p = rng.randint(0, 1)
            witness = absorbent_witness(g, d_eps(p), m, config)
            absorbent.check(witness.verified, p=p, witness=witness.to_dict(), **case)

    return [c_in_ball, ball_in_c, u_in_ball, ball_in_u, convex, absorbent]


# ----------------------------------------------------------------------
# Metrics
# ----------------------------------------------------------------------

def metric_suite(ctx: SuiteContext) -> List[PropertyTally]:
    config = ctx.config
    rng = ctx.stream("metric")
    upper = ctx.tally("metric.d_e_below_d_2")
    lower = ctx.tally("metric.half_d_2_below_d_e")
    symmetric = ctx.tally("metric.symmetric")
    identity = ctx.tally("metric.zero_on_diagonal")

    for _ in range(ctx.count(METRIC_CASES)):
        (f, g), data = random_bump_family(rng, 2, config=config)
        case = {"functions": data}
        report = None
        with upper.case(**case):
            report = metric(f, g, SUITE_TRUNCATION, config)
            upper.check(report.d_e <= report.d_2 * (1 + 1e-12), d_e=report.d_e, d_2=report.d_2, **case)
        if report is None:
            continue
        with lower.case(**case):
            if report.valuations[1] > 2 + 1e-6:
                raise SkipCase("v_1 above 2")
            lower.check(report.d_2 / 2 <= report.d_e + report.tail_bound_e + 1e-9,
                        d_e=report.d_e, d_2=report.d_2, **case)
        with symmetric.case(**case):
            back = metric(g, f, SUITE_TRUNCATION, config)
            symmetric.check(abs(back.d_e - report.d_e) <= 1e-9 and abs(back.d_2 - report.d_2) <= 1e-9,
                            **case)
        with identity.case(**case):
            same = metric(f, f, SUITE_TRUNCATION, config)
            identity.check(same.d_e == 0.0 and same.d_2 == 0.0, **case)

    return [upper, lower, symmetric, identity, _closed_form(ctx)]


def closed_form_d_e(v: int, N: int) -> float:
    """d_e for a difference with v_n = v at every order n <= N"""
    return sum(math.exp(min(n - v, 0) - n) for n in range(1, N + 1))


def _closed_form(ctx: SuiteContext) -> PropertyTally:
    """f - g = eps^2 bump(x): d_e = 2 e^-2 + sum_{n >= 3} e^-n"""
    config = ctx.config
    rng = ctx.stream("metric-closed-form")
    tally = ctx.tally("metric.closed_form")
    with tally.case():
        f, data = random_bump_function(rng, power=Fraction(0), config=config)
        g = f - unit_bump(2, config)
        report = metric(f, g, CLOSED_FORM_TRUNCATION, config)
        N = report.truncation
        expected = 2 * math.exp(-2) + sum(math.exp(-n) for n in range(3, N + 1))
        tally.check(abs(report.d_e - expected) <= 1e-9 + tail_e(N), d_e=report.d_e, expected=expected,
                    f=data)
        tally.check(abs(expected - closed_form_d_e(2, N)) <= 1e-12, what="closed form")
    return tally
