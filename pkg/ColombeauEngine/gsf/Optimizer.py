"""
Per-eps global optimisation of a smooth expression over a box net.

For every grid eps the expression u(x, eps) = c(eps) * r(x, eps) is
optimised over K_eps: a dense candidate grid plus multiscale clusters of
width ~eps^q around box centres, corners and the origin, then L-BFGS-B
refinement of the best starts with the analytic gradient. When r does not
depend on eps and the boxes are constant, the search runs once and the
result is scaled by c(eps).

Final values are recomputed in mpmath at the optimiser's argument, so the
returned nets never overflow.
"""
from __future__ import annotations

import logging
from dataclasses import dataclass, field
from functools import lru_cache
from typing import TYPE_CHECKING, List, Optional, Sequence, Tuple

import mpmath
import numpy as np
from scipy.optimize import minimize

from ..core.Errors import EmptySetError, EvalDomainError, PreconditionError
from ..core.GeneralizedNumber import GeneralizedNumber, GeneralizedPoint, _settings
from ..core.Grid import MP_DPS, EpsilonGrid, default_grid
from ..core.SampledNet import SampledNet
from ..sets.BoxNet import BoxNet
from .SmoothExpr import SmoothExpr, lambdify_eps

if TYPE_CHECKING:
    from ..config import Settings

logger = logging.getLogger(__name__)

MODES = ("max", "min", "absmax")

# Candidate budget per box before refinement
CANDIDATE_BUDGET = 4096

BoxBounds = Tuple[Tuple[float, ...], Tuple[float, ...]]


@dataclass
class OptimizerResult:
    """Argument and value of the optimum at every grid eps"""
    grid: EpsilonGrid
    mode: str
    arg: np.ndarray
    values: List[mpmath.mpf]
    separable: bool = False
    notes: List[str] = field(default_factory=list)

    def number(self, label: str = "", config: Optional["Settings"] = None) -> GeneralizedNumber:
        config = _settings(config)
        return GeneralizedNumber(sampled=SampledNet.from_mp_values(
            self.grid, self.values, label=label, magnitude_cap=config.magnitude_cap))

    def point(self, label: str = "") -> GeneralizedPoint:
        return GeneralizedPoint.from_arrays(self.arg, self.grid, label=label)


@dataclass(frozen=True)
class SearchBudget:
    grid_points: int
    scale_points: int
    scale_exponents: Tuple[float, ...]
    starts: int
    iterations: int

    @classmethod
    def from_settings(cls, config: "Settings") -> "SearchBudget":
        exponents = tuple(sorted({0.0, *map(float, config.optimizer_scale_exponents)}))
        return cls(config.optimizer_grid_points, config.optimizer_scale_points, exponents,
                   config.optimizer_starts, config.optimizer_iterations)


def optimize(expr: SmoothExpr, boxnet: BoxNet, mode: str, grid: Optional[EpsilonGrid] = None,
             config: Optional["Settings"] = None) -> OptimizerResult:
    """max / min / max of |.| of expr over the box net at every grid eps"""
    if mode not in MODES:
        raise PreconditionError(f"unknown optimisation mode '{mode}'")
    if boxnet.is_empty:
        raise EmptySetError("optimisation over an empty set")
    if boxnet.dimension != expr.n:
        raise PreconditionError(f"set of dimension {boxnet.dimension} for a function of {expr.n} variables")
    config = _settings(config)
    grid = grid or _grid_of(boxnet) or default_grid(config)
    budget = SearchBudget.from_settings(config)

    c, rest = expr.split_scale()
    rest_expr = SmoothExpr(rest, expr.n)
    c_fn = lambdify_eps(c)
    rest_mp = rest_expr.mpmath_function()

    float_boxes = boxnet.float_boxes(grid)
    constant_boxes = all(np.all(lo == lo[0]) and np.all(hi == hi[0]) for lo, hi in float_boxes)
    separable = constant_boxes and not rest_expr.depends_on_eps
    result = OptimizerResult(grid=grid, mode=mode, arg=np.zeros((len(grid), expr.n)),
                             values=[], separable=separable)

    with mpmath.workdps(MP_DPS):
        for i, eps in enumerate(grid.mp_points):
            scale = mpmath.mpf(c_fn(eps))
            boxes = _boxes_at(float_boxes, i)
            if not boxes:
                result.notes.append(f"empty set at eps index {i}")
                result.values.append(mpmath.mpf(0))
                continue
            if scale == 0:
                result.arg[i] = np.array(boxes[0][0])
                result.values.append(mpmath.mpf(0))
                continue
            sense = _sense(mode, scale > 0)
            eps_key = None if separable else float(eps)
            x, converged = _solve(rest_expr, sense, boxes, eps_key, budget)
            if not converged:
                result.notes.append(f"local refinement did not converge at eps index {i}; tolerance widened")
            result.arg[i] = np.array(x)
            value = scale * mpmath.mpf(rest_mp(*[mpmath.mpf(v) for v in x], eps))
            result.values.append(abs(value) if mode == "absmax" else value)
    if result.notes:
        logger.debug("Optimiser notes for %s: %s", expr.to_text(), result.notes[:3])
    return result


def _grid_of(boxnet: BoxNet) -> Optional[EpsilonGrid]:
    return next((c.grid for c in boxnet.corner_values() if c.grid is not None), None)


def _sense(mode: str, positive_scale: bool) -> str:
    if mode == "absmax":
        return "absmax"
    if mode == "max":
        return "max" if positive_scale else "min"
    return "min" if positive_scale else "max"


def _boxes_at(float_boxes, i: int) -> Tuple[BoxBounds, ...]:
    boxes = []
    for lo, hi in float_boxes:
        if np.all(lo[i] <= hi[i]):
            boxes.append((tuple(float(v) for v in lo[i]), tuple(float(v) for v in hi[i])))
    return tuple(boxes)


def _objective(values: np.ndarray, sense: str) -> np.ndarray:
    if sense == "max":
        g = values
    elif sense == "min":
        g = -values
    else:
        g = np.abs(values)
    return np.where(np.isnan(g), -np.inf, g)


def _evaluate(fn, points: np.ndarray, eps: float) -> np.ndarray:
    with np.errstate(all="ignore"):
        values = fn(*points.T, eps)
    return np.broadcast_to(np.asarray(values, dtype=float), (points.shape[0],))


def candidates(lo: Sequence[float], hi: Sequence[float], eps: float,
               budget: SearchBudget) -> Tuple[np.ndarray, np.ndarray]:
    """Candidate points (M, n) and their local spacing (M, n)"""
    lo, hi = np.asarray(lo, dtype=float), np.asarray(hi, dtype=float)
    n = lo.size
    per_dim = max(2, min(budget.grid_points, int(round(CANDIDATE_BUDGET ** (1.0 / n)))))
    axes = [np.linspace(a, b, per_dim) if b > a else np.array([a]) for a, b in zip(lo, hi)]
    coarse = np.stack(np.meshgrid(*axes, indexing="ij"), axis=-1).reshape(-1, n)
    coarse_h = np.tile(np.maximum((hi - lo) / (per_dim - 1), 0.0), (coarse.shape[0], 1))

    centres = [(lo + hi) / 2, np.clip(np.zeros(n), lo, hi), lo, hi]
    per_scale = max(3, min(budget.scale_points, int(round(CANDIDATE_BUDGET ** (1.0 / n)))))
    offsets = np.linspace(-1.0, 1.0, per_scale)
    unit = np.stack(np.meshgrid(*([offsets] * n), indexing="ij"), axis=-1).reshape(-1, n)
    chunks, spacings = [coarse], [coarse_h]
    for q in budget.scale_exponents:
        width = 4.0 * eps ** q
        for centre in centres:
            pts = np.clip(centre + width * unit, lo, hi)
            chunks.append(pts)
            spacings.append(np.full_like(pts, 2.0 * width / (per_scale - 1)))
    return np.concatenate(chunks), np.concatenate(spacings)


@lru_cache(maxsize=65536)
def _solve(expr: SmoothExpr, sense: str, boxes: Tuple[BoxBounds, ...], eps: Optional[float],
           budget: SearchBudget) -> Tuple[Tuple[float, ...], bool]:
    """Best point over all boxes; eps None means expr does not depend on eps"""
    fn = expr.numpy_function()
    grads = expr.gradient_functions()
    e = 1.0 if eps is None else eps
    best_x, best_g, converged = None, -np.inf, True
    for lo, hi in boxes:
        x, g, ok = _solve_box(fn, grads, sense, np.asarray(lo), np.asarray(hi), e, budget)
        converged = converged and ok
        if best_x is None or _better(g, x, best_g, best_x):
            best_x, best_g = x, g
    if not np.isfinite(best_g):
        raise EvalDomainError(f"{expr.to_text()} has no finite value on the set")
    return tuple(float(v) for v in best_x), converged


def _better(g: float, x: np.ndarray, best_g: float, best_x: np.ndarray) -> bool:
    """Higher objective wins; near-ties go to the smallest coordinates"""
    tol = 1e-12 * max(abs(g), abs(best_g), 1e-300)
    if np.isfinite(best_g) and abs(g - best_g) <= tol:
        return tuple(x) < tuple(best_x)
    return g > best_g


def _solve_box(fn, grads, sense: str, lo: np.ndarray, hi: np.ndarray, eps: float,
               budget: SearchBudget) -> Tuple[np.ndarray, float, bool]:
    points, spacing = candidates(lo, hi, eps, budget)
    g = _objective(_evaluate(fn, points, eps), sense)
    order = np.lexsort(tuple(points.T[::-1]) + (-g,))
    best_x, best_g = points[order[0]], g[order[0]]
    converged = True
    starts, seen = 0, set()
    for idx in order:
        if starts >= budget.starts or not np.isfinite(g[idx]):
            break
        key = tuple(np.round(points[idx], 15))
        if key in seen:
            continue
        seen.add(key)
        starts += 1
        x, gx, ok = _refine(fn, grads, sense, points[idx], spacing[idx], g[idx], lo, hi, eps, budget)
        converged = converged and ok
        if _better(gx, x, best_g, best_x):
            best_x, best_g = x, gx
    return best_x, float(best_g), converged


def _refine(fn, grads, sense: str, x0: np.ndarray, h: np.ndarray, g0: float, lo: np.ndarray,
            hi: np.ndarray, eps: float, budget: SearchBudget) -> Tuple[np.ndarray, float, bool]:
    """L-BFGS-B in local coordinates x = x0 + h * y, objective normalised by |g0|"""
    h = np.where(h > 0, h, 1.0)
    norm = max(abs(g0), 1e-300)
    fixed = hi <= lo

    def point(y):
        return np.clip(x0 + h * y, lo, hi)

    def objective(y):
        x = point(y)
        with np.errstate(all="ignore"):
            v = float(fn(*x, eps))
            grad = np.array([float(gf(*x, eps)) for gf in grads])
        if sense == "max":
            g, dg = v, grad
        elif sense == "min":
            g, dg = -v, -grad
        else:
            g, dg = abs(v), np.sign(v) * grad
        if not np.isfinite(g) or not np.all(np.isfinite(dg)):
            return np.inf, np.zeros_like(y)
        dg = np.where(fixed, 0.0, dg)
        return -g / norm, -dg * h / norm

    bounds = [((a - c) / s, (b - c) / s) for a, b, c, s in zip(lo, hi, x0, h)]
    try:
        res = minimize(objective, np.zeros_like(x0), jac=True, method="L-BFGS-B", bounds=bounds,
                       options={"maxiter": budget.iterations, "ftol": 1e-15, "gtol": 1e-12})
    except (ValueError, FloatingPointError):
        return x0, g0, False
    x = point(res.x)
    gx = float(_objective(_evaluate(fn, x[None, :], eps), sense)[0])
    # status 1: iteration limit reached
    if not np.isfinite(gx) or gx < g0:
        return x0, g0, res.status != 1
    return x, gx, res.status != 1


def clear_cache() -> None:
    _solve.cache_clear()
