"""
Smooth primitives with closed-form derivatives of every order.

    bump(t)    = exp(1 - 1/(1 - t^2)) for |t| < 1, else 0       (bump(0) = 1)
    plateau(t) = 1 for |t| <= 1/2, 0 for |t| >= 1, and
                 1/(1 + exp(chi(|t|))) in between, chi(s) = 1/(1-s) - 1/(s-1/2)

Derivatives are generated by polynomial recurrences:

    bump^(k)(t)    = R_k(t, u) * bump(t),             u = 1/(1 - t^2)
    plateau^(k)(t) = sign(t)^k * P_k(sigma, tau, A, B),
                     sigma = 1/(1+e^chi), tau = 1 - sigma, A = 1/(1-s), B = 1/(s-1/2)

Each primitive exists three times: as a sympy Function (for symbolic
differentiation), as a vectorised numpy function and as an mpmath scalar
function (for lambdify).
"""
from __future__ import annotations

from functools import lru_cache
from typing import Any, Callable, Dict

import mpmath
import numpy as np
import sympy
from scipy.special import expit
from sympy.core.function import ArgumentIndexError

HALF = sympy.Rational(1, 2)

_t, _u = sympy.symbols("t u")
_sigma, _tau, _A, _B = sympy.symbols("sigma tau A B")


# ----------------------------------------------------------------------
# Derivative recurrences
# ----------------------------------------------------------------------

@lru_cache(maxsize=None)
def bump_poly(k: int) -> sympy.Poly:
    """R_k with R_0 = 1, R_{k+1} = dR_k/dt + 2 t u^2 dR_k/du - 2 t u^2 R_k"""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    if k == 0:
        return sympy.Poly(1, _t, _u)
    prev = bump_poly(k - 1)
    tu2 = sympy.Poly(2 * _t * _u ** 2, _t, _u)
    return prev.diff(_t) + tu2 * prev.diff(_u) - tu2 * prev


@lru_cache(maxsize=None)
def plateau_poly(k: int) -> sympy.Poly:
    """P_k with P_0 = sigma and P_{k+1} = d/ds P_k on the transition band"""
    if k < 0:
        raise ValueError("derivative order must be nonnegative")
    gens = (_sigma, _tau, _A, _B)
    if k == 0:
        return sympy.Poly(_sigma, *gens)
    prev = plateau_poly(k - 1)
    A2 = sympy.Poly(_A ** 2, *gens)
    B2 = sympy.Poly(_B ** 2, *gens)
    flow = sympy.Poly((_A ** 2 + _B ** 2) * _sigma * _tau, *gens)
    return A2 * prev.diff(_A) - B2 * prev.diff(_B) + flow * (prev.diff(_tau) - prev.diff(_sigma))


@lru_cache(maxsize=None)
def _bump_fn(k: int, backend: str) -> Callable:
    return sympy.lambdify((_t, _u), bump_poly(k).as_expr(), modules=backend)


@lru_cache(maxsize=None)
def _plateau_fn(k: int, backend: str) -> Callable:
    return sympy.lambdify((_sigma, _tau, _A, _B), plateau_poly(k).as_expr(), modules=backend)


# ----------------------------------------------------------------------
# numpy
# ----------------------------------------------------------------------

def _finite_or_zero(values: np.ndarray) -> np.ndarray:
    # inf * 0 where the exponential factor underflows
    return np.where(np.isnan(values), 0.0, values)


def bump_d_np(k: int, t: Any) -> np.ndarray:
    t = np.asarray(t, dtype=float)
    inside = np.abs(t) < 1.0
    tt = np.where(inside, t, 0.0)
    with np.errstate(over="ignore", invalid="ignore", under="ignore"):
        u = 1.0 / (1.0 - tt * tt)
        base = np.exp(1.0 - u)
        if int(k) == 0:
            values = base
        else:
            values = _bump_fn(int(k), "numpy")(tt, u) * base
        return np.where(inside, _finite_or_zero(values), 0.0)


def bump_np(t: Any) -> np.ndarray:
    return bump_d_np(0, t)


def plateau_d_np(k: int, t: Any) -> np.ndarray:
    k = int(k)
    t = np.asarray(t, dtype=float)
    s = np.abs(t)
    band = (s > 0.5) & (s < 1.0)
    ss = np.where(band, s, 0.75)
    with np.errstate(over="ignore", invalid="ignore", under="ignore", divide="ignore"):
        A = 1.0 / (1.0 - ss)
        B = 1.0 / (ss - 0.5)
        chi = A - B
        sigma, tau = expit(-chi), expit(chi)
        if k == 0:
            inner = sigma
            outside = np.where(s <= 0.5, 1.0, 0.0)
        else:
            inner = _plateau_fn(k, "numpy")(sigma, tau, A, B) * np.sign(t) ** k
            outside = np.zeros_like(s)
        return np.where(band, _finite_or_zero(inner), outside)


def plateau_np(t: Any) -> np.ndarray:
    return plateau_d_np(0, t)


def below_np(eps: Any, cut: Any) -> np.ndarray:
    return np.where(np.asarray(eps, dtype=float) <= float(cut), 1.0, 0.0)


# ----------------------------------------------------------------------
# mpmath
# ----------------------------------------------------------------------

def bump_d_mp(k: int, t: Any) -> mpmath.mpf:
    t = mpmath.mpf(t)
    if abs(t) >= 1:
        return mpmath.mpf(0)
    u = 1 / (1 - t * t)
    base = mpmath.exp(1 - u)
    if int(k) == 0:
        return base
    return mpmath.mpf(_bump_fn(int(k), "mpmath")(t, u)) * base


def bump_mp(t: Any) -> mpmath.mpf:
    return bump_d_mp(0, t)


def plateau_d_mp(k: int, t: Any) -> mpmath.mpf:
    k = int(k)
    t = mpmath.mpf(t)
    s = abs(t)
    if s <= mpmath.mpf(1) / 2:
        return mpmath.mpf(1 if k == 0 else 0)
    if s >= 1:
        return mpmath.mpf(0)
    A = 1 / (1 - s)
    B = 1 / (s - mpmath.mpf(1) / 2)
    chi = A - B
    sigma = 1 / (1 + mpmath.exp(chi))
    tau = 1 / (1 + mpmath.exp(-chi))
    if k == 0:
        return sigma
    value = mpmath.mpf(_plateau_fn(k, "mpmath")(sigma, tau, A, B))
    return value if (k % 2 == 0 or t > 0) else -value


def plateau_mp(t: Any) -> mpmath.mpf:
    return plateau_d_mp(0, t)


def below_mp(eps: Any, cut: Any) -> mpmath.mpf:
    return mpmath.mpf(1) if mpmath.mpf(eps) <= mpmath.mpf(cut) else mpmath.mpf(0)


# ----------------------------------------------------------------------
# sympy
# ----------------------------------------------------------------------

def _order(k: sympy.Expr) -> int:
    if not (k.is_Integer and k >= 0):
        raise ValueError(f"derivative order must be a nonnegative integer, got {k}")
    return int(k)


class bump(sympy.Function):
    nargs = 1

    @classmethod
    def eval(cls, t):
        if t.is_Number:
            if t.is_zero:
                return sympy.S.One
            if abs(t) >= 1:
                return sympy.S.Zero
        return None

    def fdiff(self, argindex=1):
        if argindex != 1:
            raise ArgumentIndexError(self, argindex)
        return bump_d(1, self.args[0])

    def _eval_is_real(self):
        return self.args[0].is_real


class bump_d(sympy.Function):
    """k-th derivative of bump"""
    nargs = 2

    @classmethod
    def eval(cls, k, t):
        if _order(k) == 0:
            return bump(t)
        if t.is_Number and abs(t) >= 1:
            return sympy.S.Zero
        return None

    def fdiff(self, argindex=2):
        if argindex != 2:
            raise ArgumentIndexError(self, argindex)
        k, t = self.args
        return bump_d(k + 1, t)

    def _eval_is_real(self):
        return self.args[1].is_real


class plateau(sympy.Function):
    nargs = 1

    @classmethod
    def eval(cls, t):
        if t.is_Number:
            if abs(t) <= HALF:
                return sympy.S.One
            if abs(t) >= 1:
                return sympy.S.Zero
        return None

    def fdiff(self, argindex=1):
        if argindex != 1:
            raise ArgumentIndexError(self, argindex)
        return plateau_d(1, self.args[0])

    def _eval_is_real(self):
        return self.args[0].is_real


class plateau_d(sympy.Function):
    """k-th derivative of plateau"""
    nargs = 2

    @classmethod
    def eval(cls, k, t):
        if _order(k) == 0:
            return plateau(t)
        if t.is_Number and (abs(t) <= HALF or abs(t) >= 1):
            return sympy.S.Zero
        return None

    def fdiff(self, argindex=2):
        if argindex != 2:
            raise ArgumentIndexError(self, argindex)
        k, t = self.args
        return plateau_d(k + 1, t)

    def _eval_is_real(self):
        return self.args[1].is_real


class below(sympy.Function):
    """1 for eps <= cut, else 0; constant in the space variables"""
    nargs = 2

    @classmethod
    def eval(cls, eps, cut):
        if eps.is_Number and cut.is_Number:
            return sympy.S.One if eps <= cut else sympy.S.Zero
        return None

    def fdiff(self, argindex=1):
        return sympy.S.Zero


NUMPY_PRIMITIVES: Dict[str, Callable] = {
    "bump": bump_np,
    "bump_d": bump_d_np,
    "plateau": plateau_np,
    "plateau_d": plateau_d_np,
    "below": below_np,
}

MPMATH_PRIMITIVES: Dict[str, Callable] = {
    "bump": bump_mp,
    "bump_d": bump_d_mp,
    "plateau": plateau_mp,
    "plateau_d": plateau_d_mp,
    "below": below_mp,
}

# Names accepted by the expression grammar
SYMPY_PRIMITIVES: Dict[str, Any] = {
    "bump": bump,
    "plateau": plateau,
}
