"""
SmoothExpr - an immutable sympy expression in x1..xn and eps, the defining
net u_eps(x) of a generalized smooth function.

Grammar: `eps^-1 * bump(x1/eps)`; constants, + - * /, powers, exp, log,
sin, cos, tanh, sqrt, abs, bump, plateau.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import mpmath
import sympy

from ..core.Errors import EvalDomainError, ExpressionParseError, PreconditionError
from ..core.ExactNet import ExactNet
from ..core.Parsing import ELEMENTARY_FUNCTIONS, EPS, exact_net_from_sympy, exact_net_to_sympy, parse_sympy
from .Primitives import MPMATH_PRIMITIVES, NUMPY_PRIMITIVES, SYMPY_PRIMITIVES

MultiIndex = Tuple[int, ...]


def variables(n: int) -> Tuple[sympy.Symbol, ...]:
    return tuple(sympy.Symbol(f"x{i}", real=True) for i in range(1, n + 1))


def _infer_dimension(text: str) -> int:
    found = [int(m) for m in re.findall(r"\bx([1-9][0-9]*)\b", text)]
    return max(found) if found else 1


def multi_indices(n: int, order: int) -> List[MultiIndex]:
    """All alpha in N^n with |alpha| <= order, by total order then lexicographically"""
    result: List[MultiIndex] = []
    for total in range(order + 1):
        result.extend(_compositions(n, total))
    return result


def _compositions(n: int, total: int) -> List[MultiIndex]:
    if n == 1:
        return [(total,)]
    out = []
    for first in range(total, -1, -1):
        for rest in _compositions(n - 1, total - first):
            out.append((first,) + rest)
    return out


@dataclass(frozen=True)
class SmoothExpr:
    """u(x1..xn, eps) as a sympy expression"""
    expr: sympy.Expr
    n: int
    text: str = field(default="", compare=False)

    def __post_init__(self):
        if self.n < 1:
            raise PreconditionError("a smooth expression needs at least one variable")
        allowed = set(variables(self.n)) | {EPS}
        extra = self.expr.free_symbols - allowed
        if extra:
            raise PreconditionError(f"symbols {sorted(map(str, extra))} outside x1..x{self.n}, eps")

    # ------------------------------------------------------------------
    # Construction
    # ------------------------------------------------------------------

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "SmoothExpr":
        n = n or _infer_dimension(text)
        symbols: Dict[str, sympy.Symbol] = {"eps": EPS}
        symbols.update({str(v): v for v in variables(n)})
        functions = dict(ELEMENTARY_FUNCTIONS)
        functions.update(SYMPY_PRIMITIVES)
        for name in re.findall(r"\bx([0-9]+)\b", text):
            if int(name) > n or int(name) == 0:
                raise ExpressionParseError(f"variable x{name} outside x1..x{n}",
                                           position=text.find(f"x{name}"), text=text)
        expr = parse_sympy(text, symbols, functions)
        return cls(expr, n, text.strip())

    @classmethod
    def of(cls, expr, n: int) -> "SmoothExpr":
        return cls(sympy.sympify(expr), n)

    @classmethod
    def constant(cls, value, n: int) -> "SmoothExpr":
        if isinstance(value, ExactNet):
            return cls(exact_net_to_sympy(value), n)
        return cls(sympy.nsimplify(value) if isinstance(value, float) else sympy.sympify(value), n)

    # ------------------------------------------------------------------
    # Structure
    # ------------------------------------------------------------------

    @property
    def symbols(self) -> Tuple[sympy.Symbol, ...]:
        return variables(self.n)

    @property
    def is_zero(self) -> bool:
        return self.expr == 0

    @property
    def depends_on_eps(self) -> bool:
        return EPS in self.expr.free_symbols

    def split_scale(self) -> Tuple[sympy.Expr, sympy.Expr]:
        """(c(eps), rest) with expr = c * rest and c free of x"""
        # common factors of a sum (bump(x1)*(eps^2 + eps^4)) are pulled out first
        c, rest = sympy.factor_terms(self.expr).as_independent(*self.symbols, as_Add=False)
        return c, rest

    def to_text(self) -> str:
        return self.text or str(self.expr).replace("**", "^")

    def __str__(self) -> str:
        return self.to_text()

    # ------------------------------------------------------------------
    # Algebra
    # ------------------------------------------------------------------

    def _lift(self, other: "SmoothExpr") -> int:
        return max(self.n, other.n)

    def __add__(self, other: "SmoothExpr") -> "SmoothExpr":
        return SmoothExpr(self.expr + other.expr, self._lift(other))

    def __sub__(self, other: "SmoothExpr") -> "SmoothExpr":
        return SmoothExpr(self.expr - other.expr, self._lift(other))

    def __neg__(self) -> "SmoothExpr":
        return SmoothExpr(-self.expr, self.n)

    def __mul__(self, other: "SmoothExpr") -> "SmoothExpr":
        return SmoothExpr(self.expr * other.expr, self._lift(other))

    def scale(self, factor: sympy.Expr) -> "SmoothExpr":
        return SmoothExpr(sympy.sympify(factor) * self.expr, self.n)

    def derivative(self, alpha: Sequence[int]) -> "SmoothExpr":
        if len(alpha) != self.n:
            raise PreconditionError(f"multi-index {tuple(alpha)} for a function of {self.n} variables")
        return SmoothExpr(_derive(self.expr, self.n, tuple(alpha)), self.n)

    def substitute(self, point: Sequence[sympy.Expr]) -> sympy.Expr:
        """u(x, eps) with x replaced by expressions in eps"""
        return self.expr.subs(dict(zip(self.symbols, point)), simultaneous=True)

    # ------------------------------------------------------------------
    # Numerics
    # ------------------------------------------------------------------

    def numpy_function(self) -> Callable:
        """f(x1, ..., xn, eps) on broadcastable float arrays"""
        return _lambdify(self.expr, self.n, "numpy")

    def mpmath_function(self) -> Callable:
        """f(x1, ..., xn, eps) on mpmath scalars"""
        return _lambdify(self.expr, self.n, "mpmath")

    def gradient_functions(self) -> List[Callable]:
        return [self.derivative(tuple(int(i == j) for i in range(self.n))).numpy_function()
                for j in range(self.n)]

    def exact_value(self, point: Sequence[ExactNet]) -> Optional[ExactNet]:
        """u(x) as an ExactNet when the substituted expression is a finite eps-series"""
        substituted = self.substitute([exact_net_to_sympy(c) for c in point])
        if substituted.free_symbols - {EPS}:
            return None
        return exact_net_from_sympy(substituted)

    def eps_generator(self, point: Sequence[ExactNet]) -> Callable[[mpmath.mpf], mpmath.mpf]:
        """mpmath function of eps for u at an exact point"""
        substituted = self.substitute([exact_net_to_sympy(c) for c in point])
        fn = lambdify_eps(substituted)
        return lambda eps: checked_value(fn(eps), self)


def checked_value(value, source) -> mpmath.mpf:
    """Real mpmath value, or EvalDomainError for complex or undefined results"""
    if isinstance(value, mpmath.mpc):
        if value.imag != 0:
            raise EvalDomainError(f"{source} is not real at this point")
        value = value.real
    value = mpmath.mpf(value)
    if mpmath.isnan(value) or mpmath.isinf(value):
        raise EvalDomainError(f"{source} is undefined at this point")
    return value


@lru_cache(maxsize=4096)
def _derive(expr: sympy.Expr, n: int, alpha: MultiIndex) -> sympy.Expr:
    if not any(alpha):
        return expr
    # one order at a time so lower derivatives stay cached
    j = max(i for i, a in enumerate(alpha) if a)
    lower = tuple(a - 1 if i == j else a for i, a in enumerate(alpha))
    return sympy.diff(_derive(expr, n, lower), variables(n)[j])


@lru_cache(maxsize=2048)
def _lambdify(expr: sympy.Expr, n: int, backend: str) -> Callable:
    primitives = NUMPY_PRIMITIVES if backend == "numpy" else MPMATH_PRIMITIVES
    return sympy.lambdify(variables(n) + (EPS,), expr, modules=[primitives, backend])


@lru_cache(maxsize=2048)
def lambdify_eps(expr: sympy.Expr) -> Callable:
    return sympy.lambdify([EPS], expr, modules=[MPMATH_PRIMITIVES, "mpmath"])
