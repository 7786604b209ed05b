"""
Text syntax for generalized numbers and points.

`3*eps^-1 + 5*eps^2` parses to an ExactNet; any other closed form in eps
(for example `exp(-1/eps)`) becomes a SampledNet whose generator is the
mpmath lambdification of the expression.
"""
from __future__ import annotations

from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict, List, Mapping, Optional

import sympy
from sympy.core.function import AppliedUndef
from sympy.parsing.sympy_parser import convert_xor, parse_expr, standard_transformations

from .Errors import ExpressionParseError
from .ExactNet import ExactNet, as_fraction
from .GeneralizedNumber import GeneralizedNumber, GeneralizedPoint
from .Grid import EpsilonGrid

if TYPE_CHECKING:
    from ..config import Settings

EPS = sympy.Symbol("eps", positive=True)

TRANSFORMATIONS = standard_transformations + (convert_xor,)

ELEMENTARY_FUNCTIONS: Dict[str, Any] = {
    "exp": sympy.exp,
    "log": sympy.log,
    "sin": sympy.sin,
    "cos": sympy.cos,
    "tanh": sympy.tanh,
    "sqrt": sympy.sqrt,
    "abs": sympy.Abs,
    "Abs": sympy.Abs,
}

_BASE_GLOBALS: Dict[str, Any] = {
    "Integer": sympy.Integer,
    "Float": sympy.Float,
    "Rational": sympy.Rational,
    "Symbol": sympy.Symbol,
    "Function": sympy.Function,
    "pi": sympy.pi,
    "E": sympy.E,
}


def parse_sympy(text: str, symbols: Mapping[str, sympy.Symbol],
                functions: Optional[Mapping[str, Any]] = None) -> sympy.Expr:
    """Parse text into a sympy expression over the given symbols and functions only"""
    functions = dict(ELEMENTARY_FUNCTIONS if functions is None else functions)
    if not text or not text.strip():
        raise ExpressionParseError("empty expression", position=0, text=text)
    global_dict = dict(_BASE_GLOBALS)
    global_dict.update(functions)
    try:
        expr = parse_expr(text, local_dict=dict(symbols), global_dict=global_dict,
                          transformations=TRANSFORMATIONS)
    except SyntaxError as exc:
        raise ExpressionParseError(f"syntax error in '{text}'", position=exc.offset, text=text) from exc
    except Exception as exc:
        raise ExpressionParseError(f"cannot parse '{text}': {exc}", position=None, text=text) from exc

    if not isinstance(expr, sympy.Expr):
        raise ExpressionParseError(f"'{text}' is not an arithmetic expression", position=0, text=text)

    unknown = sorted(str(s) for s in expr.free_symbols - set(symbols.values()))
    if unknown:
        name = unknown[0]
        raise ExpressionParseError(f"unknown symbol '{name}'", position=_find(text, name), text=text)
    undefined = sorted(call.func.__name__ for call in expr.atoms(AppliedUndef))
    if undefined:
        name = undefined[0]
        raise ExpressionParseError(f"unknown function '{name}'", position=_find(text, name), text=text)
    return expr


def _find(text: str, name: str) -> Optional[int]:
    pos = text.find(name)
    return pos if pos >= 0 else None


def exact_net_from_sympy(expr: sympy.Expr, eps: sympy.Symbol = EPS) -> Optional[ExactNet]:
    """ExactNet for a finite sum of c*eps^a with rational c and a, else None"""
    expanded = sympy.expand(sympy.powsimp(sympy.sympify(expr)))
    pairs = []
    for term in sympy.Add.make_args(expanded):
        if term == 0:
            continue
        coeff, expo = term.as_coeff_exponent(eps)
        if coeff.free_symbols or expo.free_symbols:
            return None
        if coeff.is_Rational:
            c = Fraction(int(coeff.p), int(coeff.q))
        elif coeff.is_Float:
            c = as_fraction(float(coeff))
        else:
            return None
        if not expo.is_Rational:
            return None
        pairs.append((c, Fraction(int(expo.p), int(expo.q))))
    return ExactNet.from_pairs(pairs)


def exact_net_to_sympy(net: ExactNet, eps: sympy.Symbol = EPS) -> sympy.Expr:
    return sympy.Add(*[
        sympy.Rational(t.coeff.numerator, t.coeff.denominator)
        * eps ** sympy.Rational(t.expo.numerator, t.expo.denominator)
        for t in net.terms
    ])


def parse_number(text: str, grid: Optional[EpsilonGrid] = None,
                 config: Optional["Settings"] = None) -> GeneralizedNumber:
    expr = parse_sympy(text, {"eps": EPS})
    net = exact_net_from_sympy(expr)
    if net is not None:
        return GeneralizedNumber(exact=net)
    generator = sympy.lambdify([EPS], expr, modules="mpmath")
    return GeneralizedNumber.from_generator(generator, grid=grid, label=text.strip(), config=config)


def split_top_level(text: str, sep: str = ",") -> List[str]:
    """Split on sep outside parentheses and brackets"""
    parts, depth, current = [], 0, []
    for ch in text:
        if ch in "([":
            depth += 1
        elif ch in ")]":
            depth -= 1
        if ch == sep and depth == 0:
            parts.append("".join(current))
            current = []
        else:
            current.append(ch)
    parts.append("".join(current))
    return [p.strip() for p in parts]


def parse_point(text: str, grid: Optional[EpsilonGrid] = None,
                config: Optional["Settings"] = None) -> GeneralizedPoint:
    """'0, eps^2' or '(0, eps^2)' -> GeneralizedPoint"""
    body = text.strip()
    if body.startswith("(") and body.endswith(")") and len(split_top_level(body[1:-1])) > 1:
        body = body[1:-1]
    parts = split_top_level(body)
    if any(not p for p in parts):
        raise ExpressionParseError(f"empty coordinate in point '{text}'", position=None, text=text)
    return GeneralizedPoint([parse_number(p, grid=grid, config=config) for p in parts])
