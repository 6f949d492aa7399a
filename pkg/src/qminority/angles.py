"""Parsing and formatting of ``pi`` angle expressions such as ``-3*pi/16``."""
from __future__ import annotations

import ast
import math
import operator
from fractions import Fraction

from .protocol import StrategyParams

_BINOPS = {ast.Add: operator.add, ast.Sub: operator.sub, ast.Mult: operator.mul, ast.Div: operator.truediv}
_UNOPS = {ast.UAdd: operator.pos, ast.USub: operator.neg}


def _eval(node: ast.AST) -> float:
    if isinstance(node, ast.Expression):
        return _eval(node.body)
    if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
        return float(node.value)
    if isinstance(node, ast.Name) and node.id == "pi":
        return math.pi
    if isinstance(node, ast.BinOp) and type(node.op) in _BINOPS:
        return _BINOPS[type(node.op)](_eval(node.left), _eval(node.right))
    if isinstance(node, ast.UnaryOp) and type(node.op) in _UNOPS:
        return _UNOPS[type(node.op)](_eval(node.operand))
    raise ValueError("unsupported element")


def parse_angle(text: str) -> float:
    """Evaluate ``pi``, ``k*pi/m``, ``3pi/4`` or a signed decimal, in radians."""
    src = text.strip().lower().replace("π", "pi")
    # allow "3pi/4" shorthand
    for digit in "0123456789":
        src = src.replace(f"{digit}pi", f"{digit}*pi")
    try:
        value = _eval(ast.parse(src, mode="eval"))
    except (SyntaxError, ValueError, ZeroDivisionError) as exc:
        raise ValueError(f"cannot parse angle {text!r}") from exc
    if not math.isfinite(value):
        raise ValueError(f"angle {text!r} is not finite")
    return value


def format_angle(value: float, max_denominator: int = 64) -> str:
    """Inverse of :func:`parse_angle`: ``k*pi/m`` when exact, else ``repr``."""
    frac = Fraction(value / math.pi).limit_denominator(max_denominator)
    if frac != 0 and float(frac) * math.pi == value:
        num, den = frac.numerator, frac.denominator
        head = {1: "pi", -1: "-pi"}.get(num, f"{num}*pi")
        return head if den == 1 else f"{head}/{den}"
    return repr(float(value))


def parse_strategy(text: str) -> StrategyParams:
    parts = [p for p in text.split(",")]
    if len(parts) != 3:
        raise ValueError(f"strategy {text!r} must be 'theta,alpha,beta'")
    return StrategyParams(*(parse_angle(p) for p in parts))


def format_strategy(s: StrategyParams) -> str:
    return ",".join(format_angle(x) for x in s.astuple())
