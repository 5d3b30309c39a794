"""Exact coefficient rings and the expression parser."""
from .linalg import det, inverse, matmul, rank, solve, transpose
from .parser import MODES, ParseError, parse_expression
from .poly import Poly
from .ratfunc import RatFunc
from .scalars import QI, I, as_scalar, conjugate, format_scalar, gaussian, is_real


def poly_arith(op: str, a: Poly, b=None):
    """Dispatch ``add | sub | mul | partial_derivative`` on polynomials.

    For ``partial_derivative`` ``b`` is the variable index (or name).
    """
    if op == "partial_derivative":
        i = a.vars.index(b) if isinstance(b, str) else b
        return a.diff(i)
    if not isinstance(b, Poly):
        raise TypeError("second operand must be a Poly")
    if a.vars != b.vars:
        raise ValueError(f"mismatched variable lists {a.vars} vs {b.vars}")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown polynomial operation {op!r}")


__all__ = [
    "MODES", "ParseError", "Poly", "QI", "I", "RatFunc", "as_scalar", "conjugate",
    "det", "format_scalar", "gaussian", "inverse", "is_real", "matmul", "parse_expression",
    "poly_arith", "rank", "solve", "transpose",
]
