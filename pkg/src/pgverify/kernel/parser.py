"""Recursive-descent parser for the polynomial expression language.

Grammar (EBNF)::

    expr   = term { ("+" | "-") term } ;
    term   = unary { ("*" | "/") unary } ;
    unary  = ("+" | "-") unary | power ;
    power  = atom [ "^" exponent ] ;
    exponent = [ "+" | "-" ] INT | "(" [ "+" | "-" ] INT ")" ;
    atom   = INT | NAME | "(" expr ")" ;

``NAME`` must be one of the declared variables, or ``I`` (the imaginary
unit) when Gaussian coefficients are enabled and ``I`` is not a variable.
"""
from __future__ import annotations

import re
from fractions import Fraction

from .poly import Poly
from .ratfunc import RatFunc
from .scalars import I as IMAG

MODES = ("poly", "laurent", "ratfunc")

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\S))")


class ParseError(ValueError):
    def __init__(self, message: str, pos: int, src: str = ""):
        self.pos = pos
        self.src = src
        super().__init__(f"{message} at position {pos}")


def _tokenize(src):
    toks = []
    pos = 0
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if m is None or m.end() == pos:
            break
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            toks.append(("int", int(m.group(1)), start))
        elif m.group(2) is not None:
            toks.append(("name", m.group(2), start))
        else:
            ch = m.group(3)
            if ch not in "+-*/^()":
                raise ParseError(f"unexpected character {ch!r}", start, src)
            toks.append((ch, ch, start))
        pos = m.end()
    toks.append(("end", None, len(src)))
    return toks


class _Parser:
    def __init__(self, src, vars, mode, gaussian):
        if mode not in MODES:
            raise ValueError(f"unknown mode {mode!r}")
        self.src = src
        self.vars = tuple(vars)
        self.mode = mode
        self.gaussian = gaussian
        self.toks = _tokenize(src)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            want = "end of input" if kind == "end" else repr(kind)
            raise ParseError(f"expected {want}", tok[2], self.src)
        self.i += 1
        return tok

    def const(self, c):
        p = Poly.const(self.vars, c, self.mode == "laurent")
        return RatFunc(p) if self.mode == "ratfunc" else p

    def parse(self):
        if self.peek()[0] == "end":
            raise ParseError("empty expression", 0, self.src)
        val = self.expr()
        self.take("end")
        return val

    def expr(self):
        val = self.term()
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while self.peek()[0] in ("*", "/"):
            op, _, pos = self.take()
            rhs = self.unary()
            if op == "*":
                val = val * rhs
            else:
                val = self.divide(val, rhs, pos)
        return val

    def divide(self, a, b, pos):
        if not b:
            raise ParseError("division by zero polynomial", pos, self.src)
        if self.mode == "ratfunc":
            return a / b
        if b.is_constant():
            return a / b.constant_value()
        if self.mode == "laurent" and len(b.terms) == 1:
            return a / b
        raise ParseError(f"division by a non-constant in {self.mode} mode", pos, self.src)

    def unary(self):
        kind = self.peek()[0]
        if kind == "-":
            self.take()
            return -self.unary()
        if kind == "+":
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek()[0] != "^":
            return base
        _, _, pos = self.take("^")
        paren = self.peek()[0] == "("
        if paren:
            self.take("(")
        sign = 1
        if self.peek()[0] in ("-", "+"):
            sign = -1 if self.take()[0] == "-" else 1
        n = sign * self.take("int")[1]
        if paren:
            self.take(")")
        if n < 0 and self.mode == "poly" and not base.is_constant():
            raise ParseError("negative power of a variable in poly mode", pos, self.src)
        if n < 0 and self.mode == "laurent" and len(base.terms) != 1:
            raise ParseError("negative power of a non-monomial in laurent mode", pos, self.src)
        if n < 0 and not base:
            raise ParseError("division by zero polynomial", pos, self.src)
        if n < 0 and self.mode == "poly":
            return self.const(1 / base.constant_value() ** (-n))
        return base ** n

    def atom(self):
        kind, val, pos = self.peek()
        if kind == "int":
            self.take()
            return self.const(Fraction(val))
        if kind == "name":
            self.take()
            if val in self.vars:
                p = Poly.var(self.vars, val, self.mode == "laurent")
                return RatFunc(p) if self.mode == "ratfunc" else p
            if val == "I" and self.gaussian:
                return self.const(IMAG)
            raise ParseError(f"unknown variable {val!r}", pos, self.src)
        if kind == "(":
            self.take()
            v = self.expr()
            self.take(")")
            return v
        if kind == "end":
            raise ParseError("unexpected end of input", pos, self.src)
        raise ParseError(f"unexpected token {val!r}", pos, self.src)


def parse_expression(src: str, vars, mode: str = "poly", gaussian: bool = False):
    """Parse ``src`` into a canonical :class:`Poly` (or :class:`RatFunc`).

    >>> str(parse_expression("x*y - 2*z", ["x", "y", "z"]))
    'x*y - 2*z'
    """
    return _Parser(src, vars, mode, gaussian).parse()
