"""Recursive-descent parser for rational-function expressions, symbols
``H(a0 | a1, ..., an // x | aend)`` and linear combinations of products of
symbols such as ``2*H(0|x,y|1) - 1/2*H(0|x|1)*H(0|y|1)``.
"""

from __future__ import annotations

import re
from fractions import Fraction

from .errors import ParseError
from .exactfield import INF, Poly, ProjPoint, RatFun, const, var

_TOKEN = re.compile(r"\s*(?:(//)|(\*\*)|(\d+)|([A-Za-z_][A-Za-z0-9_']*)|([-+*/^(),|]))")


def tokenize(text: str):
    pos = 0
    out = []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos:pos + 1]!r} at {pos} in {text!r}")
        slash2, pow2, num, ident, op = m.groups()
        if slash2:
            out.append(("op", "//"))
        elif pow2:
            out.append(("op", "^"))
        elif num:
            out.append(("num", int(num)))
        elif ident:
            out.append(("id", ident))
        else:
            out.append(("op", op))
        pos = m.end()
    out.append(("eof", None))
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self, k=0):
        return self.toks[self.i + k]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect(self, kind, value=None):
        t = self.take()
        if t[0] != kind or (value is not None and t[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, got {t[1]!r} in {self.text!r}")
        return t

    def at_op(self, *ops):
        t = self.peek()
        return t[0] == "op" and t[1] in ops

    def done(self):
        if self.peek()[0] != "eof":
            raise ParseError(f"trailing input {self.peek()[1]!r} in {self.text!r}")

    # -- rational function expressions -----------------------------------
    def expr(self) -> RatFun:
        if self.at_op("+", "-"):
            sign = self.take()[1]
            value = self.term()
            if sign == "-":
                value = -value
        else:
            value = self.term()
        while self.at_op("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self) -> RatFun:
        value = self.unary()
        while self.at_op("*", "/"):
            op = self.take()[1]
            rhs = self.unary()
            if op == "*":
                value = value * rhs
            else:
                if rhs.is_zero():
                    raise ParseError(f"division by zero in {self.text!r}")
                value = value / rhs
        return value

    def unary(self) -> RatFun:
        if self.at_op("-"):
            self.take()
            return -self.unary()
        if self.at_op("+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self) -> RatFun:
        base = self.atom()
        if self.at_op("^"):
            self.take()
            neg = False
            if self.at_op("-"):
                self.take()
                neg = True
            tok = self.expect("num")
            e = -tok[1] if neg else tok[1]
            if base.is_zero() and e < 0:
                raise ParseError("negative power of zero")
            return base ** e
        return base

    def atom(self) -> RatFun:
        t = self.take()
        if t[0] == "num":
            return const(t[1])
        if t[0] == "id":
            if t[1] == "inf":
                raise ParseError("'inf' is only allowed as a whole entry")
            return var(t[1])
        if t == ("op", "("):
            value = self.expr()
            self.expect("op", ")")
            return value
        raise ParseError(f"unexpected token {t[1]!r} in {self.text!r}")

    def point(self) -> ProjPoint:
        t = self.peek()
        if t == ("id", "inf"):
            self.take()
            return INF
        return ProjPoint(self.expr())

    # -- symbols ---------------------------------------------------------
    def symbol(self):
        from .symbols import Symbol

        self.expect("id", "H")
        self.expect("op", "(")
        base = self.point()
        self.expect("op", "|")
        word = []
        if not self.at_op("|", "//"):
            word.append(self.point())
            while self.at_op(","):
                self.take()
                word.append(self.point())
        marker = INF
        if self.at_op("//"):
            self.take()
            marker = self.point()
        self.expect("op", "|")
        end = self.point()
        self.expect("op", ")")
        return Symbol(base, tuple(word), end, marker)

    # -- linear combinations ---------------------------------------------
    def lincomb(self):
        from .symbols import LinComb

        total = LinComb()
        sign = 1
        if self.at_op("+", "-"):
            sign = -1 if self.take()[1] == "-" else 1
        while True:
            coeff, factors = self.lterm()
            total = total + LinComb.product(factors, sign * coeff)
            if self.at_op("+", "-"):
                sign = -1 if self.take()[1] == "-" else 1
                continue
            break
        return total

    def lterm(self):
        coeff = Fraction(1)
        factors = []
        op = "*"
        while True:
            t = self.peek()
            if t == ("id", "H") and self.peek(1) == ("op", "("):
                if op != "*":
                    raise ParseError("cannot divide by a symbol")
                factors.append(self.symbol())
            elif t[0] == "num":
                self.take()
                coeff = coeff * t[1] if op == "*" else coeff / t[1]
            elif t == ("op", "("):
                self.take()
                value = self.expr()
                self.expect("op", ")")
                if not value.is_constant():
                    raise ParseError("coefficients must be rational constants")
                c = value.constant_value()
                coeff = coeff * c if op == "*" else coeff / c
            else:
                raise ParseError(f"unexpected token {t[1]!r} in {self.text!r}")
            if self.at_op("*", "/"):
                op = self.take()[1]
                continue
            return coeff, factors


def parse_ratfun(text: str) -> RatFun:
    p = _Parser(text)
    value = p.expr()
    p.done()
    return value


def parse_point(text: str) -> ProjPoint:
    p = _Parser(text)
    value = p.point()
    p.done()
    return value


def parse_symbol(text: str):
    p = _Parser(text)
    value = p.symbol()
    p.done()
    return value


def parse_lincomb(text: str):
    p = _Parser(text)
    value = p.lincomb()
    p.done()
    return value


def parse_coeff(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad coefficient {text!r}") from exc


__all__ = ["parse_ratfun", "parse_point", "parse_symbol", "parse_lincomb", "parse_coeff", "tokenize", "Poly"]
