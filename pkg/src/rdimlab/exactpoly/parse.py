"""Recursive-descent parser for polynomial expressions.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := NUMBER ['/' NUMBER] | IDENT | '(' expr ')'

Implicit multiplication (``2x``, ``x y``) is rejected.
"""

from __future__ import annotations

import re
from fractions import Fraction

from ..errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z][A-Za-z0-9_]*)|(\S))")


def tokenize(text: str) -> list:
    toks = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, ident, op = m.groups()
        start = m.start(m.lastindex)
        if num is not None:
            toks.append(("num", int(num), start))
        elif ident is not None:
            toks.append(("id", ident, start))
        else:
            if op not in "+-*^/()":
                raise ParseError(f"unexpected character {op!r} at offset {start}", location=str(start))
            toks.append(("op", op, start))
        pos = m.end()
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text, ring, variables=None):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.ring = ring
        self.variables = variables

    def peek(self):
        return self.toks[self.i]

    def take(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def fail(self, msg, tok=None):
        tok = tok or self.peek()
        raise ParseError(f"{msg} at offset {tok[2]} in {self.text!r}", location=str(tok[2]))

    def expect(self, op):
        t = self.take()
        if t[0] != "op" or t[1] != op:
            self.fail(f"expected {op!r}", t)

    def parse(self):
        if self.peek()[0] == "end":
            self.fail("empty expression")
        val = self.expr()
        t = self.peek()
        if t[0] != "end":
            if t[0] in ("num", "id") or (t[0] == "op" and t[1] == "("):
                self.fail("implicit multiplication is not allowed", t)
            self.fail(f"unexpected token {t[1]!r}", t)
        return val

    def expr(self):
        sign = None
        t = self.peek()
        if t[0] == "op" and t[1] in "+-":
            self.take()
            sign = t[1]
        val = self.term()
        if sign == "-":
            val = -val
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                val = val + rhs if t[1] == "+" else val - rhs
            else:
                return val

    def term(self):
        val = self.factor()
        while True:
            t = self.peek()
            if t[0] == "op" and t[1] == "*":
                self.take()
                val = val * self.factor()
            else:
                return val

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e[0] != "num":
                self.fail("exponent must be a non-negative integer literal", e)
            return base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t[0] == "num":
            val = Fraction(t[1])
            nxt = self.peek()
            if nxt[0] == "op" and nxt[1] == "/":
                self.take()
                d = self.take()
                if d[0] != "num":
                    self.fail("denominator must be an integer literal", d)
                if d[1] == 0:
                    self.fail("zero denominator", d)
                val = Fraction(t[1], d[1])
            return self.ring.const(val)
        if t[0] == "id":
            if self.variables is not None:
                if t[1] not in self.variables:
                    self.fail(f"unknown variable {t[1]!r}", t)
                return self.variables[t[1]]
            if t[1] not in self.ring.names:
                self.fail(f"unknown variable {t[1]!r}", t)
            return self.ring.gen(t[1])
        if t[0] == "op" and t[1] == "(":
            val = self.expr()
            self.expect(")")
            return val
        self.fail("expected a number, variable or '('", t)


def parse_polynomial(text: str, ring):
    if not isinstance(text, str):
        if isinstance(text, int):
            return ring.const(text)
        raise ParseError(f"expected a polynomial string, got {type(text).__name__}")
    return _Parser(text, ring).parse()


def parse_expression(text: str, algebra, variables: dict):
    """Parse into any algebra exposing ``const`` given a name -> element map."""
    if isinstance(text, int):
        return algebra.const(text)
    if not isinstance(text, str):
        raise ParseError(f"expected an expression string, got {type(text).__name__}")
    return _Parser(text, algebra, variables).parse()
