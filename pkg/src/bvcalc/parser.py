"""Recursive-descent parser for superpolynomial expressions.

Grammar (juxtaposition is not multiplication):

    expr     := term (('+' | '-') term)*
    term     := factor ('*' factor)*
    factor   := rational | 'i' | 'hbar' | ident | factor '^' uint | '(' expr ')'
    rational := int ('/' uint)?

Identifiers must be declared generators.  An odd generator raised to a power
of two or more warns and yields zero.
"""

from __future__ import annotations

import re
import warnings
from fractions import Fraction

from .scalars import Scalar
from .superalgebra import Context, Poly


class ParseError(ValueError):
    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{message} (line {line}, column {col})")
        self.line = line
        self.col = col


class OddPowerWarning(UserWarning):
    """An odd generator was squared; the factor is zero."""


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)"
                    r"|(?P<op>[-+*/^()]))")


def _tokenize(src: str, line: int):
    pos = 0
    out = []
    while pos < len(src):
        m = _TOKEN.match(src, pos)
        if not m or m.end() == m.start():
            stripped = src[pos:].lstrip()
            if not stripped:
                break
            col = pos + (len(src[pos:]) - len(stripped)) + 1
            raise ParseError(f"unexpected character {stripped[0]!r}", line, col)
        if m.lastgroup:
            out.append((m.lastgroup, m.group(m.lastgroup), m.start(m.lastgroup) + 1))
        pos = m.end()
    out.append(("end", "", len(src) + 1))
    return out


class _Parser:
    def __init__(self, tokens, ctx: Context, line: int):
        self.tokens = tokens
        self.pos = 0
        self.ctx = ctx
        self.line = line

    def peek(self):
        return self.tokens[self.pos]

    def advance(self):
        tok = self.tokens[self.pos]
        self.pos += 1
        return tok

    def error(self, message, tok=None):
        tok = tok or self.peek()
        raise ParseError(message, self.line, tok[2])

    def parse(self) -> Poly:
        value = self.expr()
        kind, text, _ = self.peek()
        if kind != "end":
            self.error(f"unexpected {text!r} after expression")
        return value

    def expr(self) -> Poly:
        value = self.term()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text in "+-":
                self.advance()
                rhs = self.term()
                value = value + rhs if text == "+" else value - rhs
            else:
                return value

    def term(self) -> Poly:
        value = self.factor()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "*":
                self.advance()
                value = value * self.factor()
            elif kind in ("num", "ident") or (kind == "op" and text == "("):
                self.error("juxtaposition is not multiplication; use '*'")
            else:
                return value

    def factor(self) -> Poly:
        base = self.primary()
        while True:
            kind, text, _ = self.peek()
            if kind == "op" and text == "^":
                self.advance()
                exp_tok = self.advance()
                if exp_tok[0] != "num":
                    self.error("exponent must be an unsigned integer", exp_tok)
                base = self._power(base, int(exp_tok[1]), exp_tok)
            else:
                return base

    def _power(self, base: Poly, n: int, tok) -> Poly:
        if n >= 2:
            odd_square = any(mask and all(k == 0 for k in exps)
                             for (exps, mask) in base.terms
                             if base.mono_degree((exps, mask)) == 1)
            if odd_square and len(base.terms) == 1:
                warnings.warn("odd generator raised to a power >= 2 is zero",
                              OddPowerWarning, stacklevel=4)
                return self.ctx.zero()
        return base ** n

    def primary(self) -> Poly:
        kind, text, col = self.advance()
        if kind == "num":
            value = int(text)
            nk, ntext, _ = self.peek()
            if nk == "op" and ntext == "/":
                self.advance()
                den = self.advance()
                if den[0] != "num" or int(den[1]) == 0:
                    self.error("denominator must be a positive integer", den)
                return self.ctx.scalar(Fraction(value, int(den[1])))
            return self.ctx.scalar(value)
        if kind == "op" and text == "-":
            num = self.advance()
            if num[0] != "num":
                self.error("expected a number after '-'", num)
            value = -int(num[1])
            nk, ntext, _ = self.peek()
            if nk == "op" and ntext == "/":
                self.advance()
                den = self.advance()
                if den[0] != "num" or int(den[1]) == 0:
                    self.error("denominator must be a positive integer", den)
                return self.ctx.scalar(Fraction(value, int(den[1])))
            return self.ctx.scalar(value)
        if kind == "ident":
            if text == "i":
                return self.ctx.scalar(Scalar.i())
            if text == "hbar":
                return self.ctx.scalar(Scalar.hbar())
            try:
                return self.ctx.gen(text)
            except ValueError:
                raise ParseError(f"unknown identifier {text!r}", self.line, col) from None
        if kind == "op" and text == "(":
            value = self.expr()
            closing = self.advance()
            if closing[:2] != ("op", ")"):
                self.error("expected ')'", closing)
            return value
        self.error(f"expected a factor, found {text!r}" if text else "unexpected end of input",
                   (kind, text, col))


def parse_expression(src: str, ctx: Context, line: int = 1) -> Poly:
    """Parse one expression into a canonical Poly on the given context."""
    return _Parser(_tokenize(src, line), ctx, line).parse()
