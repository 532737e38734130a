"""Text form of polynomials.

Grammar::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' uint)?
    atom   := ident | int | int '/' int | '(' expr ')'
"""

from __future__ import annotations

import re
from fractions import Fraction

MAX_EXPONENT = 4096

_TOKEN_RE = re.compile(r"\s*(?:(?P<int>\d+)|(?P<ident>[A-Za-z_][A-Za-z_0-9]*)|(?P<op>[-+*^/()]))")


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str = ""):
        self.position = position
        self.text = text
        super().__init__(f"{message} at position {position}")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        start = m.start(kind)
        tokens.append((kind, m.group(kind), start))
        pos = m.end()
    tokens.append(("end", "", n))
    return tokens


class _Parser:
    def __init__(self, text, ring):
        self.text = text
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok=None):
        tok = tok or self.peek()
        return PolynomialSyntaxError(msg, tok[2], self.text)

    def parse(self):
        if self.peek()[0] == "end":
            raise self.error("empty expression")
        value = self.expr()
        if self.peek()[0] != "end":
            raise self.error(f"unexpected token {self.peek()[1]!r}")
        return value

    def expr(self):
        sign = 1
        if self.peek()[1] in ("+", "-") and self.peek()[0] == "op":
            sign = -1 if self.take()[1] == "-" else 1
        value = self.term()
        if sign < 0:
            value = -value
        while self.peek()[0] == "op" and self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.term()
            value = value + rhs if op == "+" else value - rhs
        return value

    def term(self):
        value = self.factor()
        while self.peek()[0] == "op" and self.peek()[1] == "*":
            self.take()
            value = value * self.factor()
        return value

    def factor(self):
        base = self.atom()
        if self.peek()[0] == "op" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "int":
                raise self.error("exponent must be a nonnegative integer", tok)
            k = int(tok[1])
            if k > MAX_EXPONENT:
                raise self.error(f"exponent {k} exceeds the limit {MAX_EXPONENT}", tok)
            return base**k
        return base

    def atom(self):
        tok = self.take()
        kind, val, _ = tok
        if kind == "int":
            if self.peek()[0] == "op" and self.peek()[1] == "/":
                self.take()
                den = self.take()
                if den[0] != "int":
                    raise self.error("rational literal needs an integer denominator", den)
                if int(den[1]) == 0:
                    raise self.error("zero denominator", den)
                try:
                    return self.ring.constant(Fraction(int(val), int(den[1])))
                except ZeroDivisionError:
                    raise self.error("denominator vanishes in the coefficient field", den) from None
            return self.ring.constant(int(val))
        if kind == "ident":
            try:
                return self.ring.var(self.ring.index(val))
            except KeyError:
                raise self.error(f"unknown identifier {val!r}", tok) from None
        if kind == "op" and val == "(":
            inner = self.expr()
            close = self.take()
            if close[1] != ")":
                raise self.error("expected ')'", close)
            return inner
        if kind == "end":
            raise self.error("unexpected end of input", tok)
        raise self.error(f"unexpected token {val!r}", tok)


def parse_polynomial(text: str, ring):
    return _Parser(text, ring).parse()


def format_monomial(exp, variables) -> str:
    parts = []
    for v, k in zip(variables, exp):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_polynomial(f) -> str:
    """Canonical printed form; parsing it back gives ``f``."""
    if not f.coeffs:
        return "0"
    field = f.ring.field
    out = []
    for e, c in f.terms:
        s = field.to_str(c)
        neg = s.startswith("-")
        if neg:
            s = s[1:]
        mono = format_monomial(e, f.ring.variables)
        if mono:
            body = mono if s == "1" else f"{s}*{mono}"
        else:
            body = s
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)
