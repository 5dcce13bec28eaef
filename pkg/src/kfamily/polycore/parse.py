"""Text format for polynomials: ``x0*x1 - 3/2*x0^2 + x2``.

Grammar (whitespace ignored)::

    expr   := ['+'|'-'] term (('+'|'-') term)*
    term   := factor ('*' factor)*
    factor := atom ('^' INT)?
    atom   := NUMBER ('/' NUMBER)? | NAME | '(' expr ')'

Printing is canonical: terms in ascending graded lex order (x0 > x1 > ...),
unit coefficients elided, so ``x0*x1 - x0^2`` prints as written.
"""

from __future__ import annotations

import re

from .poly import MultiPoly, Ring
from .scalars import fmt_scalar

__all__ = ["PolySyntaxError", "poly_parse", "poly_print"]

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(.))")


class PolySyntaxError(ValueError):
    def __init__(self, message: str, text: str, position: int):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.text = text
        self.position = position


def _tokenize(text):
    toks = []
    for m in _TOKEN.finditer(text):
        num, name, op = m.groups()
        if num is not None:
            toks.append(("num", int(num), m.start(1)))
        elif name is not None:
            toks.append(("name", name, m.start(2)))
        elif op is not None:
            if op.isspace():
                continue
            if op not in "+-*/^()":
                raise PolySyntaxError(f"unexpected character {op!r}", text, m.start(3))
            toks.append((op, op, m.start(3)))
    toks.append(("end", None, len(text)))
    return toks


class _Parser:
    def __init__(self, text: str, ring: Ring):
        self.text = text
        self.ring = ring
        self.toks = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def take(self, kind=None):
        tok = self.toks[self.i]
        if kind is not None and tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolySyntaxError(f"expected {kind!r}, found {what}", self.text, tok[2])
        self.i += 1
        return tok

    def expr(self) -> MultiPoly:
        sign = 1
        if self.peek()[0] in ("+", "-"):
            sign = -1 if self.take()[0] == "-" else 1
        acc = self.term().scale(sign)
        while self.peek()[0] in ("+", "-"):
            op = self.take()[0]
            t = self.term()
            acc = acc + t if op == "+" else acc - t
        return acc

    def term(self) -> MultiPoly:
        acc = self.factor()
        while self.peek()[0] == "*":
            self.take()
            acc = acc * self.factor()
        return acc

    def factor(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[0] == "^":
            self.take()
            _, e, _ = self.take("num")
            base = base ** e
        return base

    def atom(self) -> MultiPoly:
        kind, val, pos = self.peek()
        if kind == "num":
            self.take()
            if self.peek()[0] == "/":
                self.take()
                _, den, dpos = self.take("num")
                if den == 0:
                    raise PolySyntaxError("zero denominator", self.text, dpos)
                return self.ring.const(f"{val}/{den}")
            return self.ring.const(val)
        if kind == "name":
            self.take()
            if val not in self.ring.variables:
                raise PolySyntaxError(f"unknown variable {val!r}", self.text, pos)
            return self.ring.gen(val)
        if kind == "(":
            self.take()
            inner = self.expr()
            self.take(")")
            return inner
        what = "end of input" if kind == "end" else repr(val)
        raise PolySyntaxError(f"unexpected {what}", self.text, pos)


def poly_parse(text: str, ring: Ring) -> MultiPoly:
    """Parse ``text`` into a polynomial of ``ring``."""
    p = _Parser(text, ring)
    out = p.expr()
    if p.peek()[0] != "end":
        kind, val, pos = p.peek()
        raise PolySyntaxError(f"trailing input {val!r}", text, pos)
    return out


def _monomial_str(names, exps):
    parts = []
    for name, e in zip(names, exps):
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def poly_print(p: MultiPoly) -> str:
    if p.is_zero:
        return "0"
    names = p.ring.variables
    out = []
    for exps, c in p.items():
        neg = p.ring.modulus is None and c < 0
        mag = -c if neg else c
        mono = _monomial_str(names, exps)
        if not mono:
            body = fmt_scalar(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{fmt_scalar(mag)}*{mono}"
        if not out:
            out.append(f"-{body}" if neg else body)
        else:
            out.append(f" - {body}" if neg else f" + {body}")
    return "".join(out)
