"""Parsing and printing of exact scalar expressions.

Grammar (all arithmetic exact, integer exponents only):

    expr   := term (('+' | '-') term)*
    term   := factor (('*' | '/') factor)*
    factor := '-' factor | atom ('^' exponent)?
    atom   := INT | 'q' | 's' | 'I' | '(' expr ')'

q is the deformation parameter, s its square root (q = s^2), I the
imaginary unit. parse_scalar returns a RatFun. Printing uses q whenever
every s-exponent is even, otherwise s.
"""

from __future__ import annotations

import re

from .cyclotomic import Cyclotomic
from .gaussian import GaussianRational
from .laurent import LaurentPoly
from .ratfun import RatFun

_TOKEN = re.compile(r"\s*(?:(\d+)|([qszI])|(\*\*|[()+\-*/^])|(\S))")


class ScalarSyntaxError(ValueError):
    pass


def _tokenize(text: str) -> list:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            break
        num, name, op, bad = m.groups()
        if bad is not None:
            raise ScalarSyntaxError(f"unexpected character {bad!r} at position {m.start(4)}")
        if num is not None:
            out.append(("int", int(num)))
        elif name is not None:
            out.append(("name", name))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = m.end()
    out.append(("end", None))
    return out


class _Parser:
    def __init__(self, tokens):
        self.toks = tokens
        self.i = 0

    def peek(self):
        return self.toks[self.i]

    def next(self):
        t = self.toks[self.i]
        self.i += 1
        return t

    def expect_op(self, op):
        kind, val = self.next()
        if kind != "op" or val != op:
            raise ScalarSyntaxError(f"expected {op!r}, found {val!r}")

    def parse(self) -> RatFun:
        v = self.expr()
        kind, val = self.peek()
        if kind != "end":
            raise ScalarSyntaxError(f"trailing input at token {val!r}")
        return v

    def expr(self) -> RatFun:
        v = self.term()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.next()
                rhs = self.term()
                v = v + rhs if val == "+" else v - rhs
            else:
                return v

    def term(self) -> RatFun:
        v = self.factor()
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "*/":
                self.next()
                rhs = self.factor()
                v = v * rhs if val == "*" else v / rhs
            else:
                return v

    def factor(self) -> RatFun:
        kind, val = self.peek()
        if kind == "op" and val == "-":
            self.next()
            return -self.factor()
        v = self.atom()
        kind, val = self.peek()
        if kind == "op" and val == "^":
            self.next()
            e = self.exponent()
            v = v**e
        return v

    def exponent(self) -> int:
        kind, val = self.next()
        neg = False
        if kind == "op" and val in "+-":
            neg = val == "-"
            kind, val = self.next()
        if kind == "op" and val == "(":
            inner = self.exponent_signed()
            self.expect_op(")")
            return -inner if neg else inner
        if kind != "int":
            raise ScalarSyntaxError("exponent must be an integer")
        return -val if neg else val

    def exponent_signed(self) -> int:
        kind, val = self.next()
        neg = False
        if kind == "op" and val in "+-":
            neg = val == "-"
            kind, val = self.next()
        if kind != "int":
            raise ScalarSyntaxError("exponent must be an integer")
        return -val if neg else val

    def atom(self) -> RatFun:
        kind, val = self.next()
        if kind == "int":
            return RatFun.const(val)
        if kind == "name":
            if val == "q":
                return RatFun.q_power(1)
            if val == "s":
                return RatFun.s_power(1)
            if val == "z":
                raise ScalarSyntaxError("z is only valid in root-of-unity constants")
            return RatFun.const(GaussianRational(0, 1))
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        raise ScalarSyntaxError(f"unexpected token {val!r}")


class _CycParser(_Parser):
    """Same grammar over a fixed cyclotomic field; s maps to the generator."""

    def __init__(self, tokens, order: int):
        super().__init__(tokens)
        self.order = order

    def atom(self):
        kind, val = self.next()
        if kind == "int":
            return Cyclotomic.from_rational(self.order, val)
        if kind == "name":
            if val in ("z", "s"):
                return Cyclotomic.zeta(self.order, 1)
            if val == "q":
                return Cyclotomic.zeta(self.order, 2)
            return Cyclotomic.zeta(self.order, self.order // 4)
        if kind == "op" and val == "(":
            v = self.expr()
            self.expect_op(")")
            return v
        raise ScalarSyntaxError(f"unexpected token {val!r}")


def parse_scalar(text: str) -> RatFun:
    """Parse an exact scalar expression in q, s, I into a RatFun."""
    return _Parser(_tokenize(text)).parse()


def parse_cyclotomic(text: str, order: int) -> Cyclotomic:
    """Parse a constant in Q(zeta_order); z (= s) is the generator, q = z^2."""
    return _CycParser(_tokenize(text), order).parse()


# -- printing --------------------------------------------------------------


def _coeff_str(c: GaussianRational) -> tuple:
    """(text, sign-was-split) with a pure leading minus split off."""
    s = str(c)
    neg = s.startswith("-") and "+" not in s[1:] and "-" not in s[1:]
    if neg:
        s = s[1:]
    if "+" in s[1:] or "-" in s[1:]:
        s = f"({s})"
        neg = False
    return s, neg


def format_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    use_q = p.even_only()
    var = "q" if use_q else "s"
    parts = []
    for k in sorted(p.c, reverse=True):
        c = p.c[k]
        e = k // 2 if use_q else k
        body, neg = _coeff_str(c)
        if e == 0:
            text = body
        else:
            pw = var if e == 1 else (f"{var}^{e}" if e > 0 else f"{var}^({e})")
            text = pw if body == "1" else f"{body}*{pw}"
        if not parts:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(parts)


def format_ratfun(f: RatFun) -> str:
    if f.den.is_one():
        return format_laurent(f.num)
    num = format_laurent(f.num)
    den = format_laurent(f.den)
    if len(f.num.c) > 1:
        num = f"({num})"
    return f"{num}/({den})"


def format_cyclotomic(x: Cyclotomic) -> str:
    parts = []
    for k, c in enumerate(x.co):
        if not c:
            continue
        body = str(c)
        neg = body.startswith("-")
        if neg:
            body = body[1:]
        if k == 0:
            text = body
        else:
            pw = "z" if k == 1 else f"z^{k}"
            text = pw if body == "1" else f"{body}*{pw}"
        if not parts:
            parts.append(f"-{text}" if neg else text)
        else:
            parts.append(f"- {text}" if neg else f"+ {text}")
    return " ".join(parts) if parts else "0"
