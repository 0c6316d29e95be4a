"""Parsing of element, polynomial and rational-function literals.

One small expression grammar serves every field::

    expr   := term (('+' | '-') term)*
    term   := unary (('*' | '/') unary)*
    unary  := '-' unary | '+' unary | power
    power  := atom (('^' | '**') exponent)?
    exponent := INT | '(' ['-'] INT ['/' INT] ')'
    atom   := INT | NAME | '(' expr ')'

Names: ``t`` (series fields), ``w`` (quadratic fields), ``X`` (the
polynomial variable).  ``t`` may carry a rational exponent in ``hahn``.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import List, Tuple, Union

from .errors import ParseError

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*/^()]))")


def tokenize(text: str) -> List[Tuple[str, str]]:
    out = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} in {text!r}")
        if m.group(1):
            out.append(("int", m.group(1)))
        elif m.group(2):
            out.append(("name", m.group(2)))
        else:
            out.append(("op", "^" if m.group(3) == "**" else m.group(3)))
        pos = m.end()
    return out


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None, val=None):
        tok = self.peek()
        if tok[0] is None or (kind and tok[0] != kind) or (val and tok[1] != val):
            want = val or kind or "token"
            raise ParseError(f"expected {want} at token {self.i} in {self.text!r}")
        self.i += 1
        return tok

    def parse(self):
        if not self.toks:
            raise ParseError("empty literal")
        node = self.expr()
        if self.i != len(self.toks):
            raise ParseError(f"trailing input in {self.text!r}")
        return node

    def expr(self):
        node = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            node = ("add" if op == "+" else "sub", node, self.term())
        return node

    def term(self):
        node = self.unary()
        while self.peek() in (("op", "*"), ("op", "/")):
            op = self.take()[1]
            node = ("mul" if op == "*" else "div", node, self.unary())
        return node

    def unary(self):
        if self.peek() == ("op", "-"):
            self.take()
            return ("neg", self.unary())
        if self.peek() == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            return ("pow", base, self.exponent())
        return base

    def exponent(self) -> Fraction:
        if self.peek()[0] == "int":
            return Fraction(int(self.take()[1]))
        self.take("op", "(")
        sign = 1
        if self.peek() == ("op", "-"):
            self.take()
            sign = -1
        num = int(self.take("int")[1])
        den = 1
        if self.peek() == ("op", "/"):
            self.take()
            den = int(self.take("int")[1])
            if den == 0:
                raise ParseError("zero denominator in exponent")
        self.take("op", ")")
        return sign * Fraction(num, den)

    def atom(self):
        kind, val = self.peek()
        if kind == "int":
            self.take()
            return ("num", int(val))
        if kind == "name":
            self.take()
            return ("sym", val)
        if (kind, val) == ("op", "("):
            self.take()
            node = self.expr()
            self.take("op", ")")
            return node
        raise ParseError(f"unexpected token {val!r} in {self.text!r}")


def parse_ast(text: str):
    return _Parser(text).parse()


def _uses(node, name: str) -> bool:
    if node[0] == "sym":
        return node[1] == name
    return any(isinstance(c, tuple) and _uses(c, name) for c in node[1:])


def _eval(node, field, allow_x: bool):
    """Evaluate to a field element, or to a RatFunc when ``allow_x``."""
    from .poly import Poly, RatFunc

    tag = node[0]
    if tag == "num":
        v = field(node[1])
        return RatFunc.constant(v) if allow_x else v
    if tag == "sym":
        name = node[1]
        if name == "X" and allow_x:
            return RatFunc(Poly.x(field))
        if name == field.generator_name:
            g = field.generator()
            return RatFunc.constant(g) if allow_x else g
        raise ParseError(f"unknown symbol {name!r} for field {field.spec}")
    if tag == "neg":
        return -_eval(node[1], field, allow_x)
    if tag == "pow":
        base, e = node[1], node[2]
        if base == ("sym", "t") and field.generator_name == "t":
            v = field.monomial(e)
            return RatFunc.constant(v) if allow_x else v
        if e.denominator != 1:
            raise ParseError(f"non-integer exponent {e} outside t^(...)")
        b = _eval(base, field, allow_x)
        n = int(e)
        if allow_x and n < 0:
            if b.num.degree() > 0:
                raise ParseError("negative powers of X are not polynomials")
        return b**n
    a = _eval(node[1], field, allow_x)
    b = _eval(node[2], field, allow_x)
    if tag == "add":
        return a + b
    if tag == "sub":
        return a - b
    if tag == "mul":
        return a * b
    if tag == "div":
        return a / b
    raise ParseError(f"bad node {tag}")


def parse_element(field, text: str):
    node = parse_ast(text)
    if _uses(node, "X"):
        raise ParseError(f"{text!r} mentions X; expected a field element")
    try:
        return _eval(node, field, allow_x=False)
    except ZeroDivisionError as exc:
        raise ParseError(f"{text!r}: {exc}") from None


def parse_ratfunc(field, text: str):
    """Parse to a :class:`~vlab.poly.RatFunc` (denominators of degree 0 absorbed)."""
    try:
        return _eval(parse_ast(text), field, allow_x=True)
    except ZeroDivisionError as exc:
        raise ParseError(f"{text!r}: {exc}") from None


def parse_poly(field, text: str):
    r = parse_ratfunc(field, text)
    if r.den.degree() != 0:
        raise ParseError(f"{text!r} is not a polynomial")
    return r.num


def parse_poly_or_ratfunc(field, text: str):
    r = parse_ratfunc(field, text)
    return r.num if r.den.degree() == 0 else r


def split_top(text: str, sep: str) -> List[str]:
    """Split on ``sep`` outside (), [] and {}."""
    parts, depth, cur = [], 0, []
    for ch in text:
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
            if depth < 0:
                raise ParseError(f"unbalanced brackets in {text!r}")
        if ch == sep and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth != 0:
        raise ParseError(f"unbalanced brackets in {text!r}")
    parts.append("".join(cur))
    return [p.strip() for p in parts]


Number = Union[int, Fraction]
