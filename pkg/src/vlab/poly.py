"""Dense polynomials and rational functions over a valued field."""

from __future__ import annotations

from typing import List, Sequence, Union

from .errors import DivisionByZero, MixedFields, PoleAtPoint
from .fields import FieldElement, ValuedField

__all__ = [
    "Poly",
    "RatFunc",
    "evaluate",
    "finite_differences",
    "from_binomial_basis",
    "poly_arith",
    "rat_arith",
    "taylor_at",
]



class Poly:
    """Polynomial in X with coefficients (lowest degree first) in ``field``.

    Trailing zero coefficients are stripped, so the zero polynomial has an
    empty coefficient tuple.
    """

    __slots__ = ("field", "coeffs")

    def __init__(self, field: ValuedField, coeffs: Sequence = ()):
        cs = [field(c) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.field = field
        self.coeffs = tuple(cs)

    @classmethod
    def x(cls, field: ValuedField) -> "Poly":
        return cls(field, [0, 1])

    @classmethod
    def constant(cls, c: FieldElement) -> "Poly":
        return cls(c.parent, [c])

    def degree(self) -> int:
        """Degree, with ``-1`` for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __getitem__(self, i: int) -> FieldElement:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.field.zero

    def _other(self, other) -> "Poly":
        if isinstance(other, Poly):
            if other.field != self.field:
                raise MixedFields(f"{self.field.spec} vs {other.field.spec}")
            return other
        if isinstance(other, RatFunc):
            return NotImplemented
        return Poly(self.field, [other])

    def __add__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly(self.field, [self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return Poly(self.field, [-c for c in self.coeffs])

    def __sub__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._other(other)
        if other is NotImplemented:
            return other
        if self.is_zero() or other.is_zero():
            return Poly(self.field)
        out = [self.field.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return Poly(self.field, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power of a polynomial")
        result = Poly(self.field, [1])
        for _ in range(n):
            result = result * self
        return result

    def __truediv__(self, other):
        return RatFunc(self) / other

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.field == other.field and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __call__(self, s):
        return evaluate(self, s)

    def map_coefficients(self, field: ValuedField, fn=None) -> "Poly":
        """The same polynomial with coefficients pushed into ``field``."""
        fn = fn or getattr(field, "coerce", field)
        return Poly(field, [fn(c) for c in self.coeffs])

    def compose_linear(self, a, b) -> "Poly":
        """``f(a + b*X)``."""
        lin = Poly(self.field, [a, b])
        out = Poly(self.field)
        for c in reversed(self.coeffs):
            out = out * lin + c
        return out

    def __str__(self):
        return render_poly(self)

    def __repr__(self):
        return f"Poly({self.field.spec}, {render_poly(self)!r})"


def _single_term(text: str) -> bool:
    # no + or - at top level after an optional leading sign
    depth = 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and i > 0:
            return False
    return True


def render_poly(f: Poly) -> str:
    if f.is_zero():
        return "0"
    out = ""
    for k in range(f.degree(), -1, -1):
        c = f.coeffs[k]
        if c.is_zero():
            continue
        cs = str(c)
        simple = _single_term(cs)
        neg = simple and cs.startswith("-")
        mag = cs[1:] if neg else cs
        mono = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
        if not simple:
            mag = f"({cs})"
        if mono:
            body = mono if mag == "1" else f"{mag}*{mono}"
        else:
            body = mag
        if neg:
            out += "-" + body
        else:
            out += ("+" if out else "") + body
    return out


class RatFunc:
    """Quotient ``num/den`` of polynomials, kept without gcd cancellation.

    A constant denominator is absorbed into the numerator.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly = None):
        if den is None:
            den = Poly(num.field, [1])
        if den.field != num.field:
            raise MixedFields(f"{num.field.spec} vs {den.field.spec}")
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        if den.degree() == 0:
            inv = den.coeffs[0] ** -1
            num = Poly(num.field, [c * inv for c in num.coeffs])
            den = Poly(num.field, [1])
        self.num = num
        self.den = den

    @classmethod
    def constant(cls, c: FieldElement) -> "RatFunc":
        return cls(Poly(c.parent, [c]))

    @property
    def field(self) -> ValuedField:
        return self.num.field

    def _other(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.field != self.field:
                raise MixedFields(f"{self.field.spec} vs {other.field.spec}")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc(Poly(self.field, [other]))

    def __add__(self, other):
        o = self._other(other)
        if self.den == o.den:
            return RatFunc(self.num + o.num, self.den)
        return RatFunc(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den)

    def __sub__(self, other):
        return self + (-self._other(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._other(other)
        return RatFunc(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o.num.is_zero():
            raise DivisionByZero("division by the zero rational function")
        return RatFunc(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        return self._other(other) / self

    def __pow__(self, n: int):
        if n < 0:
            return RatFunc(Poly(self.field, [1])) / (self ** (-n))
        return RatFunc(self.num**n, self.den**n)

    def __eq__(self, other):
        if isinstance(other, (RatFunc, Poly)):
            o = self._other(other)
            return self.num * o.den == o.num * self.den
        return NotImplemented

    __hash__ = None

    def __call__(self, s):
        return evaluate(self, s)

    def __str__(self):
        if self.den.degree() == 0:
            return render_poly(self.num)
        return f"({render_poly(self.num)})/({render_poly(self.den)})"

    def __repr__(self):
        return f"RatFunc({self.field.spec}, {str(self)!r})"


def poly_arith(f: Poly, g: Poly, op: str) -> Poly:
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown op {op!r}")


def rat_arith(f, g, op: str) -> RatFunc:
    f = f if isinstance(f, RatFunc) else RatFunc(f)
    g = g if isinstance(g, RatFunc) else RatFunc(g)
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    if op == "div":
        return f / g
    raise ValueError(f"unknown op {op!r}")


def _horner(f: Poly, s: FieldElement) -> FieldElement:
    acc = s.parent.zero
    for c in reversed(f.coeffs):
        acc = acc * s + c
    return acc


def _align(f: Poly, s) -> Poly:
    """Coerce a ground-field polynomial to the field of ``s`` when needed."""
    if isinstance(s, FieldElement) and s.parent != f.field:
        if hasattr(s.parent, "coerce"):
            return f.map_coefficients(s.parent)
        raise MixedFields(f"cannot evaluate {f.field.spec} polynomial at {s.parent.spec} point")
    return f


def evaluate(f: Union[Poly, RatFunc], s) -> FieldElement:
    """``f(s)``; ground-field polynomials are coerced into an extension point's field."""
    if not isinstance(s, FieldElement):
        s = f.field(s)
    if isinstance(f, RatFunc):
        num, den = _align(f.num, s), _align(f.den, s)
        d = _horner(den, s)
        if d.is_zero():
            raise PoleAtPoint(f"denominator vanishes at {s}")
        return _horner(num, s) / d
    return _horner(_align(f, s), s)


def taylor_at(f: Poly, alpha) -> List[FieldElement]:
    """Coefficients a_0..a_n with f = sum a_i (X - alpha)^i.

    Repeated synthetic division by (X - alpha); a_0 = f(alpha).  The zero
    polynomial gives ``[]``.
    """
    if not isinstance(alpha, FieldElement):
        alpha = f.field(alpha)
    f = _align(f, alpha)
    work = list(f.coeffs)
    out = []
    while work:
        # divide work by (X - alpha): quotient q, remainder r
        acc = alpha.parent.zero
        quotient = [None] * (len(work) - 1)
        for i in range(len(work) - 1, -1, -1):
            acc = acc * alpha + work[i]
            if i > 0:
                quotient[i - 1] = acc
        out.append(acc)
        work = quotient
    return out


def finite_differences(f: Poly) -> List[FieldElement]:
    """Coefficients c_0..c_d with f = sum c_n binomial(X, n); c_n = (Delta^n f)(0)."""
    if f.is_zero():
        return []
    row = [evaluate(f, f.field(k)) for k in range(f.degree() + 1)]
    out = []
    while row:
        out.append(row[0])
        row = [row[i + 1] - row[i] for i in range(len(row) - 1)]
    return out


def binomial_poly(field: ValuedField, n: int) -> Poly:
    """binomial(X, n) = X(X-1)...(X-n+1)/n!"""
    p = Poly(field, [1])
    for k in range(n):
        p = p * Poly(field, [-k, 1])
    fact = 1
    for k in range(2, n + 1):
        fact *= k
    return Poly(field, [c / fact for c in p.coeffs])


def from_binomial_basis(field: ValuedField, cs: Sequence) -> Poly:
    out = Poly(field)
    for n, c in enumerate(cs):
        out = out + binomial_poly(field, n) * Poly(field, [c])
    return out
