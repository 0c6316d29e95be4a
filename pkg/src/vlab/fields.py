"""Rank-one valued fields with exact elements.

Four field kinds are provided:

``PadicRationals(p)``
    Q with the p-adic valuation.
``QuadraticExtension(d, p, r0)``
    Q(w), w^2 = d, with one chosen extension of the p-adic valuation.  When
    p splits, ``r0`` (a square root of d mod p) picks the branch.
``SeriesField(integral=True)``
    Q(t) with the t-adic valuation (field spec ``tadic``).
``SeriesField(integral=False, char=p)``
    Fractions of generalized polynomials sum c_e t^e with rational exponents
    e, valued by the least exponent (field specs ``hahn`` and ``hahn:fp=p``).

Elements are immutable and support ``+ - * /`` with each other and with
``int``/``Fraction``.  Combining elements of different fields raises
:class:`~vlab.errors.MixedFields`; moving a rational into a quadratic
extension is explicit, via :meth:`QuadraticExtension.coerce`.
"""

from __future__ import annotations

import math
import random
import re
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import (
    BranchRequired,
    DivisionByZero,
    MixedFields,
    NotIntegral,
    ParseError,
)
from .values import INF, ExtValue, ValueGroup

__all__ = [
    "FieldElement",
    "PadicRationals",
    "QuadraticExtension",
    "SeriesField",
    "ValuedField",
    "field_arith",
    "parse_field",
    "residue_distinct",
    "valuation",
    "vp",
]


def vp(n, p: int) -> ExtValue:
    """p-adic valuation of an int or Fraction."""
    q = Fraction(n)
    if q == 0:
        return INF
    num, den = q.numerator, q.denominator
    v = 0
    while num % p == 0:
        num //= p
        v += 1
    while den % p == 0:
        den //= p
        v -= 1
    return Fraction(v)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    i = 2
    while i * i <= n:
        if n % (i * i) == 0:
            return False
        i += 1
    return True


class FieldElement:
    """Base class for elements; subclasses implement the underscored hooks."""

    __slots__ = ("parent",)

    def _coerce_other(self, other):
        if isinstance(other, FieldElement):
            if other.parent != self.parent:
                raise MixedFields(f"{self.parent.spec} vs {other.parent.spec}")
            return other
        if isinstance(other, (int, Fraction)):
            return self.parent(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce_other(other)
        return NotImplemented if other is NotImplemented else self._add(other)

    def __radd__(self, other):
        other = self._coerce_other(other)
        return NotImplemented if other is NotImplemented else other._add(self)

    def __sub__(self, other):
        other = self._coerce_other(other)
        return NotImplemented if other is NotImplemented else self._add(other._neg())

    def __rsub__(self, other):
        other = self._coerce_other(other)
        return NotImplemented if other is NotImplemented else other._add(self._neg())

    def __mul__(self, other):
        other = self._coerce_other(other)
        return NotImplemented if other is NotImplemented else self._mul(other)

    def __rmul__(self, other):
        other = self._coerce_other(other)
        return NotImplemented if other is NotImplemented else other._mul(self)

    def __truediv__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("division by zero in " + self.parent.spec)
        return self._mul(other._inv())

    def __rtruediv__(self, other):
        other = self._coerce_other(other)
        if other is NotImplemented:
            return NotImplemented
        return other / self

    def __neg__(self):
        return self._neg()

    def __pos__(self):
        return self

    def __pow__(self, n: int):
        if not isinstance(n, int):
            raise TypeError("only integer powers of field elements")
        if n < 0:
            return self.parent.one / (self ** (-n))
        result = self.parent.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.parent(other)
        if not isinstance(other, FieldElement) or other.parent != self.parent:
            return NotImplemented if not isinstance(other, FieldElement) else False
        return self._eq(other)

    def __ne__(self, other):
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __bool__(self):
        return not self.is_zero()

    def valuation(self) -> ExtValue:
        return self.parent.valuation(self)

    def __str__(self):
        return self.parent.render(self)

    def __repr__(self):
        return f"{self.parent.spec}<{self.parent.render(self)}>"


class ValuedField:
    """Common interface of the concrete fields.

    Attributes set by subclasses: ``spec`` (canonical field spec string),
    ``value_group``, ``residue_card`` (an int, or ``INF`` for an infinite
    residue field) and ``generator_name`` (``'t'``, ``'w'`` or ``None``).
    """

    spec: str
    kind: str
    value_group: ValueGroup
    residue_card: object
    generator_name: Optional[str] = None

    @property
    def is_discrete(self) -> bool:
        return self.value_group.is_discrete

    @property
    def zero(self) -> FieldElement:
        return self(0)

    @property
    def one(self) -> FieldElement:
        return self(1)

    def __call__(self, x) -> FieldElement:
        raise NotImplementedError

    def valuation(self, x: FieldElement) -> ExtValue:
        raise NotImplementedError

    def render(self, x: FieldElement) -> str:
        raise NotImplementedError

    def generator(self) -> FieldElement:
        raise NotImplementedError(f"{self.spec} has no named generator")

    def parse_element(self, text: str) -> FieldElement:
        from .literals import parse_element

        return parse_element(self, text)

    def element_of_value(self, q: Fraction) -> FieldElement:
        """An element whose valuation is exactly ``q`` (``q`` must lie in the value group)."""
        raise NotImplementedError

    def residue_representatives(self) -> List[FieldElement]:
        """Representatives of V/M, ``0`` first (finite residue fields only)."""
        raise NotImplementedError(f"{self.spec} has an infinite residue field")

    def uniformizer(self) -> FieldElement:
        if not self.is_discrete:
            raise ValueError(f"{self.spec} is not discrete")
        return self.element_of_value(Fraction(1, self.value_group.e))

    def random_element(self, rng: random.Random, integral: bool = False) -> FieldElement:
        raise NotImplementedError

    def random_unit(self, rng: random.Random) -> FieldElement:
        """A random element of valuation 0."""
        while True:
            x = self.random_element(rng, integral=True)
            if self.valuation(x) == 0:
                return x

    def random_value(self, rng: random.Random, lo: int = 0, hi: int = 3) -> Fraction:
        """A random element of the value group in ``[lo, hi]``."""
        if self.value_group.e is None:
            den = rng.choice([1, 1, 2, 3, 4, 6])
        else:
            den = self.value_group.e
        return Fraction(rng.randint(lo * den, hi * den), den)

    def __repr__(self):
        return f"parse_field({self.spec!r})"

    def __str__(self):
        return self.spec


# ---------------------------------------------------------------------------
# Q with the p-adic valuation


class RationalElement(FieldElement):
    __slots__ = ("q",)

    def __init__(self, parent: "PadicRationals", q: Fraction):
        self.parent = parent
        self.q = q

    def _add(self, o):
        return RationalElement(self.parent, self.q + o.q)

    def _neg(self):
        return RationalElement(self.parent, -self.q)

    def _mul(self, o):
        return RationalElement(self.parent, self.q * o.q)

    def _inv(self):
        return RationalElement(self.parent, 1 / self.q)

    def _eq(self, o):
        return self.q == o.q

    def is_zero(self):
        return self.q == 0

    def __hash__(self):
        return hash(self.q)

    def __int__(self):
        if self.q.denominator != 1:
            raise ValueError(f"{self.q} is not an integer")
        return self.q.numerator


class PadicRationals(ValuedField):
    kind = "PadicRat"

    def __init__(self, p: int):
        if not _is_prime(p):
            raise ParseError(f"qp needs a prime, got {p}")
        self.p = p
        self.spec = f"qp:{p}"
        self.value_group = ValueGroup.cyclic(1)
        self.residue_card = p

    def __eq__(self, other):
        return isinstance(other, PadicRationals) and other.p == self.p

    def __hash__(self):
        return hash(("qp", self.p))

    def __call__(self, x) -> RationalElement:
        if isinstance(x, RationalElement):
            if x.parent != self:
                raise MixedFields(f"{x.parent.spec} vs {self.spec}")
            return x
        if isinstance(x, str):
            return self.parse_element(x)
        if isinstance(x, FieldElement):
            raise MixedFields(f"cannot view {x.parent.spec} element in {self.spec}")
        return RationalElement(self, Fraction(x))

    def valuation(self, x) -> ExtValue:
        return vp(x.q, self.p)

    def render(self, x) -> str:
        return str(x.q)

    def element_of_value(self, q) -> RationalElement:
        q = Fraction(q)
        if q.denominator != 1:
            raise ValueError(f"{q} is not in the value group of {self.spec}")
        return self(Fraction(self.p) ** int(q))

    def residue_representatives(self):
        return [self(i) for i in range(self.p)]

    def random_element(self, rng, integral=False):
        num = rng.randint(-60, 60)
        den = rng.choice([1, 1, 2, 3, self.p, self.p * self.p, 7, 10])
        x = Fraction(num, den)
        if integral:
            x = Fraction(x.numerator, _strip_p(x.denominator, self.p))
        return self(x)


def _strip_p(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n


# ---------------------------------------------------------------------------
# Quadratic extensions Q(w), w^2 = d


class QuadraticElement(FieldElement):
    __slots__ = ("a", "b")

    def __init__(self, parent: "QuadraticExtension", a: Fraction, b: Fraction):
        self.parent = parent
        self.a = a
        self.b = b

    def _add(self, o):
        return QuadraticElement(self.parent, self.a + o.a, self.b + o.b)

    def _neg(self):
        return QuadraticElement(self.parent, -self.a, -self.b)

    def _mul(self, o):
        d = self.parent.d
        return QuadraticElement(
            self.parent, self.a * o.a + d * self.b * o.b, self.a * o.b + self.b * o.a
        )

    def _inv(self):
        n = self.norm()
        return QuadraticElement(self.parent, self.a / n, -self.b / n)

    def _eq(self, o):
        return self.a == o.a and self.b == o.b

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def __hash__(self):
        if self.b == 0:
            return hash(self.a)
        return hash((self.a, self.b))

    def norm(self) -> Fraction:
        return self.a * self.a - self.parent.d * self.b * self.b

    def conjugate(self) -> "QuadraticElement":
        return QuadraticElement(self.parent, self.a, -self.b)


class QuadraticExtension(ValuedField):
    """Q(w) with w^2 = d, valued over the p-adic valuation of Q.

    ``d`` must be a squarefree integer other than 0 and 1 and ``p`` an odd
    prime.  Three splitting types occur:

    * split (``d`` a nonzero square mod ``p``): two extensions, selected by
      ``r0`` with ``r0^2 = d (mod p)``; value group Z, residue field F_p.
    * inert: one extension, value group Z, residue field F_{p^2}.
    * ramified (``p | d``): one extension, value group (1/2)Z, residue F_p.
    """

    kind = "QuadExt"
    generator_name = "w"

    def __init__(self, d: int, p: int, r0: Optional[int] = None):
        if p == 2 or not _is_prime(p):
            raise ParseError(f"quad needs an odd prime, got p={p}")
        if d in (0, 1) or not _is_squarefree(d):
            raise ParseError(f"quad needs a squarefree d not in {{0, 1}}, got d={d}")
        self.d = d
        self.p = p
        self.ground = PadicRationals(p)
        if d % p == 0:
            self.splitting = "ramified"
        elif pow(d % p, (p - 1) // 2, p) == 1:
            self.splitting = "split"
        else:
            self.splitting = "inert"
        if self.splitting == "split":
            if r0 is not None:
                r0 %= p
                if (r0 * r0 - d) % p != 0:
                    raise ParseError(f"r0={r0} is not a square root of {d} mod {p}")
        elif r0 is not None:
            raise ParseError(f"p={p} does not split in Q(sqrt({d})); no branch to choose")
        self.r0 = r0
        self._lifts: Dict[int, int] = {} if r0 is None else {1: r0}
        self.value_group = ValueGroup.cyclic(2 if self.splitting == "ramified" else 1)
        self.residue_card = p * p if self.splitting == "inert" else p
        self.spec = f"quad:d={d},p={p}" + (f",r0={r0}" if r0 is not None else "")

    def __eq__(self, other):
        return (
            isinstance(other, QuadraticExtension)
            and (other.d, other.p, other.r0) == (self.d, self.p, self.r0)
        )

    def __hash__(self):
        return hash(("quad", self.d, self.p, self.r0))

    def other_branch(self) -> "QuadraticExtension":
        """The conjugate extension (split case only)."""
        if self.splitting != "split" or self.r0 is None:
            raise BranchRequired(f"{self.spec} has no second branch")
        return QuadraticExtension(self.d, self.p, (-self.r0) % self.p)

    def __call__(self, x) -> QuadraticElement:
        if isinstance(x, QuadraticElement):
            if x.parent != self:
                raise MixedFields(f"{x.parent.spec} vs {self.spec}")
            return x
        if isinstance(x, str):
            return self.parse_element(x)
        if isinstance(x, FieldElement):
            raise MixedFields(f"use coerce() to move {x.parent.spec} elements into {self.spec}")
        return QuadraticElement(self, Fraction(x), Fraction(0))

    def coerce(self, x) -> QuadraticElement:
        """Canonical embedding of the ground field Q into Q(w)."""
        if isinstance(x, RationalElement):
            if x.parent.p != self.p:
                raise MixedFields(f"{x.parent.spec} does not lie under {self.spec}")
            return QuadraticElement(self, x.q, Fraction(0))
        return self(x)

    def generator(self) -> QuadraticElement:
        return QuadraticElement(self, Fraction(0), Fraction(1))

    def element(self, a, b) -> QuadraticElement:
        return QuadraticElement(self, Fraction(a), Fraction(b))

    def root_mod(self, k: int) -> int:
        """The chosen square root of d modulo p^k, lifted by Newton iteration."""
        if self.r0 is None:
            raise BranchRequired(f"{self.spec}: choose r0 to fix an extension")
        if k in self._lifts:
            return self._lifts[k]
        j = max(i for i in self._lifts if i <= k)
        r = self._lifts[j]
        while j < k:
            j = min(2 * j, k)
            mod = self.p**j
            r = (r - (r * r - self.d) * pow(2 * r, -1, mod)) % mod
            self._lifts[j] = r
        return r % self.p**k

    def valuation(self, x: QuadraticElement) -> ExtValue:
        if x.is_zero():
            return INF
        if self.splitting != "split":
            return vp(x.norm(), self.p) / 2
        den = math.lcm(x.a.denominator, x.b.denominator)
        A = int(x.a * den)
        B = int(x.b * den)
        shift = vp(den, self.p)
        k = 1
        while True:
            mod = self.p**k
            z = (A + B * self.root_mod(k)) % mod
            if z != 0:
                return vp(z, self.p) - shift
            k *= 2

    def render(self, x: QuadraticElement) -> str:
        return _render_linear(x.a, x.b, "w")

    def element_of_value(self, q) -> QuadraticElement:
        q = Fraction(q)
        if q not in self.value_group:
            raise ValueError(f"{q} is not in the value group of {self.spec}")
        if self.splitting == "ramified":
            return self.generator() ** int(2 * q)
        return self(Fraction(self.p) ** int(q))

    def residue_representatives(self):
        reps = [self(i) for i in range(self.p)]
        if self.splitting == "inert":
            reps = [self.element(a, b) for b in range(self.p) for a in range(self.p)]
        return reps

    def random_element(self, rng, integral=False):
        while True:
            a = Fraction(rng.randint(-40, 40), rng.choice([1, 1, 2, 3, self.p]))
            b = Fraction(rng.randint(-40, 40), rng.choice([1, 1, 2, 3, self.p]))
            x = self.element(a, b)
            if not integral or self.valuation(x) >= 0:
                return x


def _render_linear(a: Fraction, b: Fraction, sym: str) -> str:
    if b == 0:
        return str(a)
    if b == 1:
        tail = sym
    elif b == -1:
        tail = "-" + sym
    else:
        tail = f"{b}*{sym}"
    if a == 0:
        return tail
    return f"{a}{tail}" if tail.startswith("-") else f"{a}+{tail}"


# ---------------------------------------------------------------------------
# Generalized polynomials and their fractions: tadic, hahn, hahn:fp=p

# A generalized polynomial is a tuple of (exponent, coefficient) pairs sorted
# by exponent, with nonzero coefficients.  Coefficients are Fractions in
# characteristic 0 and ints in [0, p) in characteristic p.

GPoly = Tuple[Tuple[Fraction, object], ...]


def _gp_norm(terms: Dict[Fraction, object], m: Optional[int]) -> GPoly:
    if m is None:
        return tuple(sorted((e, c) for e, c in terms.items() if c != 0))
    return tuple(sorted((e, c % m) for e, c in terms.items() if c % m != 0))


def _gp_add(f: GPoly, g: GPoly, m) -> GPoly:
    acc = dict(f)
    for e, c in g:
        acc[e] = acc.get(e, 0) + c
    return _gp_norm(acc, m)


def _gp_neg(f: GPoly, m) -> GPoly:
    if m is None:
        return tuple((e, -c) for e, c in f)
    return tuple((e, (-c) % m) for e, c in f)


def _gp_mul(f: GPoly, g: GPoly, m) -> GPoly:
    if len(f) == 1 and len(g) == 1:
        (e1, c1), (e2, c2) = f[0], g[0]
        return _gp_norm({e1 + e2: c1 * c2}, m)
    acc: Dict[Fraction, object] = {}
    for e1, c1 in f:
        for e2, c2 in g:
            e = e1 + e2
            acc[e] = acc.get(e, 0) + c1 * c2
    return _gp_norm(acc, m)


def _c_inv(c, m):
    return Fraction(1) / c if m is None else pow(c, -1, m)


def _gp_scale(f: GPoly, e0: Fraction, c0, m) -> GPoly:
    """Multiply f by the monomial c0 * t^e0."""
    if m is None:
        return tuple((e + e0, c * c0) for e, c in f)
    return tuple((e + e0, (c * c0) % m) for e, c in f)


_ONE_GP: GPoly = ((Fraction(0), 1),)


class SeriesElement(FieldElement):
    __slots__ = ("num", "den")

    def __init__(self, parent: "SeriesField", num: GPoly, den: GPoly = _ONE_GP):
        self.parent = parent
        m = parent.char or None
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            den = _ONE_GP
        elif len(den) == 1:
            e0, c0 = den[0]
            num = _gp_scale(num, -e0, _c_inv(c0, m), m)
            den = _ONE_GP
        else:
            e0, c0 = den[0]
            inv = _c_inv(c0, m)
            num = _gp_scale(num, -e0, inv, m)
            den = _gp_scale(den, -e0, inv, m)
        self.num = num
        self.den = den

    @property
    def _m(self):
        return self.parent.char or None

    def _add(self, o):
        m = self._m
        if self.den == o.den:
            return SeriesElement(self.parent, _gp_add(self.num, o.num, m), self.den)
        num = _gp_add(_gp_mul(self.num, o.den, m), _gp_mul(o.num, self.den, m), m)
        return SeriesElement(self.parent, num, _gp_mul(self.den, o.den, m))

    def _neg(self):
        return SeriesElement(self.parent, _gp_neg(self.num, self._m), self.den)

    def _mul(self, o):
        m = self._m
        return SeriesElement(self.parent, _gp_mul(self.num, o.num, m), _gp_mul(self.den, o.den, m))

    def _inv(self):
        return SeriesElement(self.parent, self.den, self.num)

    def _eq(self, o):
        if self.den == o.den:
            return self.num == o.num
        m = self._m
        return _gp_mul(self.num, o.den, m) == _gp_mul(o.num, self.den, m)

    def is_zero(self):
        return not self.num

    def is_monomial(self) -> bool:
        return len(self.num) <= 1 and self.den == _ONE_GP

    def leading_term(self) -> Tuple[Fraction, object]:
        """(exponent, coefficient) of the lowest-order term.

        Denominators are normalized to start with ``1*t^0``, so this is
        independent of the fraction representative.
        """
        return self.num[0] if self.num else (INF, 0)

    def __hash__(self):
        return hash(self.leading_term())


class SeriesField(ValuedField):
    """Q(t) (``integral=True``) or fractions of generalized polynomials in t."""

    generator_name = "t"

    def __init__(self, integral: bool = False, char: int = 0):
        if char and not _is_prime(char):
            raise ParseError(f"fp needs a prime, got {char}")
        if integral and char:
            raise ParseError("tadic is over Q only")
        self.integral = integral
        self.char = char
        if integral:
            self.kind = "FuncFieldTadic"
            self.spec = "tadic"
            self.value_group = ValueGroup.cyclic(1)
        else:
            self.kind = "HahnSeries"
            self.spec = "hahn" + (f":fp={char}" if char else "")
            self.value_group = ValueGroup.rationals()
        self.residue_card = char if char else INF

    def __eq__(self, other):
        return (
            isinstance(other, SeriesField)
            and other.integral == self.integral
            and other.char == self.char
        )

    def __hash__(self):
        return hash(("series", self.integral, self.char))

    def _coef(self, x):
        x = Fraction(x)
        if not self.char:
            return x
        if x.denominator % self.char == 0:
            raise DivisionByZero(f"{x} has no image in F_{self.char}")
        return (x.numerator * pow(x.denominator, -1, self.char)) % self.char

    def __call__(self, x) -> SeriesElement:
        if isinstance(x, SeriesElement):
            if x.parent != self:
                raise MixedFields(f"{x.parent.spec} vs {self.spec}")
            return x
        if isinstance(x, str):
            return self.parse_element(x)
        if isinstance(x, FieldElement):
            raise MixedFields(f"cannot view {x.parent.spec} element in {self.spec}")
        return SeriesElement(self, _gp_norm({Fraction(0): self._coef(x)}, self.char or None))

    def monomial(self, e, c=1) -> SeriesElement:
        e = Fraction(e)
        if self.integral and e.denominator != 1:
            raise ParseError(f"tadic exponents must be integers, got {e}")
        return SeriesElement(self, _gp_norm({e: self._coef(c)}, self.char or None))

    def from_terms(self, terms: Iterable[Tuple[object, object]]) -> SeriesElement:
        acc: Dict[Fraction, object] = {}
        for e, c in terms:
            e = Fraction(e)
            if self.integral and e.denominator != 1:
                raise ParseError(f"tadic exponents must be integers, got {e}")
            acc[e] = acc.get(e, 0) + self._coef(c)
        return SeriesElement(self, _gp_norm(acc, self.char or None))

    def generator(self) -> SeriesElement:
        return self.monomial(1)

    def valuation(self, x: SeriesElement) -> ExtValue:
        if not x.num:
            return INF
        return x.num[0][0] - x.den[0][0]

    def render(self, x: SeriesElement) -> str:
        if x.den == _ONE_GP:
            return self._render_gp(x.num)
        return f"({self._render_gp(x.num)})/({self._render_gp(x.den)})"

    def _render_gp(self, f: GPoly) -> str:
        if not f:
            return "0"
        out = ""
        for e, c in f:
            c = Fraction(c)
            mag = abs(c)
            if e == 0:
                body = str(mag)
            elif mag == 1:
                body = f"t^({e})"
            else:
                body = f"{mag}*t^({e})"
            if c < 0:
                out += "-" + body
            else:
                out += ("+" if out else "") + body
        return out

    def element_of_value(self, q) -> SeriesElement:
        return self.monomial(q)

    def residue_representatives(self):
        if not self.char:
            return super().residue_representatives()
        return [self(i) for i in range(self.char)]

    def random_element(self, rng, integral=False):
        nterms = rng.choice([1, 1, 2, 2, 3])
        lo = 0 if integral else -2
        terms = []
        for _ in range(nterms):
            if self.integral:
                e = Fraction(rng.randint(lo, 3))
            else:
                den = rng.choice([1, 2, 3, 4])
                e = Fraction(rng.randint(lo * den, 3 * den), den)
            c = Fraction(rng.randint(-9, 9), rng.choice([1, 1, 2, 3]))
            if self.char:
                c = Fraction(rng.randint(1, self.char - 1))
            terms.append((e, c))
        return self.from_terms(terms)


# ---------------------------------------------------------------------------

_FIELD_RE = re.compile(r"^(qp|tadic|hahn|quad)(?::(.*))?$")


def parse_field(spec: str) -> ValuedField:
    """Build a field from its spec string (``qp:5``, ``tadic``, ``hahn``,
    ``hahn:fp=3``, ``quad:d=-1,p=5,r0=2``)."""
    s = spec.strip().replace(" ", "")
    mt = _FIELD_RE.match(s)
    if not mt:
        raise ParseError(f"unknown field spec {spec!r}")
    kind, rest = mt.group(1), mt.group(2)
    try:
        if kind == "qp":
            return PadicRationals(int(rest))
        if kind == "tadic":
            if rest:
                raise ParseError("tadic takes no parameters")
            return SeriesField(integral=True)
        params = {}
        if rest:
            for item in rest.split(","):
                key, _, val = item.partition("=")
                params[key] = int(val)
        if kind == "hahn":
            if set(params) - {"fp"}:
                raise ParseError(f"hahn accepts only fp=, got {sorted(params)}")
            return SeriesField(integral=False, char=params.get("fp", 0))
        if set(params) - {"d", "p", "r0"} or not {"d", "p"} <= set(params):
            raise ParseError("quad needs d= and p= (and r0= when p splits)")
        return QuadraticExtension(params["d"], params["p"], params.get("r0"))
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ParseError):
            raise
        raise ParseError(f"bad field spec {spec!r}: {exc}") from None


def field_arith(x: FieldElement, y: FieldElement, op: str) -> FieldElement:
    if not isinstance(x, FieldElement) or not isinstance(y, FieldElement):
        raise TypeError("field_arith expects field elements")
    if x.parent != y.parent:
        raise MixedFields(f"{x.parent.spec} vs {y.parent.spec}")
    if op == "add":
        return x + y
    if op == "sub":
        return x - y
    if op == "mul":
        return x * y
    if op == "div":
        return x / y
    raise ValueError(f"unknown op {op!r}")


def valuation(field: ValuedField, x) -> ExtValue:
    return field.valuation(field(x))


def residue_distinct(field: ValuedField, xs: Sequence) -> bool:
    """True iff the (integral) elements ``xs`` lie in pairwise distinct classes mod M."""
    xs = [field(x) for x in xs]
    for x in xs:
        if field.valuation(x) < 0:
            raise NotIntegral(f"{x} is not in the valuation ring")
    for i in range(len(xs)):
        for j in range(i + 1, len(xs)):
            if field.valuation(xs[i] - xs[j]) > 0:
                return False
    return True
