"""Extended rational values and value groups.

Finite values are plain :class:`fractions.Fraction` objects; the extra point
at infinity is the singleton :data:`INF`.  ``INF`` interoperates with
``Fraction`` under ``+``, ``<``, ``min`` and ``max``, so code working with
valuations never has to branch on the finite case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Union

from .errors import EmptyList, NotAnElement, ParseError

__all__ = [
    "INF",
    "ExtValue",
    "ValueGroup",
    "as_value",
    "ev_add",
    "ev_min",
    "group_contains",
    "is_finite",
    "is_torsion_over",
    "parse_value",
    "render_value",
]


class _Infinity:
    """The value of zero.  Absorbs addition and dominates every rational."""

    _instance: Optional["_Infinity"] = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())

    def __hash__(self):
        return hash("vlab-infinity")

    def __eq__(self, other):
        return other is self

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return other is self

    def __gt__(self, other):
        return other is not self

    def __ge__(self, other):
        return True

    def __add__(self, other):
        return self

    __radd__ = __add__

    def __neg__(self):
        raise NotAnElement("-inf is not a value")

    def __mul__(self, other):
        if other == 0:
            raise NotAnElement("0 * inf is undefined")
        if other < 0:
            raise NotAnElement("negative multiple of inf")
        return self

    __rmul__ = __mul__


INF = _Infinity()

ExtValue = Union[Fraction, _Infinity]


def is_finite(x: ExtValue) -> bool:
    return x is not INF


def as_value(x) -> ExtValue:
    """Coerce ints, Fractions, rational strings and ``INF`` to an ExtValue."""
    if x is INF:
        return INF
    if isinstance(x, str):
        return parse_value(x)
    if isinstance(x, float):
        raise TypeError("floating point values are not accepted")
    return Fraction(x)


def parse_value(text: str) -> ExtValue:
    s = text.strip()
    if s in ("inf", "+inf", "oo", "infinity"):
        return INF
    try:
        if "." in s or "e" in s.lower():
            raise ValueError
        return Fraction(s)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"not an exact rational value: {text!r}") from None


def render_value(x: ExtValue) -> str:
    """``p/q`` in lowest terms (``p`` for integers), or ``inf``."""
    return "inf" if x is INF else str(Fraction(x))


def ev_add(a: ExtValue, b: ExtValue) -> ExtValue:
    return a + b


def ev_min(values: Iterable[ExtValue]) -> ExtValue:
    values = list(values)
    if not values:
        raise EmptyList("ev_min of an empty list")
    return min(values)


@dataclass(frozen=True)
class ValueGroup:
    """Either ``(1/e)Z`` (``e`` a positive integer) or all of ``Q`` (``e is None``)."""

    e: Optional[int] = 1

    def __post_init__(self):
        if self.e is not None and (not isinstance(self.e, int) or self.e < 1):
            raise ValueError(f"cyclic value group needs a positive integer scale, got {self.e!r}")

    @classmethod
    def cyclic(cls, e: int = 1) -> "ValueGroup":
        return cls(e)

    @classmethod
    def rationals(cls) -> "ValueGroup":
        return cls(None)

    @property
    def is_discrete(self) -> bool:
        return self.e is not None

    def __contains__(self, q) -> bool:
        return group_contains(self, q)

    def floor(self, q: Fraction) -> Fraction:
        """Largest group element ``<= q`` (discrete groups only)."""
        self._need_discrete()
        return Fraction(math.floor(q * self.e), self.e)

    def ceil(self, q: Fraction) -> Fraction:
        """Smallest group element ``>= q`` (discrete groups only)."""
        self._need_discrete()
        return Fraction(math.ceil(q * self.e), self.e)

    def next_above(self, q: Fraction) -> Fraction:
        """Smallest group element strictly greater than ``q``."""
        self._need_discrete()
        return self.floor(q) + Fraction(1, self.e)

    def prev_below(self, q: Fraction) -> Fraction:
        """Largest group element strictly less than ``q``."""
        self._need_discrete()
        return self.ceil(q) - Fraction(1, self.e)

    def _need_discrete(self):
        if self.e is None:
            raise ValueError("Q has no successor structure")

    def __str__(self):
        if self.e is None:
            return "Q"
        return "Z" if self.e == 1 else f"(1/{self.e})Z"


def group_contains(group: ValueGroup, q: ExtValue) -> bool:
    if q is INF:
        raise NotAnElement("inf is not an element of a value group")
    q = Fraction(q)
    if group.e is None:
        return True
    return group.e % q.denominator == 0


def is_torsion_over(group: ValueGroup, q: ExtValue) -> bool:
    """True iff ``n*q`` lies in ``group`` for some positive integer ``n``.

    Any rational has this property over ``(1/e)Z``: take ``n`` the
    denominator of ``q``.
    """
    if q is INF:
        raise NotAnElement("inf has no order over a value group")
    return group_contains(group, Fraction(q) * Fraction(q).denominator)


def torsion_order(group: ValueGroup, q: Fraction) -> int:
    """The least ``n >= 1`` with ``n*q`` in ``group``."""
    q = Fraction(q)
    n = 1
    while not group_contains(group, n * q):
        n += 1
    return n
