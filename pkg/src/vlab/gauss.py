"""The valuations v_{alpha,gamma} on K[X] and K(X).

For f = sum a_i (X - alpha)^i,

    v_{alpha,gamma}(f) = min_i v(a_i) + i*gamma,

extended to quotients by subtraction.  ``alpha`` may live in a quadratic
extension of the ground field; ground-field polynomials are then pushed
through the canonical embedding before recentering.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from .errors import MixedFields, NotAnElement
from .fields import FieldElement, ValuedField
from .poly import Poly, RatFunc, taylor_at
from .values import INF, ExtValue, ValueGroup, as_value, is_torsion_over

__all__ = [
    "GaussPoint",
    "RingOrder",
    "compare_rings",
    "gauss_val",
    "is_overring_of_VX",
    "is_residually_transcendental",
]


@dataclass(frozen=True)
class GaussPoint:
    """A centre ``alpha`` in ``base`` and a finite radius ``gamma``."""

    base: ValuedField
    alpha: FieldElement
    gamma: Fraction

    def __post_init__(self):
        gamma = as_value(self.gamma)
        if gamma is INF:
            raise NotAnElement("a Gauss point needs a finite gamma")
        object.__setattr__(self, "gamma", gamma)
        alpha = self.alpha
        if not isinstance(alpha, FieldElement):
            alpha = self.base(alpha)
        elif alpha.parent != self.base:
            alpha = getattr(self.base, "coerce", self.base)(alpha)
        object.__setattr__(self, "alpha", alpha)

    def __hash__(self):
        return hash((self.base, self.alpha, self.gamma))

    def __str__(self):
        return f"({self.alpha}, {self.gamma})"


def gauss_val(P: GaussPoint, f: Union[Poly, RatFunc]) -> ExtValue:
    if isinstance(f, RatFunc):
        top = gauss_val(P, f.num)
        return INF if top is INF else top - gauss_val(P, f.den)
    if f.field != P.base:
        if not hasattr(P.base, "coerce"):
            raise MixedFields(f"{f.field.spec} polynomial at a {P.base.spec} point")
        f = f.map_coefficients(P.base)
    v = P.base.valuation
    best = INF
    for i, a in enumerate(taylor_at(f, P.alpha)):
        if not a.is_zero():
            best = min(best, v(a) + i * P.gamma)
    return best


def is_residually_transcendental(P: GaussPoint, group: ValueGroup = None) -> bool:
    """Whether v_{alpha,gamma} has residue field transcendental over that of V.

    This holds exactly when gamma is torsion over the value group of V.
    """
    group = group if group is not None else P.base.value_group
    return is_torsion_over(group, P.gamma)


class RingOrder(enum.Enum):
    SUBSET = "Subset"
    SUPERSET = "Superset"
    EQUAL = "Equal"
    INCOMPARABLE = "Incomparable"


def _contained(v_diff: ExtValue, g1: Fraction, g2: Fraction) -> bool:
    # V_{a1,g1} ∩ K[X] ⊆ V_{a2,g2} ∩ K[X]
    return g1 <= g2 and v_diff >= g1


def compare_rings(P1: GaussPoint, P2: GaussPoint) -> RingOrder:
    """Order of V_{a1,g1} ∩ K[X] against V_{a2,g2} ∩ K[X]."""
    if P1.base != P2.base:
        raise MixedFields(f"{P1.base.spec} vs {P2.base.spec}")
    d = P1.base.valuation(P1.alpha - P2.alpha)
    sub = _contained(d, P1.gamma, P2.gamma)
    sup = _contained(d, P2.gamma, P1.gamma)
    if sub and sup:
        return RingOrder.EQUAL
    if sub:
        return RingOrder.SUBSET
    if sup:
        return RingOrder.SUPERSET
    return RingOrder.INCOMPARABLE


def is_overring_of_VX(P: GaussPoint) -> bool:
    return P.base.valuation(P.alpha) >= 0 and P.gamma >= 0
