"""Membership in Int(S, V) = {f in K[X] : f(S) in V}.

Ball atoms are decided exactly.  Over a valuation that is not discrete, or
has an infinite residue field, f is integer valued on B(alpha, gamma) iff
v_{alpha,gamma}(f) >= 0.  Over a DVR with finite residue field that test is
only sufficient, and the substitution X -> alpha + pi^m X reduces the
question to Int(V), decided by values at deg(f) + 1 well-distributed points
(for Q_p the points 0..deg f, i.e. the finite-difference test).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Tuple

from .errors import EquivalenceUnavailable, NoKnownLimit
from .fields import FieldElement, PadicRationals, ValuedField
from .gauss import GaussPoint, gauss_val
from .poly import Poly, evaluate, finite_differences, taylor_at
from .sequences import DEFAULT_WINDOW, Kind, classify_window, pseudo_limit_set, verified_limits
from .sets import Ball, FamilyAtom, FiniteSet, Flavor, SubsetDesc, check_inside_V, closure
from .values import INF, ExtValue

__all__ = [
    "MembershipVerdict",
    "MinimalGamma",
    "int_contained_in_gauss",
    "int_member",
    "minimal_gamma",
]


@dataclass(frozen=True)
class MembershipVerdict:
    member: bool
    criterion: str  # PointwiseEvaluation, GaussCriterion or FiniteDifference
    witness: Optional[Tuple[FieldElement, ExtValue]] = None
    window_certified: Optional[int] = None


def _finite_residue_dvr(V: ValuedField) -> bool:
    return V.is_discrete and V.residue_card is not INF


def _pointwise(f: Poly, pts) -> Optional[Tuple[FieldElement, ExtValue]]:
    for s in pts:
        val = s.parent.valuation(evaluate(f, s))
        if val < 0:
            return (s, val)
    return None


def well_distributed(V: ValuedField, n: int) -> List[FieldElement]:
    """u_0..u_{n-1}: u_k = sum a_{k_i} pi^i over the base-q digits k_i of k."""
    reps = V.residue_representatives()
    q = len(reps)
    pi = V.uniformizer()
    out = []
    for k in range(n):
        u, power = V.zero, V.one
        while k:
            k, digit = divmod(k, q)
            u = u + reps[digit] * power
            power = power * pi
        out.append(u)
    return out


def _dvr_ball(f: Poly, b: Ball) -> MembershipVerdict:
    V = b.field
    m = b.effective_radius()
    scale = V.element_of_value(m)
    g = f.compose_linear(b.center, scale)
    if isinstance(V, PadicRationals):
        ok = all(V.valuation(c) >= 0 for c in finite_differences(g))
        pts = [V(k) for k in range(g.degree() + 1)]
    else:
        pts = well_distributed(V, g.degree() + 1)
        ok = _pointwise(g, pts) is None
    if ok:
        return MembershipVerdict(True, "FiniteDifference")
    hit = _pointwise(g, pts)
    s = b.center + scale * hit[0]
    return MembershipVerdict(False, "FiniteDifference", (s, hit[1]))


def _gauss_witness(f: Poly, alpha: FieldElement, gamma: Fraction) -> Tuple[FieldElement, ExtValue]:
    """A point s with v(s - alpha) >= gamma and v(f(s)) < 0, given v_{alpha,gamma}(f) < 0."""
    V = alpha.parent
    G = V.value_group
    if G.is_discrete:
        gamma = G.ceil(gamma)
        pi_g = V.element_of_value(gamma)
        # the reduction of f(alpha + pi^gamma X) scaled to content 0 is a
        # nonzero polynomial of degree <= deg f over an infinite residue field
        for u in range(f.degree() + 2):
            s = alpha + pi_g * u
            val = V.valuation(evaluate(f, s))
            if val < 0:
                return (s, val)
        raise AssertionError("no witness among deg f + 2 residues")
    # try gamma, then gamma + 1/k, until one Taylor term is the strict minimum
    coeffs = taylor_at(f, alpha)
    vals = [(V.valuation(a), i) for i, a in enumerate(coeffs) if not a.is_zero()]
    k = 0
    while True:
        g2 = gamma + (Fraction(1, k) if k else 0)
        terms = sorted((v + i * g2, i) for v, i in vals)
        if terms[0][0] < 0 and (len(terms) == 1 or terms[1][0] > terms[0][0]):
            s = alpha + V.element_of_value(g2)
            return (s, V.valuation(evaluate(f, s)))
        k += 1


def _ball_member(f: Poly, b: Ball) -> MembershipVerdict:
    V = b.field
    if _finite_residue_dvr(V):
        return _dvr_ball(f, b)
    P = GaussPoint(V, b.center, b.effective_radius())
    if gauss_val(P, f) >= 0:
        return MembershipVerdict(True, "GaussCriterion")
    return MembershipVerdict(False, "GaussCriterion", _gauss_witness(f, b.center, P.gamma))


def _sphere_dvr(f: Poly, b: Ball) -> MembershipVerdict:
    # a sphere over a finite-residue DVR is a finite union of closed balls
    V = b.field
    pi_r = V.element_of_value(b.radius)
    step = V.value_group.next_above(b.radius)
    for u in V.residue_representatives()[1:]:
        verdict = _dvr_ball(f, Ball(b.center + pi_r * u, step))
        if not verdict.member:
            return verdict
    return MembershipVerdict(True, "FiniteDifference")


def _limit_balls(fam, N: int) -> List[Ball]:
    out = []
    for a in verified_limits(fam, N):
        try:
            out.append(pseudo_limit_set(fam, a, N))
        except NoKnownLimit:
            pass
    if fam.kind is not Kind.CONVERGENT and not out:
        out.append(pseudo_limit_set(fam, fam.s(0), N))
    return out


def _family_member(f: Poly, fam, N: int) -> MembershipVerdict:
    hit = _pointwise(f, fam.terms(N))
    if hit:
        return MembershipVerdict(False, "PointwiseEvaluation", hit, N)
    V = fam.field
    if fam.breadth is INF:
        for a in verified_limits(fam, N):
            val = a.parent.valuation(evaluate(f, a))
            if val < 0:
                return MembershipVerdict(False, "PointwiseEvaluation", (a, val), N)
        return MembershipVerdict(True, "PointwiseEvaluation", None, N)
    if _finite_residue_dvr(V):
        return MembershipVerdict(True, "PointwiseEvaluation", None, N)
    for b in _limit_balls(fam, N):
        # open limit balls have the closed ball of the same radius as closure
        if gauss_val(GaussPoint(b.field, b.center, b.radius), f) < 0:
            # the sequence accumulates on this ball, so a far term fails too
            far = _pointwise(f, [fam.s(n) for n in range(N + 1, 4 * N + 4)])
            return MembershipVerdict(False, "GaussCriterion", far, N)
    return MembershipVerdict(True, "GaussCriterion", None, N)


def int_member(S: SubsetDesc, f: Poly, N: int = DEFAULT_WINDOW) -> MembershipVerdict:
    """Decide f in Int(S, V); atoms are combined with AND in description order."""
    check_inside_V(S, N)
    if f.field != S.field:
        f = f.map_coefficients(S.field)
    verdicts = []
    for atom in S.atoms:
        if isinstance(atom, FiniteSet):
            hit = _pointwise(f, atom.points)
            v = MembershipVerdict(hit is None, "PointwiseEvaluation", hit)
        elif isinstance(atom, FamilyAtom):
            v = _family_member(f, atom.family, N)
        else:
            c = closure(SubsetDesc(S.field, [atom])).atoms[0]
            if c.flavor is Flavor.SPHERE:
                v = _sphere_dvr(f, c)
            else:
                v = _ball_member(f, c)
        if not v.member:
            return v
        verdicts.append(v)
    crit = _dominant(verdicts)
    window = max((v.window_certified for v in verdicts if v.window_certified), default=None)
    return MembershipVerdict(True, crit, None, window)


def _dominant(verdicts: List[MembershipVerdict]) -> str:
    for name in ("FiniteDifference", "GaussCriterion"):
        if any(v.criterion == name for v in verdicts):
            return name
    return "PointwiseEvaluation"


# ---------------------------------------------------------------------------
# Int(S, V) inside a Gauss valuation ring


def _covering_balls(S: SubsetDesc, N: int) -> List[Ball]:
    """Closed balls known to lie in the polynomial closure of S."""
    out = []
    for atom in S.atoms:
        if isinstance(atom, Ball):
            c = closure(SubsetDesc(S.field, [atom])).atoms[0]
            if c.flavor is Flavor.CLOSED:
                out.append(c)
        elif isinstance(atom, FamilyAtom):
            fam = atom.family
            if not classify_window(fam, N).consistent:
                continue
            for b in _limit_balls(fam, N):
                if b.flavor is Flavor.OPEN:
                    b = closure(SubsetDesc(b.field, [b])).atoms[0]
                out.append(b)
    return out


def _require_equivalence(V: ValuedField):
    if _finite_residue_dvr(V):
        raise EquivalenceUnavailable(
            f"{V.spec} is a DVR with finite residue field; ball containment does not characterize Int(S,V) there"
        )


def _ball_contains(b: Ball, alpha: FieldElement, gamma: Fraction) -> bool:
    if alpha.parent != b.field:
        center = alpha.parent.coerce(b.center)
    else:
        center = b.center
    r = b.effective_radius()
    G = alpha.parent.value_group
    g = G.ceil(gamma) if G.is_discrete else gamma
    return g >= r and alpha.parent.valuation(alpha - center) >= r


def int_contained_in_gauss(S: SubsetDesc, P: GaussPoint, N: int = DEFAULT_WINDOW) -> bool:
    """Whether Int(S, V) is inside V_{alpha,gamma}, i.e. B(alpha, gamma) lies in the closure of S."""
    _require_equivalence(S.field)
    return any(_ball_contains(b, P.alpha, P.gamma) for b in _covering_balls(S, N))


@dataclass(frozen=True)
class MinimalGamma:
    gamma: Fraction
    attained: bool


def minimal_gamma(S: SubsetDesc, alpha, N: int = DEFAULT_WINDOW) -> Optional[MinimalGamma]:
    """inf of the gamma' with Int(S, V) inside V_{alpha,gamma'}."""
    _require_equivalence(S.field)
    if not isinstance(alpha, FieldElement):
        alpha = S.field(alpha)
    radii = [
        b.effective_radius()
        for b in _covering_balls(S, N)
        if _ball_contains(b, alpha, b.effective_radius())
    ]
    if not radii:
        return None
    g = min(radii)
    return MinimalGamma(g, g in S.field.value_group)
