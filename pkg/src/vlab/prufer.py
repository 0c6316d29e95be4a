"""Deciding whether Int(S, V) is a Prüfer domain, with certificates.

Int(S, V) fails to be Prüfer exactly when S contains a pseudo-monotone
sequence with a pseudo-limit algebraic over K.  A negative verdict always
names such a sequence (a catalog family) and a pseudo-limit, so it can be
replayed; a positive verdict names the reason no such sequence exists.

Verdicts involving sequence families hold relative to the window N and to
the declared metadata; ``caveats`` records that.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import List, Optional, Tuple

from .errors import UnvalidatedFamily, VlabError
from .fields import FieldElement
from .gauss import GaussPoint
from .intring import _covering_balls, _finite_residue_dvr, int_contained_in_gauss
from .sequences import (
    DEFAULT_WINDOW,
    Kind,
    SeqFamily,
    classify_window,
    is_pseudo_limit,
    make_family,
    type_check,
    verified_limits,
)
from .sets import Ball, FiniteSet, Flavor, SubsetDesc, check_inside_V, stratify
from .values import INF, ExtValue, render_value

__all__ = [
    "PruferVerdict",
    "PseudoMonotoneWitness",
    "decide_prufer",
    "find_witness",
    "gauss_overring_exists",
]


@dataclass(frozen=True)
class PseudoMonotoneWitness:
    family: SeqFamily
    limit: Optional[FieldElement]
    breadth: ExtValue

    @property
    def kind(self) -> Kind:
        return self.family.kind

    def replay(self, N: int) -> bool:
        """Re-run the window checks at window N."""
        report = classify_window(self.family, N)
        if not report.consistent or report.kind is not self.family.kind:
            return False
        return self.limit is None or is_pseudo_limit(self.family, self.limit, N)

    def as_dict(self) -> dict:
        return {
            "type": "PseudoMonotoneWitness",
            "family": self.family.render(),
            "kind": self.family.kind.value,
            "limit": None if self.limit is None else str(self.limit),
            "limit_field": None if self.limit is None else self.limit.parent.spec,
            "breadth": render_value(self.breadth),
        }


@dataclass(frozen=True)
class Certificate:
    """A positive certificate: FiniteSet, Precompact, ZeroBreadthIdeal or TranscendentalType."""

    type: str
    detail: str

    def as_dict(self) -> dict:
        return {"type": self.type, "detail": self.detail}


@dataclass(frozen=True)
class Contribution:
    atom: str
    prufer: bool
    certificate: object


@dataclass(frozen=True)
class PruferVerdict:
    prufer: bool
    rule: str
    certificate: object
    caveats: Tuple[str, ...] = ()
    contributions: Tuple[Contribution, ...] = dc_field(default=(), compare=False)

    @property
    def witness(self) -> Optional[PseudoMonotoneWitness]:
        return self.certificate if isinstance(self.certificate, PseudoMonotoneWitness) else None


# ---------------------------------------------------------------------------
# witnesses inside balls and spheres


def _ball_witness(b: Ball) -> PseudoMonotoneWitness:
    V = b.field
    G = V.value_group
    c = b.center
    if b.flavor is Flavor.SPHERE:
        r = b.radius
        if V.residue_card is INF:
            fam = make_family(V, "arith", {"a": str(c), "d": f"t^({r})"})
            return PseudoMonotoneWitness(fam, c, r)
        # finite residue, non-discrete: fall towards c + t^r from above
        lim = c + V.monomial(r)
        fam = make_family(V, "hahn_pow", {"a": str(lim), "e_n": f"{r}+1/(n+1)"})
        return PseudoMonotoneWitness(fam, lim, r)
    if G.is_discrete:
        r = G.next_above(b.radius) if b.flavor is Flavor.OPEN else G.ceil(b.radius)
        if c.is_zero() and r == 0:
            return PseudoMonotoneWitness(make_family(V, "enum"), c, r)
        fam = make_family(V, "arith", {"a": str(c), "d": f"t^({r})"})
        return PseudoMonotoneWitness(fam, c, r)
    r = b.radius
    fam = make_family(V, "hahn_pow", {"a": str(c), "e_n": f"{r}+1/(n+1)"})
    return PseudoMonotoneWitness(fam, c, r)


# ---------------------------------------------------------------------------
# sequence-family atoms


def _validate(fam: SeqFamily, N: int):
    try:
        report = classify_window(fam, N)
    except VlabError as exc:
        raise UnvalidatedFamily(f"{fam.render()}: {exc}") from None
    if not report.consistent:
        raise UnvalidatedFamily(f"{fam.render()}: " + "; ".join(report.reasons))


def _family_contribution(fam: SeqFamily, N: int) -> Tuple[bool, object, List[str]]:
    _validate(fam, N)
    caveats = [f"{fam.name}: metadata verified on n=0..{N}, declared beyond"]
    limits = verified_limits(fam, N)
    if fam.kind is not Kind.CONVERGENT:
        lim = limits[0] if limits else fam.s(0)
        return False, PseudoMonotoneWitness(fam, lim, fam.breadth), caveats
    if fam.breadth is INF:
        return True, Certificate("ZeroBreadthIdeal", fam.render()), caveats
    if limits:
        return False, PseudoMonotoneWitness(fam, limits[0], fam.breadth), caveats
    T = fam.seq_type
    if T is None or T.tag == "Unknown":
        raise UnvalidatedFamily(f"{fam.render()}: a convergent family with finite breadth needs a declared type")
    check = type_check(fam, N)
    if T.tag == "Algebraic":
        if check.status != "Algebraic-verified":
            raise UnvalidatedFamily(f"{fam.render()}: algebraic witness fails at n={list(check.offending)}")
        lim = _linear_root(T.witness)
        if lim is not None and is_pseudo_limit(fam, lim, N):
            return False, PseudoMonotoneWitness(fam, lim, fam.breadth), caveats
        caveats.append(f"{fam.name}: algebraic pseudo-limit of degree {T.witness.degree()} is not constructed")
        return False, PseudoMonotoneWitness(fam, None, fam.breadth), caveats
    if check.status == "Transcendental-consistent":
        caveats.append(f"{fam.name}: transcendental type is consistent with probes, not proved")
        return True, Certificate("TranscendentalType", fam.render()), caveats
    # a probe whose distance keeps growing may be a pseudo-limit
    if check.probe is not None and is_pseudo_limit(fam, check.probe, N):
        return False, PseudoMonotoneWitness(fam, check.probe, fam.breadth), caveats
    raise UnvalidatedFamily(f"{fam.render()}: transcendental probes fail at n={list(check.offending)}")


def _linear_root(f) -> Optional[FieldElement]:
    if f.degree() != 1:
        return None
    return -f.coeffs[0] / f.coeffs[1]


def _cross_atom(S: SubsetDesc, N: int) -> Optional[PseudoMonotoneWitness]:
    """Look for a sup/inf equal to a family breadth around its declared limits."""
    for fam in S.families():
        if fam.breadth is INF:
            continue
        for alpha in fam.limits:
            if alpha.parent != S.field:
                continue
            st = stratify(S, alpha, fam.breadth, N)
            hit_low = st.gamma1 is not None and st.gamma1.value == fam.breadth and not st.gamma1.attained
            hit_high = st.gamma2 is not None and st.gamma2.value == fam.breadth and not st.gamma2.attained
            if (hit_low or hit_high) and is_pseudo_limit(fam, alpha, N):
                return PseudoMonotoneWitness(fam, alpha, fam.breadth)
    return None


# ---------------------------------------------------------------------------


def decide_prufer(S: SubsetDesc, N: int = DEFAULT_WINDOW) -> PruferVerdict:
    V = S.field
    check_inside_V(S, N)
    window_note = (f"window N={N}",)
    if S.is_finite:
        pts = ",".join(str(x) for x in S.points())
        return PruferVerdict(True, "FiniteSet", Certificate("FiniteSet", f"{{{pts}}}"))
    if _finite_residue_dvr(V):
        caveats: List[str] = []
        for fam in S.families():
            _validate(fam, N)
            caveats.append(f"{fam.name}: metadata verified on n=0..{N}, declared beyond")
        return PruferVerdict(
            True, "Precompact",
            Certificate("Precompact", f"every atom is precompact over {V.spec}"),
            tuple(caveats),
        )
    contributions: List[Contribution] = []
    caveats = []
    negative: Optional[PseudoMonotoneWitness] = None
    for atom in S.atoms:
        if isinstance(atom, FiniteSet):
            contributions.append(Contribution(atom.render(), True, Certificate("FiniteSet", atom.render())))
            continue
        if isinstance(atom, Ball):
            w = _ball_witness(atom)
            contributions.append(Contribution(atom.render(), False, w))
            caveats.append(f"{w.family.name}: synthesized witness checked on n=0..{N}")
        else:
            ok, cert, notes = _family_contribution(atom.family, N)
            contributions.append(Contribution(atom.render(), ok, cert))
            caveats.extend(notes)
            w = None if ok else cert
        if w is not None and negative is None:
            negative = w
    if negative is None:
        negative = _cross_atom(S, N)
    if negative is not None:
        return PruferVerdict(False, "PseudoMonotoneSequence", negative,
                             window_note + tuple(caveats), tuple(contributions))
    certs = [c.certificate for c in contributions if c.certificate.type != "FiniteSet"]
    cert = certs[0] if certs else contributions[0].certificate
    return PruferVerdict(True, cert.type, cert, window_note + tuple(caveats), tuple(contributions))


def find_witness(S: SubsetDesc, N: int = DEFAULT_WINDOW) -> Optional[PseudoMonotoneWitness]:
    try:
        return decide_prufer(S, N).witness
    except UnvalidatedFamily:
        return None


def _candidate_points(S: SubsetDesc, N: int) -> List[GaussPoint]:
    out = []
    for b in _covering_balls(S, N):
        out.append(GaussPoint(b.field, b.center, b.effective_radius()))
    for fam in S.families():
        for a in verified_limits(fam, N):
            if fam.breadth is not INF:
                out.append(GaussPoint(a.parent, a, fam.breadth))
    return out


def gauss_overring_exists(S: SubsetDesc, N: int = DEFAULT_WINDOW) -> Optional[GaussPoint]:
    """A Gauss point P with Int(S, V) inside V_P, if one is visible at window N."""
    if _finite_residue_dvr(S.field):
        return None
    for P in _candidate_points(S, N):
        if int_contained_in_gauss(S, P, N):
            return P
    return None
