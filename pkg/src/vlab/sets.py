"""Ultrametric balls, subset descriptions and polynomial closure.

Grammar (one field per description)::

    desc   := atom | 'union(' desc (';' desc)* ')'
    atom   := 'finite{' elem (',' elem)* '}'
            | 'cball(' elem ';' q ')' | 'oball(' elem ';' q ')'
            | 'sphere(' elem ';' q ')'
            | 'seq:' name '(' params ')' ['[' meta ']']

A radius is a valuation level, so a larger radius is a smaller ball.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple, Union

from .errors import MixedFields, NotInsideV, ParseError, UnsupportedAtom, UnsupportedFamily, UnsupportedRadius
from .fields import FieldElement, ValuedField
from .literals import split_top
from .values import INF, ExtValue, ValueGroup, as_value, parse_value, render_value

__all__ = [
    "Ball",
    "BallRelation",
    "FiniteSet",
    "FamilyAtom",
    "Flavor",
    "Stratification",
    "SubsetDesc",
    "ball_member",
    "ball_relate",
    "closure",
    "parse_desc",
    "stratify",
]


class Flavor(enum.Enum):
    CLOSED = "Closed"
    OPEN = "Open"
    SPHERE = "Sphere"


_KEYWORD = {Flavor.CLOSED: "cball", Flavor.OPEN: "oball", Flavor.SPHERE: "sphere"}


@dataclass(frozen=True)
class Ball:
    center: FieldElement
    radius: Fraction
    flavor: Flavor = Flavor.CLOSED

    def __post_init__(self):
        r = as_value(self.radius)
        if r is INF:
            raise UnsupportedRadius("ball radii must be finite")
        object.__setattr__(self, "radius", r)

    @property
    def field(self) -> ValuedField:
        return self.center.parent

    def effective_radius(self) -> Fraction:
        """The radius of the same set written as a closed ball (closed flavor only).

        Over a discrete valuation B(c, r) = B(c, ceil(r)) with the ceiling
        taken in the value group.
        """
        G = self.field.value_group
        return G.ceil(self.radius) if G.is_discrete else self.radius

    def __contains__(self, x) -> bool:
        return ball_member(self, x)

    def render(self) -> str:
        return f"{_KEYWORD[self.flavor]}({self.center};{render_value(self.radius)})"

    def __str__(self):
        return self.render()


@dataclass(frozen=True)
class FiniteSet:
    points: Tuple[FieldElement, ...]

    def render(self) -> str:
        return "finite{" + ",".join(str(x) for x in self.points) + "}"

    def __str__(self):
        return self.render()


@dataclass(frozen=True, eq=False)
class FamilyAtom:
    family: "object"  # a SeqFamily; typed loosely to avoid an import cycle

    def render(self) -> str:
        return self.family.render()

    def __eq__(self, other):
        return isinstance(other, FamilyAtom) and other.render() == self.render()

    def __hash__(self):
        return hash(self.render())

    def __str__(self):
        return self.render()


Atom = Union[Ball, FiniteSet, FamilyAtom]


def _closed_inside(inner: Ball, outer: Ball) -> bool:
    v = outer.field.valuation
    r_in, r_out = inner.effective_radius(), outer.effective_radius()
    return r_in >= r_out and v(inner.center - outer.center) >= r_out


class SubsetDesc:
    """A finite union of atoms over a single field, kept in a normal form.

    Closed balls inside other closed balls are dropped, repeated points in
    a finite set are removed and nested unions are flattened.  Finite
    points lying in some ball are kept, and atom order is preserved.
    """

    def __init__(self, field: ValuedField, atoms: Sequence[Atom]):
        self.field = field
        flat: List[Atom] = []
        for a in atoms:
            if isinstance(a, SubsetDesc):
                flat.extend(a.atoms)
            else:
                flat.append(a)
        for a in flat:
            home = _atom_field(a)
            if home is not None and home != field:
                raise MixedFields(f"{home.spec} atom in a {field.spec} description")
        self.atoms = tuple(_normalize(flat))

    @property
    def is_finite(self) -> bool:
        return all(isinstance(a, FiniteSet) for a in self.atoms)

    def balls(self) -> List[Ball]:
        return [a for a in self.atoms if isinstance(a, Ball)]

    def families(self):
        return [a.family for a in self.atoms if isinstance(a, FamilyAtom)]

    def points(self) -> List[FieldElement]:
        return [x for a in self.atoms if isinstance(a, FiniteSet) for x in a.points]

    def render(self) -> str:
        if len(self.atoms) == 1:
            return self.atoms[0].render()
        return "union(" + ";".join(a.render() for a in self.atoms) + ")"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"SubsetDesc({self.field.spec}, {self.render()!r})"

    def __eq__(self, other):
        return isinstance(other, SubsetDesc) and other.field == self.field and other.atoms == self.atoms

    def __hash__(self):
        return hash(self.render())


def _atom_field(a: Atom) -> Optional[ValuedField]:
    if isinstance(a, Ball):
        return a.field
    if isinstance(a, FiniteSet):
        return a.points[0].parent if a.points else None
    return a.family.field


def _normalize(atoms: List[Atom]) -> List[Atom]:
    out: List[Atom] = []
    for a in atoms:
        if isinstance(a, FiniteSet):
            seen: List[FieldElement] = []
            for x in a.points:
                if x not in seen:
                    seen.append(x)
            a = FiniteSet(tuple(seen))
        if a in out:
            continue
        out.append(a)
    closed = [a for a in out if isinstance(a, Ball) and a.flavor is Flavor.CLOSED]
    drop = set()
    for i, a in enumerate(closed):
        for j, b in enumerate(closed):
            if i != j and j not in drop and _closed_inside(a, b):
                if not _closed_inside(b, a) or j < i:
                    drop.add(i)
                    break
    dropped = [closed[i] for i in drop]
    return [a for a in out if not any(a is d for d in dropped)]


# ---------------------------------------------------------------------------
# parsing


def parse_desc(field: ValuedField, text: str) -> SubsetDesc:
    return SubsetDesc(field, _parse_atoms(field, text.strip()))


def _inside(text: str, head: str, close: str) -> Optional[str]:
    if text.startswith(head) and text.endswith(close):
        return text[len(head) : -1]
    return None


def _parse_atoms(F: ValuedField, s: str) -> List[Atom]:
    if s.startswith("seq:"):
        from .sequences import parse_family

        return [FamilyAtom(parse_family(F, s))]
    body = _inside(s, "union(", ")")
    if body is not None:
        out: List[Atom] = []
        for part in split_top(body, ";"):
            out.extend(_parse_atoms(F, part))
        if not out:
            raise ParseError("empty union")
        return out
    body = _inside(s, "finite{", "}")
    if body is not None:
        items = [x for x in split_top(body, ",") if x]
        if not items:
            raise ParseError("finite{} needs at least one element")
        return [FiniteSet(tuple(F.parse_element(x) for x in items))]
    for flavor, kw in _KEYWORD.items():
        body = _inside(s, kw + "(", ")")
        if body is not None:
            parts = split_top(body, ";")
            if len(parts) != 2:
                raise ParseError(f"{kw} takes center;radius, got {s!r}")
            r = parse_value(parts[1])
            if r is INF:
                raise UnsupportedRadius("ball radii must be finite")
            if flavor is Flavor.SPHERE and r not in F.value_group:
                raise UnsupportedRadius(f"sphere radius {r} is not in {F.value_group}")
            return [Ball(F.parse_element(parts[0]), r, flavor)]
    raise ParseError(f"cannot parse subset description {s!r}")


# ---------------------------------------------------------------------------
# balls


def ball_member(b: Ball, x) -> bool:
    if not isinstance(x, FieldElement):
        x = b.field(x)
    if x.parent != b.field:
        raise MixedFields(f"{x.parent.spec} point vs {b.field.spec} ball")
    d = b.field.valuation(x - b.center)
    if b.flavor is Flavor.CLOSED:
        return d >= b.radius
    if b.flavor is Flavor.OPEN:
        return d > b.radius
    return d == b.radius


class BallRelation(enum.Enum):
    CONTAINS = "Nested1⊇2"
    CONTAINED = "Nested2⊇1"
    EQUAL = "Equal"
    DISJOINT = "Disjoint"


def ball_relate(b1: Ball, b2: Ball) -> BallRelation:
    if b1.field != b2.field:
        raise MixedFields(f"{b1.field.spec} vs {b2.field.spec}")
    if b1.flavor is not Flavor.CLOSED or b2.flavor is not Flavor.CLOSED:
        raise ValueError("ball_relate compares closed balls")
    r1, r2 = b1.effective_radius(), b2.effective_radius()
    d = b1.field.valuation(b1.center - b2.center)
    if d < min(r1, r2):
        return BallRelation.DISJOINT
    if r1 == r2:
        return BallRelation.EQUAL
    return BallRelation.CONTAINS if r1 < r2 else BallRelation.CONTAINED


def sample_ball(b: Ball, rng: random.Random) -> FieldElement:
    """A random element of ``b``."""
    F = b.field
    G = F.value_group
    r = b.radius
    if b.flavor is Flavor.SPHERE:
        return b.center + F.element_of_value(r) * F.random_unit(rng)
    if b.flavor is Flavor.OPEN:
        r = G.next_above(r) if G.is_discrete else r + Fraction(1, rng.randint(1, 6))
    elif G.is_discrete:
        r = G.ceil(r)
    x = F.random_element(rng, integral=True)
    return b.center + F.element_of_value(r) * x


# ---------------------------------------------------------------------------
# closure


def _closure_atom(a: Atom) -> Atom:
    if isinstance(a, FiniteSet):
        return a
    if isinstance(a, FamilyAtom):
        raise UnsupportedAtom("sequence families have no closed-form closure; see the prufer module")
    F = a.field
    G = F.value_group
    if a.flavor is Flavor.CLOSED:
        return a
    if a.flavor is Flavor.OPEN:
        if G.is_discrete:
            return Ball(a.center, G.next_above(a.radius))
        return Ball(a.center, a.radius)
    if a.radius not in G:
        raise UnsupportedRadius(f"sphere radius {a.radius} is not in {G}")
    if not G.is_discrete or F.residue_card is INF:
        return Ball(a.center, a.radius)
    return a


def closure(S: SubsetDesc) -> SubsetDesc:
    """Polynomial closure, atom by atom."""
    return SubsetDesc(S.field, [_closure_atom(a) for a in S.atoms])


def check_inside_V(S: SubsetDesc, N: int = 12) -> None:
    """Raise NotInsideV unless every atom of S lies in the valuation ring."""
    F = S.field
    v = F.valuation
    for a in S.atoms:
        if isinstance(a, FiniteSet):
            bad = [x for x in a.points if v(x) < 0]
            if bad:
                raise NotInsideV(f"{bad[0]} has negative valuation")
        elif isinstance(a, Ball):
            r = a.radius
            if a.flavor is Flavor.OPEN and F.is_discrete:
                r = F.value_group.next_above(r)
            if v(a.center) < 0 or r < 0:
                raise NotInsideV(f"{a.render()} is not inside V")
        else:
            fam = a.family
            bad = [n for n in range(N + 1) if v(fam.s(n)) < 0]
            if bad:
                raise NotInsideV(f"{fam.name}: s_{bad[0]} has negative valuation")


# ---------------------------------------------------------------------------
# stratification


@dataclass(frozen=True)
class Bound:
    value: ExtValue
    attained: bool


@dataclass(frozen=True)
class Stratification:
    """gamma1 = sup of v(s - alpha) below gamma, gamma2 = inf above gamma."""

    gamma1: Optional[Bound]
    gamma2: Optional[Bound]
    eq_nonempty: bool


def _best(bounds: List[Bound], upper: bool) -> Optional[Bound]:
    if not bounds:
        return None
    pick = max if upper else min
    target = pick(b.value for b in bounds)
    return Bound(target, any(b.attained for b in bounds if b.value == target))


class _Points:
    def __init__(self, values):
        self.values = list(values)

    def below(self, g):
        vs = [x for x in self.values if x < g]
        return Bound(max(vs), True) if vs else None

    def above(self, g):
        vs = [x for x in self.values if x > g]
        return Bound(min(vs), True) if vs else None

    def hits(self, g):
        return g in self.values


class _Ray:
    """(Gamma meet [lo, oo)) plus oo, or the half-open version (lo, oo)."""

    def __init__(self, lo: Fraction, closed: bool, G: ValueGroup):
        if G.is_discrete:
            if not closed or lo not in G:
                lo = G.next_above(lo) if not closed else G.ceil(lo)
            closed = True
        self.lo, self.closed, self.G = lo, closed, G

    def _has(self, x):
        return x > self.lo or (self.closed and x == self.lo)

    def below(self, g):
        if g < self.lo or (g == self.lo):
            return None
        if self.G.is_discrete:
            return Bound(self.G.prev_below(g), True)
        return Bound(g, False)

    def above(self, g):
        if g < self.lo:
            return Bound(self.lo, self.closed)
        if self.G.is_discrete:
            return Bound(self.G.next_above(g), True)
        return Bound(g, False)

    def hits(self, g):
        return g in self.G and self._has(g)


class _Monotone:
    """Values e_0, e_1, ... monotone towards a limit that is never reached."""

    def __init__(self, e, up: bool, limit: ExtValue, head: List[ExtValue]):
        self.e, self.up, self.limit, self.head = e, up, limit, head
        self.step_cap = 4096

    def _scan(self, keep):
        n, out = 0, []
        while n < self.step_cap:
            x = self.e(n)
            if not keep(x):
                return out
            out.append(x)
            n += 1
        raise UnsupportedFamily("family values did not cross the level within the scan budget")

    def below(self, g):
        head = _Points(self.head).below(g)
        if self.up:
            if self.limit is not INF and g > self.limit:
                tail = Bound(self.limit, False)
            else:
                vs = self._scan(lambda x: x < g)
                tail = Bound(max(vs), True) if vs else None
        else:
            if g <= self.limit:
                tail = None
            else:
                n = 0
                while self.e(n) >= g:
                    n += 1
                tail = Bound(self.e(n), True)
        return _best([b for b in (head, tail) if b], upper=True)

    def above(self, g):
        head = _Points(self.head).above(g)
        if self.up:
            if self.limit is not INF and g >= self.limit:
                tail = None
            else:
                n = 0
                while self.e(n) <= g:
                    n += 1
                tail = Bound(self.e(n), True)
        else:
            if g < self.limit:
                tail = Bound(self.limit, False)
            else:
                vs = self._scan(lambda x: x > g)
                tail = Bound(min(vs), True) if vs else None
        return _best([b for b in (head, tail) if b], upper=False)

    def hits(self, g):
        if g in self.head:
            return True
        if self.up and (self.limit is INF or g < self.limit):
            return g in self._scan(lambda x: x <= g)
        if not self.up and g > self.limit:
            return g in self._scan(lambda x: x >= g)
        return False


def _ball_values(b: Ball, alpha: FieldElement):
    F = b.field
    G = F.value_group
    if alpha.parent != F:
        raise UnsupportedAtom("ball strata around a point outside the ground field")
    d = F.valuation(b.center - alpha)
    r = b.radius
    if b.flavor is Flavor.CLOSED:
        return _Points([d]) if d < r else _Ray(r, True, G)
    if b.flavor is Flavor.OPEN:
        return _Points([d]) if d <= r else _Ray(r, False, G)
    if d != r:
        return _Points([min(d, r)])
    # alpha on the sphere: the value r itself needs a third residue class
    return _Ray(r, F.residue_card != 2, G)


def _family_values(fam, alpha: FieldElement, N: int):
    from .sequences import Kind

    e = [fam.dist(alpha, n) for n in range(N + 2)]
    d = fam.gaps(N + 1)
    if fam.kind is Kind.STATIONARY:
        g = fam.breadth
        for k, x in enumerate(e):
            if x < g:
                return _Points(e[: k + 1])
            if x > g:
                return _Points([g, x])
        return _Points([g])
    if fam.kind is Kind.CONVERGENT:
        for k in range(N + 2):
            if e[k] < d[k]:
                return _Points(e[: k + 1])
        return _Monotone(lambda n: fam.dist(alpha, n), True, fam.breadth, [])
    for k in range(N + 1):
        if e[k] < fam.breadth:
            return _Points(e[: k + 1])
    # alpha is a pseudo-limit of a tail: values fall towards the breadth
    k = next((k for k in range(N + 1) if e[k + 1] == d[k]), None)
    if k is None:
        raise UnsupportedFamily(f"cannot determine the valuation profile of {fam.name} around {alpha}")
    # from k+1 on, v(alpha - s_m) = d_{m-1}
    return _Monotone(lambda n: fam.dist(alpha, n + k + 1), False, fam.breadth, e[: k + 1])


def stratify(S: SubsetDesc, alpha, gamma, N: int = 12) -> Stratification:
    if not isinstance(alpha, FieldElement):
        alpha = S.field(alpha)
    gamma = as_value(gamma)
    lows, highs, eq = [], [], False
    for a in S.atoms:
        if isinstance(a, FiniteSet):
            vals = _Points([_dist(alpha, x) for x in a.points])
        elif isinstance(a, Ball):
            vals = _ball_values(a, alpha)
        else:
            vals = _family_values(a.family, alpha, N)
        lo, hi = vals.below(gamma), vals.above(gamma)
        if lo:
            lows.append(lo)
        if hi:
            highs.append(hi)
        eq = eq or vals.hits(gamma)
    return Stratification(_best(lows, upper=True), _best(highs, upper=False), eq)


def _dist(alpha: FieldElement, x: FieldElement) -> ExtValue:
    if x.parent != alpha.parent:
        x = alpha.parent.coerce(x)
    return alpha.parent.valuation(alpha - x)
