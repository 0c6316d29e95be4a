"""Pseudo-monotone sequence families.

A family is a closed form n -> s_n over one field together with declared
metadata: kind, breadth, type and pseudo-limits.  Nothing about an infinite
sequence can be checked in full, so every claim here is verified on a
window n = 0..N and taken on trust beyond it.

The gap of a family at n is d_n = v(s_{n+1} - s_n).
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import sympy
from sympy.parsing.sympy_parser import (
    convert_xor,
    implicit_multiplication_application,
    parse_expr,
    standard_transformations,
)

from .errors import (
    BranchRequired,
    NoKnownLimit,
    NotMonotoneOnWindow,
    ParseError,
    UnsupportedFamily,
    WindowTooSmall,
    WrongKind,
)
from .fields import FieldElement, PadicRationals, QuadraticExtension, SeriesField, ValuedField, parse_field
from .literals import parse_poly, split_top
from .poly import Poly, evaluate
from .values import INF, ExtValue, parse_value, render_value

__all__ = [
    "BreadthIdeal",
    "DEFAULT_WINDOW",
    "Kind",
    "SeqFamily",
    "SeqType",
    "WindowReport",
    "breadth_ideal",
    "classify_window",
    "is_pseudo_limit",
    "parse_family",
    "pseudo_limit_set",
    "type_check",
]

DEFAULT_WINDOW = 12


class Kind(enum.Enum):
    CONVERGENT = "PseudoConvergent"
    STATIONARY = "PseudoStationary"
    DIVERGENT = "PseudoDivergent"

    @property
    def short(self) -> str:
        return {"PseudoConvergent": "convergent", "PseudoStationary": "stationary",
                "PseudoDivergent": "divergent"}[self.value]

    @classmethod
    def parse(cls, text: str) -> "Kind":
        for k in cls:
            if text in (k.short, k.value):
                return k
        raise ParseError(f"unknown kind {text!r}")


@dataclass(frozen=True)
class SeqType:
    """Declared type of a pseudo-convergent family."""

    tag: str  # Transcendental, Algebraic or Unknown
    witness: Optional[Poly] = None

    def render(self) -> str:
        if self.tag == "Algebraic":
            return f"algebraic({self.witness})"
        return self.tag.lower()


class SeqFamily:
    """A named closed-form sequence with declared metadata.

    ``term(n)`` must return an element of ``field`` for every n >= 0.
    ``limits`` may live in ``ext``, a quadratic extension of the ground
    field, when the family declares one.
    """

    def __init__(
        self,
        name: str,
        field: ValuedField,
        params: Sequence[Tuple[str, str]],
        term: Callable[[int], FieldElement],
        kind: Kind,
        breadth: ExtValue,
        seq_type: Optional[SeqType] = None,
        limits: Sequence[FieldElement] = (),
        ext: Optional[ValuedField] = None,
    ):
        self.name = name
        self.field = field
        self.params = tuple(params)
        self._term = term
        self._cache: Dict[int, FieldElement] = {}
        self.kind = kind
        self.breadth = breadth
        self.seq_type = seq_type
        self.limits = tuple(limits)
        self.ext = ext

    def s(self, n: int) -> FieldElement:
        if n not in self._cache:
            self._cache[n] = self.field(self._term(n))
        return self._cache[n]

    def terms(self, N: int) -> List[FieldElement]:
        return [self.s(n) for n in range(N + 1)]

    def gap(self, n: int) -> ExtValue:
        return self.field.valuation(self.s(n + 1) - self.s(n))

    def gaps(self, N: int) -> List[ExtValue]:
        return [self.gap(n) for n in range(N + 1)]

    def dist(self, alpha: FieldElement, n: int) -> ExtValue:
        """v(alpha - s_n), with s_n pushed into alpha's field when needed."""
        sn = self.s(n)
        if alpha.parent != self.field:
            sn = _lift(alpha.parent, sn)
        return alpha.parent.valuation(alpha - sn)

    def render(self) -> str:
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        meta = [f"kind={self.kind.short}", f"breadth={render_value(self.breadth)}"]
        if self.seq_type is not None:
            meta.append(f"type={self.seq_type.render()}")
        meta += [f"limit={x}" for x in self.limits]
        if self.ext is not None:
            e = self.ext
            meta.append(f"ext=quad(d={e.d},p={e.p}" + (f",r0={e.r0})" if e.r0 is not None else ")"))
        return f"seq:{self.name}({inner})[{','.join(meta)}]"

    def with_meta(self, **changes) -> "SeqFamily":
        kw = dict(
            kind=self.kind, breadth=self.breadth, seq_type=self.seq_type,
            limits=self.limits, ext=self.ext,
        )
        kw.update(changes)
        return SeqFamily(self.name, self.field, self.params, self._term, **kw)

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"SeqFamily({self.render()!r})"


def _lift(ext: ValuedField, x: FieldElement) -> FieldElement:
    if not hasattr(ext, "coerce"):
        raise ParseError(f"{x.parent.spec} elements do not embed in {ext.spec}")
    return ext.coerce(x)


def _need_branch(alpha: FieldElement):
    F = alpha.parent
    if isinstance(F, QuadraticExtension) and F.splitting == "split" and F.r0 is None:
        raise BranchRequired(f"{alpha} lies in {F.spec}; an r0 branch is needed")


# ---------------------------------------------------------------------------
# index formulas

_TRANSFORMS = standard_transformations + (convert_xor, implicit_multiplication_application)


@lru_cache(maxsize=None)
def _formula(text: str, var: str):
    sym = sympy.Symbol(var, integer=True, positive=True)
    try:
        expr = parse_expr(text, local_dict={var: sym}, transformations=_TRANSFORMS)
    except Exception as exc:  # sympy raises a zoo of exception types
        raise ParseError(f"bad index formula {text!r}: {exc}") from None
    if not expr.free_symbols <= {sym}:
        raise ParseError(f"{text!r} may only mention {var}")
    return sym, expr


def _rational(value) -> Fraction:
    value = sympy.nsimplify(value) if not value.is_Rational else value
    if not value.is_Rational:
        raise ParseError(f"index formula produced the non-rational value {value}")
    return Fraction(int(value.p), int(value.q))


class IndexFormula:
    """An exact rational-valued formula in one index variable."""

    def __init__(self, text: str, var: str):
        self.text = text.replace(" ", "")
        self.var = var
        self.sym, self.expr = _formula(self.text, var)
        self._memo: Dict[int, Fraction] = {}

    def __call__(self, i: int) -> Fraction:
        if i not in self._memo:
            self._memo[i] = _rational(self.expr.subs(self.sym, i))
        return self._memo[i]

    def limit(self) -> ExtValue:
        try:
            lim = sympy.limit(self.expr, self.sym, sympy.oo)
        except (TypeError, ValueError, NotImplementedError) as exc:
            raise UnsupportedFamily(f"cannot take the limit of {self.text}: {exc}") from None
        if lim == sympy.oo:
            return INF
        if lim.is_Rational:
            return Fraction(int(lim.p), int(lim.q))
        raise UnsupportedFamily(f"{self.text} has limit {lim}; only rational or infinite breadths are modeled")

    def trend(self, start: int) -> int:
        """+1, -1 or 0 according to the first few steps from ``start``."""
        vals = [self(i) for i in range(start, start + 4)]
        steps = {(b > a) - (b < a) for a, b in zip(vals, vals[1:])}
        if len(steps) != 1:
            raise UnsupportedFamily(f"{self.text} is not monotone near {self.var}={start}")
        return steps.pop()


# ---------------------------------------------------------------------------
# the built-in catalog

_Builder = Callable[[ValuedField, Dict[str, str]], dict]
_CATALOG: Dict[str, Tuple[Tuple[Tuple[str, Optional[str]], ...], _Builder]] = {}


def _register(name: str, *params: Tuple[str, Optional[str]]):
    def deco(fn: _Builder):
        _CATALOG[name] = (params, fn)
        return fn

    return deco


def _elem(F: ValuedField, text: str) -> FieldElement:
    return F.parse_element(text)


def _kind_from_trend(trend: int) -> Kind:
    return {1: Kind.CONVERGENT, -1: Kind.DIVERGENT, 0: Kind.STATIONARY}[trend]


@_register("geom", ("c", "1"), ("r", None))
def _geom(F, p):
    c, r = _elem(F, p["c"]), _elem(F, p["r"])
    if c.is_zero() or r.is_zero():
        raise UnsupportedFamily("geom needs nonzero c and r")
    vr = F.valuation(r)
    if vr < 0:
        raise UnsupportedFamily("geom needs v(r) >= 0")
    if vr > 0:
        kind, breadth, limits = Kind.CONVERGENT, INF, (F.zero,)
    else:
        kind, breadth, limits = Kind.STATIONARY, F.valuation(c) + F.valuation(r - 1), ()
    return dict(term=lambda n: c * r**n, kind=kind, breadth=breadth, limits=limits)


@_register("enum")
def _enum(F, p):
    return dict(term=lambda n: F(n), kind=Kind.STATIONARY, breadth=Fraction(0), limits=())


@_register("arith", ("a", "0"), ("d", "1"))
def _arith(F, p):
    a, d = _elem(F, p["a"]), _elem(F, p["d"])
    if d.is_zero():
        raise UnsupportedFamily("arith needs d != 0")
    return dict(term=lambda n: a + d * (n + 1), kind=Kind.STATIONARY,
                breadth=F.valuation(d), limits=(a,))


def _series_field(F, name):
    if not isinstance(F, SeriesField):
        raise UnsupportedFamily(f"{name} lives over tadic or hahn, not {F.spec}")


@_register("hahn_partial", ("e_k", None), ("c_k", "1"))
def _hahn_partial(F, p):
    _series_field(F, "hahn_partial")
    e = IndexFormula(p["e_k"], "k")
    c = IndexFormula(p["c_k"], "k")

    def term(n):
        return F.from_terms((e(k), c(k)) for k in range(1, n + 2))

    kind = _kind_from_trend(e.trend(2))
    return dict(term=term, kind=kind, breadth=e.limit(), limits=(),
                seq_type=SeqType("Unknown") if kind is Kind.CONVERGENT else None)


@_register("hahn_pow", ("a", "0"), ("e_n", None), ("c", "1"))
def _hahn_pow(F, p):
    _series_field(F, "hahn_pow")
    a, cc = _elem(F, p["a"]), Fraction(p["c"])
    e = IndexFormula(p["e_n"], "n")
    kind = _kind_from_trend(e.trend(0))
    seq_type = None
    if kind is Kind.CONVERGENT:
        seq_type = SeqType("Algebraic", Poly(F, [-a, 1]))
    return dict(term=lambda n: a + F.monomial(e(n), cc), kind=kind,
                breadth=e.limit(), limits=(a,), seq_type=seq_type)


@_register("sqrt_trunc", ("d", None), ("r0", None))
def _sqrt_trunc(F, p):
    if not isinstance(F, PadicRationals):
        raise UnsupportedFamily("sqrt_trunc lives over qp:p")
    ext = QuadraticExtension(int(p["d"]), F.p, int(p["r0"]))
    if ext.splitting != "split":
        raise UnsupportedFamily(f"p={F.p} must split in Q(sqrt({ext.d}))")
    positions: List[int] = []

    def term(n):
        # truncate the chosen root just after its (n+1)-th nonzero digit
        j = positions[-1] + 1 if positions else 0
        while len(positions) <= n:
            if (ext.root_mod(j + 1) // F.p**j) % F.p:
                positions.append(j)
            j += 1
        return F(ext.root_mod(positions[n] + 1))

    return dict(term=term, kind=Kind.CONVERGENT, breadth=INF,
                limits=(ext.generator(),), ext=ext)


def catalog() -> List[str]:
    return sorted(_CATALOG)


def make_family(F: ValuedField, name: str, params: Optional[Dict[str, str]] = None, **meta) -> SeqFamily:
    """Instantiate a catalog family; ``meta`` overrides the defaults."""
    if name not in _CATALOG:
        raise ParseError(f"unknown family {name!r}; known: {', '.join(catalog())}")
    spec, builder = _CATALOG[name]
    params = dict(params or {})
    extra = set(params) - {k for k, _ in spec}
    if extra:
        raise ParseError(f"{name} does not take {sorted(extra)}")
    full = []
    for key, default in spec:
        if key not in params:
            if default is None:
                raise ParseError(f"{name} needs {key}=")
            params[key] = default
        full.append((key, str(params[key]).replace(" ", "")))
    built = builder(F, params)
    built.update({k: v for k, v in meta.items() if v is not None})
    return SeqFamily(name, F, full, built.pop("term"), **built)


def parse_family(F: ValuedField, text: str) -> SeqFamily:
    """Parse ``seq:name(k=v,...)[meta,...]``."""
    s = text.strip()
    if not s.startswith("seq:"):
        raise ParseError(f"family literals start with 'seq:', got {text!r}")
    s = s[4:]
    meta_txt = None
    if s.endswith("]"):
        cut = s.rfind("[")
        if cut < 0:
            raise ParseError(f"unbalanced metadata in {text!r}")
        s, meta_txt = s[:cut], s[cut + 1 : -1]
    lp = s.find("(")
    if lp < 0 or not s.endswith(")"):
        raise ParseError(f"expected name(params) in {text!r}")
    name, inner = s[:lp].strip(), s[lp + 1 : -1]
    params = {}
    for item in split_top(inner, ","):
        if not item:
            continue
        key, eq, val = item.partition("=")
        if not eq:
            raise ParseError(f"parameter {item!r} needs key=value")
        params[key.strip()] = val.strip()
    return make_family(F, name, params, **_parse_meta(F, meta_txt))


def _parse_meta(F: ValuedField, text: Optional[str]) -> dict:
    meta: dict = {}
    if not text:
        return meta
    raw_limits: List[str] = []
    for item in split_top(text, ","):
        key, eq, val = item.partition("=")
        key = key.strip()
        if not eq:
            raise ParseError(f"metadata {item!r} needs key=value")
        if key == "kind":
            meta["kind"] = Kind.parse(val)
        elif key == "breadth":
            meta["breadth"] = parse_value(val)
        elif key == "type":
            meta["seq_type"] = _parse_type(F, val)
        elif key == "limit":
            raw_limits.append(val)
        elif key == "ext":
            meta["ext"] = _parse_ext(F, val)
        else:
            raise ParseError(f"unknown metadata key {key!r}")
    if raw_limits:
        home = meta.get("ext") or F
        meta["limits"] = tuple(home.parse_element(x) for x in raw_limits)
    return meta


def _parse_type(F: ValuedField, text: str) -> SeqType:
    t = text.strip()
    if t in ("transcendental", "unknown"):
        return SeqType(t.capitalize())
    if t.startswith("algebraic(") and t.endswith(")"):
        return SeqType("Algebraic", parse_poly(F, t[len("algebraic(") : -1]))
    raise ParseError(f"unknown type {text!r}")


def _parse_ext(F: ValuedField, text: str) -> QuadraticExtension:
    t = text.strip()
    if not (t.startswith("quad(") and t.endswith(")")):
        raise ParseError(f"ext must be quad(d=..,p=..[,r0=..]), got {text!r}")
    ext = parse_field("quad:" + t[5:-1])
    if not isinstance(F, PadicRationals) or ext.p != F.p:
        raise ParseError(f"{ext.spec} does not lie over {F.spec}")
    return ext


# ---------------------------------------------------------------------------
# window classification


@dataclass(frozen=True)
class WindowReport:
    kind: Kind
    gaps: Tuple[ExtValue, ...]
    consistent: bool
    reasons: Tuple[str, ...] = ()


def classify_window(F: SeqFamily, N: int = DEFAULT_WINDOW) -> WindowReport:
    if N < 3:
        raise WindowTooSmall(f"window N={N} is below 3")
    gaps = F.gaps(N)
    pairs = list(zip(gaps, gaps[1:]))
    if all(a == b for a, b in pairs):
        terms = F.terms(N + 1)
        val = F.field.valuation
        for i in range(len(terms)):
            for j in range(i + 1, len(terms)):
                if val(terms[j] - terms[i]) != gaps[0]:
                    raise NotMonotoneOnWindow(
                        f"gaps are constant but v(s_{j} - s_{i}) != {gaps[0]}"
                    )
        kind = Kind.STATIONARY
    elif all(a < b for a, b in pairs):
        kind = Kind.CONVERGENT
    elif all(a > b for a, b in pairs):
        kind = Kind.DIVERGENT
    else:
        raise NotMonotoneOnWindow(f"gaps {[render_value(g) for g in gaps]} are not monotone")

    reasons = []
    if kind is not F.kind:
        reasons.append(f"declared {F.kind.short}, window shows {kind.short}")
    d = F.breadth
    if kind is Kind.CONVERGENT and not all(g < d for g in gaps):
        reasons.append("convergent gaps must stay below the breadth")
    if kind is Kind.DIVERGENT and not all(g > d for g in gaps):
        reasons.append("divergent gaps must stay above the breadth")
    if kind is Kind.STATIONARY and gaps[0] != d:
        reasons.append("stationary gaps must equal the breadth")
    V = F.field
    if kind is Kind.STATIONARY and V.residue_card is not INF:
        reasons.append("stationary families need an infinite residue field")
    if kind is Kind.DIVERGENT and V.is_discrete:
        reasons.append("divergent families need a non-discrete valuation")
    if kind is Kind.CONVERGENT and d is not INF and V.is_discrete:
        reasons.append("a convergent family over a discrete valuation has infinite breadth")
    return WindowReport(kind, tuple(gaps), not reasons, tuple(reasons))


# ---------------------------------------------------------------------------
# breadth ideal


@dataclass(frozen=True)
class BreadthIdeal:
    """Br(E) = {b : v(b) > d_n for all n}, i.e. v(b) >= threshold."""

    threshold: ExtValue
    principal: bool
    zero: bool
    field: ValuedField = dc_field(compare=False, repr=False)

    def contains(self, b: FieldElement) -> bool:
        return self.field.valuation(self.field(b)) >= self.threshold


def breadth_ideal(F: SeqFamily) -> BreadthIdeal:
    if F.kind is not Kind.CONVERGENT:
        raise WrongKind(f"breadth ideals are defined for convergent families, not {F.kind.short}")
    d = F.breadth
    zero = d is INF
    principal = (not zero) and d in F.field.value_group
    return BreadthIdeal(d, principal, zero, F.field)


# ---------------------------------------------------------------------------
# pseudo-limits


def _as_point(F: SeqFamily, alpha) -> FieldElement:
    if isinstance(alpha, FieldElement):
        _need_branch(alpha)
        return alpha
    return F.field(alpha)


def is_pseudo_limit(F: SeqFamily, alpha, N: int = DEFAULT_WINDOW) -> bool:
    alpha = _as_point(F, alpha)
    e = [F.dist(alpha, n) for n in range(N + 2)]
    d = F.gaps(N)
    if F.kind is Kind.CONVERGENT:
        chain = all(e[n] < e[n + 1] for n in range(N + 1))
        equal = all(e[n] == d[n] for n in range(N + 1))
        return chain and equal
    if F.kind is Kind.DIVERGENT:
        chain = all(e[n] > e[n + 1] for n in range(N + 1))
        equal = all(e[n + 1] == d[n] for n in range(N + 1))
        return chain and equal
    misses = sum(1 for x in e if x != F.breadth)
    return misses <= 1


def pseudo_limit_set(F: SeqFamily, alpha, N: int = DEFAULT_WINDOW):
    from .sets import Ball, Flavor

    alpha = _as_point(F, alpha)
    if not is_pseudo_limit(F, alpha, N):
        raise NoKnownLimit(f"{alpha} is not a pseudo-limit of {F.name} on [0,{N}]")
    if F.breadth is INF:
        raise NoKnownLimit(f"{F.name} has zero breadth ideal; {alpha} is its only pseudo-limit")
    flavor = Flavor.OPEN if F.kind is Kind.DIVERGENT else Flavor.CLOSED
    return Ball(alpha, F.breadth, flavor)


def verified_limits(F: SeqFamily, N: int = DEFAULT_WINDOW) -> List[FieldElement]:
    out = []
    for a in F.limits:
        try:
            if is_pseudo_limit(F, a, N):
                out.append(a)
        except BranchRequired:
            pass
    return out


# ---------------------------------------------------------------------------
# type


@dataclass(frozen=True)
class TypeCheck:
    status: str  # Algebraic-verified, Transcendental-consistent, Inconclusive
    offending: Tuple[int, ...] = ()
    probe: Optional[FieldElement] = None


def type_check(F: SeqFamily, N: int = DEFAULT_WINDOW, seed: int = 0) -> TypeCheck:
    if F.kind is not Kind.CONVERGENT:
        raise WrongKind("type is only defined for convergent families")
    tail = range(N // 2, N + 1)
    T = F.seq_type
    if T is None or T.tag == "Unknown":
        return TypeCheck("Inconclusive")
    val = F.field.valuation
    if T.tag == "Algebraic":
        vals = [val(evaluate(T.witness, F.s(n))) for n in tail]
        bad = tuple(n for n, a, b in zip(tail[1:], vals, vals[1:]) if not a < b)
        return TypeCheck("Inconclusive", bad) if bad else TypeCheck("Algebraic-verified")
    rng = random.Random(seed)
    # a declared limit in K contradicts a transcendental declaration, so probe it first
    probes = [a for a in F.limits if a.parent == F.field]
    probes += [F.s(j) for j in range(N // 2)] + [F.field.zero]
    probes += [F.field.random_element(rng, integral=True) for _ in range(4)]
    for a in probes:
        for k in (1, 2, 3):
            vals = [k * val(F.s(n) - a) for n in tail]
            bad = tuple(n for n, x, y in zip(tail[1:], vals, vals[1:]) if x != y)
            if bad:
                return TypeCheck("Inconclusive", bad, a)
    return TypeCheck("Transcendental-consistent")
