import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from vlab.errors import (
    BranchRequired,
    NoKnownLimit,
    NotMonotoneOnWindow,
    ParseError,
    UnsupportedFamily,
    WindowTooSmall,
    WrongKind,
)
from vlab.fields import parse_field
from vlab.sequences import (
    Kind,
    breadth_ideal,
    classify_window,
    is_pseudo_limit,
    make_family,
    parse_family,
    pseudo_limit_set,
    type_check,
    verified_limits,
)
from vlab.sets import Flavor
from vlab.values import INF

F = Fraction
seeds = st.integers(0, 10**9)
Q5 = parse_field("qp:5")
T = parse_field("tadic")
H = parse_field("hahn")

# every catalog entry, over fields where it is well formed
BUILT_INS = [
    ("qp:5", "seq:geom(r=5)"),
    ("qp:3", "seq:geom(c=2,r=9/2)"),
    ("tadic", "seq:geom(r=t^(1))"),
    ("tadic", "seq:geom(r=2)"),
    ("tadic", "seq:enum()"),
    ("hahn", "seq:enum()"),
    ("tadic", "seq:arith(a=t^(1),d=t^(2))"),
    ("hahn", "seq:arith(a=1,d=t^(1/2))"),
    ("hahn", "seq:hahn_partial(e_k=1-1/k)"),
    ("hahn", "seq:hahn_partial(e_k=1/2-1/(k+1),c_k=2)"),
    ("hahn", "seq:hahn_pow(e_n=1/(n+1))"),
    ("hahn", "seq:hahn_pow(a=1,e_n=2-1/(n+1))"),
    ("hahn:fp=3", "seq:hahn_pow(a=1,e_n=1/(n+1))"),
    ("hahn:fp=3", "seq:hahn_partial(e_k=1-1/k)"),
    ("qp:5", "seq:sqrt_trunc(d=-1,r0=2)"),
    ("qp:7", "seq:sqrt_trunc(d=2,r0=3)"),
]


def fam(spec, text):
    return parse_family(parse_field(spec), text)


def direct_gaps(K, terms):
    return [K.valuation(b - a) for a, b in zip(terms, terms[1:])]


# --- classification examples ------------------------------------------------


def test_geom_over_qp5():
    rep = classify_window(fam("qp:5", "seq:geom(r=5)"), 10)
    assert rep.kind is Kind.CONVERGENT and rep.consistent
    assert list(rep.gaps) == list(range(11))
    # oracle built without the family machinery
    assert list(rep.gaps) == direct_gaps(Q5, [Q5(5**n) for n in range(12)])


def test_enum_over_tadic():
    rep = classify_window(fam("tadic", "seq:enum()"), 10)
    assert rep.kind is Kind.STATIONARY and rep.consistent
    assert set(rep.gaps) == {0}


def test_hahn_pow_divergent():
    f = fam("hahn", "seq:hahn_pow(e_n=1/(n+1))")
    rep = classify_window(f, 10)
    assert rep.kind is Kind.DIVERGENT and rep.consistent
    assert list(rep.gaps) == [F(1, n + 2) for n in range(11)]
    assert f.breadth == 0
    terms = [H.monomial(F(1, n + 1)) for n in range(12)]
    assert list(rep.gaps) == direct_gaps(H, terms)


def test_hahn_partial_convergent():
    f = fam("hahn", "seq:hahn_partial(e_k=1-1/k)")
    rep = classify_window(f, 10)
    assert rep.kind is Kind.CONVERGENT and rep.consistent
    assert list(rep.gaps) == [1 - F(1, n + 2) for n in range(11)]
    terms = [H.from_terms((1 - F(1, k), 1) for k in range(1, n + 2)) for n in range(12)]
    assert [f.s(n) for n in range(12)] == terms
    assert f.breadth == 1


def test_classify_errors():
    with pytest.raises(WindowTooSmall):
        classify_window(fam("qp:5", "seq:geom(r=5)"), 2)
    with pytest.raises(NotMonotoneOnWindow):
        classify_window(fam("qp:5", "seq:enum()"), 10)
    with pytest.raises(UnsupportedFamily):
        fam("tadic", "seq:hahn_pow(e_n=Max(5-n,0))")
    with pytest.raises(UnsupportedFamily):
        fam("qp:5", "seq:geom(r=1/5)")
    with pytest.raises(UnsupportedFamily):
        fam("qp:5", "seq:hahn_partial(e_k=1-1/k)")
    with pytest.raises(ParseError):
        fam("qp:5", "seq:geom(r=5")


def test_declared_metadata_is_checked():
    rep = classify_window(fam("qp:5", "seq:geom(r=5)[kind=stationary]"), 10)
    assert not rep.consistent
    rep = classify_window(fam("hahn", "seq:hahn_pow(e_n=1-1/(n+1))[breadth=1/2]"), 10)
    assert not rep.consistent


# --- structural rules -------------------------------------------------------


def test_stationary_needs_infinite_residue():
    rep = classify_window(fam("qp:5", "seq:arith(a=0,d=1)"), 3)
    assert rep.kind is Kind.STATIONARY and not rep.consistent


def test_divergent_never_validates_over_discrete():
    rep = classify_window(fam("tadic", "seq:hahn_pow(e_n=floor(16/(n+1)))[kind=divergent,breadth=0]"), 3)
    assert rep.kind is Kind.DIVERGENT and not rep.consistent


@pytest.mark.parametrize("spec,text", BUILT_INS)
def test_structural_invariants(spec, text):
    f = fam(spec, text)
    rep = classify_window(f, 10)
    assert rep.consistent
    if rep.kind is Kind.STATIONARY:
        assert f.field.residue_card is INF
    if rep.kind is Kind.DIVERGENT:
        assert not f.field.is_discrete


@pytest.mark.parametrize("spec,text", BUILT_INS)
def test_kind_independent_of_window(spec, text):
    f = fam(spec, text)
    kinds = {classify_window(f, N).kind for N in (5, 10, 20)}
    assert kinds == {f.kind}


# --- breadth ideal ----------------------------------------------------------


def test_breadth_ideal_examples():
    assert breadth_ideal(fam("qp:5", "seq:geom(r=5)")).zero
    B = breadth_ideal(fam("hahn", "seq:hahn_partial(e_k=1-1/k)"))
    assert (B.threshold, B.principal, B.zero) == (1, True, False)
    assert B.contains(H.monomial(1))
    assert not B.contains(H.monomial(F(99, 100)))
    with pytest.raises(WrongKind):
        breadth_ideal(fam("tadic", "seq:enum()"))


@pytest.mark.parametrize("text,delta", [
    ("seq:hahn_partial(e_k=1-1/k)", F(1)),
    ("seq:hahn_partial(e_k=1/2-1/(k+1))", F(1, 2)),
    ("seq:hahn_pow(e_n=1/2-1/(n+2))", F(1, 2)),
])
def test_breadth_ideal_threshold_rule(text, delta):
    f = fam("hahn", text)
    B = breadth_ideal(f)
    assert B.threshold == delta
    assert B.principal == (delta in H.value_group)
    gaps = f.gaps(40)
    rng = random.Random(text)
    for _ in range(100):
        q = F(rng.randint(-12, 36), rng.randint(1, 12))
        b = H.monomial(q, rng.randint(1, 5))
        assert B.contains(b) == all(q > g for g in gaps)


# --- pseudo-limits ----------------------------------------------------------


def test_pseudo_limit_examples():
    assert is_pseudo_limit(fam("hahn", "seq:hahn_pow(e_n=1/(n+1))"), H(0))
    assert is_pseudo_limit(fam("qp:5", "seq:geom(r=5)"), Q5(0))
    assert not is_pseudo_limit(fam("hahn", "seq:hahn_partial(e_k=1-1/k)"), H(0))
    assert is_pseudo_limit(fam("tadic", "seq:enum()"), T("1/2"))


def test_pseudo_limit_set_examples():
    b = pseudo_limit_set(fam("hahn", "seq:hahn_pow(e_n=1/(n+1))"), H(0))
    assert b.render() == "oball(0;0)" and b.flavor is Flavor.OPEN
    assert pseudo_limit_set(fam("tadic", "seq:enum()"), T(0)).render() == "cball(0;0)"
    f = fam("hahn", "seq:hahn_pow(a=t^(1/3),e_n=1-1/(n+2))[limit=t^(1/3)]")
    assert pseudo_limit_set(f, H.monomial(F(1, 3))).render() == "cball(t^(1/3);1)"
    with pytest.raises(NoKnownLimit):
        pseudo_limit_set(fam("qp:5", "seq:geom(r=5)"), Q5(0))
    with pytest.raises(NoKnownLimit):
        pseudo_limit_set(fam("hahn", "seq:hahn_partial(e_k=1-1/k)"), H(0))


def test_stationary_tolerates_one_miss():
    f = fam("tadic", "seq:enum()")
    # s_0 = 0 is at distance inf from 0; every other term at distance 0
    assert is_pseudo_limit(f, T(0))
    # 1 + t hits s_1 = 1 at distance 1 and is still a limit
    assert is_pseudo_limit(f, T.parse_element("1+t"))
    g = fam("tadic", "seq:arith(a=0,d=t^(1))")
    # -t lies at distance 1 from every term except none, but t^2 spoils two
    assert is_pseudo_limit(g, T(0))
    assert not is_pseudo_limit(g, T.monomial(-1))


def test_extension_limits():
    f = fam("qp:5", "seq:sqrt_trunc(d=-1,r0=2)")
    (w,) = verified_limits(f, 12)
    assert str(w) == "w" and w.parent.r0 == 2
    assert is_pseudo_limit(f, w, 24)
    # the other branch puts w at the other root: no longer a limit
    assert not is_pseudo_limit(f, w.parent.other_branch().generator(), 12)
    W = parse_field("quad:d=-1,p=5")
    with pytest.raises(BranchRequired):
        is_pseudo_limit(f, W.generator(), 12)


@pytest.mark.parametrize("spec,text", BUILT_INS)
def test_pattern_equivalent_forms(spec, text):
    f = fam(spec, text)
    K = f.ext or f.field
    alphas = list(f.limits) + [K.zero, f.s(0), f.s(3)]
    N = 10
    d = f.gaps(N)
    for a in alphas:
        e = [f.dist(a, n) for n in range(N + 2)]
        if f.kind is Kind.CONVERGENT and all(e[n] < e[n + 1] for n in range(N + 1)):
            assert all(e[n] == d[n] for n in range(N + 1))
            assert is_pseudo_limit(f, a, N)
        if f.kind is Kind.DIVERGENT and all(e[n] > e[n + 1] for n in range(N + 1)):
            assert all(e[n + 1] == d[n] for n in range(N + 1))
            assert is_pseudo_limit(f, a, N)


@pytest.mark.parametrize("text", [
    "seq:hahn_pow(e_n=1-1/(n+1))",
    "seq:hahn_pow(a=2,e_n=3/2-1/(n+2),c=3)",
    "seq:hahn_pow(a=t^(1/4),e_n=1/2-1/(n+3))",
])
@given(seed=seeds)
def test_limits_translate_by_breadth(text, seed):
    f = fam("hahn", text)
    (alpha,) = verified_limits(f, 12)
    delta = f.breadth
    rng = random.Random(seed)
    for _ in range(20):
        b = H.monomial(delta + F(rng.randint(0, 8), rng.randint(1, 4)), rng.randint(-5, 5) or 1)
        assert is_pseudo_limit(f, alpha + b, 12)
    # a translate visibly below the window gaps fails
    assert not is_pseudo_limit(f, alpha + H.monomial(delta - F(1, 4)), 12)


# --- type -------------------------------------------------------------------


def test_type_check():
    f = fam("hahn", "seq:hahn_pow(a=1,e_n=2-1/(n+1))")
    assert f.seq_type.tag == "Algebraic"
    assert type_check(f, 12).status == "Algebraic-verified"
    g = fam("hahn", "seq:hahn_partial(e_k=1-1/k)[type=transcendental]")
    assert type_check(g, 12).status == "Transcendental-consistent"
    h = fam("hahn", "seq:hahn_pow(a=1,e_n=2-1/(n+1))[type=transcendental]")
    chk = type_check(h, 12)
    assert chk.status == "Inconclusive" and chk.offending
    bad = fam("hahn", "seq:hahn_partial(e_k=1-1/k)[type=algebraic(X)]")
    assert type_check(bad, 12).status == "Inconclusive"
    assert type_check(fam("hahn", "seq:hahn_partial(e_k=1-1/k)"), 12).status == "Inconclusive"
    with pytest.raises(WrongKind):
        type_check(fam("tadic", "seq:enum()"), 12)


def test_make_family_matches_parse():
    a = make_family(H, "hahn_pow", {"a": "1", "e_n": "1+1/(n+1)"})
    b = parse_family(H, "seq:hahn_pow(a=1,e_n=1+1/(n+1))")
    assert a.render() == b.render()
    assert [a.s(n) for n in range(6)] == [b.s(n) for n in range(6)]
