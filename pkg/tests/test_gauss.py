import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, strategies as st

from conftest import nonzero_poly, random_poly
from vlab.errors import MixedFields, NotAnElement
from vlab.fields import parse_field
from vlab.gauss import (
    GaussPoint,
    RingOrder,
    compare_rings,
    gauss_val,
    is_overring_of_VX,
    is_residually_transcendental,
)
from vlab.literals import parse_poly, parse_ratfunc
from vlab.poly import Poly, RatFunc, evaluate
from vlab.sets import Ball, BallRelation, ball_relate
from vlab.values import INF, ValueGroup

F = Fraction
seeds = st.integers(0, 10**9)
GAUSS_FIELDS = ["qp:5", "qp:2", "quad:d=-1,p=5,r0=2", "quad:d=-1,p=5,r0=3", "quad:d=3,p=3", "tadic", "hahn", "hahn:fp=3"]

RING_TO_BALL = {
    RingOrder.SUBSET: BallRelation.CONTAINS,
    RingOrder.SUPERSET: BallRelation.CONTAINED,
    RingOrder.EQUAL: BallRelation.EQUAL,
    RingOrder.INCOMPARABLE: BallRelation.DISJOINT,
}


def binomial_oracle(P, f):
    """min v(a_i) + i*gamma with a_i = sum_j c_j C(j, i) alpha^(j-i); no synthetic division."""
    K, a = P.base, P.alpha
    cs = [K.coerce(c) if hasattr(K, "coerce") else c for c in f.coeffs]
    best = INF
    for i in range(len(cs)):
        ai = K.zero
        for j in range(i, len(cs)):
            ai = ai + cs[j] * comb(j, i) * a ** (j - i)
        if not ai.is_zero():
            best = min(best, K.valuation(ai) + i * P.gamma)
    return best


def random_point(K, rng, integral=False, in_group=False):
    g = K.random_value(rng, -1, 3)
    if not in_group and rng.random() < 0.3:
        g = g + F(1, rng.choice([2, 3, 5]))
    if in_group and K.is_discrete:
        g = K.value_group.ceil(g)
    return GaussPoint(K, K.random_element(rng, integral=integral), g)


def scaled(K, f: Poly, q):
    """f / c with v(c) = q (q in the value group)."""
    return Poly(K, [x / K.element_of_value(q) for x in f.coeffs])


def witness_polys(P1, P2, rng, count=50):
    """Polynomials built to expose non-inclusion between the two rings."""
    K = P1.base
    out = []
    for P in (P1, P2):
        k = 1
        while k * P.gamma not in K.value_group:
            k += 1
        lin = Poly(K, [-P.alpha, K.one])
        for m in range(1, 4):
            out.append(scaled(K, lin ** (k * m), k * m * P.gamma))
    out.append(Poly.constant(K.one / K.uniformizer()) if K.is_discrete else Poly.constant(K.monomial(-1)))
    while len(out) < count:
        f = nonzero_poly(K, rng, 3)
        v = gauss_val(rng.choice((P1, P2)), f)
        if v in K.value_group:
            out.append(scaled(K, f, v))
    return out


def sampled_order(P1, P2, polys):
    in1 = [gauss_val(P1, f) >= 0 for f in polys]
    in2 = [gauss_val(P2, f) >= 0 for f in polys]
    sub = all(b for a, b in zip(in1, in2) if a)
    sup = all(a for a, b in zip(in1, in2) if b)
    return {(True, True): RingOrder.EQUAL, (True, False): RingOrder.SUBSET,
            (False, True): RingOrder.SUPERSET, (False, False): RingOrder.INCOMPARABLE}[(sub, sup)]


def test_gauss_examples():
    W2 = parse_field("quad:d=-1,p=5,r0=2")
    W3 = parse_field("quad:d=-1,p=5,r0=3")
    Q5 = parse_field("qp:5")
    f = parse_poly(Q5, "-X+2")
    assert gauss_val(GaussPoint(W2, W2.generator(), 1), f) == 1
    assert gauss_val(GaussPoint(W3, W3.generator(), 1), f) == 0
    assert gauss_val(GaussPoint(Q5, 0, 3), parse_poly(Q5, "X")) == 3
    assert gauss_val(GaussPoint(Q5, 0, F(1, 2)), parse_poly(Q5, "X^2+5")) == 1
    assert gauss_val(GaussPoint(Q5, 0, 0), Poly(Q5)) is INF
    with pytest.raises(NotAnElement):
        GaussPoint(Q5, 0, INF)


def test_ratfunc_examples():
    Q5 = parse_field("qp:5")
    P = GaussPoint(Q5, 0, 1)
    assert gauss_val(P, parse_ratfunc(Q5, "(X^2+25)/(5*X)")) == 2 - 2


def test_residual_transcendence_examples():
    Q5 = parse_field("qp:5")
    assert is_residually_transcendental(GaussPoint(Q5, 0, F(2, 3)), ValueGroup.cyclic(1))
    assert is_residually_transcendental(GaussPoint(Q5, 0, 0), ValueGroup.cyclic(1))
    assert is_residually_transcendental(GaussPoint(Q5, 0, F(7, 4)), ValueGroup.cyclic(2))


def test_compare_examples():
    Q5 = parse_field("qp:5")
    cases = [((0, 1), (5, 2), RingOrder.SUBSET), ((0, 1), (5, 1), RingOrder.EQUAL), ((0, 1), (1, 2), RingOrder.INCOMPARABLE)]
    rng = random.Random(0)
    for (a1, g1), (a2, g2), want in cases:
        P1, P2 = GaussPoint(Q5, a1, g1), GaussPoint(Q5, a2, g2)
        assert compare_rings(P1, P2) is want
        assert sampled_order(P1, P2, witness_polys(P1, P2, rng)) is want
    assert compare_rings(GaussPoint(Q5, 5, 2), GaussPoint(Q5, 0, 1)) is RingOrder.SUPERSET
    with pytest.raises(MixedFields):
        compare_rings(GaussPoint(Q5, 0, 1), GaussPoint(parse_field("qp:3"), 0, 1))


def test_overring_examples():
    Q5 = parse_field("qp:5")
    assert is_overring_of_VX(GaussPoint(Q5, 0, 0))
    assert not is_overring_of_VX(GaussPoint(Q5, F(1, 5), 1))
    assert not is_overring_of_VX(GaussPoint(Q5, 5, -1))


@pytest.mark.parametrize("spec", GAUSS_FIELDS)
@given(seed=seeds)
def test_gauss_is_a_valuation(spec, seed):
    K = parse_field(spec)
    rng = random.Random(seed)
    P = random_point(K, rng)
    f, g = random_poly(K, rng, 3), random_poly(K, rng, 3)
    assert gauss_val(P, f * g) == gauss_val(P, f) + gauss_val(P, g)
    assert gauss_val(P, f + g) >= min(gauss_val(P, f), gauss_val(P, g))
    if not g.is_zero():
        r = RatFunc(f, g)
        assert gauss_val(P, r * r) == 2 * gauss_val(P, r)


@pytest.mark.parametrize("spec", GAUSS_FIELDS)
@given(seed=seeds)
def test_matches_binomial_oracle(spec, seed):
    K = parse_field(spec)
    rng = random.Random(seed)
    P = random_point(K, rng)
    f = random_poly(K, rng, 5)
    assert gauss_val(P, f) == binomial_oracle(P, f)


@pytest.mark.parametrize("spec", ["tadic", "hahn"])
@given(seed=seeds)
def test_generic_specialization(spec, seed):
    # with an infinite residue field v(f(alpha + c*u)) equals the Gauss value
    # for all but deg f residues u, so the minimum over deg f + 1 of them is exact
    K = parse_field(spec)
    rng = random.Random(seed)
    P = random_point(K, rng, in_group=True)
    f = nonzero_poly(K, rng, 4)
    c = K.element_of_value(P.gamma)
    vals = [K.valuation(evaluate(f, P.alpha + c * u)) for u in range(1, f.degree() + 3)]
    assert gauss_val(P, f) == min(vals)


@pytest.mark.parametrize("spec", GAUSS_FIELDS)
@given(seed=seeds)
def test_classical_gauss_at_origin(spec, seed):
    K = parse_field(spec)
    f = nonzero_poly(K, random.Random(seed), 5)
    assert gauss_val(GaussPoint(K, 0, 0), f) == min(K.valuation(c) for c in f.coeffs if not c.is_zero())


@pytest.mark.parametrize("spec", GAUSS_FIELDS)
@given(seed=seeds)
def test_value_of_X(spec, seed):
    K = parse_field(spec)
    P = random_point(K, random.Random(seed))
    X = Poly.x(K)
    assert gauss_val(P, X) == min(P.gamma, K.valuation(P.alpha))
    assert is_overring_of_VX(P) == (K.valuation(P.alpha) >= 0 and gauss_val(P, X) >= 0)


@pytest.mark.parametrize("spec", GAUSS_FIELDS)
@given(seed=seeds)
def test_compare_rings_against_sampling(spec, seed):
    K = parse_field(spec)
    rng = random.Random(seed)
    P1 = random_point(K, rng)
    # half the time put the second centre near the first
    if rng.random() < 0.5:
        P2 = GaussPoint(K, P1.alpha + K.element_of_value(K.random_value(rng, 0, 3)), P1.gamma + rng.choice([0, 0, 1, 2]))
    else:
        P2 = random_point(K, rng)
    order = compare_rings(P1, P2)
    assert sampled_order(P1, P2, witness_polys(P1, P2, rng)) is order
    if order is RingOrder.SUBSET:
        for _ in range(20):
            f = random_poly(K, rng, 4)
            if gauss_val(P1, f) >= 0:
                assert gauss_val(P2, f) >= 0


@pytest.mark.parametrize("spec", GAUSS_FIELDS)
@given(seed=seeds)
def test_compare_rings_matches_balls(spec, seed):
    K = parse_field(spec)
    rng = random.Random(seed)
    P1 = random_point(K, rng, in_group=True)
    P2 = GaussPoint(K, P1.alpha + K.element_of_value(K.random_value(rng, -1, 3)), P1.gamma + rng.choice([-1, 0, 1]))
    order = compare_rings(P1, P2)
    rel = ball_relate(Ball(P1.alpha, P1.gamma), Ball(P2.alpha, P2.gamma))
    assert RING_TO_BALL[order] is rel


@pytest.mark.parametrize("spec", GAUSS_FIELDS)
@given(seed=seeds)
def test_equal_points_equal_values(spec, seed):
    K = parse_field(spec)
    rng = random.Random(seed)
    P1 = random_point(K, rng)
    if P1.gamma not in K.value_group:
        return
    P2 = GaussPoint(K, P1.alpha + K.element_of_value(P1.gamma) * K.random_element(rng, integral=True), P1.gamma)
    assert compare_rings(P1, P2) is RingOrder.EQUAL
    for _ in range(10):
        f = random_poly(K, rng, 4)
        assert gauss_val(P1, f) == gauss_val(P2, f)
