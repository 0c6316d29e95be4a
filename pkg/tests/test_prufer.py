import random

import pytest
from hypothesis import given, settings, strategies as st

from corpus import DVR_CORPUS, MIXED_CORPUS
from vlab.errors import NotInsideV, UnvalidatedFamily
from vlab.fields import parse_field
from vlab.gauss import GaussPoint
from vlab.prufer import decide_prufer, find_witness, gauss_overring_exists
from vlab.sequences import Kind, classify_window, is_pseudo_limit
from vlab.sets import Ball, FiniteSet, Flavor, SubsetDesc, ball_member, parse_desc, sample_ball

seeds = st.integers(0, 10**9)
N = 12


def desc(spec, text):
    return parse_desc(parse_field(spec), text)


def precompact_by_residues(S, levels=(1, 2), samples=60):
    """S mod M^n finite, judged by counting classes of structured samples.

    Each ball contributes c + pi^r k for k = 0..samples-1; over a finite
    residue field these fall into at most q^n classes mod M^(r+n), over an
    infinite one they are pairwise distinct.  Families contribute their
    first terms.
    """
    K = S.field
    for a in S.atoms:
        if isinstance(a, FiniteSet):
            continue
        if isinstance(a, Ball):
            r = a.effective_radius() if a.flavor is Flavor.CLOSED else K.value_group.next_above(a.radius)
            pi_r = K.element_of_value(r)
            pts = [a.center + pi_r * k for k in range(samples)]
        else:
            r = 0
            pts = [a.family.s(k) for k in range(samples)]
        for n in levels:
            classes = []
            for x in pts:
                if not any(K.valuation(x - y) >= r + n for y in classes):
                    classes.append(x)
            if len(classes) == samples:
                return False
    return True


# --- examples ---------------------------------------------------------------


def test_examples():
    v = decide_prufer(desc("qp:5", "finite{0,1,2}"), N)
    assert v.prufer and v.rule == "FiniteSet"
    v = decide_prufer(desc("qp:5", "cball(0;0)"), N)
    assert v.prufer and v.rule == "Precompact"
    v = decide_prufer(desc("tadic", "cball(0;0)"), N)
    assert not v.prufer and v.witness.kind is Kind.STATIONARY
    assert [str(v.witness.family.s(n)) for n in range(4)] == ["0", "1", "2", "3"]
    assert str(v.witness.limit) == "0" and v.witness.breadth == 0
    v = decide_prufer(desc("hahn", "cball(0;1)"), N)
    assert not v.prufer and v.witness.kind is Kind.DIVERGENT
    assert str(v.witness.family.s(0)) == "t^(2)" and str(v.witness.limit) == "0"
    v = decide_prufer(desc("hahn", "seq:hahn_partial(e_k=1-1/k)[type=transcendental]"), N)
    assert v.prufer and v.rule == "TranscendentalType"
    assert any("not proved" in c for c in v.caveats)
    v = decide_prufer(desc("qp:5", "seq:geom(r=5)"), N)
    assert v.prufer and v.rule == "Precompact"
    v = decide_prufer(desc("hahn", "seq:geom(r=t^(1))"), N)
    assert v.prufer and v.rule == "ZeroBreadthIdeal"


def test_verified_limit_gives_negative_verdict():
    v = decide_prufer(desc("hahn", "seq:hahn_pow(a=t^(1/3),e_n=1-1/(n+2))"), N)
    assert not v.prufer and str(v.witness.limit) == "t^(1/3)" and v.witness.breadth == 1
    # declared transcendental, but the declared limit exposes it
    v = decide_prufer(desc("hahn", "seq:hahn_pow(a=1,e_n=2-1/(n+1))[type=transcendental]"), N)
    assert not v.prufer and str(v.witness.limit) == "1"


def test_unvalidated_families():
    with pytest.raises(UnvalidatedFamily):
        decide_prufer(desc("hahn", "seq:hahn_partial(e_k=1-1/k)"), N)
    with pytest.raises(UnvalidatedFamily):
        decide_prufer(desc("hahn", "seq:hahn_partial(e_k=1-1/k)[type=algebraic(X)]"), N)
    with pytest.raises(UnvalidatedFamily):
        decide_prufer(desc("hahn", "seq:hahn_pow(e_n=1-1/(n+1))[breadth=1/2]"), N)
    with pytest.raises(NotInsideV):
        decide_prufer(desc("hahn", "cball(0;-1)"), N)


def test_find_witness_examples():
    for spec, kind in (("tadic", Kind.STATIONARY), ("hahn", Kind.DIVERGENT)):
        w = find_witness(desc(spec, "cball(0;0)"), N)
        assert w.kind is kind and w.replay(2 * N)
    assert find_witness(desc("qp:5", "finite{0,1}"), N) is None


def test_gauss_overring_examples():
    H = parse_field("hahn")
    assert gauss_overring_exists(desc("hahn", "cball(0;1)"), N) == GaussPoint(H, 0, 1)
    assert gauss_overring_exists(desc("qp:5", "cball(0;0)"), N) is None
    P = gauss_overring_exists(desc("hahn", "seq:hahn_pow(a=t^(1/3),e_n=1-1/(n+2))"), N)
    assert P == GaussPoint(H, H.monomial("1/3"), 1)


def test_sphere_over_finite_residue_hahn():
    v = decide_prufer(desc("hahn:fp=3", "sphere(0;1)"), N)
    w = v.witness
    assert not v.prufer and w.kind is Kind.DIVERGENT
    K = parse_field("hahn:fp=3")
    sphere = Ball(K(0), 1, Flavor.SPHERE)
    assert all(ball_member(sphere, w.family.s(n)) for n in range(2 * N))


# --- properties -------------------------------------------------------------


@pytest.mark.parametrize("spec,text", MIXED_CORPUS)
def test_negative_witnesses_replay(spec, text):
    S = desc(spec, text)
    v = decide_prufer(S, N)
    if v.prufer:
        assert v.witness is None
        return
    w = v.witness
    rep = classify_window(w.family, 2 * N)
    assert rep.consistent and rep.kind is w.kind
    assert is_pseudo_limit(w.family, w.limit, 2 * N)
    # the witness lies in S
    K = S.field
    for n in range(2 * N):
        s = w.family.s(n)
        assert any(
            (isinstance(a, Ball) and ball_member(a, s))
            or (isinstance(a, FiniteSet) and s in a.points)
            or (not isinstance(a, (Ball, FiniteSet)) and a.family.render() == w.family.render())
            for a in S.atoms
        ), (n, s, K)


@pytest.mark.parametrize("spec,text", MIXED_CORPUS)
def test_coherence_with_gauss_overrings(spec, text):
    S = desc(spec, text)
    assert decide_prufer(S, N).prufer == (gauss_overring_exists(S, N) is None)


@pytest.mark.parametrize("spec,text", DVR_CORPUS)
def test_dvr_triple_equivalence(spec, text):
    S = desc(spec, text)
    verdict = decide_prufer(S, N).prufer
    precompact = precompact_by_residues(S)
    w = find_witness(S, N)
    no_stationary = w is None or w.kind is not Kind.STATIONARY
    assert verdict == precompact == no_stationary


@pytest.mark.parametrize("spec", ["qp:5", "tadic", "hahn", "hahn:fp=3"])
@settings(max_examples=40)
@given(seed=seeds)
def test_monotone_under_inclusion(spec, seed):
    # shrink S2 to S1: drop atoms, drop points, or replace a ball by a sub-ball
    K = parse_field(spec)
    rng = random.Random(seed)
    atoms = []
    for _ in range(rng.randint(1, 3)):
        if rng.random() < 0.5:
            atoms.append(FiniteSet(tuple(K.random_element(rng, integral=True) for _ in range(3))))
        else:
            atoms.append(Ball(K.random_element(rng, integral=True), K.random_value(rng, 0, 2), rng.choice(list(Flavor))))
    S2 = SubsetDesc(K, atoms)
    sub = []
    for a in atoms:
        roll = rng.random()
        if roll < 0.3:
            continue
        if isinstance(a, FiniteSet):
            sub.append(FiniteSet(a.points[: rng.randint(1, len(a.points))]))
        elif roll < 0.6:
            sub.append(Ball(sample_ball(a, rng), a.effective_radius() + K.random_value(rng, 1, 3)))
        elif roll < 0.8:
            sub.append(FiniteSet(tuple(sample_ball(a, rng) for _ in range(3))))
        else:
            sub.append(a)
    if not sub:
        sub = [atoms[0]]
    S1 = SubsetDesc(K, sub)
    if decide_prufer(S2, N).prufer:
        assert decide_prufer(S1, N).prufer
