import math
import random
from fractions import Fraction

import pytest

import oracles
from nonarch_lab.arith_core import Ball, MultiPoly, QQ, TruncatedPoly
from nonarch_lab.errors import CapExceededError, ConfigError, PrecisionError
from nonarch_lab.taylor import (
    ExhaustiveStrategy,
    PolyMap,
    SampledStrategy,
    check_Tr,
    compose,
    cr_norm,
    gauss_norm,
    merge_residue_balls,
    power_compose,
    recheck_witness,
    taylor_poly,
    verify_gauss0,
    verify_gauss1a,
)

Z2 = Ball(2, (0,), 0)
Z3 = Ball(3, (0,), 0)

X2 = PolyMap.univariate([0, 0, 1], domain=Z3)
X3 = PolyMap.univariate([0, 0, 0, 1], domain=Z3)
BINOM2 = PolyMap.univariate([0, Fraction(-1, 2), Fraction(1, 2)], domain=Z2)


def test_taylor_poly_examples():
    tp = taylor_poly(X2, (1,), 2)
    assert tp.coeffs[0][(0,)] == 1 and tp.coeffs[0][(1,)] == 2
    assert tp.eval((1,)) == (1,)          # evaluation at base point returns f(y)
    assert tp.eval((4,)) == (1 + 2 * 3,)  # degree <2 truncation

    tp0 = taylor_poly(X2, (0,), 3)
    assert tp0.eval((7,)) == (49,)        # full polynomial reproduced

    tp3 = taylor_poly(X3, (1,), 2)
    assert tp3.eval((1 + 5,)) == (1 + 3 * 5,)


def test_taylor_reproduces_polynomial():
    rng = random.Random(5)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-9, 9)) for _ in range(rng.randint(1, 5))]
        f = PolyMap.univariate(coeffs)
        y = rng.randint(-4, 4)
        tp = taylor_poly(f, (y,), len(coeffs))  # order deg+1
        for x in (-3, 0, 2, 7):
            assert tp.eval((x,)) == f.eval((x,))


def test_cr_norm_examples():
    assert cr_norm(X2, 2, Z3) == 0
    assert cr_norm(BINOM2, 2, Z2) == -1
    assert cr_norm(PolyMap.univariate([0, 0, 3]), 1, Z3) == 1


def test_cr_norm_gauss_equals_pointwise_sup():
    # with r >= deg f, the divided derivatives evaluated at the ball center
    # are the coefficients themselves, so the exhaustive pointwise minimum
    # attains the Gauss valuation exactly
    rng = random.Random(9)
    for _ in range(20):
        coeffs = [Fraction(rng.randint(-8, 8)) for _ in range(4)]
        if all(c == 0 for c in coeffs):
            continue
        f = PolyMap.univariate(coeffs)
        gauss = cr_norm(f, 3, Z3)
        points = range(0, 3 ** 4)
        pointwise = oracles.pointwise_cr_valuation(coeffs, 3, points, 3)
        assert gauss == pointwise
    # below the degree the Gauss valuation only dominates: (x^3-x)^2 has
    # C^1 data vanishing mod 3 at every point of Z_3 while a coefficient
    # of the derivative stays a unit
    sq = PolyMap.univariate([0, 0, 1, 0, -2, 0, 1])  # (x^3 - x)^2
    gauss = cr_norm(sq, 1, Z3)
    pointwise = oracles.pointwise_cr_valuation(
        [Fraction(c) for c in (0, 0, 1, 0, -2, 0, 1)], 1, range(0, 3 ** 4), 3)
    assert gauss == 0 and pointwise >= 1


def test_check_tr_x2_holds():
    cert = check_Tr(X2, 2, ExhaustiveStrategy(K=5))
    assert cert.verdict == "holds"
    assert cert.strategy == "exhaustive-mod-3^5"
    assert cert.K == 5


def test_check_tr_binomial_fails_with_witness():
    cert = check_Tr(BINOM2, 1, ExhaustiveStrategy(K=5))
    assert cert.verdict == "fails"
    assert cert.witness["kind"] == "remainder"
    assert (cert.witness["x"], cert.witness["y"]) == (2, 0)
    assert cert.witness["ord_lhs"] == 0 and cert.witness["bound_rhs"] == 1
    assert recheck_witness(BINOM2, 1, cert.witness, 2)


def test_check_tr_x3_holds():
    cert = check_Tr(X3, 2, ExhaustiveStrategy(K=5))
    assert cert.verdict == "holds"


def test_downward_closure_and_composition():
    rng = random.Random(31)
    pairs = 0
    while pairs < 20:
        p = rng.choice([2, 3])
        ball = Ball(p, (0,), 0)
        f = PolyMap.univariate([rng.randint(-6, 6) for _ in range(rng.randint(2, 4))],
                               domain=ball)
        g = PolyMap.univariate([rng.randint(-6, 6) for _ in range(rng.randint(2, 4))],
                               domain=ball)
        r = rng.choice([2, 3])
        cf = check_Tr(f, r, ExhaustiveStrategy(K=5))
        cg = check_Tr(g, r, ExhaustiveStrategy(K=5))
        if not (cf.holds and cg.holds):
            continue
        pairs += 1
        # downward closure
        for ell in range(1, r):
            assert check_Tr(f, ell, ExhaustiveStrategy(K=5)).holds
        # composition
        h = compose(g, f)
        assert check_Tr(h, r, ExhaustiveStrategy(K=5)).holds


def test_power_compose_examples():
    f = PolyMap.univariate([0, 1])
    assert power_compose(f, 2, 1).components[0].terms == {(2,): 1}
    assert power_compose(PolyMap.univariate([0, 0, 1]), 3, 1).components[0].terms \
        == {(6,): 1}
    assert power_compose(f, 1, 7).components[0].terms == {(1,): 7}


def test_power_compose_domain_preimage():
    base = Ball(3, (1,), 2)
    f = PolyMap.univariate([0, 1], domain=base)
    fN = power_compose(f, 9, 1)
    balls = fN.domain.maximal_balls()
    assert len(balls) == 1
    assert balls[0].alpha == 1 and balls[0].canonical_center() == (1,)


def test_merge_residue_balls():
    # all residues mod 9 -> the whole of Z_3
    balls = merge_residue_balls(set(range(9)), 3, 2)
    assert len(balls) == 1 and balls[0].alpha == 0
    # residues {0,3,6} mod 9 = the ball 3Z_3 ... here: ord(x) >= 1
    balls = merge_residue_balls({0, 3, 6}, 3, 2)
    assert len(balls) == 1 and balls[0].alpha == 1
    # {0, 2} mod 4 is the ball 2Z_2
    balls = merge_residue_balls({0, 2}, 2, 2)
    assert [(b.canonical_center()[0], b.alpha) for b in balls] == [(0, 1)]
    # a ragged set stays split into depth-2 singletons
    balls = merge_residue_balls({0, 1}, 2, 2)
    assert sorted((b.canonical_center()[0], b.alpha) for b in balls) \
        == [(0, 2), (1, 2)]


def test_gauss_norm_examples():
    assert gauss_norm(TruncatedPoly(QQ, [3, 9, 1]), 3) == 0
    assert gauss_norm(TruncatedPoly(QQ, [3, 9]), 3) == 1
    assert gauss_norm(TruncatedPoly(QQ, []), 3) == math.inf
    assert gauss_norm(PolyMap.univariate([Fraction(1, 3)]), 3) == -1


def test_verify_gauss0_examples():
    # g = a*x on a*M with lambda = a (valuations 1 over Q_3)
    rep = verify_gauss0(MultiPoly(1, {(1,): 3}), 1, 1, 3)
    assert rep.ok
    i1 = rep.entries[0]
    assert i1[0] == 1 and i1[1] >= i1[2] and i1[2] == 0

    # g = x^2 on 3M over Q_3 with |g| <= |9|: order-2 bound holds with equality
    rep = verify_gauss0(MultiPoly(1, {(2,): 1}), 2, 1, 3)
    assert rep.ok
    assert rep.entries[1] == (2, 0, 0, True)

    # constant g: all bounds vacuous
    rep = verify_gauss0(MultiPoly(1, {(0,): 5}), 0, 2, 3)
    assert rep.ok and rep.entries == []

    with pytest.raises(ConfigError):
        verify_gauss0(MultiPoly(1, {(0,): 1}), 1, 1, 3)  # |g|=1 > |lambda|


def test_verify_gauss1a_small():
    rep = verify_gauss1a(PolyMap.univariate([0, 1]), 2, 2, i_max=4, K=6)
    assert rep.all_hold
    assert rep.n == 4 and rep.N == 16
    rep3 = verify_gauss1a(PolyMap.univariate([0, 0, 1]), 2, 3, i_max=4, K=5)
    assert rep3.all_hold and rep3.n == 3 and rep3.N == 9


def test_verify_gauss1a_precondition():
    with pytest.raises(ConfigError):
        verify_gauss1a(PolyMap.univariate([0, Fraction(1, 2)]), 2, 2, i_max=4)


def test_sampled_strategy():
    cert = check_Tr(X2, 2, SampledStrategy(seed=11, samples=200))
    assert cert.holds and cert.strategy.startswith("sampled-")
    bad = check_Tr(BINOM2, 1, SampledStrategy(seed=11, samples=500))
    assert bad.verdict == "fails"
    assert recheck_witness(BINOM2, 1, bad.witness, 2)


def test_multivariate_check():
    ball = Ball(3, (0, 0), 0)
    f = PolyMap(2, 1, [MultiPoly(2, {(1, 1): 1, (2, 0): 1})], domain=ball)
    cert = check_Tr(f, 2, ExhaustiveStrategy(K=2))
    assert cert.holds
    bad = PolyMap(2, 1, [MultiPoly(2, {(1, 1): Fraction(1, 3)})], domain=ball)
    cert2 = check_Tr(bad, 1, ExhaustiveStrategy(K=2))
    assert cert2.verdict == "fails"


def test_cap_and_precision_guards():
    with pytest.raises(CapExceededError):
        check_Tr(X2, 2, ExhaustiveStrategy(K=12, residue_cap=100))
    with pytest.raises(PrecisionError):
        check_Tr(BINOM2, 1, ExhaustiveStrategy(K=0))


def test_tail_floor_provenance():
    f = PolyMap.univariate([0, 1], domain=Z3, tail_floor=10)
    cert = check_Tr(f, 1, ExhaustiveStrategy(K=4))
    assert cert.provenance == "up-to-tail"


def test_certificate_json_roundtrip():
    cert = check_Tr(X2, 2, ExhaustiveStrategy(K=5))
    blob = cert.to_json()
    assert blob["verdict"] == "holds" and blob["K"] == 5
