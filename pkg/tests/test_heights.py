from fractions import Fraction

import pytest

import oracles
from nonarch_lab.arith_core import MultiPoly
from nonarch_lab.errors import CapExceededError, ConfigError
from nonarch_lab.heights import (
    NOT_FOUND,
    PadicConstraint,
    SemialgSpec,
    enumerate_heights,
    h0,
    hk_poly,
    points_k,
    points_Q,
    points_Z,
)


def test_h0_examples():
    assert h0(Fraction(3, 2)) == 3
    assert h0(0) == 1
    assert h0((Fraction(2, 5), 7)) == 7
    assert h0(Fraction(-9, 4)) == 9


def test_hk_examples():
    assert hk_poly(Fraction(2, 3), 1, 100) == 3
    assert hk_poly(4, 2, 100) == 4
    assert hk_poly(Fraction(1, 2), 3, 10) == 2


def test_hk_not_found_and_cap():
    assert hk_poly(Fraction(10), 1, 5) is NOT_FOUND
    with pytest.raises(CapExceededError):
        hk_poly(Fraction(997, 991), 3, 900, cap=1000)


def test_hk_matches_bruteforce_oracle():
    for x in (Fraction(2, 3), Fraction(4), Fraction(1, 2), Fraction(-5, 7),
              Fraction(6), Fraction(3, 4)):
        for k in (1, 2):
            want = oracles.min_relation_height(x, k, 8)
            got = hk_poly(x, k, 8)
            if want is None:
                assert got is NOT_FOUND
            else:
                assert got == want


def test_hk_properties():
    for x in (Fraction(2, 3), Fraction(7, 2), Fraction(5), Fraction(-1, 4)):
        base = h0(x)
        assert hk_poly(x, 1, base) == base  # k=1 equals h0 exactly
        prev = None
        for k in (1, 2, 3):
            val = hk_poly(x, k, base)
            assert val <= base
            if prev is not None:
                assert val <= prev
            prev = val


def test_enumerate_heights_small():
    assert list(enumerate_heights(1)) == [0, 1, -1]
    assert set(enumerate_heights(2)) == {Fraction(0), Fraction(1), Fraction(-1),
                                         Fraction(2), Fraction(-2),
                                         Fraction(1, 2), Fraction(-1, 2)}


def test_enumerate_heights_against_oracle():
    for T in range(1, 31):
        mine = list(enumerate_heights(T))
        assert len(mine) == len(set(mine))  # no repeats
        assert set(mine) == oracles.rationals_of_height(T)
        assert all(h0(q) <= T for q in mine)
    # deterministic order
    assert list(enumerate_heights(7)) == list(enumerate_heights(7))


def test_points_circle_example(circle_curve):
    pts = points_Q(circle_curve, 5)
    assert len(pts) == 12
    assert sorted(pts) == oracles.circle_points(5)
    expected = {(Fraction(1), Fraction(0)), (Fraction(-1), Fraction(0)),
                (Fraction(0), Fraction(1)), (Fraction(0), Fraction(-1))}
    for sx in (1, -1):
        for sy in (1, -1):
            expected.add((Fraction(3 * sx, 5), Fraction(4 * sy, 5)))
            expected.add((Fraction(4 * sx, 5), Fraction(3 * sy, 5)))
    assert set(pts) == expected


def test_points_parabola(parabola_curve):
    pts = points_Z(parabola_curve, 10)
    assert len(pts) == 7
    assert {pt[0] for pt in pts} == {Fraction(v) for v in range(-3, 4)}


def test_points_padic_constraint():
    spec = SemialgSpec(
        2, [MultiPoly(2, {(1, 0): 1, (0, 1): 1})], p=3,
        constraints=[PadicConstraint(MultiPoly(2, {(1, 0): 1}), "ord_ge", 1)])
    pts = points_Z(spec, 3)
    assert set(pts) == {(Fraction(0), Fraction(0)),
                        (Fraction(3), Fraction(-3)),
                        (Fraction(-3), Fraction(3))}


def test_ac_constraint():
    spec = SemialgSpec(
        1, [], p=3,
        constraints=[PadicConstraint(MultiPoly(1, {(1,): 1}), "ac_eq",
                                     depth=1, value=2)])
    pts = points_Z(spec, 9)
    # integers in [-9, 9] whose unit part is 2 mod 3, by hand:
    # 2, 5, 8, -1, -4, -7 (units themselves), 6 = 2*3, -3 = (-1)*3, -9 = (-1)*9
    want = {Fraction(v) for v in (2, 5, 8, -1, -4, -7, 6, -3, -9)}
    assert {pt[0] for pt in pts} == want


def test_points_subset_and_monotone(parabola_curve):
    zpts = points_Z(parabola_curve, 8)
    qpts = points_Q(parabola_curve, 8)
    assert set(zpts) <= set(qpts)
    assert set(zpts) == {pt for pt in qpts
                         if all(c.denominator == 1 for c in pt)}
    assert set(points_Z(parabola_curve, 5)) <= set(zpts)
    assert set(points_Q(parabola_curve, 5)) <= set(qpts)


def test_points_k_equals_points_Q(circle_curve):
    assert points_k(circle_curve, 2, 3) == points_Q(circle_curve, 3)


def test_caps_and_validation(circle_curve):
    with pytest.raises(CapExceededError):
        points_Q(circle_curve, 5, cap=10)
    with pytest.raises(ConfigError):
        points_Q(SemialgSpec(5, []), 1)
    with pytest.raises(ConfigError):
        hk_poly(Fraction(1), 0, 5)
