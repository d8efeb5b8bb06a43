"""Derivative tower of the algebraic root, the two dependency vectors with
their band structure, and the recursively generated coefficient sequence."""

from tutteval.exactnum import ONE, Rat
from tutteval.holonomic import (PhiQuot, _pq_add, _pq_dlam, _pq_eq,
                                _pq_mul, _pq_scale, b_direct, b_equality_report,
                                b_recursion, compute_p0, coprimality_report,
                                dependency_report, find_R, find_Rhat,
                                p0_report, p0_series_report, pq_from_poly,
                                q_tower, tower_oracle, weighted_degree)
from tutteval.polyring import Poly, RatFun, poly_parse

s = Poly.var("s")


# -- the first-order derivative ---------------------------------------------


def test_p0_closed_form():
    # phi' = (12 l phi^3 + 52 l phi^2 + 4 l phi - 36 l + 9 phi)
    #        / ((256 l - 27) l), as phi-coefficients
    num = poly_parse("12*l*f^3 + 52*l*f^2 + 4*l*f - 36*l + 9*f")
    den = poly_parse("256*l^2 - 27*l")
    p0 = compute_p0()
    assert len(p0) == 4
    for i in range(4):
        assert p0[i] == RatFun(num.coeff_of("f", i), den)


def test_p0_reports():
    assert p0_report().ok
    assert p0_series_report(20).ok


# -- the factored-quotient arithmetic ---------------------------------------


def test_pq_roundtrip_and_ring_ops():
    a = pq_from_poly(poly_parse("2*f + l"))
    b = pq_from_poly(poly_parse("f^2 - 3"))
    assert _pq_eq(_pq_mul(a, b), pq_from_poly(
        poly_parse("2*f + l") * poly_parse("f^2 - 3")))
    assert _pq_eq(_pq_add(a, _pq_scale(a, Rat(-1))), PhiQuot([], {}, ONE))
    assert _pq_dlam(pq_from_poly(Poly.one())).is_zero()


def test_q_tower_oracle():
    # d^i F / d lambda^i = Q_i F as truncated series, i <= 3 fast
    assert tower_oracle(3, 14, 10).ok


# -- dependency vectors -----------------------------------------------------


def test_dependency_R():
    dv = find_R()
    assert dv.offset == 0 and len(dv.entries) == 5
    # the band R_{i,i-1} is a positive scalar times (s - 1)
    expected = {1: 15, 2: 96, 3: 324, 4: 486}
    for i in range(1, 5):
        band = dv.coeff(i, i - 1)
        assert band == (s - 1).scale(Rat(expected[i]))
    # nothing below the band
    for i in range(5):
        for k in range(i - 1):
            assert dv.coeff(i, k).is_zero()
    assert dependency_report("R").ok


def test_dependency_Rhat():
    dv = find_Rhat()
    assert dv.offset == 1 and len(dv.entries) == 5
    expected = {2: 126, 3: 612, 4: 1782, 5: 2430}
    for i in range(2, 6):
        band = dv.coeff(i, i - 2)
        assert band == (3 * s + 1).scale(Rat(expected[i]))
    for i in range(1, 6):
        for k in range(i - 2):
            assert dv.coeff(i, k).is_zero()
        # weighted degree bound 2(3 - i) with s:2, lambda:-2
        assert weighted_degree(dv.entry(i)) <= 2 * (3 - i)
    assert dependency_report("Rhat").ok


def test_coprimality():
    assert coprimality_report().ok


# -- the b sequence ---------------------------------------------------------


def test_b_direct_low_orders():
    bs = b_direct(8, 4)
    assert bs.bl[0] == Poly.one()
    assert bs.bl[1] == 3 * s + 1
    assert bs.bl[2] == poly_parse("4*s^2 + 10*s + 6")
    assert bs.bl[3] == poly_parse("36*s^2 + 114*s + 78")
    assert bs.degree_report().ok


def test_b_recursion_matches_direct():
    rec, rep = b_recursion(6)
    assert rep.ok, rep.line()
    direct = b_direct(9, 6)
    eq = b_equality_report(direct, rec)
    assert eq.ok, eq.line()


def test_b_degree_bound():
    rec, rep = b_recursion(8)
    assert rep.ok
    for l, p in enumerate(rec.bl):
        assert p.degree("s") <= l
