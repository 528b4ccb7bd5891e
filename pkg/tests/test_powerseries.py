import random
from fractions import Fraction

import pytest

from anacalc.dyadic import Dyadic, RealName, SeqName, ZERO
from anacalc.errors import DomainError
from anacalc import refcheck as rc
from anacalc.powerseries import (
    PiSeries,
    ps_add,
    ps_antidiff,
    ps_antidiff_advice,
    ps_coeffs_from_eval,
    ps_diff,
    ps_diff_advice,
    ps_eval,
    ps_eval_real,
    ps_integrate,
    ps_max,
    ps_mul,
    ps_mul_advice,
    ps_sup_bound,
)

D = Dyadic


def tol(n):
    return Fraction(1, 2 ** n)


def assert_close(x: Dyadic, want: Fraction, n: int):
    assert abs(x.to_fraction() - want) <= tol(n)


def test_eval_zero_series():
    z = PiSeries.zero()
    for pt in (D(0), D(1), D(-1), D(1, -2)):
        r, i = ps_eval(z, pt, 30)
        assert r == ZERO and i == ZERO


def test_eval_geometric_at_one():
    f = PiSeries.geometric()
    assert_close(ps_eval_real(f, D(1), 20), Fraction(2), 20)
    # 2/(2-x) at x = -1 is 2/3
    assert_close(ps_eval_real(f, D(-1), 33), Fraction(2, 3), 33)


def test_eval_exp_against_oracle():
    f = PiSeries.exp_series()
    want = rc.oracle_eval("exp", Fraction(1), 64).to_fraction()
    assert_close(ps_eval_real(f, D(1), 50), want, 50)
    rng = random.Random(3)
    for n in (10, 50, 200):
        for _ in range(4):
            x = D(rng.randrange(-(1 << 10), (1 << 10) + 1), -10)
            got = ps_eval_real(f, x, n)
            want = rc.oracle_eval("exp", x.to_fraction(), n + 8).to_fraction()
            assert abs(got.to_fraction() - want) <= tol(n)


def test_eval_complex_point():
    f = PiSeries.geometric()
    # 2/(2 - i/2) = (8 + 2i)/17... compute: 2/(2 - i/2) = 2(2 + i/2)/((2)^2+1/4)
    r, i = ps_eval(f, __import__("anacalc.dyadic", fromlist=["ComplexName"]).ComplexName.from_dyadic(ZERO, D(1, -1)), 35)
    want_r = Fraction(2 * 2, Fraction(17, 4)) / 1
    want_r = Fraction(16, 17)
    want_i = Fraction(4, 17)
    assert abs(r.to_fraction() - want_r) <= tol(34)
    assert abs(i.to_fraction() - want_i) <= tol(34)


def test_add_advice_and_value():
    f = PiSeries.exp_series()  # (K=1, A=2)
    g = PiSeries(f.coeffs, 2, 5)
    s = ps_add(f, g)
    assert (s.K, s.A) == (2, 7)
    z = ps_add(f, PiSeries.zero())
    assert (z.K, z.A) == (1, 3)
    gg = ps_add(PiSeries.geometric(), PiSeries.geometric())
    assert_close(ps_eval_real(gg, D(1), 20), Fraction(4), 20)


def test_mul_advice_formula():
    assert ps_mul_advice(1, 1, 1, 1) == (2, 3)
    assert ps_mul_advice(2, 1, 1, 1)[0] == 4


def test_mul_values():
    f = PiSeries.geometric()
    p = ps_mul(f, f)
    # c_2 = sum 2^-i 2^-(2-i) = 3/4
    c2, _ = p.coeffs.query(2, 30)
    assert_close(c2, Fraction(3, 4), 29)
    z = ps_mul(f, PiSeries.zero())
    for j, n in ((0, 10), (3, 25), (17, 40)):
        r, i = z.coeffs.query(j, n)
        assert abs(r.to_fraction()) <= tol(n) and abs(i.to_fraction()) <= tol(n)
    # (2/(2-x))^2 at 1/2 is (4/3)^2
    assert_close(ps_eval_real(p, D(1, -1), 30), Fraction(16, 9), 30)


def test_diff_examples():
    g = PiSeries.geometric()
    dg = ps_diff(g, 1)
    assert dg.K == 2
    a0, _ = dg.coeffs.query(0, 30)
    assert_close(a0, Fraction(1, 2), 29)
    e = PiSeries.exp_series()
    de = ps_diff(e, 1)
    for j in (0, 1, 5):
        want = rc.series_coeff(rc.get_fixture("exp-series"), j)
        got, _ = de.coeffs.query(j, 40)
        assert_close(got, want, 39)
    assert ps_diff_advice(1, 1, 2) == (2, 9)


def test_diff_zero_order_identity():
    f = PiSeries.geometric()
    assert ps_diff(f, 0) is f


def test_antidiff_examples():
    z = ps_antidiff(PiSeries.zero(), 1)
    for j, n in ((0, 10), (4, 30)):
        r, _ = z.coeffs.query(j, n)
        assert abs(r.to_fraction()) <= tol(n)
    e = ps_antidiff(PiSeries.exp_series(), 1)
    a0, _ = e.coeffs.query(0, 30)
    assert a0 == ZERO
    for j in (1, 2, 6):
        got, _ = e.coeffs.query(j, 40)
        want = rc.series_coeff(rc.get_fixture("exp-series"), j)
        assert_close(got, want, 39)
    assert ps_antidiff_advice(2, 3, 1) == (2, 5)
    assert ps_antidiff_advice(1, 3, 2) == (1, 12)


def test_diff_antidiff_roundtrip_coefficients():
    f = PiSeries.geometric()
    rt = ps_diff(ps_antidiff(f, 1), 1)
    for j in (0, 1, 2, 9):
        got, _ = rt.coeffs.query(j, 40)
        assert_close(got, Fraction(1, 1 << j), 39)


def test_max_examples():
    assert ps_max(PiSeries.zero(), D(0), D(1), 20) == ZERO
    e = PiSeries.exp_series()
    want = rc.oracle_eval("exp", Fraction(1), 40).to_fraction()
    got = ps_max(e, D(0), D(1), 30)
    assert abs(got.to_fraction() - want) <= tol(30)
    zpoly = PiSeries.monomial(1)
    got = ps_max(zpoly, D(-1), D(1), 20, mode="abs")
    assert_close(got, Fraction(1), 20)
    # interval endpoints in either order
    got = ps_max(e, D(1), D(0), 25)
    assert abs(got.to_fraction() - want) <= tol(25)


def test_max_abs_complex():
    # f = i z: |f| on [-1,1] has max 1
    def q(j, n):
        return (ZERO, D(1) if j == 1 else ZERO)

    f = PiSeries(SeqName(q), 1, 2)
    got = ps_max(f, D(-1), D(1), 18, mode="abs")
    assert_close(got, Fraction(1), 17)


def test_integrate_examples():
    assert ps_integrate(PiSeries.zero(), D(0), D(1), 30) == ZERO
    e = PiSeries.exp_series()
    want = rc.oracle_integral("exp", Fraction(0), Fraction(1), 50).to_fraction()
    got = ps_integrate(e, D(0), D(1), 40)
    assert abs(got.to_fraction() - want) <= tol(40)
    z = PiSeries.monomial(1)
    assert_close(ps_integrate(z, D(0), D(1), 30), Fraction(1, 2), 30)
    # reversed interval: the paper's MAX/int normalize via min/max
    got = ps_integrate(e, D(1), D(0), 30)
    assert abs(got.to_fraction() - want) <= tol(30)


def test_integrate_with_names():
    g = PiSeries.geometric()
    u = RealName.from_rational(-1, 3)
    v = RealName.from_rational(1, 2)
    got = ps_integrate(g, u, v, 35).to_fraction()
    want = (rc.oracle_integral("geometric", Fraction(-1, 3), Fraction(1, 2), 50)
            .to_fraction())
    assert abs(got - want) <= tol(35)


def test_sup_bound_formula():
    f = PiSeries.zero()  # K=1, A=1
    b0 = ps_sup_bound(f, 0).to_fraction()
    # r' = sqrt2: r'/(r'-1) = 2 + sqrt2 = 3.4142...
    assert b0 >= Fraction(34142, 10000)
    assert b0 <= Fraction(342, 100) + Fraction(1, 2 ** 10)
    b1 = ps_sup_bound(f, 1).to_fraction()
    # 1/(sqrt2-1)^2 = 3 + 2 sqrt2 = 5.828...
    assert b1 >= Fraction(58284, 10000)


def test_eval_add_identity():
    f = PiSeries.exp_series()
    g = PiSeries.geometric()
    s = ps_add(f, g)
    for n in (12, 30):
        x = D(3, -3)
        lhs = ps_eval_real(s, x, n).to_fraction()
        rhs = (ps_eval_real(f, x, n + 2) + ps_eval_real(g, x, n + 2)).to_fraction()
        assert abs(lhs - rhs) <= 2 * tol(n + 1)


def test_parameter_soundness_sampled():
    f = ps_mul(PiSeries.geometric(), PiSeries.exp_series())
    rho = f.rho_upper()
    for j in (0, 1, 5, 17, 64):
        r, i = f.coeffs.query(j, j + 16)
        mag = max(abs(r.to_fraction()), abs(i.to_fraction()))
        assert mag <= f.A * rho ** j + tol(j + 16)


def test_coeffs_from_eval_constant_and_identity():
    ones = ps_coeffs_from_eval(lambda x, p: (D(1), ZERO), 1, 1)
    r, i = ones.query(0, 20)
    assert_close(r, Fraction(1), 20)
    for j in (1, 2, 5):
        r, i = ones.query(j, 20)
        assert abs(r.to_fraction()) <= tol(20)

    ident = ps_coeffs_from_eval(lambda x, p: (x, ZERO), 1, 2)
    r, _ = ident.query(1, 25)
    assert_close(r, Fraction(1), 25)
    r, _ = ident.query(0, 25)
    assert abs(r.to_fraction()) <= tol(25)
    r, _ = ident.query(3, 20)
    assert abs(r.to_fraction()) <= tol(20)


def test_coeffs_from_eval_exp():
    def ev(x: Dyadic, p: int):
        return rc.oracle_eval("exp", x.to_fraction(), p), ZERO

    # |exp| <= e^2 < 8 on |z| <= 2
    coeffs = ps_coeffs_from_eval(ev, 1, 8)
    r, _ = coeffs.query(2, 20)
    assert_close(r, Fraction(1, 2), 20)
    r, _ = coeffs.query(3, 18)
    assert_close(r, Fraction(1, 6), 18)


def test_coeffs_from_eval_negative_direction():
    def ev(x: Dyadic, p: int):
        if x.to_fraction() > 0:
            raise AssertionError("cluster escaped the stated domain")
        return rc.oracle_eval("exp", x.to_fraction(), p), ZERO

    coeffs = ps_coeffs_from_eval(ev, 1, 8, lo=Fraction(-1), hi=Fraction(0))
    r, _ = coeffs.query(2, 16)
    assert_close(r, Fraction(1, 2), 16)


def test_advice_normalization():
    with pytest.raises(DomainError):
        PiSeries(SeqName(lambda j, n: (ZERO, ZERO)), 0, 1)
    f = PiSeries(SeqName(lambda j, n: (ZERO, ZERO)), 1, 0)
    assert f.A == 1
