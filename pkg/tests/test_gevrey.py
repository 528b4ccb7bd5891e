import random
from fractions import Fraction

import pytest

from anacalc.dyadic import Dyadic, ZERO
from anacalc.errors import DomainError
from anacalc import refcheck as rc
from anacalc.fixtures import (
    bump_gevrey,
    exp_gevrey,
    gpeak_gevrey,
    gpeak_peak_value,
)
from anacalc.gevrey import (
    GevreyGamma,
    GevreyLambda,
    empirical_lambda,
    g_add,
    g_compose,
    g_diff,
    g_eval,
    g_integrate,
    g_max,
    g_mul,
    g_param_compose,
    g_param_diff,
    g_param_product,
    gamma_to_lambda,
    lambda_to_gamma,
    lom_b_degree,
    lom_c_params,
    lom_e_Bhat,
    r_build,
    _check_decay,
)

D = Dyadic


def tol(n):
    return Fraction(1, 2 ** n)


def grid_err(lam, fix_id, n, pts=100):
    worst = Fraction(0)
    for i in range(pts + 1):
        x = D(2 * i - pts, -7)
        if abs(x) > D(1):
            continue
        got = g_eval(lam, x, n).to_fraction()
        want = rc.oracle_eval(fix_id, x.to_fraction(), n + 20).to_fraction()
        worst = max(worst, abs(got - want))
    return worst


def test_lom_c_params_values():
    q, r, B = lom_c_params(1, 1, 1)
    assert q == Fraction(1)
    # r = 2^(-1/(2 pi)) = 0.8955494843...
    assert r.lo.to_fraction() > Fraction(895549, 10 ** 6)
    assert r.hi.to_fraction() < Fraction(895550, 10 ** 6)
    assert B == 6
    assert lom_c_params(2, 1, 1)[2] == 11
    assert lom_c_params(1, 1, 3)[0] == Fraction(1, 3)


def test_lom_b_degree_examples():
    assert lom_b_degree(2, Fraction(1, 2), Fraction(1), 10) == 20
    for n in (3, 10, 31):
        assert lom_b_degree(1, Fraction(1, 2), Fraction(1), n) == n


def test_lom_b_degree_guarantee_random():
    rng = random.Random(12)
    for _ in range(40):
        B = rng.randrange(1, 50)
        r = Fraction(rng.randrange(1, 63), 64)
        q = Fraction(1, rng.choice([1, 2, 3]))
        n = rng.randrange(1, 40)
        m = lom_b_degree(B, r, q, n)
        assert _check_decay(B, r, q, n, m)


def test_lom_e_Bhat_values():
    # with r = 2^(-1/(2 pi)): Bhat = ceil(1 + 48 pi/(e ln 2)) = 82
    assert lom_e_Bhat(6, r_build(1, 1), 1) == 82
    assert lom_e_Bhat(12, r_build(1, 1), 1) >= lom_e_Bhat(6, r_build(1, 1), 1)
    with pytest.raises(DomainError):
        lom_e_Bhat(6, Fraction(1, 2), 1)  # below the 2^(-1/(2 pi)) floor


def test_param_formulas():
    assert g_param_product(1, 1, 1, 1, 1) == (1, 2)
    assert g_param_compose(1, 1, 1, 1, 1) == (2, 3)
    ad, kd = g_param_diff(1, 1, 1, 1)
    assert kd == 6  # ceil(2e)
    assert ad == 1  # ceil(2/e)


def test_gamma_to_lambda_constant_function():
    g = GevreyGamma(lambda x, p: (D(1), ZERO), 1, 1, 1)
    lam = gamma_to_lambda(g)
    p = lam.approximant(8)
    assert abs(p.eval_point(D(1, -2), 20).to_fraction() - 1) <= tol(8)


def test_gamma_to_lambda_exp_certificate():
    lam = gamma_to_lambda(exp_gevrey())
    assert lam.C == 123  # frozen from the certified chain (A=3, K=1, l=1)
    assert lam.ell == 1
    for n in (8, 16):
        assert grid_err(lam, "exp", n) <= tol(n)


def test_lambda_tuple_wire_format():
    lam = gamma_to_lambda(exp_gevrey())
    n = 8
    t = lam.to_tuple(n)
    assert len(t) == lam.C * n
    # all coefficients in D_m
    m = len(t)
    assert all(c.e >= -m for c in t)


def test_bump_empirical_lambda_certificate():
    lam = empirical_lambda(bump_gevrey(), 2)
    assert lam.ell == 3
    assert grid_err(lam, "bump", 10) <= tol(10)


def test_lambda_to_gamma_levels():
    lam1 = gamma_to_lambda(exp_gevrey())
    g1 = lambda_to_gamma(lam1)
    assert g1.ell == 1  # 2*1 - 1
    lam2 = empirical_lambda(gpeak_gevrey(1, 2, 1), 1)  # level 2 name
    g2 = lambda_to_gamma(lam2)
    assert g2.ell == 3  # 2*2 - 1
    lam3 = empirical_lambda(bump_gevrey(), 2)
    assert lambda_to_gamma(lam3).ell == 5  # 2*3 - 1


def test_lambda_to_gamma_evaluation():
    lam = gamma_to_lambda(exp_gevrey())
    g = lambda_to_gamma(lam)
    for n in (8, 14):
        for num in (-100, 3, 77):
            x = D(num, -7)
            got = g.eval(x, n)[0].to_fraction()
            want = rc.oracle_eval("exp", x.to_fraction(), n + 10).to_fraction()
            assert abs(got - want) <= tol(n - 1)


def test_round_trip_drift():
    lam = gamma_to_lambda(exp_gevrey())
    g = lambda_to_gamma(lam)
    for n in (8, 12):
        for num in (-64, 0, 100):
            x = D(num, -7)
            got = g.eval(x, n)[0].to_fraction()
            want = rc.oracle_eval("exp", x.to_fraction(), n + 16).to_fraction()
            assert abs(got - want) <= tol(n - 2)


def test_g_add_zero():
    lam = gamma_to_lambda(exp_gevrey())
    zero = GevreyLambda(1, 1, lambda n: __import__(
        "anacalc.polyops", fromlist=["zero_poly"]).zero_poly(), origin="fixture")
    s = g_add(lam, zero)
    for num in (-64, 33):
        x = D(num, -7)
        got = g_eval(s, x, 10).to_fraction()
        want = rc.oracle_eval("exp", x.to_fraction(), 30).to_fraction()
        assert abs(got - want) <= tol(10)


def test_g_add_values():
    a = gamma_to_lambda(exp_gevrey())
    b = empirical_lambda(gpeak_gevrey(1, 2, 1), 1)
    s = g_add(a, b)
    assert s.ell == 2
    x = D(31, -7)
    got = g_eval(s, x, 10).to_fraction()
    want = (rc.oracle_eval("exp", x.to_fraction(), 30).to_fraction()
            + rc.oracle_eval("gpeak:1,2,1", x.to_fraction(), 30).to_fraction())
    assert abs(got - want) <= tol(10)


def test_g_mul_values():
    a = gamma_to_lambda(exp_gevrey())
    b = empirical_lambda(gpeak_gevrey(1, 2, 1), 1)
    p = g_mul(a, b)
    x = D(-45, -7)
    got = g_eval(p, x, 10).to_fraction()
    want = (rc.oracle_eval("exp", x.to_fraction(), 30).to_fraction()
            * rc.oracle_eval("gpeak:1,2,1", x.to_fraction(), 30).to_fraction())
    assert abs(got - want) <= tol(9)


def test_g_diff_exp():
    # the decay-recovery chain multiplies the parent index by
    # 2(1 + log2 B_d), so differentiation is exercised on a small-header
    # name (the constants, not the algorithm, depend on the header)
    lam = empirical_lambda(exp_gevrey(), 2)
    assert grid_err(lam, "exp", 10) <= tol(10)
    d = g_diff(lam, 1)
    for num in (-80, 16):
        x = D(num, -7)
        got = g_eval(d, x, 8).to_fraction()
        want = rc.oracle_eval("exp", x.to_fraction(), 30).to_fraction()
        assert abs(got - want) <= tol(8)
    d3 = g_diff(lam, 3)
    x = D(33, -7)
    got = g_eval(d3, x, 8).to_fraction()
    want = rc.oracle_eval("exp", x.to_fraction(), 30).to_fraction()
    assert abs(got - want) <= tol(8)
    assert g_diff(lam, 0) is lam


def test_g_integrate_exp():
    lam = gamma_to_lambda(exp_gevrey())
    got = g_integrate(lam, D(0), D(1), 20).to_fraction()
    want = rc.oracle_integral("exp", Fraction(0), Fraction(1), 40).to_fraction()
    assert abs(got - want) <= tol(20)
    got = g_integrate(lam, D(-1), D(1), 14).to_fraction()
    want = rc.oracle_integral("exp", Fraction(-1), Fraction(1), 40).to_fraction()
    assert abs(got - want) <= tol(14)


def test_g_max_peak_family_closed_form():
    # the name level is l+1, so the degree budget is C n^(l+1); n is kept
    # small for the level-4 member
    for ell, N, k in ((1, 2, 1), (2, 2, 1), (3, 2, 0)):
        lam = empirical_lambda(gpeak_gevrey(ell, N, k), 1)
        assert lam.ell == ell + 1
        n = 10 if ell < 3 else 6
        got = g_max(lam, D(-1), D(1), n).to_fraction()
        want = gpeak_peak_value(ell, N, 30).to_fraction()
        assert abs(got - want) <= tol(n), (ell, N, k)


def test_g_max_matches_oracle_partial_interval():
    lam = empirical_lambda(gpeak_gevrey(2, 2, 1), 1)
    got = g_max(lam, D(1, -1), D(1), 10).to_fraction()
    want = rc.oracle_max("gpeak:2,2,1", Fraction(1, 2), Fraction(1), 30).to_fraction()
    assert abs(got - want) <= tol(10)


def test_g_compose_params_and_value():
    # exp(-x^2) o (x/2) at 0.6
    def gauss_eval(x, p):
        return (rc.oracle_eval("gauss:1,0", x.to_fraction(), p + 2), ZERO)

    def half_eval(x, p):
        return x.scale2(-1), ZERO

    g = GevreyGamma(gauss_eval, 3, 1, 1)
    f = GevreyGamma(half_eval, 1, 1, 1)
    h = g_compose(g, f)
    assert (h.A, h.K) == g_param_compose(1, 1, 3, 1, 1)
    x = D(77, -7)  # ~0.6
    got = h.eval(x, 20)[0].to_fraction()
    want = rc.oracle_eval("gauss:1,0", x.to_fraction() / 2, 40).to_fraction()
    assert abs(got - want) <= tol(20)
    with pytest.raises(DomainError):
        g_compose(g, GevreyGamma(half_eval, 1, 1, 2))


def test_approximation_certificate_derived_names():
    a = gamma_to_lambda(exp_gevrey())
    s = g_add(a, a)
    p = g_mul(a, a)
    rng = random.Random(8)
    for n in (8,):
        for lam, fn in ((s, lambda t: 2 * t), ):
            for _ in range(40):
                x = D(rng.randrange(-(1 << 7), (1 << 7) + 1), -7)
                got = g_eval(lam, x, n).to_fraction()
                want = fn(rc.oracle_eval("exp", x.to_fraction(), n + 20).to_fraction())
                assert abs(got - want) <= tol(n)
        for _ in range(20):
            x = D(rng.randrange(-(1 << 7), (1 << 7) + 1), -7)
            got = g_eval(p, x, n).to_fraction()
            e = rc.oracle_eval("exp", x.to_fraction(), n + 24).to_fraction()
            assert abs(got - e * e) <= tol(n - 1)
