from fractions import Fraction

import pytest

from anacalc.dyadic import Dyadic
from anacalc.errors import DomainError
from anacalc import refcheck as rc


def close(a: Dyadic, b: Fraction, n: int) -> bool:
    return abs(a.to_fraction() - b) <= Fraction(1, 2 ** n)


# published digits: e = 2.71828182845904523536028747135266249775724709369995...
E_50 = Fraction(
    271828182845904523536028747135266249775724709369995,
    10 ** 50)
# ln 2 = 0.69314718055994530941723212145817656807550013436026
LN2_50 = Fraction(69314718055994530941723212145817656807550013436026, 10 ** 50)
# pi = 3.14159265358979323846264338327950288419716939937510
PI_50 = Fraction(314159265358979323846264338327950288419716939937510, 10 ** 50)
# arctan(1/3) = 0.32175055439664219340140461435866131902075529555790
AT3_50 = Fraction(32175055439664219340140461435866131902075529555790, 10 ** 50)


def test_exp_matches_published_digits():
    got = rc.oracle_eval("exp", Fraction(1), 50)
    assert close(got, E_50, 50 + 30)


def test_exp_consistent_two_orders():
    # series order vs squaring e^(1/2)^2 at several points
    for t in (Fraction(1), Fraction(-3, 7), Fraction(13, 5)):
        n = 80
        a = rc.oracle_eval("exp", t, n)
        W = rc._working(n)
        h, _ = rc.exp_scaled(t / 2, W)
        b = Dyadic((h * h) >> W, -W)
        assert abs((a - b).to_fraction()) <= Fraction(1, 2 ** (n + 16))


def test_ln_and_pi():
    W = 300
    l, le = rc.ln_scaled(Fraction(2), W)
    assert abs(Fraction(l, 2 ** W) - LN2_50) < Fraction(1, 2 ** 160)
    p, pe = rc.pi_scaled(W)
    assert abs(Fraction(p, 2 ** W) - PI_50) < Fraction(1, 2 ** 160)
    a, ae = rc.arctan_scaled(Fraction(1, 3), W)
    assert abs(Fraction(a, 2 ** W) - AT3_50) < Fraction(1, 2 ** 160)
    big, _ = rc.arctan_scaled(Fraction(7, 2), W)
    # arctan(7/2) = pi/2 - arctan(2/7)
    small, _ = rc.arctan_scaled(Fraction(2, 7), W)
    assert abs(Fraction(big + small, 2 ** W) - Fraction(p, 2 ** (W + 1))) < Fraction(1, 2 ** 150)


def test_series_fixture_coefficients():
    assert rc.series_coeff(rc.get_fixture("geometric"), 5) == Fraction(1, 32)
    assert rc.series_coeff(rc.get_fixture("exp-series"), 4) == Fraction(1, 24)
    assert rc.series_coeff(rc.get_fixture("zero"), 9) == 0


def test_series_eval_vs_closed_form():
    for ident in ("geometric", "exp-series"):
        for x in (Fraction(0), Fraction(1), Fraction(-1), Fraction(3, 7)):
            n = 60
            a = rc.oracle_series_eval(ident, x, n)
            b = rc.oracle_eval(ident, x, n)
            assert abs((a - b).to_fraction()) <= Fraction(1, 2 ** (n + 16))


def test_geometric_closed_form():
    got = rc.oracle_eval("geometric", Fraction(1), 40)
    assert close(got, Fraction(2), 70)


def test_gauss_peak_value():
    fix = rc.gauss_fixture(8, 3)
    got = rc.oracle_eval(fix, Fraction(3, 8), 60)
    assert close(got, Fraction(1, 8), 90)
    assert rc.oracle_max(fix, Fraction(0), Fraction(1), 60).to_fraction() \
        == pytest.approx(1 / 8, abs=2 ** -60)


def test_gauss_max_excluding_peak():
    fix = rc.gauss_fixture(4, 0)
    # peak at 0; on [1/2, 1] the max is at 1/2
    m = rc.oracle_max(fix, Fraction(1, 2), Fraction(1), 40)
    v = rc.oracle_eval(fix, Fraction(1, 2), 40)
    assert abs((m - v).to_fraction()) <= Fraction(1, 2 ** 60)


def test_integrals_against_riemann():
    # crude midpoint Riemann cross-check at low precision
    cases = [
        ("exp", Fraction(0), Fraction(1)),
        ("geometric", Fraction(-1, 2), Fraction(3, 4)),
        ("pole", Fraction(0), Fraction(1)),
        ("gauss:2,1", Fraction(0), Fraction(1)),
        ("bump", Fraction(1, 8), Fraction(1)),
        ("gpeak:2,2,1", Fraction(-1, 2), Fraction(1, 2)),
    ]
    N = 4000
    for ident, u, v in cases:
        fix = rc.get_fixture(ident)
        got = rc.oracle_integral(fix, u, v, 30).to_fraction()
        h = (v - u) / N
        riemann = sum(rc.oracle_eval(fix, u + (2 * i + 1) * h / 2, 20).to_fraction()
                      for i in range(N)) * h
        assert abs(got - riemann) < Fraction(1, 10 ** 5), ident


def test_exp_integral_exact_form():
    got = rc.oracle_integral("exp", Fraction(0), Fraction(1), 50)
    assert close(got, E_50 - 1, 80)


def test_derivatives_match_difference_quotients():
    pts = {
        "exp": Fraction(1, 3),
        "geometric": Fraction(1, 4),
        "pole": Fraction(2, 7),
        "gauss:4,1": Fraction(1, 3),
        "bump": Fraction(1, 2),
        "gpeak:2,2,1": Fraction(1, 5),
    }
    h = Fraction(1, 2 ** 30)
    for ident, x in pts.items():
        fix = rc.get_fixture(ident)
        for d in (1, 2, 3):
            der = rc.oracle_deriv(fix, d, x, 40).to_fraction()
            f1 = rc.oracle_deriv(fix, d - 1, x + h, 140).to_fraction()
            f0 = rc.oracle_deriv(fix, d - 1, x - h, 140).to_fraction()
            approx = (f1 - f0) / (2 * h)
            assert abs(der - approx) < Fraction(1, 2 ** 25), (ident, d)


def test_bump_even_symmetry():
    assert rc.oracle_eval("bump", Fraction(0), 30) == Dyadic(0)
    assert rc.oracle_deriv("bump", 1, Fraction(0), 30) == Dyadic(0)
    a = rc.oracle_eval("bump", Fraction(-1, 2), 60)
    b = rc.oracle_eval("bump", Fraction(1, 2), 60)
    assert abs((a - b).to_fraction()) <= Fraction(1, 2 ** 80)
    da = rc.oracle_deriv("bump", 1, Fraction(-1, 2), 60)
    db = rc.oracle_deriv("bump", 1, Fraction(1, 2), 60)
    assert abs((da + db).to_fraction()) <= Fraction(1, 2 ** 80)


def test_bump_max_at_endpoint():
    m = rc.oracle_max("bump", Fraction(-1), Fraction(1, 2), 40)
    v = rc.oracle_eval("bump", Fraction(-1), 40)
    assert abs((m - v).to_fraction()) <= Fraction(1, 2 ** 60)


def test_gpeak_peak_value():
    # max of g_{ell,N,k} is e^(-(1 + N ell / e)) at k/N^ell
    fix = rc.gevrey_peak_fixture(2, 3, 1)
    peak = rc.oracle_max(fix, Fraction(-1), Fraction(1), 50).to_fraction()
    at_peak = rc.oracle_eval(fix, Fraction(1, 9), 50).to_fraction()
    assert abs(peak - at_peak) <= Fraction(1, 2 ** 70)


def test_unknown_fixture():
    with pytest.raises(DomainError):
        rc.get_fixture("nope")
