import random
from fractions import Fraction

import pytest

from anacalc.dyadic import Dyadic, RealName, SeqName, ZERO
from anacalc.errors import InvalidNameError
from anacalc import refcheck as rc
from anacalc.analytic01 import (
    AlphaName,
    BetaName,
    GammaName,
    a_add,
    a_compose_beta,
    a_compose_gamma,
    a_diff,
    a_diff_advice,
    a_eval_real,
    a_integrate,
    a_max,
    a_mul,
    alpha_to_beta,
    alpha_to_beta_advice,
    beta_to_gamma,
    check_covering,
    compose_beta_advice,
    compose_gamma_advice,
    cover_walk,
    gamma_to_alpha,
    to_gamma,
)
from anacalc.fixtures import (
    affine_beta,
    exp_beta,
    exp_gamma,
    gauss_atlas,
    gauss_beta,
    pole_beta,
)

D = Dyadic


def tol(n):
    return Fraction(1, 2 ** n)


def test_beta_to_gamma_advice():
    g = beta_to_gamma(BetaName(lambda x, p: (ZERO, ZERO), 1, 3))
    assert (g.A, g.K) == (3, 1)
    g = beta_to_gamma(BetaName(lambda x, p: (ZERO, ZERO), 1, 1))
    assert (g.A, g.K) == (1, 1)
    g = beta_to_gamma(BetaName(lambda x, p: (ZERO, ZERO), 2, 2))
    assert (g.A, g.K) == (2, 2)


def test_gamma_to_alpha_structure():
    a = gamma_to_alpha(exp_gamma())
    assert a.M == 5
    cs = [c.query(20).to_fraction() for c in a.centers]
    assert cs == [Fraction(0), Fraction(1, 4), Fraction(1, 2), Fraction(3, 4), Fraction(1)]
    assert a.Ls == [1] * 5 and a.As == [3] * 5


def test_gamma_to_alpha_constant():
    g = GammaName(lambda x, p: (D(1), ZERO), 1, 1)
    a = gamma_to_alpha(g)
    for m in (0, 2, 4):
        r, i = a.coeffs[m].query(0, 20)
        assert abs(r.to_fraction() - 1) <= tol(20)
        r, i = a.coeffs[m].query(2, 16)
        assert abs(r.to_fraction()) <= tol(16)


def test_gamma_to_alpha_exp_coefficient():
    a = gamma_to_alpha(exp_gamma())
    # center 1/2: a_{m,1} = exp'(1/2) = e^(1/2)
    r, _ = a.coeffs[2].query(1, 20)
    want = rc.oracle_eval("exp", Fraction(1, 2), 40).to_fraction()
    assert abs(r.to_fraction() - want) <= tol(20)


def test_alpha_to_beta_advice_and_covering_error():
    assert alpha_to_beta_advice([1, 1], [3, 3]) == (2, 4)
    # single patch at 1/2 with L = 1 covers only [1/4, 3/4]: invalid atlas
    bad = AlphaName([RealName.from_rational(1, 2)],
                    [SeqName(lambda j, n: (ZERO, ZERO))], [1], [1])
    assert not check_covering(bad)
    with pytest.raises(InvalidNameError):
        bad.locate(D(0))


def test_gauss_atlas_covering_certified():
    a = gauss_atlas(2, 1)
    assert check_covering(a)
    a8 = gauss_atlas(8, 3)
    assert check_covering(a8)


def test_atlas_evaluation_against_oracle():
    a = gauss_atlas(2, 1)
    rng = random.Random(9)
    for n in (12, 30, 60):
        for _ in range(6):
            x = D(rng.randrange(0, (1 << 10) + 1), -10)
            got = a_eval_real(a, x, n).to_fraction()
            want = rc.oracle_eval("gauss:2,1", x.to_fraction(), n + 10).to_fraction()
            assert abs(got - want) <= tol(n)


def test_beta_evaluation_of_converted_atlas():
    b = alpha_to_beta(gauss_atlas(2, 0))
    assert (b.L, b.B) == (4, 4)
    x = D(7, -4)
    got = b.eval(x, 25)[0].to_fraction()
    want = rc.oracle_eval("gauss:2,0", x.to_fraction(), 40).to_fraction()
    assert abs(got - want) <= tol(25)


def test_exp_beta_round_trip_chain_evaluation():
    # gamma -> alpha -> beta chain on exp, evaluated at 0.7
    a = gamma_to_alpha(exp_gamma())
    b = alpha_to_beta(a)
    x = D(717, -10)  # ~0.70019
    got = b.eval(x, 30)[0].to_fraction()
    want = rc.oracle_eval("exp", x.to_fraction(), 50).to_fraction()
    assert abs(got - want) <= tol(30)


def test_round_trip_gamma_alpha_beta_gamma():
    g0 = exp_gamma()
    g1 = to_gamma(gamma_to_alpha(g0))
    assert (g1.A, g1.K) == (4, 2)  # beta view of the atlas: L=2, B=ceil(4/3*3)=4
    rng = random.Random(4)
    for n in (16, 40):
        for _ in range(5):
            x = D(rng.randrange(0, 1 << 8), -8)
            got = g1.eval(x, n)[0].to_fraction()
            want = rc.oracle_eval("exp", x.to_fraction(), n + 10).to_fraction()
            assert abs(got - want) <= tol(n - 1)


def test_add_mul_advice_and_values():
    f, g = exp_beta(), pole_beta()
    s = a_add(f, g)
    assert (s.L, s.B) == (3, 16)
    m = a_mul(f, g)
    assert (m.L, m.B) == (3, 64)
    p = a_mul(BetaName(lambda x, q: (ZERO, ZERO), 2, 3),
              BetaName(lambda x, q: (ZERO, ZERO), 4, 5))
    assert (p.L, p.B) == (4, 15)
    x = D(3, -2)
    got = s.eval(x, 30)[0].to_fraction()
    want = (rc.oracle_eval("exp", Fraction(3, 4), 50).to_fraction()
            + rc.oracle_eval("pole", Fraction(3, 4), 50).to_fraction())
    assert abs(got - want) <= tol(29)
    got = m.eval(x, 30)[0].to_fraction()
    want = (rc.oracle_eval("exp", Fraction(3, 4), 60).to_fraction()
            * rc.oracle_eval("pole", Fraction(3, 4), 60).to_fraction())
    assert abs(got - want) <= tol(28)


def test_exp_times_exp_at_one():
    m = a_mul(exp_beta(), exp_beta())
    got = m.eval(D(1), 30)[0].to_fraction()
    want = rc.oracle_eval("exp", Fraction(2), 50).to_fraction()
    assert abs(got - want) <= tol(29)


def test_diff_advice_formulas():
    assert a_diff_advice(1, 1, 1) == (1, 2)
    assert a_diff_advice(2, 3, 2) == (72, 6)


def test_diff_values():
    a = gamma_to_alpha(exp_gamma())
    d1 = a_diff(a, 1)
    assert (d1.A, d1.K) == a_diff_advice(4, 2, 1)
    got = d1.eval(ZERO, 20)[0].to_fraction()
    assert abs(got - 1) <= tol(20)
    x = D(3, -2)
    got = d1.eval(x, 25)[0].to_fraction()
    want = rc.oracle_eval("exp", Fraction(3, 4), 40).to_fraction()
    assert abs(got - want) <= tol(25)
    # second derivative of the gauss atlas against the oracle
    g = gauss_atlas(2, 1)
    d2 = a_diff(g, 2)
    got = d2.eval(D(5, -3), 20)[0].to_fraction()
    want = rc.oracle_deriv("gauss:2,1", 2, Fraction(5, 8), 40).to_fraction()
    assert abs(got - want) <= tol(20)


def test_cover_walk_partitions():
    a = gauss_atlas(2, 1)
    cells = cover_walk(a, D(0), D(1))
    assert cells
    assert cells[0][1] == D(0)
    assert cells[-1][2] == D(1)
    for (m1, lo1, hi1), (m2, lo2, hi2) in zip(cells, cells[1:]):
        assert hi1 == lo2
        assert m1 != m2


def test_integrate_exp_atlas():
    a = gamma_to_alpha(exp_gamma())
    got = a_integrate(a, D(0), D(1), 40).to_fraction()
    want = rc.oracle_integral("exp", Fraction(0), Fraction(1), 60).to_fraction()
    assert abs(got - want) <= tol(40)
    # reversed endpoints give the same value per the min/max convention
    got2 = a_integrate(a, D(1), D(0), 30).to_fraction()
    assert abs(got2 - want) <= tol(30)


def test_integrate_gauss_atlas():
    a = gauss_atlas(2, 1)
    u, v = Fraction(1, 8), Fraction(7, 8)
    got = a_integrate(a, D(1, -3), D(7, -3), 35).to_fraction()
    want = rc.oracle_integral("gauss:2,1", u, v, 55).to_fraction()
    assert abs(got - want) <= tol(35)


def test_integrate_point_interval():
    a = gauss_atlas(2, 0)
    assert a_integrate(a, D(1, -2), D(1, -2), 30) == ZERO


def test_max_gauss_peak():
    for K, k in ((2, 1), (8, 3)):
        a = gauss_atlas(K, k)
        got = a_max(a, D(0), D(1), 30).to_fraction()
        assert abs(got - Fraction(1, K)) <= tol(30)


def test_max_point_interval():
    a = gauss_atlas(2, 0)
    got = a_max(a, D(1, -2), D(1, -2), 25).to_fraction()
    want = rc.oracle_eval("gauss:2,0", Fraction(1, 4), 40).to_fraction()
    assert abs(got - want) <= tol(25)


def test_max_excludes_peak():
    a = gauss_atlas(4, 1)
    got = a_max(a, D(1, -1), D(1), 25).to_fraction()
    want = rc.oracle_max("gauss:4,1", Fraction(1, 2), Fraction(1), 45).to_fraction()
    assert abs(got - want) <= tol(25)


def test_compose_advice_formulas():
    assert compose_beta_advice(1, 1, 1, 1) == (2, 1)
    assert compose_beta_advice(1, 2, 3, 5) == (2 * 1 * 2 * 3, 5)
    assert compose_gamma_advice(1, 1, 2, 1) == (1, 2)


def test_compose_values():
    # exp(-x^2) o (x/2 + 1/4) at 0.5 = exp(-1/4)
    g = gauss_beta(1, 0)
    f = affine_beta(Fraction(1, 4), Fraction(1, 2), 1, 1)
    h = a_compose_beta(g, f)
    assert (h.L, h.B) == compose_beta_advice(1, 1, 1, 3)
    x = D(1, -1)
    got = h.eval(x, 30)[0].to_fraction()
    want = rc.oracle_eval("gauss:1,0", Fraction(1, 2), 50).to_fraction()
    assert abs(got - want) <= tol(30)


def test_compose_gamma_route():
    g = GammaName(_exp_eval(), 3, 1)
    f = GammaName(affine_beta(Fraction(0), Fraction(1, 2), 1, 1).eval, 1, 1)
    h = a_compose_gamma(g, f)
    assert (h.A, h.K) == compose_gamma_advice(1, 1, 3, 1)
    x = D(3, -2)
    got = h.eval(x, 25)[0].to_fraction()
    want = rc.oracle_eval("exp", Fraction(3, 8), 45).to_fraction()
    assert abs(got - want) <= tol(25)


def _exp_eval():
    return exp_gamma().eval


def test_identity_composition_preserves_values():
    g = exp_beta()
    ident = affine_beta(Fraction(0), Fraction(1), 1, 2)
    h = a_compose_beta(g, ident)
    x = D(5, -3)
    got = h.eval(x, 25)[0].to_fraction()
    want = rc.oracle_eval("exp", Fraction(5, 8), 45).to_fraction()
    assert abs(got - want) <= tol(25)
