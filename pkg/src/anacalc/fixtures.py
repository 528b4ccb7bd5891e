"""Certified fixture names for the operation suites and the CLI.

Each fixture builds a *name* (series / analytic / entire / Gevrey) whose
advice parameters are derived analytically; the derivations are recorded
next to the constructors.  Values are produced from interval enclosures,
so the names honour their 2**-n contracts independently of the refcheck
oracle they are tested against.
"""

from __future__ import annotations

from fractions import Fraction

from .analytic01 import AlphaName, BetaName, GammaName
from .dyadic import Dyadic, RealName, SeqName, ZERO, fraction_to_dyadic
from .enclosures import enclose, iv_dyadic, iv_fraction
from .errors import DomainError
from .powerseries import PiSeries


def _bitlen(k: int) -> int:
    return max(1, int(k).bit_length())


def _iv_eval(build, tag=None):
    """Evaluation oracle (x, p) -> (re, im) from an interval builder
    build(ctx, x_interval) for a real-valued function."""

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        box = enclose(lambda ctx: build(ctx, iv_dyadic(ctx, x)), p + 2)
        return box.mid().round_nearest(p + 2), ZERO

    return ev


# -- series fixtures ----------------------------------------------------------


def series_fixture(name: str) -> PiSeries:
    if name == "zero":
        return PiSeries.zero()
    if name == "geometric":
        return PiSeries.geometric()
    if name == "exp-series":
        return PiSeries.exp_series()
    raise DomainError(f"unknown series fixture {name!r}")


# -- analytic fixtures on [0;1] ----------------------------------------------


def exp_beta() -> BetaName:
    # on R_1 the real part is <= 2, so |exp| <= e^2 < 8
    return BetaName(_iv_eval(lambda ctx, x: ctx.exp(x)), 1, 8)


def exp_gamma() -> GammaName:
    # |exp^(j)(x)| = e^x <= e < 3 on [0;1]
    return GammaName(_iv_eval(lambda ctx, x: ctx.exp(x)), 3, 1)


def _gauss_eval(K: int, k: int):
    def build(ctx, x):
        t = ctx.mpf(K) * x - k
        return ctx.exp(-t * t) / K

    return _iv_eval(build)


def gauss_beta(K: int, k: int) -> BetaName:
    """g_{K,k}(x) = exp(-(Kx-k)^2)/K.  On R_K: |Im(Kz - k)| <= 1, so
    |g| <= e^(1)/K <= 3."""
    if not 0 <= k < K:
        raise DomainError("need 0 <= k < K")
    return BetaName(_gauss_eval(K, k), K, 3)


class _GaussTaylor:
    """Taylor coefficients of e^(-(t+s)^2) in s at rational t, via the ODE
    recurrence (j+1) c_{j+1} = -2t c_j - 2 c_{j-1} on the ratios to the
    value at s = 0 (extended lazily)."""

    def __init__(self, t: Fraction):
        self.t = t
        self.ratios = [Fraction(1), -2 * t]

    def ratio(self, j: int) -> Fraction:
        r = self.ratios
        while len(r) <= j:
            i = len(r) - 1
            r.append((-2 * self.t * r[i] - 2 * r[i - 1]) / (i + 1))
        return r[j]


def gauss_atlas(K: int, k: int) -> AlphaName:
    """Direct atlas for g_{K,k}: centers i/(4K), advice A_m = 3, L_m = K
    (|g^(j)|/j! <= e K^(j-1) by Cauchy's estimate on unit discs)."""
    if not 0 <= k < K:
        raise DomainError("need 0 <= k < K")
    M = 4 * K + 1
    centers, coeffs = [], []
    for m in range(M):
        c = Fraction(m, 4 * K)
        t = K * c - k
        centers.append(RealName.from_fraction(c))
        taylor = _GaussTaylor(t)

        def q(j: int, n: int, t=t, taylor=taylor) -> tuple[Dyadic, Dyadic]:
            # a_j = ratio_j K^(j-1) e^(-t^2)
            rat = taylor.ratio(j) * Fraction(K ** j, K)
            if rat == 0:
                return ZERO, ZERO
            box = enclose(lambda ctx: iv_fraction(ctx, rat) *
                          ctx.exp(-iv_fraction(ctx, t * t)), n + 2)
            return box.mid().round_nearest(n + 2), ZERO

        coeffs.append(SeqName(q))
    return AlphaName(centers, coeffs, [K] * M, [3] * M)


def pole_beta() -> BetaName:
    """f(x) = 1/((x-1/2)^2 + 1/4), singularities 1/2 +- i/2.
    On R_3 the squared factor stays >= 5/36, so |f| <= 36/5 < 8."""
    c, y2 = Fraction(1, 2), Fraction(1, 4)

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        val = 1 / ((x.to_fraction() - c) ** 2 + y2)
        return fraction_to_dyadic(val, p), ZERO

    return BetaName(ev, 3, 8)


def affine_beta(a: Fraction, b: Fraction, L: int, B: int) -> BetaName:
    """x -> a + b x with stated rectangle advice."""

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        return fraction_to_dyadic(a + b * x.to_fraction(), p), ZERO

    return BetaName(ev, L, B)


def analytic_fixture(name: str):
    if name == "exp":
        return exp_beta()
    if name == "pole":
        return pole_beta()
    if name.startswith("gauss:"):
        K, k = (int(s) for s in name.split(":", 1)[1].split(","))
        return gauss_atlas(K, k)
    raise DomainError(f"unknown analytic fixture {name!r}")


# -- Gevrey fixtures on [-1;1] --------------------------------------------


def exp_gevrey() -> "GevreyGamma":
    """exp as a level-1 (analytic) Gevrey name: |exp^(j)| <= e < 3."""
    from .gevrey import GevreyGamma
    return GevreyGamma(_iv_eval(lambda ctx, x: ctx.exp(x)), 3, 1, 1)


def bump_gevrey() -> "GevreyGamma":
    """exp(-1/|x|) with (A, K, l) = (1, 1, 3):
    ||h^(j)|| <= j j! (2j/e)^(2j) <= j^(3j) for every j >= 1
    (the ratio j^1.5 e (4/e^3)^j is maximal at j = 1, value 0.55)."""
    from .gevrey import GevreyGamma

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        if x.is_zero():
            return ZERO, ZERO
        t = -1 / abs(x.to_fraction())
        box = enclose(lambda ctx: ctx.exp(iv_fraction(ctx, t)), p + 2)
        return box.mid().round_nearest(p + 2), ZERO

    return GevreyGamma(ev, 1, 1, 3)


def gpeak_gevrey(ell: int, N: int, k: int) -> "GevreyGamma":
    """g_{l,N,k}(x) = exp(-(N^l x - k)^2) / e^(1 + N l / e), a member of
    the (l+1, 1, 1) Gevrey class; its peak value is e^(-(1 + N l / e))."""
    from .gevrey import GevreyGamma
    s = N ** ell

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        t = s * x.to_fraction() - k

        def build(ctx):
            return (ctx.exp(-iv_fraction(ctx, t * t))
                    / ctx.exp(1 + ctx.mpf(N * ell) / ctx.e))

        box = enclose(build, p + 2)
        return box.mid().round_nearest(p + 2), ZERO

    return GevreyGamma(ev, 1, 1, ell + 1)


def gpeak_peak_value(ell: int, N: int, n: int) -> Dyadic:
    """Closed-form maximum e^(-(1 + N l / e)) of the peak family, within 2**-n."""
    box = enclose(lambda ctx: ctx.exp(-(1 + ctx.mpf(N * ell) / ctx.e)), n + 2)
    return box.mid().round_nearest(n + 2)


def gevrey_fixture(name: str):
    if name == "exp":
        return exp_gevrey()
    if name == "bump":
        return bump_gevrey()
    if name.startswith("gpeak:"):
        ell, N, k = (int(s) for s in name.split(":", 1)[1].split(","))
        return gpeak_gevrey(ell, N, k)
    raise DomainError(f"unknown gevrey fixture {name!r}")
