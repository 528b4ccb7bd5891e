"""Power series on the closed unit disc: coefficient oracle plus advice.

A series name carries integers K, A >= 1 with |a_j| <= A / r^j for
r = 2**(1/K), so the radius of convergence exceeds 1.  Every operation
propagates the advice pair by a closed-form update and returns results
certified within 2**-n.  Truncation cutoffs are self-certifying: the
chosen index is accepted only after its geometric tail bound has been
re-verified with outward rational arithmetic.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .dyadic import (
    ComplexName,
    Dyadic,
    RealName,
    SeqName,
    ZERO,
    fraction_to_dyadic,
    pow2,
)
from .enclosures import decided_ceil, pow2_frac, sqrt_upper
from .errors import DomainError, ResourceError
from .polyops import MONOMIAL, DyadicPoly, integrate_poly, poly_lipschitz, poly_max


def _bitlen(k: int) -> int:
    return max(1, int(k).bit_length())


class PiSeries:
    """Coefficient oracle with advice (K, A): |a_j| <= A * 2**(-j/K)."""

    __slots__ = ("coeffs", "K", "A")

    def __init__(self, coeffs: SeqName, K: int, A: int):
        if K < 1:
            raise DomainError("K must be >= 1")
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "K", K)
        object.__setattr__(self, "A", max(1, A))

    def __setattr__(self, *a):
        raise AttributeError("PiSeries is immutable")

    # -- constructors -------------------------------------------------------

    @staticmethod
    def zero() -> "PiSeries":
        return PiSeries(SeqName(lambda j, n: (ZERO, ZERO), tag="zero"), 1, 1)

    @staticmethod
    def geometric() -> "PiSeries":
        # a_j = 2^-j, sum = 2/(2-z); r = 2 exactly
        return PiSeries(SeqName(lambda j, n: (pow2(-j), ZERO), tag="geometric"), 1, 1)

    @staticmethod
    def exp_series() -> "PiSeries":
        def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
            f = 1
            for i in range(2, j + 1):
                f *= i
            return fraction_to_dyadic(Fraction(1, f), n), ZERO

        return PiSeries(SeqName(q, tag="exp"), 1, 2)

    @staticmethod
    def monomial(j0: int) -> "PiSeries":
        """The single term z**j0 (advice K=1, A=2**j0)."""
        def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
            return (Dyadic(1) if j == j0 else ZERO), ZERO

        return PiSeries(SeqName(q, tag=f"z^{j0}"), 1, 1 << j0)

    @staticmethod
    def from_fractions(fn: Callable[[int], Fraction], K: int, A: int,
                       tag: str | None = None) -> "PiSeries":
        return PiSeries(SeqName.from_fractions(fn, tag=tag), K, A)

    # -- derived data ---------------------------------------------------------

    def sum_bound(self) -> int:
        """Integer bound for sum_j |a_j| (and hence |f| on the closed disc):
        A / (1 - 2^(-1/K)) <= A (K/ln2 + 1) <= A (2K + 2)."""
        return self.A * (2 * self.K + 2)

    def rho_upper(self, bits: int = 48) -> Fraction:
        """Dyadic upper bound for 2**(-1/K), strictly below 1."""
        hi = pow2_frac(Fraction(-1, self.K), bits).hi
        return min(hi.to_fraction(), 1 - Fraction(1, 1 << bits))

    def truncation_index(self, n: int) -> int:
        """Smallest self-certified N with tail sum_{j>=N} |a_j| <= 2**-n."""
        N = self.K * (n + 2 + _bitlen(self.A) + _bitlen(self.K)) + 2
        rho = self.rho_upper()
        target = Fraction(1, 1 << n)
        for _ in range(64):
            tail = self.A * rho ** N / (1 - rho)
            if tail <= target:
                return N
            N *= 2
        raise ResourceError("truncation index search failed")


def ps_eval(f: PiSeries, z, n: int) -> tuple[Dyadic, Dyadic]:
    """sum a_j z^j within 2**-n (componentwise within 2**-(n+1)) for |z| <= 1."""
    if isinstance(z, RealName):
        z = ComplexName.from_real(z)
    elif isinstance(z, Dyadic):
        z = ComplexName.from_dyadic(z)
    N = f.truncation_index(n + 2)
    SB = f.sum_bound()
    p = n + _bitlen(N + 1) + _bitlen(SB) + 8
    zr, zi = z.query(p)
    sr, si = ZERO, ZERO
    for j in range(N, -1, -1):
        ar, ai = f.coeffs.query(j, p)
        # s := a_j + z * s, rounded componentwise
        tr = ar + zr * sr - zi * si
        ti = ai + zr * si + zi * sr
        sr = tr.round_nearest(p)
        si = ti.round_nearest(p)
    return sr.round_nearest(n + 3), si.round_nearest(n + 3)


def ps_eval_real(f: PiSeries, z, n: int) -> Dyadic:
    return ps_eval(f, z, n)[0]


def ps_add(f: PiSeries, g: PiSeries) -> PiSeries:
    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        ar, ai = f.coeffs.query(j, n + 1)
        br, bi = g.coeffs.query(j, n + 1)
        return ar + br, ai + bi

    return PiSeries(SeqName(q), max(f.K, g.K), f.A + g.A)


def ps_mul_advice(K: int, A: int, L: int, B: int) -> tuple[int, int]:
    """M = 2 max(K, L), C = ceil(A B (1 + M / (e ln 2)))."""
    M = 2 * max(K, L)
    C = decided_ceil(lambda ctx: ctx.mpf(A * B) *
                     (1 + ctx.mpf(M) / (ctx.e * ctx.log(2))))
    return M, C


def ps_mul(f: PiSeries, g: PiSeries) -> PiSeries:
    M, C = ps_mul_advice(f.K, f.A, g.K, g.A)

    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        p = n + _bitlen(j + 1) + _bitlen(f.A + g.A + 2) + 4
        cr, ci = ZERO, ZERO
        for i in range(j + 1):
            ar, ai = f.coeffs.query(i, p)
            br, bi = g.coeffs.query(j - i, p)
            cr = cr + ar * br - ai * bi
            ci = ci + ar * bi + ai * br
        return cr.round_nearest(n + 2), ci.round_nearest(n + 2)

    return PiSeries(SeqName(q), M, C)


def _falling_product(j: int, d: int) -> int:
    out = 1
    for i in range(1, d + 1):
        out *= j + i
    return out


def ps_diff_advice(K: int, A: int, d: int) -> tuple[int, int]:
    """K' = 2K, A' = ceil(A d^d (1+2K)^d / 2^(d/K))."""
    intpart = A * d ** d * (1 + 2 * K) ** d
    if d % K == 0:
        q, r = divmod(intpart, 1 << (d // K))
        return 2 * K, q + (1 if r else 0)
    return 2 * K, decided_ceil(
        lambda ctx: ctx.mpf(intpart) * ctx.exp(-ctx.log(2) * ctx.mpf(d) / K))


def ps_diff(f: PiSeries, d: int) -> PiSeries:
    """d-fold derivative; d = 0 returns f unchanged."""
    if d < 0:
        raise DomainError("derivative order must be >= 0")
    if d == 0:
        return f
    K2, A2 = ps_diff_advice(f.K, f.A, d)

    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        fac = _falling_product(j, d)
        ar, ai = f.coeffs.query(j + d, n + _bitlen(fac))
        return (ar.mul_int(fac)).round_nearest(n + 1), (ai.mul_int(fac)).round_nearest(n + 1)

    return PiSeries(SeqName(q), K2, A2)


def ps_antidiff_advice(K: int, A: int, d: int) -> tuple[int, int]:
    """K' = K, A' = ceil(A 2^(d/K))."""
    if d % K == 0:
        return K, A << (d // K)
    return K, decided_ceil(
        lambda ctx: ctx.mpf(A) * ctx.exp(ctx.log(2) * ctx.mpf(d) / K))


def ps_antidiff(f: PiSeries, d: int) -> PiSeries:
    if d < 0:
        raise DomainError("antiderivative order must be >= 0")
    if d == 0:
        return f
    K2, A2 = ps_antidiff_advice(f.K, f.A, d)

    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        if j < d:
            return ZERO, ZERO
        fac = _falling_product(j - d, d)  # j (j-1) ... (j-d+1)
        ar, ai = f.coeffs.query(j - d, n + 1)
        return (fraction_to_dyadic(ar.to_fraction() / fac, n + 1),
                fraction_to_dyadic(ai.to_fraction() / fac, n + 1))

    return PiSeries(SeqName(q), K2, A2)


def truncation_polys(f: PiSeries, n: int) -> tuple[DyadicPoly, DyadicPoly]:
    """Real and imaginary truncation polynomials with
    ||f - (p_re + i p_im)|| <= 2**-n on the closed unit disc."""
    N = f.truncation_index(n + 2)
    p = n + _bitlen(N + 1) + 3
    re, im = [], []
    for j in range(N + 1):
        ar, ai = f.coeffs.query(j, p)
        re.append(ar)
        im.append(ai)
    return DyadicPoly(re, MONOMIAL), DyadicPoly(im, MONOMIAL)


MODE_RE = "re"
MODE_ABS = "abs"


def ps_max(f: PiSeries, u, v, n: int, mode: str = MODE_RE) -> Dyadic:
    """max of Re f (mode "re") or |f| (mode "abs") over [min(u,v), max(u,v)]."""
    if mode == MODE_RE:
        pre, _ = truncation_polys(f, n + 2)
        return poly_max(pre, u, v, n + 2).round_nearest(n + 2)
    if mode != MODE_ABS:
        raise DomainError(f"unknown mode {mode!r}")
    pre, pim = truncation_polys(f, n + 3)
    if pim.is_zero():
        # real case: max |f| = max(max f, -min f)
        hi = poly_max(pre, u, v, n + 2)
        lo = poly_max(-pre, u, v, n + 2)
        return max(hi, lo).round_nearest(n + 2)
    # square, maximize, take the root last (monotonicity)
    m = 2 * n + 8
    q = pre * pre + pim * pim
    s = poly_max(q, u, v, m)
    if s.sign < 0:
        s = ZERO
    root = sqrt_upper(s, n + 3)
    return root.round_nearest(n + 2)


def ps_integrate_complex(f: PiSeries, u, v, n: int) -> tuple[Dyadic, Dyadic]:
    F = ps_antidiff(f, 1)
    SB = f.sum_bound()
    m = n + 3 + _bitlen(SB)
    ua = u.query(m) if isinstance(u, RealName) else u
    va = v.query(m) if isinstance(v, RealName) else v
    lo, hi = min(ua, va), max(ua, va)
    one = Dyadic(1)
    lo, hi = max(lo, -one), min(hi, one)
    if lo > hi:
        lo = hi
    br, bi = ps_eval(F, hi, n + 2)
    ar, ai = ps_eval(F, lo, n + 2)
    return (br - ar).round_nearest(n + 2), (bi - ai).round_nearest(n + 2)


def ps_integrate(f: PiSeries, u, v, n: int) -> Dyadic:
    """Definite integral over the real segment (real part; fixtures are
    real-valued, use ps_integrate_complex for the full value)."""
    return ps_integrate_complex(f, u, v, n)[0]


def ps_sup_bound(f: PiSeries, d: int) -> Dyadic:
    """Upper bound for sup |f^(d)| on |z| <= 2^(1/(2K)):
    A r'/(r'-1) for d = 0 and A d!/(r'-1)^(d+1) for d >= 1."""
    if d < 0:
        raise DomainError("derivative order must be >= 0")
    K, A = f.K, f.A
    if d == 0:
        def build(ctx):
            rp = ctx.exp(ctx.log(2) / (2 * K))
            return ctx.mpf(A) * rp / (rp - 1)
    else:
        fac = 1
        for i in range(2, d + 1):
            fac *= i

        def build(ctx):
            rp = ctx.exp(ctx.log(2) / (2 * K))
            return ctx.mpf(A * fac) / (rp - 1) ** (d + 1)

    from .enclosures import upper_dyadic
    return upper_dyadic(build, 24)


# ---------------------------------------------------------------------------
# coefficients from an evaluation oracle (numerical differentiation)
# ---------------------------------------------------------------------------


def ps_coeffs_from_eval(eval_fn, K: int, B: int,
                        lo: Fraction = Fraction(-1), hi: Fraction = Fraction(1),
                        tag: str | None = None) -> SeqName:
    """Taylor coefficients a_j = f^(j)(0)/j! from an evaluation oracle.

    ``eval_fn(x: Dyadic, p)`` must return f(x) as a (re, im) pair within
    2**-p componentwise, for real x in [lo, hi]; f must be analytic with
    |f| <= B on the closed disc of radius 2**(1/K).  Uses the divided
    difference of order j on a one-sided equispaced cluster of spread
    small enough that the Cauchy remainder stays below the target.
    """
    if K < 1 or B < 1:
        raise DomainError("advice must be >= 1")
    if not (lo <= 0 <= hi):
        raise DomainError("the cluster is anchored at 0")
    # margin s with clusters inside [0, s]: 2^(1/K) - 1 >= ln2/K, use s = ln2/(4K)
    margin = Fraction(1, 6 * K)  # < ln2/(4K), dyadic-friendly denominator soon

    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        if j == 0:
            r, i = eval_fn(ZERO, n + 1)
            return r.round_nearest(n), i.round_nearest(n)
        # delta = 2^-dexp: j*delta <= margin and trunc error
        # j*delta*(j+1)*B <= 2^-(n+1)
        dexp = max((Fraction(j) / margin).numerator.bit_length() + 2,
                   n + 1 + _bitlen(j * (j + 1) * B))
        sign = 1 if hi >= Fraction(j, 1 << dexp) else -1
        if sign < 0 and lo > -Fraction(j, 1 << dexp):
            raise DomainError("oracle domain cannot hold the cluster")
        logfact = 0
        fact = 1
        for i in range(2, j + 1):
            fact *= i
        logfact = fact.bit_length() - 1
        p = n + 1 + j + j * dexp - logfact + 4
        binom = 1
        accr = ZERO
        acci = ZERO
        for i in range(j + 1):
            if i:
                binom = binom * (j - i + 1) // i
            x = Dyadic(sign * i, -dexp)
            vr, vi = eval_fn(x, p)
            s = binom if (j - i) % 2 == 0 else -binom
            accr = accr + vr.mul_int(s)
            acci = acci + vi.mul_int(s)
        # divide by j! h^j with h = sign 2^-dexp
        flip = -1 if (sign < 0 and j % 2 == 1) else 1
        accr = accr.scale2(j * dexp).mul_int(flip)
        acci = acci.scale2(j * dexp).mul_int(flip)
        return (fraction_to_dyadic(accr.to_fraction() / fact, n + 2),
                fraction_to_dyadic(acci.to_fraction() / fact, n + 2))

    return SeqName(q, tag=tag)
