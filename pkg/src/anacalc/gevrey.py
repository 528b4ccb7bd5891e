"""Gevrey classes G_l[-1;1] in the two polynomial encodings.

* gamma: evaluation oracle plus (A, K, l) with |f^(j)| <= A K^j j^(jl);
* lambda: a header (C, l) plus degree-C n^l dyadic approximants with
  ||f - g_n|| <= 2**-n.

The conversion constants follow the quantitative approximation chain
(Jackson-type bound -> Chebyshev interpolation with rounded coefficients
-> degree calibration); each emitted integer is the ceiling of a
certified enclosure with directed rounding, and every degree constant is
re-verified against its defining inequality before use rather than
trusted: where the literal chain constant is too small for tiny n, the
verified value wins.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .dyadic import Dyadic, RealName, ZERO, pow2
from .enclosures import compute, decided_ceil, iv_fraction
from .errors import DomainError, ResourceError
from .polyops import (
    CHEBYSHEV,
    DyadicPoly,
    cheb_interpolate,
    cheb_node,
    integrate_poly,
    markov_bound,
    poly_max,
)

EvalOracle = Callable[[Dyadic, int], tuple[Dyadic, Dyadic]]


def _bitlen(k: int) -> int:
    return max(1, int(k).bit_length())


def _clamp_unit(x: Dyadic) -> Dyadic:
    one = Dyadic(1)
    return min(max(x, -one), one)


# ---------------------------------------------------------------------------
# parameter algebra (pure functions)
# ---------------------------------------------------------------------------


def r_build(K: int, ell: int):
    """Builder for r = 2**(-(2 pi K)**(-1/ell))."""
    q = Fraction(1, ell)

    def build(ctx):
        return ctx.exp(-ctx.log(2) * (2 * ctx.pi * K) ** (-iv_fraction(ctx, q)))

    return build


def lom_c_params(A: int, K: int, ell: int, bits: int = 48):
    """(q, r, B) with q = 1/ell exactly, r a certified enclosure of
    2**(-(2 pi K)**(-q)), and B = ceil(A (2 + pi K))."""
    if A < 1 or K < 1 or ell < 1:
        raise DomainError("parameters must be >= 1")
    q = Fraction(1, ell)
    r = compute(r_build(K, ell), bits)
    B = decided_ceil(lambda ctx: ctx.mpf(A) * (2 + ctx.pi * K))
    return q, r, B


def _as_r_build(r):
    """Accept builder / enclosure / dyadic / fraction; return a builder
    and, when available, the exact rational value."""
    if callable(r):
        return r, None
    if isinstance(r, Dyadic):
        exact = r.to_fraction()
    elif isinstance(r, Fraction):
        exact = r
    else:
        lo, hi = r.lo.to_fraction(), r.hi.to_fraction()

        def build(ctx):
            return ctx.mpf([iv_fraction(ctx, lo).a, iv_fraction(ctx, hi).b])

        return build, (lo if lo == hi else None)
    return (lambda ctx: iv_fraction(ctx, exact)), exact


def _int_root_floor(m: int, ell: int) -> int:
    lo, hi = 0, 1
    while hi ** ell <= m:
        hi *= 2
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if mid ** ell <= m:
            lo = mid
        else:
            hi = mid
    return lo


def _check_decay(B: int, r, q: Fraction, n: int, m: int) -> bool:
    """Certified test of B r^(m^q) <= 2^-n (exact rationals when r is
    rational, outward intervals otherwise; one-sided, never unsound)."""
    rb, exact = _as_r_build(r)
    if exact is not None and 0 < exact < 1:
        # r^(m^q) <= r^floor(m^q), exact comparison
        s = _int_root_floor(m ** q.numerator, q.denominator)
        return B * exact ** s <= Fraction(1, 1 << n)
    prec = 64
    while prec <= 4096:
        box = compute(lambda ctx: (ctx.log(ctx.mpf(B), 2)
                                   + ctx.mpf(m) ** iv_fraction(ctx, q)
                                   * ctx.log(rb(ctx), 2) + n), prec)
        if box.hi.sign < 0:
            return True
        if box.lo.sign > 0:
            return False
        prec *= 2
    return False


def _verified_degree(B: int, r, q: Fraction, n: int, m: int) -> int:
    """Smallest certified m' >= m with B r^(m'^q) <= 2^-n, stepping up."""
    for _ in range(256):
        if _check_decay(B, r, q, n, m):
            return m
        m += max(1, m // 16)
    raise ResourceError("degree calibration did not converge")


def lom_b_degree(B: int, r, q: Fraction, n: int) -> int:
    """m = ceil(C n^(1/q)) with C = (1 + log B / log(1/r))^(1/q),
    re-verified (and bumped if needed) so B r^(m^q) <= 2^-n holds."""
    if B < 1 or not (0 < q <= 1):
        raise DomainError("need B >= 1 and 0 < q <= 1")
    rb, _ = _as_r_build(r)
    box = compute(lambda ctx: (1 + ctx.log(ctx.mpf(B), 2) / -ctx.log(rb(ctx), 2))
                  ** (1 / iv_fraction(ctx, q))
                  * ctx.mpf(n) ** (1 / iv_fraction(ctx, q)), 96)
    m = max(1, math.ceil(box.lo.to_fraction()))
    return _verified_degree(B, r, q, n, m)


def lom_e_Bhat(B: int, r, ell: int) -> int:
    """ceil(1 + 2B (2 ell / (e ln(1/r)))^ell); requires r >= 2^(-1/(2 pi))."""
    rb, _ = _as_r_build(r)
    floor_box = compute(lambda ctx: rb(ctx) - ctx.exp(-ctx.log(2) / (2 * ctx.pi)), 64)
    if floor_box.hi.sign < 0:
        raise DomainError("r below the proposition's floor 2^(-1/(2 pi))")
    return decided_ceil(lambda ctx: 1 + 2 * ctx.mpf(B)
                        * (2 * ctx.mpf(ell) / (ctx.e * -ctx.log(rb(ctx)))) ** ell)


def g_param_product(A: int, K: int, B: int, L: int, ell: int) -> tuple[int, int]:
    """(C, M) = (A B, K + L)."""
    return A * B, K + L


def g_param_compose(A: int, K: int, B: int, L: int, ell: int) -> tuple[int, int]:
    """(C, M) = (ceil(B (e ell / 2)^(ell/2)), ceil(e A K L))."""
    C = decided_ceil(lambda ctx: ctx.mpf(B)
                     * (ctx.e * ell / 2) ** iv_fraction(ctx, Fraction(ell, 2)))
    M = decided_ceil(lambda ctx: ctx.e * ctx.mpf(A * K * L))
    return C, M


def g_param_diff(A: int, K: int, ell: int, d: int) -> tuple[int, int]:
    """(A_d, K_d) = (ceil(A K^d (2 d^2 ell / e)^(d ell)),
    ceil(K e (2d)^ell))."""
    A_d = decided_ceil(lambda ctx: ctx.mpf(A * K ** d)
                       * (ctx.mpf(2 * d * d * ell) / ctx.e) ** (d * ell))
    K_d = decided_ceil(lambda ctx: ctx.mpf(K) * ctx.e * ctx.mpf((2 * d) ** ell))
    return A_d, K_d


def prop_d_params(B: int, rb, q: Fraction) -> tuple[int, int, int]:
    """Gevrey data recovered from approximant decay B r^(m^q):
    l' = 2/q - 1, A = ceil(B (6/(q e ln(1/r)))^(4/q)),
    K = ceil(4 (6/(q ln(1/r)))^(2/q))."""
    ell_out = Fraction(2, 1) / q - 1
    if ell_out.denominator != 1:
        raise DomainError("level 2/q - 1 must be integral")
    A = decided_ceil(lambda ctx: ctx.mpf(B)
                     * (6 / (iv_fraction(ctx, q) * ctx.e * -ctx.log(rb(ctx))))
                     ** (4 / iv_fraction(ctx, q)))
    K = decided_ceil(lambda ctx: 4 * (6 / (iv_fraction(ctx, q)
                                           * -ctx.log(rb(ctx))))
                     ** (2 / iv_fraction(ctx, q)))
    return A, K, int(ell_out)


def prop_d_Bd(B: int, rb, q: Fraction, d: int) -> int:
    """B_d = ceil(B (6/(q e ln(1/r)))^((1+2d)/q))."""
    return decided_ceil(lambda ctx: ctx.mpf(B)
                        * (6 / (iv_fraction(ctx, q) * ctx.e * -ctx.log(rb(ctx))))
                        ** ((1 + 2 * d) / iv_fraction(ctx, q)))


def _safe_level_constant(Bhat: int, rb_half, ell: int, extra: int = 2) -> int:
    """C with B r^((C n^ell)^(1/ell)) <= 2^-(n+1) for every n >= 1: the
    literal chain constant can be too small when log2(1/r) < 1, so take
    the max with ((extra + log2 B)/log2(1/r))^ell and verify at n = 1."""
    paper = decided_ceil(lambda ctx: (1 + ctx.log(ctx.mpf(Bhat), 2)
                                      / -ctx.log(rb_half(ctx), 2)) ** ell)
    safe = decided_ceil(lambda ctx: ((extra + ctx.log(ctx.mpf(Bhat), 2))
                                     / -ctx.log(rb_half(ctx), 2)) ** ell)
    C = max(paper, safe, 1)
    q = Fraction(1, ell)
    for _ in range(64):
        if _check_decay(Bhat, rb_half, q, 1 + (extra - 1), C):
            return C
        C += max(1, C // 8)
    raise ResourceError("level constant calibration failed")


# ---------------------------------------------------------------------------
# names
# ---------------------------------------------------------------------------


class GevreyGamma:
    """Evaluation oracle with (A, K, l): |f^(j)| <= A K^j j^(jl) on [-1;1]."""

    def __init__(self, eval_fn: EvalOracle, A: int, K: int, ell: int):
        if A < 1 or K < 1 or ell < 1:
            raise DomainError("parameters must be >= 1")
        self.eval = eval_fn
        self.A = A
        self.K = K
        self.ell = ell

    def lip_bound(self) -> int:
        return self.A * self.K


class GevreyLambda:
    """Header (C, l) plus a per-precision approximant oracle.

    approximant(n) is a Chebyshev-basis polynomial p_n of degree
    < C max(1,n)^l with ||f - p_n|| <= 2**-n; to_tuple(n) emits the wire
    form: exactly C n^l monomial coefficients rounded into D_m."""

    def __init__(self, C: int, ell: int,
                 provider: Callable[[int], DyadicPoly], origin: str = "chain"):
        if C < 1 or ell < 1:
            raise DomainError("header must be >= 1")
        self.C = C
        self.ell = ell
        self.origin = origin
        self._provider = provider
        self._memo: dict[int, DyadicPoly] = {}

    def tuple_len(self, n: int) -> int:
        return self.C * max(1, n) ** self.ell

    def approximant(self, n: int) -> DyadicPoly:
        n = max(1, n)
        got = self._memo.get(n)
        if got is None:
            got = self._provider(n)
            if got.degree >= self.tuple_len(n):
                raise ResourceError("approximant exceeded its degree budget")
            self._memo[n] = got
        return got

    def to_tuple(self, n: int) -> list[Dyadic]:
        """Monomial coefficients in D_m, zero-padded to length m = C n^l.
        The D_m rounding perturbs the function by < m 2^-m <= 2^-(n+2)."""
        from .polyops import MONOMIAL, basis_convert
        n = max(1, n)
        m = self.tuple_len(n)
        if m * pow2(-m).to_fraction() > Fraction(1, 2 ** (n + 2)):
            raise ResourceError("tuple length too small to absorb rounding")
        p = basis_convert(self.approximant(n), MONOMIAL)
        out = [c.round_nearest(m - 1) for c in p.coeffs]
        out += [ZERO] * (m - len(out))
        return out

    def sup1(self) -> Dyadic:
        """Upper bound for ||f||: coefficient norm of approximant(1) + 1."""
        return self.approximant(1).coeff_norm() + Dyadic(1)


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------


def _sample_interpolant(eval_fn: EvalOracle, lip: int, m: int, target: int) -> DyadicPoly:
    """Chebyshev interpolant of the oracle at m nodes; the sampling and
    interpolation rounding add at most 2**-target beyond the theory."""
    ps = target + _bitlen(m) + 4
    pe = ps + _bitlen(lip) + 1
    samples = []
    for j in range(m):
        x = cheb_node(m, j).query(pe)
        vr, vi = eval_fn(_clamp_unit(x), pe)
        samples.append((x, vr))
    return cheb_interpolate(samples, m, target)


def gamma_to_lambda(f: GevreyGamma) -> GevreyLambda:
    """Chain: (q, r, B) from the Gevrey parameters, Bhat for the rounded
    interpolant (decay base sqrt r), then the level constant."""
    q, r, B = lom_c_params(f.A, f.K, f.ell)
    rb = r_build(f.K, f.ell)
    Bhat = lom_e_Bhat(B, rb, f.ell)

    def rb_half(ctx):
        return ctx.sqrt(rb(ctx))

    C = _safe_level_constant(Bhat, rb_half, f.ell)
    lip = f.lip_bound()

    def provider(n: int) -> DyadicPoly:
        m = C * max(1, n) ** f.ell
        return _sample_interpolant(f.eval, lip, m, n + 1)

    return GevreyLambda(C, f.ell, provider, origin="chain")


def empirical_lambda(f: GevreyGamma, C: int, ell: int | None = None) -> GevreyLambda:
    """A lambda name with a hand-calibrated header constant; its
    certificate is validated against an independent oracle by the tests
    (fixture route for levels where the provable chain constant is
    astronomically large)."""
    lev = f.ell if ell is None else ell

    def provider(n: int) -> DyadicPoly:
        m = C * max(1, n) ** lev
        return _sample_interpolant(f.eval, f.lip_bound(), m, n + 1)

    return GevreyLambda(C, lev, provider, origin="empirical")


def lambda_to_gamma(f: GevreyLambda) -> GevreyGamma:
    """Evaluation via the approximant; the Gevrey data comes from the
    approximant decay (B = 2, r = 2^(-C^-q)) and the recovery bound,
    degrading the level to 2l - 1."""
    q = Fraction(1, f.ell)

    def rb(ctx):
        return ctx.exp(-ctx.log(2) * ctx.mpf(f.C) ** (-iv_fraction(ctx, q)))

    A, K, ell_out = prop_d_params(2, rb, q)

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        poly = f.approximant(p + 1)
        return poly.eval_point(_clamp_unit(x), p + 1), ZERO

    return GevreyGamma(ev, A, K, ell_out)


# ---------------------------------------------------------------------------
# operations on lambda names
# ---------------------------------------------------------------------------


def _common_level(f: GevreyLambda, g: GevreyLambda) -> int:
    return max(f.ell, g.ell)


def g_add(f: GevreyLambda, g: GevreyLambda) -> GevreyLambda:
    ell = _common_level(f, g)
    C = max(f.C, g.C) * (1 << ell)  # parents at n+1: (n+1)^l <= 2^l n^l

    def provider(n: int) -> DyadicPoly:
        return f.approximant(n + 1) + g.approximant(n + 1)

    return GevreyLambda(C, ell, provider, origin="derived")


def g_mul(f: GevreyLambda, g: GevreyLambda) -> GevreyLambda:
    ell = _common_level(f, g)
    s = (_bitlen(f.sup1().ceil_int() + 1) + _bitlen(g.sup1().ceil_int() + 1) + 2)
    C = (f.C + g.C) * (1 + s) ** ell

    def provider(n: int) -> DyadicPoly:
        return f.approximant(n + s) * g.approximant(n + s)

    return GevreyLambda(C, ell, provider, origin="derived")


def g_diff(f: GevreyLambda, d: int) -> GevreyLambda:
    """d-fold derivative via the decay-recovery chain: the approximant
    family decays like 2 r^(m^q) with r = 2^(-C^-q); differentiating at
    the stretched parent index a*n keeps the derivative within 2^-n,
    where a >= (1 + log2 B_d)/(C^q log2(1/sqrt r)) (that choice makes the
    decay exponent <= -n for every n >= 1, re-verified at n = 1)."""
    if d < 0:
        raise DomainError("derivative order must be >= 0")
    if d == 0:
        return f
    q = Fraction(1, f.ell)

    def rb(ctx):
        return ctx.exp(-ctx.log(2) * ctx.mpf(f.C) ** (-iv_fraction(ctx, q)))

    def rb_half(ctx):
        return ctx.sqrt(rb(ctx))

    Bd = prop_d_Bd(2, rb, q, d)
    stretch = decided_ceil(
        lambda ctx: (1 + ctx.log(ctx.mpf(Bd), 2))
        / (ctx.mpf(f.C) ** iv_fraction(ctx, q) * -ctx.log(rb_half(ctx), 2))) + 1
    for _ in range(64):
        if _check_decay(Bd, rb_half, q, 1, f.C * stretch ** f.ell):
            break
        stretch += max(1, stretch // 8)
    else:
        raise ResourceError("derivative calibration failed")
    Cd = f.C * stretch ** f.ell

    def provider(n: int) -> DyadicPoly:
        poly = f.approximant(stretch * max(1, n))
        for _ in range(d):
            poly = poly.derivative()
        return poly

    return GevreyLambda(Cd, f.ell, provider, origin="derived")


def g_eval(f: GevreyLambda, x, n: int) -> Dyadic:
    poly = f.approximant(n + 1)
    lip = min(markov_bound(poly, 1), poly.derivative().coeff_norm())
    q = n + 2 + _bitlen(lip.ceil_int() + 1)
    xd = x.query(q) if isinstance(x, RealName) else x
    return poly.eval_point(_clamp_unit(xd), n + 2).round_nearest(n + 1)


def g_integrate(f: GevreyLambda, u, v, n: int) -> Dyadic:
    poly = f.approximant(n + 2)
    m_e = n + 3 + _bitlen(poly.coeff_norm().ceil_int() + 1)
    ua = u.query(m_e) if isinstance(u, RealName) else u
    va = v.query(m_e) if isinstance(v, RealName) else v
    lo, hi = min(ua, va), max(ua, va)
    lo, hi = _clamp_unit(lo), _clamp_unit(hi)
    return integrate_poly(poly, lo, hi, n + 2).round_nearest(n + 1)


def g_max(f: GevreyLambda, u, v, n: int) -> Dyadic:
    poly = f.approximant(n + 2)
    return poly_max(poly, u, v, n + 2).round_nearest(n + 1)


def g_compose(g: GevreyGamma, f: GevreyGamma) -> GevreyGamma:
    """g o f for f mapping [-1;1] into [-1;1] (caller-asserted)."""
    if f.ell != g.ell:
        raise DomainError("compose wants matching levels; pad the smaller")
    C, M = g_param_compose(f.A, f.K, g.A, g.K, f.ell)
    lip_g = g.lip_bound()

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        q = p + 1 + _bitlen(lip_g)
        w, _ = f.eval(_clamp_unit(x), q)
        return g.eval(_clamp_unit(w), p + 1)

    return GevreyGamma(ev, C, M, f.ell)
