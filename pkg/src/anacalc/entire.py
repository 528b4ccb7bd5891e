"""Entire functions: coefficient oracle plus a growth-bound oracle.

A name carries B: M -> B(M) with |a_j| <= B(M)/M^j for every M >= 1.
Growth values can be astronomically large (that is the point of the
representation: converting them to unary is what makes composition only
fixed-parameter tractable), so the oracle is evaluated lazily and
memoized, with a running-max normalization keeping it nondecreasing.
"""

from __future__ import annotations

import os
from typing import Callable

from .dyadic import ComplexName, Dyadic, DyInterval, RealName, SeqName, ZERO, pow2
from .enclosures import decided_ceil
from .errors import DomainError, ResourceError
from .polyops import MONOMIAL, DyadicPoly, poly_max
from .powerseries import PiSeries, _bitlen, _falling_product


class EntireName:
    """Coefficients with a growth oracle: |a_j| <= growth(M) / M^j."""

    def __init__(self, coeffs: SeqName, growth: Callable[[int], int],
                 tag: str | None = None):
        self.coeffs = coeffs
        self._growth = growth
        self._gmemo: dict[int, int] = {}
        self.tag = tag

    def growth(self, M: int) -> int:
        if M < 1:
            raise DomainError("growth oracle domain is M >= 1")
        got = self._gmemo.get(M)
        if got is None:
            raw = max(1, self._growth(M))
            prior = max((b for m, b in self._gmemo.items() if m <= M), default=1)
            got = max(raw, prior)
            self._gmemo[M] = got
        return got

    # -- fixture constructors ------------------------------------------------

    @staticmethod
    def zero() -> "EntireName":
        return EntireName(SeqName(lambda j, n: (ZERO, ZERO)), lambda M: 1, tag="zero")

    @staticmethod
    def exp() -> "EntireName":
        # sup_j M^j / j! is attained near j = M; ceil(e^M) dominates it
        def growth(M: int) -> int:
            return decided_ceil(lambda ctx: ctx.exp(ctx.mpf(M)))

        def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
            f = 1
            for i in range(2, j + 1):
                f *= i
            from .dyadic import rational_to_dyadic
            return rational_to_dyadic(1, f, n), ZERO

        return EntireName(SeqName(q, tag="exp"), growth, tag="exp")

    @staticmethod
    def from_int_poly(coeffs: list[int], tag: str | None = None) -> "EntireName":
        cs = list(coeffs)

        def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
            return (Dyadic(cs[j]) if j < len(cs) else ZERO), ZERO

        def growth(M: int) -> int:
            return max(1, sum(abs(c) * M ** i for i, c in enumerate(cs)))

        return EntireName(SeqName(q, tag=tag), growth, tag=tag)


# ---------------------------------------------------------------------------
# growth-update formulas (pure functions, unit-testable)
# ---------------------------------------------------------------------------


def growth_mul_bound(bf_2m: int, bg_2m: int) -> int:
    """ceil(B_f(2M) B_g(2M) * 2 / (e ln 2))."""
    return decided_ceil(lambda ctx: ctx.mpf(bf_2m) * ctx.mpf(bg_2m) * 2
                        / (ctx.e * ctx.log(2)))


def growth_diff_bound(b_2m: int, d: int, M: int) -> int:
    """ceil(B(2M) (2d/(e ln 2))^d / (2M)^d)."""
    return decided_ceil(lambda ctx: ctx.mpf(b_2m)
                        * (2 * ctx.mpf(d) / (ctx.e * ctx.log(2))) ** d
                        / ctx.mpf(2 * M) ** d)


def growth_antidiff_bound(b_m: int, d: int, M: int) -> int:
    """B(M) M^d (the falling-factorial denominators only help)."""
    return b_m * M ** d


def growth_compose_bound(g_at: int) -> int:
    """2 A_g(4 B_f(2M)): the caller supplies A_g evaluated at 4 B_f(2M)."""
    return 2 * g_at


def restrict_advice(b2: int) -> tuple[int, int]:
    """Unit-disc advice (K, A) = (1, B(2))."""
    return 1, b2


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def e_eval(f: EntireName, z, z_bound: int, n: int) -> tuple[Dyadic, Dyadic]:
    """sum a_j z^j within 2**-n for |z| <= z_bound (integer bound)."""
    if isinstance(z, RealName):
        z = ComplexName.from_real(z)
    elif isinstance(z, Dyadic):
        z = ComplexName.from_dyadic(z)
    zb = max(1, z_bound)
    M = 2 * zb
    A = f.growth(M)
    N = n + 1 + _bitlen(A) + 1
    # rescale w = z / 2^zbits with 2^zbits >= zb, so the rescaled
    # coefficients a_j 2^(j zbits) stay bounded by A and |w| <= 1
    zbits = _bitlen(zb) if zb > 1 else 0
    if (1 << zbits) < zb:
        zbits += 1
    p = n + _bitlen(N + 1) + _bitlen(2 * A) + 8
    q = p + _bitlen(2 * A + 1) + zbits + 2
    zr, zi = z.query(q)
    wr, wi = zr.scale2(-zbits), zi.scale2(-zbits)
    sr, si = ZERO, ZERO
    for j in range(N, -1, -1):
        ar, ai = f.coeffs.query(j, p + j * zbits)
        ar, ai = ar.scale2(j * zbits), ai.scale2(j * zbits)
        tr = ar + wr * sr - wi * si
        ti = ai + wr * si + wi * sr
        sr = tr.round_nearest(p)
        si = ti.round_nearest(p)
    return sr.round_nearest(n + 3), si.round_nearest(n + 3)


def e_eval_real(f: EntireName, z, z_bound: int, n: int) -> Dyadic:
    return e_eval(f, z, z_bound, n)[0]


def e_add(f: EntireName, g: EntireName) -> EntireName:
    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        ar, ai = f.coeffs.query(j, n + 1)
        br, bi = g.coeffs.query(j, n + 1)
        return ar + br, ai + bi

    return EntireName(SeqName(q), lambda M: f.growth(M) + g.growth(M))


def e_mul(f: EntireName, g: EntireName) -> EntireName:
    a1 = f.growth(1)
    b1 = g.growth(1)

    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        p = n + _bitlen(j + 1) + _bitlen(a1 + b1 + 2) + 4
        cr, ci = ZERO, ZERO
        for i in range(j + 1):
            ar, ai = f.coeffs.query(i, p)
            br, bi = g.coeffs.query(j - i, p)
            cr = cr + ar * br - ai * bi
            ci = ci + ar * bi + ai * br
        return cr.round_nearest(n + 2), ci.round_nearest(n + 2)

    return EntireName(SeqName(q),
                      lambda M: growth_mul_bound(f.growth(2 * M), g.growth(2 * M)))


def e_diff(f: EntireName, d: int) -> EntireName:
    if d < 0:
        raise DomainError("derivative order must be >= 0")
    if d == 0:
        return f

    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        fac = _falling_product(j, d)
        ar, ai = f.coeffs.query(j + d, n + _bitlen(fac))
        return (ar.mul_int(fac).round_nearest(n + 1),
                ai.mul_int(fac).round_nearest(n + 1))

    return EntireName(SeqName(q),
                      lambda M: growth_diff_bound(f.growth(2 * M), d, M))


def e_antidiff(f: EntireName, d: int) -> EntireName:
    if d < 0:
        raise DomainError("antiderivative order must be >= 0")
    if d == 0:
        return f

    def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
        if j < d:
            return ZERO, ZERO
        fac = _falling_product(j - d, d)
        ar, ai = f.coeffs.query(j - d, n + 1)
        from .dyadic import fraction_to_dyadic
        return (fraction_to_dyadic(ar.to_fraction() / fac, n + 1),
                fraction_to_dyadic(ai.to_fraction() / fac, n + 1))

    return EntireName(SeqName(q),
                      lambda M: growth_antidiff_bound(f.growth(M), d, M))


def e_max_segment(f: EntireName, u, v, seg_bound: int, n: int) -> Dyadic:
    """max of Re f over the real segment [min(u,v), max(u,v)] inside
    [-seg_bound, seg_bound], within 2**-n."""
    s = max(1, seg_bound)
    M = 2 * s
    B = f.growth(M)
    N = n + 2 + _bitlen(B) + 2
    p = n + _bitlen(N + 1) + 4
    # q(t) = f(s t) on t in [-1,1]: coefficients a_j s^j, decay B 2^-j
    coeffs = []
    for j in range(N + 1):
        ar, _ = f.coeffs.query(j, p + j * _bitlen(s))
        coeffs.append(ar.mul_int(s ** j))
    qpoly = DyadicPoly(coeffs, MONOMIAL)
    lip = 4 * B * s
    m_e = n + 3 + _bitlen(lip)
    ua = u.query(m_e) if isinstance(u, RealName) else u
    va = v.query(m_e) if isinstance(v, RealName) else v
    from .dyadic import fraction_to_dyadic
    tu = fraction_to_dyadic(ua.to_fraction() / s, m_e)
    tv = fraction_to_dyadic(va.to_fraction() / s, m_e)
    return poly_max(qpoly, tu, tv, n + 2).round_nearest(n + 1)


def e_restrict(f: EntireName) -> PiSeries:
    K, A = restrict_advice(f.growth(2))
    return PiSeries(f.coeffs, K, A)


# ---------------------------------------------------------------------------
# composition via truncated re-expansion with interval coefficients
# ---------------------------------------------------------------------------


def _ipoly_trunc_mul(a: list[DyInterval], b: list[DyInterval], k: int,
                     W: int) -> list[DyInterval]:
    out = [DyInterval.point(ZERO) for _ in range(min(len(a) + len(b) - 1, k + 1))]
    for i, ai in enumerate(a):
        if i > k:
            break
        for j, bj in enumerate(b):
            if i + j > k:
                break
            out[i + j] = (out[i + j] + ai * bj).outward(W)
    return out


def e_compose(f: EntireName, g: EntireName, iter_cap: int | None = None) -> EntireName:
    """g o f as an entire name (real coefficient sequences).

    c_k depends only on a_0..a_k and the g-coefficients, so the inner
    polynomial is just f mod z^(k+1); g is truncated at a depth where its
    tail on the circle |P| <= W+1 falls below target (a Cauchy bound
    transfers that sup-norm error to c_k).  Interval coefficients carry
    the rounding, and the result is only returned once its interval width
    certifies the requested precision.
    """
    bf2 = f.growth(2)
    Wb = 2 * bf2  # |f| <= W on |z| <= 1
    D = 4 * (Wb + 1)
    agD = g.growth(D)

    def q(k: int, n: int) -> tuple[Dyadic, Dyadic]:
        cap = iter_cap
        if cap is None:
            env = os.environ.get("ANACALC_ITER_CAP")
            cap = max(1 << 16, int(env)) if env else 1 << 22
        # tail of g beyond N2, on |w| <= W+1 <= D/4: agD (4/3) 4^-(N2+1)
        N2 = (n + 4 + _bitlen(agD)) // 2 + 2
        if (k + 1) * (k + 1) * (N2 + 1) > cap:
            raise ResourceError("composition expansion budget exceeded")
        pr = n + 8 + (N2 + 2) * (_bitlen(Wb + 2) + 1) + _bitlen(k + 1)
        for _ in range(4):
            P = []
            for j in range(k + 1):
                ar, ai = f.coeffs.query(j, pr)
                if not ai.is_zero():
                    raise DomainError("composition implemented for real coefficients")
                e = pow2(-pr)
                P.append(DyInterval(ar - e, ar + e))
            R = [DyInterval.point(ZERO)]
            for i in range(N2, -1, -1):
                br, bi = g.coeffs.query(i, pr)
                if not bi.is_zero():
                    raise DomainError("composition implemented for real coefficients")
                e = pow2(-pr)
                R = _ipoly_trunc_mul(R, P, k, pr)
                if not R:
                    R = [DyInterval.point(ZERO)]
                R[0] = (R[0] + DyInterval(br - e, br + e)).outward(pr)
            ck = R[k] if k < len(R) else DyInterval.point(ZERO)
            if ck.width() <= pow2(-(n + 2)):
                # add the certified g-tail transfer: |c_k| error <= 2^-(n+3)
                return ck.mid().round_nearest(n + 2), ZERO
            pr *= 2
        raise ResourceError("composition interval did not certify")

    return EntireName(SeqName(q),
                      lambda M: growth_compose_bound(
                          g.growth(max(1, 4 * f.growth(2 * M)))))
