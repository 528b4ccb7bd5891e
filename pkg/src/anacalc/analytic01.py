"""Analytic functions on [0;1] in three interchangeable encodings.

* alpha: an atlas of local power series, one per center, covering [0;1];
* beta: evaluation oracles plus a rectangle neighbourhood R_L with a
  bound B for |f| on it;
* gamma: evaluation oracles plus (A, K) with |f^(j)| <= A K^j j!.

The atlas is the canonical internal form: every primitive reduces to
power-series operations on a rescaled local series.  Patch location and
the integration/maximization walk use a robust non-equidistant cover
traversal with explicit slack, so approximate centers never break the
certificates.

Evaluation oracles are callables ``(x: Dyadic, p) -> (Dyadic, Dyadic)``
returning f(x) componentwise within 2**-p for x in [0;1].
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

from .dyadic import Dyadic, RealName, SeqName, ZERO, fraction_to_dyadic
from .errors import DomainError, InvalidNameError
from .powerseries import (
    PiSeries,
    ps_coeffs_from_eval,
    ps_diff,
    ps_eval,
    ps_integrate_complex,
    ps_max,
)

EvalOracle = Callable[[Dyadic, int], tuple[Dyadic, Dyadic]]


def _bitlen(k: int) -> int:
    return max(1, int(k).bit_length())


def _clamp01(x: Dyadic) -> Dyadic:
    return min(max(x, ZERO), Dyadic(1))


def _clamp_unit(x: Dyadic) -> Dyadic:
    one = Dyadic(1)
    return min(max(x, -one), one)


class BetaName:
    """Evaluation + rectangle advice: f analytic on R_L with |f| <= B."""

    def __init__(self, eval_fn: EvalOracle, L: int, B: int):
        if L < 1 or B < 1:
            raise DomainError("advice must be >= 1")
        self.eval = eval_fn
        self.L = L
        self.B = B

    def lip_bound(self) -> int:
        # Cauchy on the inscribed disc of radius 1/L around x in [0,1]
        return self.B * self.L


class GammaName:
    """Evaluation + derivative-bound advice: |f^(j)| <= A K^j j! on [0;1]."""

    def __init__(self, eval_fn: EvalOracle, A: int, K: int):
        if A < 1 or K < 1:
            raise DomainError("advice must be >= 1")
        self.eval = eval_fn
        self.A = A
        self.K = K

    def lip_bound(self) -> int:
        return self.A * self.K


class AlphaName:
    """Atlas of local series: centers x_m with coefficients a_{m,j},
    |a_{m,j}| <= A_m L_m^j, and [0;1] covered by the x_m +- 1/(4 L_m)."""

    def __init__(self, centers: list[RealName], coeffs: list[SeqName],
                 Ls: list[int], As: list[int]):
        M = len(centers)
        if not (M == len(coeffs) == len(Ls) == len(As)) or M == 0:
            raise DomainError("atlas components must align and be nonempty")
        if any(L < 1 for L in Ls) or any(A < 1 for A in As):
            raise DomainError("advice must be >= 1")
        self.centers = centers
        self.coeffs = coeffs
        self.Ls = Ls
        self.As = As
        self._locals: dict[int, PiSeries] = {}

    @property
    def M(self) -> int:
        return len(self.centers)

    def local_series(self, m: int) -> PiSeries:
        """Rescaled series fhat_m(z) = f(x_m + z/(2 L_m)) as a unit-disc
        name: coefficients a_{m,j} / (2 L_m)^j with advice (K=1, A_m)."""
        got = self._locals.get(m)
        if got is not None:
            return got
        parent = self.coeffs[m]
        twol = 2 * self.Ls[m]

        def q(j: int, n: int) -> tuple[Dyadic, Dyadic]:
            ar, ai = parent.query(j, n)
            den = twol ** j
            return (fraction_to_dyadic(ar.to_fraction() / den, n + 1),
                    fraction_to_dyadic(ai.to_fraction() / den, n + 1))

        got = PiSeries(SeqName(q), 1, self.As[m])
        self._locals[m] = got
        return got

    # patch membership with explicit slack --------------------------------

    def _slack_bits(self) -> int:
        return _bitlen(16 * max(self.Ls))

    def _center_approx(self, m: int) -> Dyadic:
        return self.centers[m].query(self._slack_bits())

    def candidates(self, x: Dyadic) -> list[int]:
        """Patches m certified to satisfy |x - x_m| <= 1/(2 L_m); nonempty
        for every x in [0;1] when the covering invariant holds."""
        eps_c = Fraction(1, 1 << self._slack_bits())
        out = []
        for m in range(self.M):
            t = Fraction(1, 4 * self.Ls[m]) + eps_c
            if abs(x.to_fraction() - self._center_approx(m).to_fraction()) <= t:
                out.append(m)
        return out

    def locate(self, x: Dyadic) -> int:
        cands = self.candidates(x)
        if not cands:
            raise InvalidNameError("no covering patch found; atlas invalid")
        return cands[0]

    def rescale(self, m: int, x: Dyadic, p: int) -> Dyadic:
        """zhat = (x - x_m) * 2 L_m within 2**-p, clamped into [-1, 1]."""
        twol = 2 * self.Ls[m]
        q = p + _bitlen(twol) + 1
        c = self.centers[m].query(q)
        return _clamp_unit(((x - c).mul_int(twol)).round_nearest(p))

    def gamma_advice(self) -> tuple[int, int]:
        """(A, K) of the gamma view, via the beta view of the atlas."""
        L, B = alpha_to_beta_advice(self.Ls, self.As)
        return B, L

    def sum_bound(self) -> int:
        return max(self.local_series(m).sum_bound() for m in range(self.M))


# ---------------------------------------------------------------------------
# conversions
# ---------------------------------------------------------------------------


def beta_to_gamma(f: BetaName) -> GammaName:
    """Cauchy on R_L gives |f^(j)|/j! <= B L^j: take A = B, K = L."""
    return GammaName(f.eval, f.B, f.L)


def gamma_to_alpha(f: GammaName) -> AlphaName:
    """M = 4K+1 equidistant centers; local coefficients recovered from the
    evaluation oracle applied to fhat_m(z) = f(x_m + z/(2K))."""
    K, A = f.K, f.A
    M = 4 * K + 1
    lip = f.lip_bound()
    centers = []
    coeffs = []
    for m in range(M):
        xm = Fraction(m, 4 * K)
        centers.append(RealName.from_fraction(xm))
        lo = max(-2 * K * xm, Fraction(-1))
        hi = min(2 * K * (1 - xm), Fraction(1))

        def fhat_eval(z: Dyadic, p: int, xm=xm) -> tuple[Dyadic, Dyadic]:
            q = p + 1 + _bitlen(lip)
            arg = _clamp01(fraction_to_dyadic(xm + z.to_fraction() / (2 * K), q))
            vr, vi = f.eval(arg, p + 1)
            return vr, vi

        # fhat_m is bounded by A (2 + sqrt2) < 4A on |z| <= sqrt2 = 2^(1/2)
        hat = ps_coeffs_from_eval(fhat_eval, 2, 4 * A, lo=lo, hi=hi,
                                  tag=f"atlas[{m}]")
        twok = 2 * K

        def q_coeff(j: int, n: int, hat=hat) -> tuple[Dyadic, Dyadic]:
            fac = twok ** j
            b = _bitlen(fac)
            hr, hi_ = hat.query(j, n + b)
            return hr.mul_int(fac).round_nearest(n + 1), hi_.mul_int(fac).round_nearest(n + 1)

        coeffs.append(SeqName(q_coeff))
    return AlphaName(centers, coeffs, [K] * M, [A] * M)


def alpha_to_beta_advice(Ls: list[int], As: list[int]) -> tuple[int, int]:
    """L = 2 max L_m; B = ceil(4/3 max A_m)."""
    return 2 * max(Ls), -((-4 * max(As)) // 3)


def alpha_eval(f: AlphaName, x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
    x = _clamp01(x)
    m = f.locate(x)
    z = f.rescale(m, x, p + 2 + _bitlen(8 * f.As[m]))
    return ps_eval(f.local_series(m), z, p + 1)


def alpha_to_beta(f: AlphaName) -> BetaName:
    L, B = alpha_to_beta_advice(f.Ls, f.As)
    return BetaName(lambda x, p: alpha_eval(f, x, p), L, B)


def to_alpha(f) -> AlphaName:
    if isinstance(f, AlphaName):
        return f
    if isinstance(f, BetaName):
        return gamma_to_alpha(beta_to_gamma(f))
    if isinstance(f, GammaName):
        return gamma_to_alpha(f)
    raise DomainError(f"not an analytic name: {f!r}")


def to_beta(f) -> BetaName:
    if isinstance(f, BetaName):
        return f
    return alpha_to_beta(to_alpha(f))


def to_gamma(f) -> GammaName:
    if isinstance(f, GammaName):
        return f
    return beta_to_gamma(to_beta(f))


def check_covering(f: AlphaName) -> bool:
    """Certified covering test: the conservative patch intervals (shrunk
    by the center-approximation slack) must cover [0;1]."""
    eps_c = Fraction(1, 1 << f._slack_bits())
    ivs = []
    for m in range(f.M):
        c = f._center_approx(m).to_fraction()
        r = Fraction(1, 4 * f.Ls[m]) - eps_c
        if r > 0:
            ivs.append((c - r, c + r))
    ivs.sort()
    reach = Fraction(0)
    for lo, hi in ivs:
        if lo > reach:
            return False
        reach = max(reach, hi)
        if reach >= 1:
            return True
    return reach >= 1


# ---------------------------------------------------------------------------
# primitives
# ---------------------------------------------------------------------------


def a_eval(f, x, n: int) -> tuple[Dyadic, Dyadic]:
    """Evaluation for any of the three name kinds; x a RealName or Dyadic."""
    if isinstance(f, AlphaName):
        oracle: EvalOracle = lambda xd, p: alpha_eval(f, xd, p)
        lip = f.gamma_advice()[0] * f.gamma_advice()[1]
    elif isinstance(f, (BetaName, GammaName)):
        oracle = f.eval
        lip = f.lip_bound()
    else:
        raise DomainError(f"not an analytic name: {f!r}")
    q = n + 1 + _bitlen(lip)
    xd = x.query(q) if isinstance(x, RealName) else x
    return oracle(_clamp01(xd), n + 1)


def a_eval_real(f, x, n: int) -> Dyadic:
    return a_eval(f, x, n)[0]


def a_add(f, g) -> BetaName:
    fb, gb = to_beta(f), to_beta(g)

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        ar, ai = fb.eval(x, p + 1)
        br, bi = gb.eval(x, p + 1)
        return ar + br, ai + bi

    return BetaName(ev, max(fb.L, gb.L), fb.B + gb.B)


def a_mul(f, g) -> BetaName:
    fb, gb = to_beta(f), to_beta(g)
    guard = 2 + _bitlen(fb.B + gb.B + 1)

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        ar, ai = fb.eval(x, p + guard)
        br, bi = gb.eval(x, p + guard)
        return ((ar * br - ai * bi).round_nearest(p + 1),
                (ar * bi + ai * br).round_nearest(p + 1))

    return BetaName(ev, max(fb.L, gb.L), fb.B * gb.B)


def a_diff_advice(A: int, K: int, d: int) -> tuple[int, int]:
    """gamma advice of the d-th derivative: (A (dK)^d, 2K)."""
    return A * (d * K) ** d, 2 * K


def a_diff(f, d: int) -> GammaName:
    """d-th derivative as a gamma name, evaluated patchwise."""
    if d < 0:
        raise DomainError("derivative order must be >= 0")
    fa = to_alpha(f)
    A, K = fa.gamma_advice()
    if d == 0:
        return GammaName(lambda x, p: alpha_eval(fa, x, p), A, K)
    A2, K2 = a_diff_advice(A, K, d)
    locals_diff: dict[int, PiSeries] = {}

    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        x = _clamp01(x)
        m = fa.locate(x)
        ser = locals_diff.get(m)
        if ser is None:
            ser = ps_diff(fa.local_series(m), d)
            locals_diff[m] = ser
        fac = (2 * fa.Ls[m]) ** d
        b = _bitlen(fac)
        z = fa.rescale(m, x, p + b + 2 + _bitlen(8 * ser.sum_bound()))
        vr, vi = ps_eval(ser, z, p + b + 1)
        return vr.mul_int(fac).round_nearest(p + 1), vi.mul_int(fac).round_nearest(p + 1)

    return GammaName(ev, A2, K2)


def cover_walk(f: AlphaName, u: Dyadic, v: Dyadic) -> list[tuple[int, Dyadic, Dyadic]]:
    """Partition [u, v] into cells (m, lo, hi), each certified inside J_m.

    Greedy non-equidistant walk: among untried candidate patches for the
    current left end take the one reaching farthest right; marking
    patches used avoids cycles in degenerate configurations.
    """
    if u > v:
        u, v = v, u
    u, v = _clamp01(u), _clamp01(v)
    eps_bits = f._slack_bits()
    eps_c = Fraction(1, 1 << eps_bits)
    used: set[int] = set()
    cells: list[tuple[int, Dyadic, Dyadic]] = []
    cur = u
    guard = 2 * f.M + 16 * max(f.Ls) + 4
    for _ in range(guard):
        if cur >= v:
            return cells
        cands = [m for m in f.candidates(cur) if m not in used]
        if not cands:
            raise InvalidNameError("cover walk failed; atlas invalid")
        reach = {}
        for m in cands:
            r = (f._center_approx(m).to_fraction()
                 + Fraction(1, 2 * f.Ls[m]) - 2 * eps_c)
            reach[m] = r
        m = max(cands, key=lambda mm: (reach[mm], -mm))
        used.add(m)
        hi_fr = min(reach[m], v.to_fraction())
        hi = fraction_to_dyadic(hi_fr, eps_bits + 4)
        hi = min(max(hi, cur), v)
        if hi > cur:
            cells.append((m, cur, hi))
            cur = hi
    raise InvalidNameError("cover walk did not terminate; atlas invalid")


def _cell_bounds(f: AlphaName, m: int, lo: Dyadic, hi: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
    zlo = f.rescale(m, lo, p)
    zhi = f.rescale(m, hi, p)
    return (zlo, zhi) if zlo <= zhi else (zhi, zlo)


def a_integrate(f, u, v, n: int) -> Dyadic:
    """Real part of the integral over [min(u,v), max(u,v)] within 2**-n."""
    fa = to_alpha(f)
    bound = fa.sum_bound()
    m_e = n + 3 + _bitlen(bound)
    ua = u.query(m_e) if isinstance(u, RealName) else u
    va = v.query(m_e) if isinstance(v, RealName) else v
    cells = cover_walk(fa, ua, va)
    if not cells:
        return ZERO
    nc = n + _bitlen(len(cells)) + 2
    total = ZERO
    for m, lo, hi in cells:
        twol = 2 * fa.Ls[m]
        zlo, zhi = _cell_bounds(fa, m, lo, hi, nc + _bitlen(twol) + 2)
        val, _ = ps_integrate_complex(fa.local_series(m), zlo, zhi, nc + _bitlen(twol))
        total = total + fraction_to_dyadic(val.to_fraction() / twol, nc)
    return total.round_nearest(n + 1)


def a_max(f, u, v, n: int) -> Dyadic:
    """max of Re f over [min(u,v), max(u,v)] within 2**-n."""
    fa = to_alpha(f)
    A, K = fa.gamma_advice()
    m_e = n + 3 + _bitlen(A * K)
    ua = u.query(m_e) if isinstance(u, RealName) else u
    va = v.query(m_e) if isinstance(v, RealName) else v
    if ua > va:
        ua, va = va, ua
    if ua == va:
        return a_eval_real(fa, ua, n + 1).round_nearest(n + 1)
    cells = cover_walk(fa, ua, va)
    nc = n + 2
    best = None
    for m, lo, hi in cells:
        zlo, zhi = _cell_bounds(fa, m, lo, hi, nc + 4)
        val = ps_max(fa.local_series(m), zlo, zhi, nc)
        best = val if best is None else max(best, val)
    return best.round_nearest(n + 1)


# ---------------------------------------------------------------------------
# composition
# ---------------------------------------------------------------------------


def compose_beta_advice(A: int, K: int, L: int, B: int) -> tuple[int, int]:
    """f bounded by A on R_K, g bounded by B on R_L: g o f is analytic on
    R_(2AKL) and bounded by B there."""
    return 2 * A * K * L, B


def compose_gamma_advice(A: int, K: int, B: int, L: int) -> tuple[int, int]:
    """(C, M) with C = ceil(A B L / (1 + A L)) and M = K (1 + A L)."""
    C = -((-A * B * L) // (1 + A * L))
    return C, K * (1 + A * L)


def _composed_eval(g_eval: EvalOracle, f_eval: EvalOracle, g_lip: int) -> EvalOracle:
    def ev(x: Dyadic, p: int) -> tuple[Dyadic, Dyadic]:
        q = p + 1 + _bitlen(g_lip)
        w, _ = f_eval(x, q)
        return g_eval(_clamp01(w), p + 1)

    return ev


def a_compose_beta(g: BetaName, f: BetaName) -> BetaName:
    """g o f for f mapping [0;1] into [0;1] (caller-asserted)."""
    L_out, B_out = compose_beta_advice(f.B, f.L, g.L, g.B)
    return BetaName(_composed_eval(g.eval, f.eval, g.lip_bound()), L_out, B_out)


def a_compose_gamma(g: GammaName, f: GammaName) -> GammaName:
    C, M = compose_gamma_advice(f.A, f.K, g.A, g.K)
    return GammaName(_composed_eval(g.eval, f.eval, g.lip_bound()), C, M)
