"""Exact dyadic polynomials, Chebyshev machinery, and a certified maximizer.

Polynomials carry a basis tag.  Monomial evaluation is rounded Horner;
Chebyshev evaluation is rounded Clenshaw, whose injected rounding errors
propagate through the recurrence with second-kind Chebyshev factors and
are therefore bounded by (deg+2)^2 ulps on [-1, 1].  The maximizer is
branch-and-bound on second-order centered enclosures with monotonicity
pruning and a safeguarded-Newton refinement on concave brackets; its
answer is always a certified enclosure of the true maximum.
"""

from __future__ import annotations

import os
from fractions import Fraction
from typing import Iterable, Sequence

from .dyadic import Dyadic, DyInterval, RealName, ZERO, fraction_to_dyadic, pow2
from .enclosures import cos_pi_frac
from .errors import DomainError, ResourceError

MONOMIAL = "monomial"
CHEBYSHEV = "chebyshev"


def _bitlen(k: int) -> int:
    return max(1, int(k).bit_length())


class DyadicPoly:
    """Immutable polynomial with dyadic coefficients and a basis tag."""

    __slots__ = ("coeffs", "basis")

    def __init__(self, coeffs: Iterable[Dyadic], basis: str = MONOMIAL):
        cs = list(coeffs)
        while cs and cs[-1].is_zero():
            cs.pop()
        if basis not in (MONOMIAL, CHEBYSHEV):
            raise DomainError(f"unknown basis {basis!r}")
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "basis", basis)

    def __setattr__(self, *a):
        raise AttributeError("DyadicPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, DyadicPoly) and self.basis == other.basis
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.basis, self.coeffs))

    def __repr__(self):
        return f"DyadicPoly({[c.literal() for c in self.coeffs]}, {self.basis!r})"

    def coeff_norm(self) -> Dyadic:
        """sum |c_k|; bounds the sup norm on [-1, 1] in either basis."""
        total = ZERO
        for c in self.coeffs:
            total = total + abs(c)
        return total

    # -- ring operations (exact) ------------------------------------------

    def _require_same_basis(self, other: "DyadicPoly") -> None:
        if self.basis != other.basis and not (self.is_zero() or other.is_zero()):
            raise DomainError("mixed-basis arithmetic; convert first")

    def __add__(self, other: "DyadicPoly") -> "DyadicPoly":
        self._require_same_basis(other)
        basis = other.basis if self.is_zero() else self.basis
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [ZERO] * (n - len(self.coeffs))
        b = list(other.coeffs) + [ZERO] * (n - len(other.coeffs))
        return DyadicPoly([x + y for x, y in zip(a, b)], basis)

    def __neg__(self) -> "DyadicPoly":
        return DyadicPoly([-c for c in self.coeffs], self.basis)

    def __sub__(self, other: "DyadicPoly") -> "DyadicPoly":
        return self + (-other)

    def __mul__(self, other: "DyadicPoly") -> "DyadicPoly":
        self._require_same_basis(other)
        if self.is_zero() or other.is_zero():
            return DyadicPoly([], self.basis)
        out = [ZERO] * (len(self.coeffs) + len(other.coeffs) - 1)
        if self.basis == MONOMIAL:
            for i, a in enumerate(self.coeffs):
                if a.is_zero():
                    continue
                for j, b in enumerate(other.coeffs):
                    out[i + j] = out[i + j] + a * b
            return DyadicPoly(out, MONOMIAL)
        # chebyshev: T_i T_j = (T_{i+j} + T_{|i-j|}) / 2, exactly
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                half = (a * b).scale2(-1)
                out[i + j] = out[i + j] + half
                out[abs(i - j)] = out[abs(i - j)] + half
        return DyadicPoly(out, CHEBYSHEV)

    def scale(self, c: Dyadic) -> "DyadicPoly":
        return DyadicPoly([c * a for a in self.coeffs], self.basis)

    # -- calculus (exact in both bases) ------------------------------------

    def derivative(self) -> "DyadicPoly":
        if self.degree <= 0:
            return DyadicPoly([], self.basis)
        if self.basis == MONOMIAL:
            return DyadicPoly([self.coeffs[i].mul_int(i)
                               for i in range(1, len(self.coeffs))], MONOMIAL)
        m = self.degree
        d = [ZERO] * (m + 1)
        # d_{k-1} = d_{k+1} + 2k c_k, then halve d_0
        for k in range(m, 0, -1):
            up = d[k + 1] if k + 1 <= m else ZERO
            d[k - 1] = up + self.coeffs[k].mul_int(2 * k)
        d[0] = d[0].scale2(-1)
        return DyadicPoly(d[:m], CHEBYSHEV)

    def antiderivative_coeffs(self) -> list[Fraction]:
        """Exact rational coefficients of an antiderivative, same basis."""
        if self.basis == MONOMIAL:
            out = [Fraction(0)]
            for i, c in enumerate(self.coeffs):
                out.append(c.to_fraction() / (i + 1))
            return out
        # int T_0 = T_1, int T_1 = T_2/4, int T_k = T_{k+1}/(2(k+1)) - T_{k-1}/(2(k-1))
        if self.is_zero():
            return [Fraction(0)]
        m = self.degree
        c = [x.to_fraction() for x in self.coeffs]

        def cf(k: int) -> Fraction:
            return c[k] if 0 <= k <= m else Fraction(0)

        A = [Fraction(0)] * (m + 2)
        A[1] = cf(0) - cf(2) / 2
        for k in range(2, m + 2):
            A[k] = (cf(k - 1) - cf(k + 1)) / (2 * k)
        return A

    # -- certified evaluation ----------------------------------------------

    def eval_point(self, x: Dyadic, n: int) -> Dyadic:
        """Value at |x| <= 1 within 2**-n."""
        if abs(x) > Dyadic(1):
            raise DomainError("eval_point requires |x| <= 1")
        if self.is_zero():
            return ZERO
        d = self.degree
        if self.basis == MONOMIAL:
            W = n + _bitlen(d + 1) + 3
            acc = ZERO
            for c in reversed(self.coeffs):
                acc = (acc * x + c).round_nearest(W)
            return acc.round_nearest(n + 2)
        W = n + 2 * _bitlen(d + 2) + 3
        b1 = ZERO
        b2 = ZERO
        two_x = x.scale2(1)
        for k in range(d, 0, -1):
            b1, b2 = (two_x * b1 - b2 + self.coeffs[k]).round_nearest(W), b1
        val = x * b1 - b2 + self.coeffs[0]
        return val.round_nearest(n + 2)

    def eval_fraction(self, x: Fraction) -> Fraction:
        """Exact rational evaluation (slow; for tests and small polynomials)."""
        if self.is_zero():
            return Fraction(0)
        if self.basis == MONOMIAL:
            acc = Fraction(0)
            for c in reversed(self.coeffs):
                acc = acc * x + c.to_fraction()
            return acc
        b1 = Fraction(0)
        b2 = Fraction(0)
        for k in range(self.degree, 0, -1):
            b1, b2 = 2 * x * b1 - b2 + self.coeffs[k].to_fraction(), b1
        return x * b1 - b2 + self.coeffs[0].to_fraction()


def zero_poly() -> DyadicPoly:
    return DyadicPoly([], MONOMIAL)


# ---------------------------------------------------------------------------
# Chebyshev polynomials, nodes and interpolation
# ---------------------------------------------------------------------------


def cheb_poly(m: int) -> DyadicPoly:
    """T_m with exact integer coefficients (monomial basis)."""
    if m < 0:
        raise DomainError("Chebyshev index must be >= 0")
    if m == 0:
        return DyadicPoly([Dyadic(1)], MONOMIAL)
    prev = DyadicPoly([Dyadic(1)], MONOMIAL)
    cur = DyadicPoly([ZERO, Dyadic(1)], MONOMIAL)
    for _ in range(m - 1):
        shifted = DyadicPoly([ZERO] + [c.scale2(1) for c in cur.coeffs], MONOMIAL)
        prev, cur = cur, shifted - prev
    return cur


def basis_convert(p: DyadicPoly, target: str) -> DyadicPoly:
    """Exact change of basis between monomial and Chebyshev."""
    if target not in (MONOMIAL, CHEBYSHEV):
        raise DomainError(f"unknown basis {target!r}")
    if p.basis == target or p.is_zero():
        return DyadicPoly(p.coeffs, target)
    if target == MONOMIAL:
        out = [ZERO] * (p.degree + 1)
        for k, c in enumerate(p.coeffs):
            if c.is_zero():
                continue
            for i, t in enumerate(cheb_poly(k).coeffs):
                out[i] = out[i] + c * t
        return DyadicPoly(out, MONOMIAL)
    # monomial -> chebyshev: Horner with multiply-by-x in Chebyshev space,
    # using x T_k = (T_{k+1} + T_{k-1}) / 2
    acc: list[Dyadic] = []
    for c in reversed(p.coeffs):
        nxt = [ZERO] * (len(acc) + 1)
        for k, a in enumerate(acc):
            if a.is_zero():
                continue
            half = a.scale2(-1)
            if k == 0:
                nxt[1] = nxt[1] + a
            else:
                nxt[k + 1] = nxt[k + 1] + half
                nxt[k - 1] = nxt[k - 1] + half
        if nxt:
            nxt[0] = nxt[0] + c
            acc = nxt
        else:
            acc = [c]
    return DyadicPoly(acc, CHEBYSHEV)


def cheb_node_angle(m: int, j: int) -> Fraction:
    """x_{m,j} = cos(pi * (2j+1) / (2m)); this returns the angle fraction."""
    if not 0 <= j < m:
        raise DomainError("node index out of range")
    return Fraction(2 * j + 1, 2 * m)


def cheb_node(m: int, j: int) -> RealName:
    t = cheb_node_angle(m, j)
    return RealName(lambda n: cos_pi_frac(t, n + 1).mid().round_nearest(n),
                    tag=f"chebnode({m},{j})")


def cheb_nodes(m: int) -> list[RealName]:
    """The m Chebyshev nodes, strictly decreasing, all in (-1, 1)."""
    return [cheb_node(m, j) for j in range(m)]


def _scaled(x: Dyadic, W: int) -> int:
    shift = W + x.e
    if shift >= 0:
        return x.m << shift
    return x.m >> (-shift)


def _cos_table(m: int, W: int) -> list[int]:
    """cos(pi s / (2m)) for s in [0, 4m), as integers scaled by 2**W;
    each entry within 2 ulps.  Only the first quadrant is computed, the
    rest follows from cos(pi - t) = -cos t and cos(2 pi - t) = cos t."""
    half = 2 * m
    table = [0] * (4 * m)
    for s in range(0, m + 1):
        table[s] = _scaled(cos_pi_frac(Fraction(s, half), W + 2).mid(), W)
    for s in range(m + 1, half + 1):
        table[s] = -table[half - s]
    for s in range(half + 1, 4 * m):
        table[s] = table[4 * m - s]
    return table


def cheb_interpolate(samples: Sequence[tuple[Dyadic, Dyadic]], m: int, n: int) -> DyadicPoly:
    """Chebyshev interpolation coefficients from samples at the m nodes.

    ``samples[j]`` is (approximate node x_{m,j}, approximate f(x_{m,j}))
    with the value accurate to 2**-(n + ceil(log2 m) + 4).  Returns the
    interpolant in the Chebyshev basis; the rounding added on top of the
    mathematical interpolation error stays below 2**-n.
    """
    if len(samples) != m:
        raise DomainError(f"expected {m} samples, got {len(samples)}")
    if m == 0:
        return zero_poly()
    lm = _bitlen(m)
    fbound = max((abs(v) for _, v in samples), default=ZERO)
    W = n + lm + _bitlen(fbound.ceil_int() + 2) + 10
    table = _cos_table(m, W)
    fs = [_scaled(v, W) for _, v in samples]
    out = []
    fourm = 4 * m
    for k in range(m):
        acc = 0
        for j in range(m):
            acc += fs[j] * table[(k * (2 * j + 1)) % fourm]
        weight = 1 if k == 0 else 2
        yk = Dyadic(weight * acc // m, -2 * W)
        out.append(yk.round_nearest(n + lm + 4))
    return DyadicPoly(out, CHEBYSHEV)


def sample_at_cheb_nodes(eval_fn, m: int, n: int) -> list[tuple[Dyadic, Dyadic]]:
    """Query an evaluation oracle (x, prec) -> Dyadic at the m nodes at the
    precision budget cheb_interpolate expects for target n."""
    p = n + _bitlen(m) + 4
    out = []
    for j in range(m):
        x = cheb_node(m, j).query(p)
        out.append((x, eval_fn(x, p)))
    return out


# ---------------------------------------------------------------------------
# rigorous bounds
# ---------------------------------------------------------------------------


def markov_bound(p: DyadicPoly, k: int) -> Dyadic:
    """Upper bound for sup |p^(k)| on [-1,1] via iterated Markov:
    each differentiation of a degree-m polynomial costs a factor m^2."""
    if k < 0:
        raise DomainError("derivative order must be >= 0")
    if p.is_zero():
        return ZERO
    bound = p.coeff_norm()
    m = p.degree
    for i in range(k):
        deg = m - i
        if deg <= 0:
            return ZERO
        bound = bound.mul_int(deg * deg)
    return bound


def poly_lipschitz(p: DyadicPoly) -> Dyadic:
    return markov_bound(p, 1)


def integrate_poly(p: DyadicPoly, a: Dyadic, b: Dyadic, n: int) -> Dyadic:
    """integral of p over [a, b] within 2**-n, for [a,b] inside [-1,1]."""
    if p.is_zero():
        return ZERO
    A = p.antiderivative_coeffs()
    W = n + _bitlen(len(A) + 1) + 4
    F = DyadicPoly([fraction_to_dyadic(c, W) for c in A], p.basis)
    return (F.eval_point(b, n + 3) - F.eval_point(a, n + 3)).round_nearest(n + 2)


# ---------------------------------------------------------------------------
# certified maximizer
# ---------------------------------------------------------------------------


def _iter_cap(default: int = 200_000) -> int:
    env = os.environ.get("ANACALC_ITER_CAP")
    if env:
        try:
            return max(64, int(env))
        except ValueError:
            pass
    return default


class _MaxState:
    __slots__ = ("p", "dp", "ddp", "m2", "m3", "W", "evals", "cap")

    def __init__(self, p: DyadicPoly, n: int, cap: int):
        self.p = p
        self.dp = p.derivative()
        self.ddp = self.dp.derivative()
        # sup-norm bounds for p'', p''' on [-1,1]: coefficient norms of the
        # exact derivatives are far tighter than iterated Markov for
        # decaying coefficients; keep whichever is smaller.
        self.m2 = min(markov_bound(p, 2), self.ddp.coeff_norm())
        self.m3 = min(markov_bound(p, 3), self.ddp.derivative().coeff_norm())
        norm_bits = _bitlen(min(markov_bound(p, 1),
                                self.dp.coeff_norm()).ceil_int() + 1)
        self.W = n + 2 * _bitlen(p.degree + 2) + norm_bits + 12
        self.evals = 0
        self.cap = cap

    def _ev(self, q: DyadicPoly, x: Dyadic) -> Dyadic:
        self.evals += 1
        if self.evals > self.cap:
            raise ResourceError("poly_max iteration cap exhausted")
        return q.eval_point(x, self.W)

    def f(self, x):
        return self._ev(self.p, x)

    def f1(self, x):
        return self._ev(self.dp, x)

    def f2(self, x):
        return self._ev(self.ddp, x)


def _dy_div(a: Dyadic, b: Dyadic, n: int) -> Dyadic:
    fr = a.to_fraction() / b.to_fraction()
    return fraction_to_dyadic(fr, n)


def poly_max_enclosure(p: DyadicPoly, a: Dyadic, b: Dyadic, n: int,
                       iter_cap: int | None = None) -> DyInterval:
    """Certified enclosure of max{p(x): a <= x <= b} of width <= 2**-n.

    [a, b] must lie inside [-1, 1].  Deterministic: cells are explored
    best-upper-bound first with leftmost tie-breaking.
    """
    if a > b:
        raise DomainError("empty interval")
    if abs(a) > Dyadic(1) or abs(b) > Dyadic(1):
        raise DomainError("poly_max works inside [-1, 1]")
    if p.is_zero():
        return DyInterval.point(ZERO)
    st = _MaxState(p, n, iter_cap if iter_cap is not None else _iter_cap())
    tol = pow2(-n - 1)
    eps = pow2(-st.W + 1)
    import heapq

    best = ZERO  # adjusted below; certified lower bound for the max
    counter = 0
    heap: list[tuple] = []

    def note(v: Dyadic) -> None:
        nonlocal best
        if v > best:
            best = v

    def point_lb(x: Dyadic) -> Dyadic:
        return st.f(x) - eps

    def push(lo: Dyadic, hi: Dyadic) -> None:
        nonlocal counter
        c = (lo + hi).scale2(-1)
        w = (hi - lo).scale2(-1)
        fc = st.f(c)
        note(fc - eps)
        ub = fc + abs(st.f1(c)) * w + st.m2 * w * w + eps
        counter += 1
        heapq.heappush(heap, (-ub.to_fraction(), lo.to_fraction(), counter, lo, hi, ub))

    def deriv_range(lo: Dyadic, hi: Dyadic) -> DyInterval:
        c = (lo + hi).scale2(-1)
        w = (hi - lo).scale2(-1)
        d1 = st.f1(c)
        rad = abs(st.f2(c)) * w + st.m3 * w * w + eps
        return DyInterval(d1 - rad, d1 + rad)

    def second_negative(lo: Dyadic, hi: Dyadic) -> bool:
        c = (lo + hi).scale2(-1)
        d2 = st.f2(c)
        rad = st.m3 * (hi - lo) + eps
        return (d2 + rad).sign < 0

    def refine_concave(lo: Dyadic, hi: Dyadic, va: Dyadic, vb: Dyadic) -> None:
        """Certified p'(lo) > 0 > p'(hi), p'' < 0 on [lo, hi]: close the
        bracket around the unique interior maximum until its contribution
        is below tol.  Only updates `best`; the residual slack stays below
        tol by the loop condition, so the cell needs no heap entry."""
        steps = 0
        while True:
            steps += 1
            if steps > st.cap:
                raise ResourceError("poly_max refinement cap exhausted")
            width = hi - lo
            c = (lo + hi).scale2(-1)
            note(st.f(c) - eps)
            slack = (max(abs(va), abs(vb)) + eps) * width + eps.scale2(2)
            if slack <= tol.scale2(-1):
                # max over cell <= p(c) + slack <= best + tol
                return
            if steps % 2 == 0:
                t = c
            else:
                d2c = st.f2(c)
                if d2c.sign >= 0:
                    t = c
                else:
                    t = c - _dy_div(st.f1(c), d2c, st.W)
                    margin = width.scale2(-4)
                    t = max(lo + margin, min(hi - margin, t)).round_nearest(st.W)
                    if t <= lo or t >= hi:
                        t = c
            vt = st.f1(t)
            if abs(vt) <= eps:
                # p' monotone with |p'(t)| <= 2 eps: between t and the root
                # |p'| <= 2 eps, so max <= p(t) + 2 eps width <= best + tol
                note(st.f(t) - eps)
                return
            if vt.sign > 0:
                lo, va = t, vt
            else:
                hi, vb = t, vt

    best = max(point_lb(a), point_lb(b))
    if a == b:
        return DyInterval(best, best + eps.scale2(1))
    # coarse seeding scan: a strong early lower bound lets flat regions
    # prune on their first visit (narrow-spike instances)
    seeds = 32
    step = ((b - a).to_fraction()) / seeds
    for i in range(1, seeds):
        x = fraction_to_dyadic(a.to_fraction() + i * step, st.W)
        if a < x < b:
            v = point_lb(x)
            if v > best:
                best = v
    push(a, b)

    # Loop invariant: the true maximum is <= max(best + tol, top-of-heap ub),
    # and every resolved (non-heap) region contributes <= best + tol.
    while heap:
        _, _, _, lo, hi, ub = heapq.heappop(heap)
        if ub <= best + tol:
            break  # heap is ub-ordered: all remaining cells are below ub
        dr = deriv_range(lo, hi)
        if dr.lo.sign >= 0:
            note(point_lb(hi))
            continue
        if dr.hi.sign <= 0:
            note(point_lb(lo))
            continue
        va, vb = st.f1(lo), st.f1(hi)
        if va.sign > 0 and vb.sign < 0 and abs(va) > eps and abs(vb) > eps \
                and second_negative(lo, hi):
            refine_concave(lo, hi, va, vb)
            continue
        mid = ((lo + hi).scale2(-1)).round_nearest(st.W)
        if mid <= lo or mid >= hi:
            continue  # unsplittable at working precision; ub ~ f(mid) + eps-scale
        push(lo, mid)
        push(mid, hi)

    return DyInterval(best, best + tol)


def poly_max(p: DyadicPoly, u, v, n: int, iter_cap: int | None = None) -> Dyadic:
    """max of p over [min(u,v), max(u,v)] within 2**-n (u, v names or dyadics)."""
    lip = poly_lipschitz(p)
    m = n + 3 + _bitlen(lip.ceil_int() + 1)
    ua = u.query(m) if isinstance(u, RealName) else u
    va = v.query(m) if isinstance(v, RealName) else v
    one = Dyadic(1)
    lo = max(min(ua, va), -one)
    hi = min(max(ua, va), one)
    if lo > hi:
        lo = hi
    box = poly_max_enclosure(p, lo, hi, n + 2, iter_cap)
    return box.mid().round_nearest(n + 3)
