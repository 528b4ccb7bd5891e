"""Certified enclosures of transcendental expressions.

Thin wrapper around ``mpmath.iv`` (outward-rounded interval arithmetic)
that converts endpoints exactly into dyadics, so every constant the
library emits (pi, e, ln 2, fractional powers of two, Chebyshev nodes,
parameter formulas with e/pi in them) is a true enclosure with directed
rounding.  Builders receive the interval context and return one interval
value; precision escalates until the requested certificate holds.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Callable

import mpmath

from .dyadic import Dyadic, DyInterval, RealName
from .errors import ResourceError

_iv = mpmath.iv

Builder = Callable[[object], object]


def _raw_to_dyadic(raw) -> Dyadic:
    sign, man, exp, bc = raw
    man = int(man)
    if man == 0:
        if exp == 0:
            return Dyadic(0)
        raise ResourceError("non-finite interval endpoint")
    return Dyadic(-man if sign else man, exp)


def compute(build: Builder, prec: int) -> DyInterval:
    """Evaluate a builder at the given working precision."""
    old = _iv.prec
    try:
        _iv.prec = max(prec, 10)
        val = build(_iv)
        a, b = val._mpi_
        return DyInterval(_raw_to_dyadic(a), _raw_to_dyadic(b))
    finally:
        _iv.prec = old


def enclose(build: Builder, n: int, max_prec: int = 1 << 20) -> DyInterval:
    """Enclosure of width <= 2**-n."""
    tol = Dyadic(1, -n)
    prec = n + 20
    while prec <= max_prec:
        box = compute(build, prec)
        if box.width() <= tol:
            return box
        prec *= 2
    raise ResourceError("enclosure did not converge")


def upper_dyadic(build: Builder, n: int) -> Dyadic:
    """Certified upper bound, on the grid 2**-n and within 2**-n+2**-n."""
    return enclose(build, n + 1).hi.round_ceil(n)


def lower_dyadic(build: Builder, n: int) -> Dyadic:
    return enclose(build, n + 1).lo.round_floor(n)


def decided_ceil(build: Builder, start_prec: int = 80, cap: int = 2048) -> int:
    """ceil of the built value; exact when the enclosure decides it,
    otherwise (value indistinguishable from an integer) the sound upper
    choice."""
    prec = start_prec
    while True:
        box = compute(build, prec)
        clo = math.ceil(box.lo.to_fraction())
        chi = math.ceil(box.hi.to_fraction())
        if clo == chi:
            return clo
        if prec >= cap:
            return chi
        prec *= 2


def iv_fraction(ctx, fr: Fraction):
    return ctx.mpf(fr.numerator) / ctx.mpf(fr.denominator)


def iv_dyadic(ctx, x: Dyadic):
    return ctx.mpf(x.m) * ctx.mpf(2) ** x.e


def pow2_frac(exponent: Fraction, n: int) -> DyInterval:
    """Enclosure of 2**exponent for rational exponent."""
    return enclose(lambda ctx: ctx.exp(ctx.log(2) * iv_fraction(ctx, exponent)), n)


def root2_name(k: int) -> RealName:
    """2**(1/k) as a real name."""
    return RealName(lambda n: pow2_frac(Fraction(1, k), n + 1).mid().round_nearest(n),
                    tag=f"2^(1/{k})")


def cos_pi_frac(t: Fraction, n: int) -> DyInterval:
    """Enclosure of cos(pi * t)."""
    return enclose(lambda ctx: ctx.cos(ctx.pi * iv_fraction(ctx, t)), n)


def real_name(build: Builder, tag: str | None = None) -> RealName:
    """Wrap a builder as a RealName delivering 2**-n approximations."""

    def q(n: int) -> Dyadic:
        box = enclose(build, n + 1)
        return box.mid().round_nearest(n + 2)

    return RealName(q, tag=tag)


def sqrt_upper(x: Dyadic, n: int) -> Dyadic:
    """Certified upper bound of sqrt(max(x, 0)) on the grid 2**-n."""
    if x.sign <= 0:
        return Dyadic(0)
    return upper_dyadic(lambda ctx: ctx.sqrt(iv_dyadic(ctx, x)), n)


def sqrt_lower(x: Dyadic, n: int) -> Dyadic:
    if x.sign <= 0:
        return Dyadic(0)
    return lower_dyadic(lambda ctx: ctx.sqrt(iv_dyadic(ctx, x)), n)
