"""Arbitrary-precision dyadic arithmetic and precision-query names.

A dyadic rational is kept as ``mantissa * 2**exponent`` with odd mantissa
(or mantissa 0, exponent 0), so equality is structural and +, -, * are
exact.  Real and complex quantities are represented by *names*: oracles
answering a precision query ``n`` with a dyadic within ``2**-n`` of the
true value.  Names memoize their answers; repeat queries must return the
identical dyadic, which also makes them safe for concurrent use.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable

from .errors import DomainError


def _canonical(m: int, e: int) -> tuple[int, int]:
    if m == 0:
        return 0, 0
    t = (m & -m).bit_length() - 1
    if t:
        m >>= t
        e += t
    return m, e


class Dyadic:
    """Immutable dyadic rational ``m * 2**e`` in canonical form."""

    __slots__ = ("m", "e")

    def __init__(self, m: int, e: int = 0):
        m, e = _canonical(m, e)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "e", e)

    def __setattr__(self, *a):
        raise AttributeError("Dyadic is immutable")

    # -- constructors -----------------------------------------------------

    @staticmethod
    def from_fraction(fr: Fraction) -> "Dyadic":
        """Exact conversion; the denominator must be a power of two."""
        den = fr.denominator
        e = 0
        while den % 2 == 0:
            den //= 2
            e += 1
        if den != 1:
            raise DomainError(f"{fr} is not dyadic")
        return Dyadic(fr.numerator, -e)

    @staticmethod
    def parse(text: str) -> "Dyadic":
        """Parse the literal format ``m*2^e`` (plain integers allowed)."""
        s = text.strip().replace(" ", "")
        if "*2^" in s:
            ms, es = s.split("*2^", 1)
            return Dyadic(int(ms), int(es))
        return Dyadic(int(s))

    # -- exact arithmetic --------------------------------------------------

    def __add__(self, other: "Dyadic") -> "Dyadic":
        e = min(self.e, other.e)
        return Dyadic((self.m << (self.e - e)) + (other.m << (other.e - e)), e)

    def __sub__(self, other: "Dyadic") -> "Dyadic":
        e = min(self.e, other.e)
        return Dyadic((self.m << (self.e - e)) - (other.m << (other.e - e)), e)

    def __mul__(self, other: "Dyadic") -> "Dyadic":
        return Dyadic(self.m * other.m, self.e + other.e)

    def __neg__(self) -> "Dyadic":
        return Dyadic(-self.m, self.e)

    def __abs__(self) -> "Dyadic":
        return Dyadic(abs(self.m), self.e)

    def scale2(self, k: int) -> "Dyadic":
        """Exact multiplication by ``2**k``."""
        if self.m == 0:
            return self
        return Dyadic(self.m, self.e + k)

    def mul_int(self, k: int) -> "Dyadic":
        return Dyadic(self.m * k, self.e)

    # -- comparisons (exact) ------------------------------------------------

    def _cmp(self, other: "Dyadic") -> int:
        e = min(self.e, other.e)
        a = self.m << (self.e - e)
        b = other.m << (other.e - e)
        return (a > b) - (a < b)

    def __eq__(self, other) -> bool:
        return isinstance(other, Dyadic) and self.m == other.m and self.e == other.e

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __hash__(self):
        return hash((self.m, self.e))

    @property
    def sign(self) -> int:
        return (self.m > 0) - (self.m < 0)

    def is_zero(self) -> bool:
        return self.m == 0

    # -- rounding ------------------------------------------------------------

    def round_nearest(self, n: int) -> "Dyadic":
        """Round onto the grid ``2**-(n+1)``, nearest, ties to even.

        The result satisfies ``|result - self| <= 2**-(n+2)`` and has
        exponent >= -(n+1); values already on the grid are unchanged.
        """
        shift = -(self.e + n + 1)
        if self.m == 0 or shift <= 0:
            return self
        q = self.m >> shift
        rem = self.m & ((1 << shift) - 1)
        half = 1 << (shift - 1)
        if rem > half or (rem == half and q % 2 == 1):
            q += 1
        return Dyadic(q, -(n + 1))

    def round_floor(self, n: int) -> "Dyadic":
        """Largest grid-``2**-n`` point <= self."""
        shift = -(self.e + n)
        if self.m == 0 or shift <= 0:
            return self
        return Dyadic(self.m >> shift, -n)

    def round_ceil(self, n: int) -> "Dyadic":
        shift = -(self.e + n)
        if self.m == 0 or shift <= 0:
            return self
        return Dyadic(-((-self.m) >> shift), -n)

    def floor_int(self) -> int:
        if self.e >= 0:
            return self.m << self.e
        return self.m >> (-self.e)

    def ceil_int(self) -> int:
        return -((-self).floor_int())

    # -- conversions ----------------------------------------------------------

    def to_fraction(self) -> Fraction:
        if self.e >= 0:
            return Fraction(self.m << self.e)
        return Fraction(self.m, 1 << (-self.e))

    def __float__(self) -> float:
        try:
            return self.m * 2.0 ** self.e
        except OverflowError:
            return float(self.to_fraction())

    def bit_magnitude(self) -> int:
        """Smallest k with |self| <= 2**k (0 for self == 0)."""
        if self.m == 0:
            return 0
        k = abs(self.m).bit_length() + self.e
        if abs(self.m) == 1 << (abs(self.m).bit_length() - 1):
            k -= 1
        return k

    def literal(self) -> str:
        return f"{self.m}*2^{self.e}"

    def decimal(self, digits: int = 20) -> str:
        fr = self.to_fraction()
        if fr.denominator == 1:
            return str(fr.numerator)
        scaled = fr * Fraction(10 ** digits)
        q = round(scaled)
        sign = "-" if q < 0 else ""
        q = abs(q)
        intpart, fracpart = divmod(q, 10 ** digits)
        return f"{sign}{intpart}.{str(fracpart).zfill(digits).rstrip('0') or '0'}"

    def __repr__(self):
        return f"Dyadic({self.m}, {self.e})"

    def __str__(self):
        return self.literal()


ZERO = Dyadic(0)
ONE = Dyadic(1)


def pow2(k: int) -> Dyadic:
    """2**k as a dyadic."""
    return Dyadic(1, k)


def rational_to_dyadic(p: int, q: int, n: int) -> Dyadic:
    """p/q on the grid 2**-(n+1), nearest, ties to even; error <= 2**-(n+2)."""
    if q == 0:
        raise DomainError("zero denominator")
    if q < 0:
        p, q = -p, -q
    num = p << (n + 1)
    quot, rem = divmod(num, q)
    # divmod with q > 0 leaves 0 <= rem < q
    if 2 * rem > q or (2 * rem == q and quot % 2 == 1):
        quot += 1
    return Dyadic(quot, -(n + 1))


def fraction_to_dyadic(fr: Fraction, n: int) -> Dyadic:
    return rational_to_dyadic(fr.numerator, fr.denominator, n)


# ---------------------------------------------------------------------------
# dyadic intervals
# ---------------------------------------------------------------------------


class DyInterval:
    """Closed interval with dyadic endpoints; all operations are outward."""

    __slots__ = ("lo", "hi")

    def __init__(self, lo: Dyadic, hi: Dyadic):
        if lo > hi:
            raise DomainError("interval endpoints out of order")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)

    def __setattr__(self, *a):
        raise AttributeError("DyInterval is immutable")

    @staticmethod
    def point(x: Dyadic) -> "DyInterval":
        return DyInterval(x, x)

    def __add__(self, other: "DyInterval") -> "DyInterval":
        return DyInterval(self.lo + other.lo, self.hi + other.hi)

    def __sub__(self, other: "DyInterval") -> "DyInterval":
        return DyInterval(self.lo - other.hi, self.hi - other.lo)

    def __neg__(self) -> "DyInterval":
        return DyInterval(-self.hi, -self.lo)

    def __mul__(self, other: "DyInterval") -> "DyInterval":
        cands = [self.lo * other.lo, self.lo * other.hi,
                 self.hi * other.lo, self.hi * other.hi]
        return DyInterval(min(cands), max(cands))

    def outward(self, n: int) -> "DyInterval":
        """Round endpoints outward onto the grid 2**-n."""
        return DyInterval(self.lo.round_floor(n), self.hi.round_ceil(n))

    def width(self) -> Dyadic:
        return self.hi - self.lo

    def mid(self) -> Dyadic:
        return (self.lo + self.hi).scale2(-1)

    def mag(self) -> Dyadic:
        """max |x| over the interval."""
        return max(abs(self.lo), abs(self.hi))

    def contains(self, x: Dyadic) -> bool:
        return self.lo <= x <= self.hi

    def strictly_positive(self) -> bool:
        return self.lo.sign > 0

    def strictly_negative(self) -> bool:
        return self.hi.sign < 0

    def __repr__(self):
        return f"DyInterval({self.lo!r}, {self.hi!r})"


# ---------------------------------------------------------------------------
# names: precision-query oracles
# ---------------------------------------------------------------------------


class RealName:
    """Oracle for a real number: query(n) is within 2**-n of the value.

    Answers are memoized, so a name is deterministic and reentrant; a
    derived name holds references to its parents and stays valid while
    they are alive.
    """

    def __init__(self, query: Callable[[int], Dyadic], tag: str | None = None):
        self._query = query
        self._memo: dict[int, Dyadic] = {}
        self.tag = tag

    def query(self, n: int) -> Dyadic:
        if n < 0:
            raise DomainError("precision must be >= 0")
        got = self._memo.get(n)
        if got is None:
            got = self._query(n)
            self._memo[n] = got
        return got

    # constructors

    @staticmethod
    def from_dyadic(x: Dyadic, tag: str | None = None) -> "RealName":
        return RealName(lambda n: x, tag=tag)

    @staticmethod
    def from_int(k: int) -> "RealName":
        return RealName.from_dyadic(Dyadic(k))

    @staticmethod
    def from_rational(p: int, q: int) -> "RealName":
        if q == 0:
            raise DomainError("zero denominator")
        return RealName(lambda n: rational_to_dyadic(p, q, n), tag=f"{p}/{q}")

    @staticmethod
    def from_fraction(fr: Fraction) -> "RealName":
        return RealName.from_rational(fr.numerator, fr.denominator)

    # derived names

    def add(self, other: "RealName") -> "RealName":
        return RealName(lambda n: (self.query(n + 1) + other.query(n + 1)).round_nearest(n))

    def sub(self, other: "RealName") -> "RealName":
        return RealName(lambda n: (self.query(n + 1) - other.query(n + 1)).round_nearest(n))

    def neg(self) -> "RealName":
        return RealName(lambda n: -self.query(n))

    def scale2(self, k: int) -> "RealName":
        """Exact scaling by 2**k."""
        return RealName(lambda n: self.query(max(0, n + k)).scale2(k))

    def mul_dyadic(self, c: Dyadic) -> "RealName":
        if c.is_zero():
            return RealName.from_dyadic(ZERO)
        shift = c.bit_magnitude()
        return RealName(lambda n: (self.query(n + shift + 1) * c).round_nearest(n))


class ComplexName:
    """Pair of real names for the real and imaginary parts."""

    def __init__(self, re: RealName, im: RealName):
        self.re = re
        self.im = im

    def query(self, n: int) -> tuple[Dyadic, Dyadic]:
        return self.re.query(n), self.im.query(n)

    @staticmethod
    def from_real(x: RealName) -> "ComplexName":
        return ComplexName(x, RealName.from_dyadic(ZERO))

    @staticmethod
    def from_dyadic(re: Dyadic, im: Dyadic = ZERO) -> "ComplexName":
        return ComplexName(RealName.from_dyadic(re), RealName.from_dyadic(im))


class SeqName:
    """Oracle for a complex sequence: query(j, n) -> (re, im) within 2**-n.

    Componentwise guarantee: each part is within 2**-n of the true part.
    """

    def __init__(self, query: Callable[[int, int], tuple[Dyadic, Dyadic]],
                 tag: str | None = None):
        self._query = query
        self._memo: dict[tuple[int, int], tuple[Dyadic, Dyadic]] = {}
        self.tag = tag

    def query(self, j: int, n: int) -> tuple[Dyadic, Dyadic]:
        if j < 0 or n < 0:
            raise DomainError("index and precision must be >= 0")
        key = (j, n)
        got = self._memo.get(key)
        if got is None:
            got = self._query(j, n)
            self._memo[key] = got
        return got

    @staticmethod
    def from_real_function(fn: Callable[[int, int], Dyadic], tag: str | None = None) -> "SeqName":
        return SeqName(lambda j, n: (fn(j, n), ZERO), tag=tag)

    @staticmethod
    def from_fractions(fn: Callable[[int], Fraction], tag: str | None = None) -> "SeqName":
        """Sequence given by exact rationals, rounded per query."""
        return SeqName(lambda j, n: (fraction_to_dyadic(fn(j), n), ZERO), tag=tag)
