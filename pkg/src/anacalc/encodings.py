"""Bit-exact discrete encodings: the integer bijection on nonempty words,
Cantor pairing, advice-parameter wrapping, and the length-monotonicity
check for string-function tables.

Words are Python strings over {'0','1'}.  A word ``b w_{n-1} ... w_1 w_0``
with leading bit 1 denotes ``2^n + sum w_i 2^i`` (ordinary binary,
most-significant first); with leading bit 0 it denotes one minus that
number, which makes the map a bijection onto the integers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DecodeError, DomainError


def _check_word(w: str) -> None:
    if any(c not in "01" for c in w):
        raise DomainError(f"not a bit word: {w!r}")


def bin_decode(w: str) -> int:
    """Decode a nonempty bit word to an integer."""
    _check_word(w)
    if not w:
        raise DomainError("bin is undefined on the empty word")
    if w[0] == "1":
        return int(w, 2)
    return 1 - int("1" + w[1:], 2)


def bin_encode(z: int) -> str:
    """Inverse of :func:`bin_decode`."""
    if z >= 1:
        return format(z, "b")
    return "0" + format(1 - z, "b")[1:]


def cantor_pair(n: int, j: int) -> int:
    """<n, j> = n + (n+j)(n+j+1)/2."""
    if n < 0 or j < 0:
        raise DomainError("pairing is defined on naturals")
    s = n + j
    return n + s * (s + 1) // 2


def cantor_unpair(packed: int) -> tuple[int, int]:
    if packed < 0:
        raise DomainError("pairing is defined on naturals")
    # largest s with s(s+1)/2 <= packed
    from math import isqrt
    s = (isqrt(8 * packed + 1) - 1) // 2
    n = packed - s * (s + 1) // 2
    return n, s - n


@dataclass(frozen=True)
class PairIndex:
    """A pair (n, j) together with its packed Cantor index."""

    n: int
    j: int
    packed: int

    def __post_init__(self):
        if self.packed != cantor_pair(self.n, self.j):
            raise DomainError("packed index does not match (n, j)")

    @staticmethod
    def pack(n: int, j: int) -> "PairIndex":
        return PairIndex(n, j, cantor_pair(n, j))

    @staticmethod
    def unpack(packed: int) -> "PairIndex":
        n, j = cantor_unpair(packed)
        return PairIndex(n, j, packed)


# ---------------------------------------------------------------------------
# advice wrapping
# ---------------------------------------------------------------------------

UNARY = "unary"
BINARY = "binary"


def _selfdelim_encode(w: str) -> str:
    # 1 b1 1 b2 ... 1 bk 0
    return "".join("1" + c for c in w) + "0"


def _selfdelim_decode(w: str) -> tuple[str, str]:
    out = []
    i = 0
    while True:
        if i >= len(w):
            raise DecodeError("unterminated self-delimited prefix")
        if w[i] == "0":
            return "".join(out), w[i + 1:]
        if i + 1 >= len(w):
            raise DecodeError("dangling marker bit in self-delimited prefix")
        out.append(w[i + 1])
        i += 2


def wrap_advice(payload: str, ell: int, mode: str) -> str:
    """Prefix a payload word with the advice integer ``ell``.

    Unary mode prepends ``1^ell 0``; binary mode prepends the
    self-delimited encoding of ``bin(ell)``.
    """
    _check_word(payload)
    if ell < 0:
        raise DomainError("advice must be a natural number")
    if mode == UNARY:
        return "1" * ell + "0" + payload
    if mode == BINARY:
        return _selfdelim_encode(bin_encode(ell)) + payload
    raise DomainError(f"unknown advice mode {mode!r}")


def unwrap_advice(word: str, mode: str) -> tuple[str, int]:
    """Inverse of :func:`wrap_advice`; returns (payload, ell)."""
    _check_word(word)
    if mode == UNARY:
        i = 0
        while i < len(word) and word[i] == "1":
            i += 1
        if i >= len(word):
            raise DecodeError("missing unary terminator")
        return word[i + 1:], i
    if mode == BINARY:
        advice, payload = _selfdelim_decode(word)
        if not advice:
            raise DecodeError("empty binary advice")
        return payload, bin_decode(advice)
    raise DomainError(f"unknown advice mode {mode!r}")


def check_length_monotone(table: dict[str, str]) -> bool:
    """True iff |v| <= |w| implies |psi(v)| <= |psi(w)| on the table."""
    by_len: dict[int, tuple[int, int]] = {}
    for w, out in table.items():
        _check_word(w)
        _check_word(out)
        lo, hi = by_len.get(len(w), (len(out), len(out)))
        by_len[len(w)] = (min(lo, len(out)), max(hi, len(out)))
    prev_max = None
    for n in sorted(by_len):
        lo, hi = by_len[n]
        if lo != hi:
            return False
        if prev_max is not None and lo < prev_max:
            return False
        prev_max = hi
    return True


def pad_table_length_monotone(table: dict[str, str]) -> dict[str, str]:
    """Pad outputs with a leading ``0^* 1`` so the table becomes
    length-monotone (the padding scheme used for product names)."""
    target: dict[int, int] = {}
    for w, out in table.items():
        target[len(w)] = max(target.get(len(w), 0), len(out))
    running = 0
    for n in sorted(target):
        running = max(running, target[n])
        target[n] = running
    padded = {}
    for w, out in table.items():
        m = target[len(w)]
        padded[w] = "0" * (m - len(out)) + "1" + out
    return padded


def hex_dump(word: str) -> list[str]:
    """Render a bit word as hexadecimal lines (16 bytes per line) for the
    CLI's ``--dump-name`` conformance output."""
    _check_word(word)
    padded = word + "0" * (-len(word) % 8)
    data = bytes(int(padded[i:i + 8], 2) for i in range(0, len(padded), 8))
    lines = []
    for off in range(0, len(data), 16):
        chunk = data[off:off + 16]
        lines.append(f"{off:08x}  {chunk.hex()}  len={len(word)}")
    if not lines:
        lines.append(f"{0:08x}    len={len(word)}")
    return lines
