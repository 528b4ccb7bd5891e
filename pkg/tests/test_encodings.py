import random

import pytest
from hypothesis import given, strategies as st

from anacalc.encodings import (
    PairIndex,
    bin_decode,
    bin_encode,
    cantor_pair,
    cantor_unpair,
    check_length_monotone,
    hex_dump,
    pad_table_length_monotone,
    unwrap_advice,
    wrap_advice,
)
from anacalc.errors import DecodeError, DomainError

words = st.text(alphabet="01", max_size=64)


def test_bin_decode_known_values():
    assert bin_decode("0") == 0
    assert bin_decode("1") == 1
    assert bin_decode("11") == 3
    assert bin_decode("10") == 2
    assert bin_decode("01") == -2
    assert bin_decode("00") == -1


def test_bin_encode_known_values():
    assert bin_encode(0) == "0"
    assert bin_encode(3) == "11"
    assert bin_encode(-2) == "01"
    assert bin_encode(1) == "1"


def test_bin_empty_word_rejected():
    with pytest.raises(DomainError):
        bin_decode("")


def test_bin_bijective_small_exhaustive():
    seen = {}
    for z in range(-(1 << 12), (1 << 12) + 1):
        w = bin_encode(z)
        assert bin_decode(w) == z
        assert w not in seen
        seen[w] = z


def test_bin_roundtrip_random_256bit():
    rng = random.Random(7)
    for _ in range(200):
        z = rng.getrandbits(256) - (1 << 255)
        assert bin_decode(bin_encode(z)) == z


@given(st.integers())
def test_bin_roundtrip_property(z):
    assert bin_decode(bin_encode(z)) == z


def test_cantor_known_values():
    assert cantor_pair(0, 0) == 0
    assert cantor_pair(0, 1) == 1
    assert cantor_pair(1, 0) == 2


def test_cantor_injective_on_grid():
    seen = {}
    for n in range(0, 129):
        for j in range(0, 129):
            p = cantor_pair(n, j)
            assert p not in seen
            seen[p] = (n, j)
            assert cantor_unpair(p) == (n, j)


def test_pair_index_dataclass():
    pi = PairIndex.pack(3, 5)
    assert PairIndex.unpack(pi.packed) == pi
    with pytest.raises(DomainError):
        PairIndex(1, 1, 0)


def test_wrap_advice_unary_shape():
    assert wrap_advice("101", 3, "unary") == "1110" + "101"
    assert wrap_advice("101", 0, "unary") == "0" + "101"


def test_wrap_advice_binary_roundtrip():
    w = "0110"
    wrapped = wrap_advice(w, 5, "binary")
    assert unwrap_advice(wrapped, "binary") == (w, 5)


@given(words, st.integers(min_value=0, max_value=1024), st.sampled_from(["unary", "binary"]))
def test_wrap_roundtrip_property(payload, ell, mode):
    assert unwrap_advice(wrap_advice(payload, ell, mode), mode) == (payload, ell)


def test_unwrap_malformed():
    with pytest.raises(DecodeError):
        unwrap_advice("111", "unary")
    with pytest.raises(DecodeError):
        unwrap_advice("1", "binary")
    with pytest.raises(DecodeError):
        unwrap_advice("10", "binary")  # advice bits then no terminator/payload split
    with pytest.raises(DecodeError):
        unwrap_advice("", "binary")


def test_length_monotone_constant_table():
    table = {w: "111" for w in ["", "0", "1", "00", "01", "10", "11"]}
    assert check_length_monotone(table)


def test_length_monotone_violation():
    assert not check_length_monotone({"0": "11", "11": "1"})


def test_length_monotone_same_length_disagreement():
    assert not check_length_monotone({"0": "1", "1": "11"})


def test_padded_table_is_length_monotone():
    rng = random.Random(3)
    table = {}
    for k in range(6):
        for i in range(1 << k):
            w = format(i, "b").zfill(k) if k else ""
            out = "".join(rng.choice("01") for _ in range(rng.randrange(0, 8)))
            table[w] = wrap_advice(out, rng.randrange(0, 4), "binary")
    padded = pad_table_length_monotone(table)
    assert check_length_monotone(padded)


def test_hex_dump_shape():
    lines = hex_dump("1" * 20)
    assert len(lines) == 1
    assert lines[0].endswith("len=20")
