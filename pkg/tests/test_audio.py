import pytest
from hypothesis import given
from hypothesis import strategies as st

from qaudio.audio import (AudioSignal, conversion_table, decode_twos_complement,
                          encode_twos_complement, int_to_bits, min_resolution, oracle_add,
                          oracle_delay, oracle_invert, oracle_reverse, oracle_reverse_restricted,
                          pad_to_power_of_two, resolution_to_amplitude, time_bits)
from qaudio.errors import RangeError, ShapeError


def weighted_value(bits):
    # independent reading: -b0*2^(q-1) + sum b_i 2^(q-1-i)
    q = len(bits)
    return -bits[0] * 2 ** (q - 1) + sum(b * 2 ** (q - 1 - i) for i, b in enumerate(bits) if i)


@pytest.mark.parametrize("value,q,bits", [(3, 3, (0, 1, 1)), (0, 3, (0, 0, 0)), (-4, 3, (1, 0, 0))])
def test_encode_table_rows(value, q, bits):
    assert encode_twos_complement(value, q) == bits


@pytest.mark.parametrize("bits,value", [((1, 0, 1), -3), ((0, 0, 0), 0), ((1, 0, 0, 0), -8)])
def test_decode(bits, value):
    assert decode_twos_complement(bits) == value
    assert weighted_value(bits) == value


def test_encode_rejects_out_of_range():
    with pytest.raises(RangeError, match=r"\[-4, 3\]"):
        encode_twos_complement(4, 3)


def test_decode_rejects_empty():
    with pytest.raises(ShapeError):
        decode_twos_complement(())


def test_round_trip_exhaustive():
    for q in range(1, 9):
        for v in range(-(1 << (q - 1)), 1 << (q - 1)):
            bits = encode_twos_complement(v, q)
            assert decode_twos_complement(bits) == v
            assert weighted_value(bits) == v


@pytest.mark.parametrize("r,q,amp", [(6, 3, 2), (4, 3, 0), (0, 4, -8)])
def test_resolution_to_amplitude(r, q, amp):
    assert resolution_to_amplitude(r, q) == amp


def test_resolution_to_amplitude_range():
    with pytest.raises(RangeError):
        resolution_to_amplitude(8, 3)


def test_msb_flip_law():
    for q in range(1, 9):
        for r in range(1 << q):
            flipped = list(int_to_bits(r, q))
            flipped[0] ^= 1
            assert encode_twos_complement(resolution_to_amplitude(r, q), q) == tuple(flipped)


def test_conversion_table_q3():
    rows = [(r, "".join(map(str, b)), "".join(map(str, s)), a) for r, b, s, a in conversion_table(3)]
    assert rows == [
        (7, "111", "011", 3), (6, "110", "010", 2), (5, "101", "001", 1), (4, "100", "000", 0),
        (3, "011", "111", -1), (2, "010", "110", -2), (1, "001", "101", -3), (0, "000", "100", -4),
    ]


def test_signal_validation():
    with pytest.raises(RangeError, match=r"indices \[1\]"):
        AudioSignal((0, 4), 3)
    with pytest.raises(ShapeError):
        AudioSignal((), 3)
    with pytest.raises(RangeError):
        AudioSignal((0,), 0)


@pytest.mark.parametrize("L,l", [(1, 1), (2, 1), (3, 2), (8, 3), (13, 4), (16, 4), (17, 5)])
def test_time_bits(L, l):
    assert time_bits(L) == l


def test_pad():
    sig = AudioSignal(tuple(range(-2, 4)) * 2 + (1,), 3)
    padded = pad_to_power_of_two(sig)
    assert sig.L == 13 and padded.L == 16 and padded.l == 4
    assert padded.samples[:13] == sig.samples and padded.samples[13:] == (0, 0, 0)
    eight = AudioSignal(tuple(range(-4, 4)), 3)
    assert pad_to_power_of_two(eight) == eight
    assert pad_to_power_of_two(AudioSignal((1,), 2)).samples == (1, 0)


def test_min_resolution():
    assert min_resolution([0]) == 1
    assert min_resolution([-1]) == 1
    assert min_resolution([1]) == 2
    assert min_resolution([-2, 3]) == 3
    assert min_resolution([-129]) == 9


def test_oracle_add():
    assert oracle_add(AudioSignal((3,), 3), AudioSignal((-2,), 3)) == AudioSignal((1,), 4)
    assert oracle_add(AudioSignal((0, 0), 4), AudioSignal((5, -5), 4)) == AudioSignal((5, -5), 5)
    assert oracle_add(AudioSignal((-4,), 3), AudioSignal((-4,), 3)) == AudioSignal((-8,), 4)
    with pytest.raises(ShapeError):
        oracle_add(AudioSignal((0,), 3), AudioSignal((0,), 4))
    with pytest.raises(ShapeError):
        oracle_add(AudioSignal((0, 0), 3), AudioSignal((0, 0, 0, 0), 3))


def test_oracle_invert():
    assert oracle_invert(AudioSignal((3, -1, 0), 3)).samples == (-3, 1, 0)
    assert oracle_invert(AudioSignal((0, 0, 0), 3)).samples == (0, 0, 0)
    assert oracle_invert(AudioSignal((-4,), 3)).samples == (-4,)


def test_oracle_delay():
    x = AudioSignal(tuple(range(-4, 4)), 3)
    assert oracle_delay(x, 2).samples == (0, 0, -4, -3, -2, -1, 0, 1)
    assert oracle_delay(x, 0) == x
    assert oracle_delay(AudioSignal((1, 2, 3, 4), 4), 3).samples == (0, 0, 0, 1)
    with pytest.raises(RangeError):
        oracle_delay(x, 8)
    with pytest.raises(ShapeError):
        oracle_delay(AudioSignal((1, 2, 3), 3), 1)


def test_oracle_reverse():
    assert oracle_reverse(AudioSignal((1, 2, 3, 4), 4)).samples == (4, 3, 2, 1)
    pal = AudioSignal((1, 2, 2, 1), 3)
    assert oracle_reverse(pal) == pal
    x = AudioSignal((5, -3, 0, 7), 4)
    assert oracle_reverse(oracle_reverse(x)) == x


def test_oracle_reverse_restricted():
    x = AudioSignal(tuple(range(8)), 4)
    assert oracle_reverse_restricted(x, {0: 1}).samples == (0, 1, 2, 3, 7, 6, 5, 4)
    assert oracle_reverse_restricted(x, {}) == oracle_reverse(x)
    assert oracle_reverse_restricted(x, {0: 1, 1: 0, 2: 1}) == x
    with pytest.raises(RangeError):
        oracle_reverse_restricted(x, {3: 1})


def _restricted_by_enumeration(x, fixed):
    # build the index map bit by bit
    l = x.l
    out = list(x.samples)
    for t in range(x.L):
        bits = [(t >> (l - 1 - i)) & 1 for i in range(l)]
        if all(bits[p] == v for p, v in fixed.items()):
            new = [b if i in fixed else 1 - b for i, b in enumerate(bits)]
            out[int("".join(map(str, new)), 2)] = x.samples[t]
    return out


def test_restricted_matches_enumeration():
    import itertools
    x = AudioSignal(tuple(range(-8, 8)), 5)
    for k in range(5):
        for pos in itertools.combinations(range(4), k):
            for vals in itertools.product((0, 1), repeat=k):
                fixed = dict(zip(pos, vals))
                assert list(oracle_reverse_restricted(x, fixed).samples) == \
                    _restricted_by_enumeration(x, fixed)


samples3 = st.lists(st.integers(-4, 3), min_size=8, max_size=8)


@given(samples3, samples3)
def test_oracle_properties(a, b):
    x, y = AudioSignal(tuple(a), 3), AudioSignal(tuple(b), 3)
    assert oracle_invert(oracle_invert(x)) == x
    assert oracle_reverse(oracle_reverse(x)) == x
    assert oracle_delay(x, 0) == x
    assert oracle_add(x, y) == oracle_add(y, x)
    assert oracle_add(x, AudioSignal((0,) * 8, 3)) == x.widen(4)
