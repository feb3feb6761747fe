import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import all_signals, random_signal
from qaudio.audio import AudioSignal, encode_twos_complement, pad_to_power_of_two
from qaudio.errors import NotFrqaShapedError, RangeError, ResourceError, ShapeError
from qaudio.frqa import (FrqaState, build_controlled_value_setting, build_preparation_circuit,
                         build_value_setting_op, prepare, retrieve, sample_bits, sample_retrieve)
from qaudio.gates import Circuit, apply_to_basis_state, cnot_cost
from qaudio.simulator import StateVector


def expected_amplitudes(signal):
    # independent construction of sum_t 2^(-l/2) |enc(s_t)>|t>
    q, l = signal.q, signal.l
    amps = np.zeros(1 << (q + l), dtype=complex)
    for t, s in enumerate(signal.samples):
        code = int("".join(map(str, encode_twos_complement(s, q))), 2)
        amps[(code << l) | t] = 2 ** (-l / 2)
    return amps


def test_value_setting_examples():
    op = build_value_setting_op((1, 1, 1))
    assert apply_to_basis_state(op, (0, 0, 0)) == (0, 1, 1)
    op = build_value_setting_op((0, 0, 0))
    assert apply_to_basis_state(op, (0, 0, 0)) == (1, 0, 0)
    assert op.census()["NOT"] == 1


def test_value_setting_matches_codec():
    for q in range(1, 6):
        for s in range(-(1 << (q - 1)), 1 << (q - 1)):
            op = build_value_setting_op(sample_bits(s, q))
            assert apply_to_basis_state(op, (0,) * q) == encode_twos_complement(s, q)


def test_controlled_value_setting_r6():
    l, q = 4, 3
    bits = (1, 0, 1)                      # S = 001 after the MSB flip
    c = build_controlled_value_setting(6, bits, l)
    census = c.census()
    assert census["TOFFOLI"] == 2 * (l - 1) and census["CNOT"] == 1
    assert cnot_cost(census) == 12 * (l - 1) + 1
    n_anc = c.width - q - l
    for t in range(1 << l):
        for a in itertools.product((0, 1), repeat=q):
            tb = tuple((t >> (l - 1 - i)) & 1 for i in range(l))
            out = apply_to_basis_state(c, a + tb + (0,) * n_anc)
            want = tuple(x ^ y for x, y in zip(a, (0, 0, 1))) if t == 6 else a
            assert out == want + tb + (0,) * n_anc


def test_controlled_value_setting_range():
    with pytest.raises(RangeError):
        build_controlled_value_setting(16, (1, 0), 4)


def test_preparation_layer_and_state():
    signal = AudioSignal((3, -4, 0, 1), 3)
    c = build_preparation_circuit(signal)
    assert [g.kind for g in c.gates[:2]] == ["HADAMARD", "HADAMARD"]
    assert c.census()["HADAMARD"] == 2
    state = prepare(signal)
    state.check()
    assert np.allclose(state.state.amplitudes, expected_amplitudes(signal), atol=1e-12)


def test_prepare_pads():
    state = prepare(AudioSignal((1, 1, 1), 2))
    assert state.l == 2
    assert retrieve(state).samples == (1, 1, 1, 0)


def test_preparation_requires_padding():
    with pytest.raises(ShapeError):
        build_preparation_circuit(AudioSignal((1, 1, 1), 2))


@pytest.mark.parametrize("q,l", [(2, 2), (3, 3), (3, 4)])
def test_preparation_cost_bound(rng, q, l):
    bound = (12 * l + q - 12) * 2 ** l
    for _ in range(20):
        assert cnot_cost(build_preparation_circuit(random_signal(rng, q, l)).census()) <= bound
    top = (1 << (q - 1)) - 1                # B_t all ones
    assert sample_bits(top, q) == (1,) * q
    worst = AudioSignal((top,) * (1 << l), q)
    assert cnot_cost(build_preparation_circuit(worst).census()) == bound


def test_equality_cases():
    assert cnot_cost(build_preparation_circuit(AudioSignal((1,) * 4, 2)).census()) == 56
    assert cnot_cost(build_preparation_circuit(AudioSignal((3,) * 16, 3)).census()) == 624


def test_round_trip_small_exhaustive():
    for q, l in [(1, 1), (2, 1), (1, 2), (3, 1)]:
        for sig in all_signals(q, l):
            st_ = prepare(sig)
            st_.check()
            assert retrieve(st_) == sig


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 4).flatmap(
    lambda q: st.lists(st.integers(-(1 << (q - 1)), (1 << (q - 1)) - 1), min_size=1, max_size=16)
    .map(lambda s: AudioSignal(tuple(s), q))))
def test_round_trip_property(signal):
    state = prepare(signal)
    state.check()
    assert retrieve(state) == pad_to_power_of_two(signal)


def test_sample_retrieve(rng):
    sig = random_signal(rng, 3, 2)
    assert sample_retrieve(prepare(sig), 200, seed=1) == sig


def test_sample_retrieve_unobserved():
    with pytest.raises(NotFrqaShapedError):
        sample_retrieve(prepare(AudioSignal(tuple(range(-4, 4)), 3)), 1, seed=0)


def test_check_rejects_bad_states():
    good = prepare(AudioSignal((1, -1), 2))
    bad = FrqaState(2, 1, StateVector(good.state.amplitudes * 0.5, good.layout))
    with pytest.raises(NotFrqaShapedError):
        bad.check()
    amps = np.zeros_like(good.state.amplitudes)
    amps[0] = 1
    with pytest.raises(NotFrqaShapedError):
        FrqaState(2, 1, StateVector(amps, good.layout)).check()


def test_resource_cap():
    with pytest.raises(ResourceError):
        prepare(AudioSignal(tuple([0] * 16), 8), max_wires=12)


def test_state_json_round_trip():
    st_ = prepare(AudioSignal((1, -2, 0, 1), 2))
    back = FrqaState.from_dict(json.loads(json.dumps(st_.to_dict())))
    assert np.allclose(back.state.amplitudes, st_.state.amplitudes)
    assert retrieve(back) == retrieve(st_)
