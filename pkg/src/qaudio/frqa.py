"""FRQA state preparation and retrieval.

A prepared state lives on ``q + l`` wires: register ``amplitude`` (q wires,
MSB first) followed by ``time`` (l wires, t_0 first).  Operations may append
``junk`` registers that hold displaced data; readout ignores them.
"""
from __future__ import annotations

from collections.abc import Mapping, Sequence
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .audio import (AudioSignal, Bits, amplitude_to_resolution, bits_to_int,
                    decode_twos_complement, int_to_bits, pad_to_power_of_two)
from .errors import NotFrqaShapedError, RangeError, ResourceError, ShapeError
from .gates import CLEAN_ROLES, Circuit, Gate, Register, RegisterLayout, H, X
from .simulator import (ATOL, MAX_WIRES, StateVector, apply_circuit, check_width,
                        measure_register, readout_amplitude, terms_by_time)


def data_layout(q: int, l: int) -> RegisterLayout:
    return RegisterLayout().add("amplitude", q, "amplitude").add("time", l, "time")


@dataclass
class FrqaState:
    q: int
    l: int
    state: StateVector

    @property
    def layout(self) -> RegisterLayout:
        return self.state.layout

    def check(self, atol: float = ATOL) -> None:
        """Raise :class:`NotFrqaShapedError` unless the FRQA invariants hold."""
        terms = self.state.nonzero(atol)
        if len(terms) != 1 << self.l:
            raise NotFrqaShapedError(f"{len(terms)} nonzero terms, expected {1 << self.l}")
        mag = 2 ** (-self.l / 2)
        for i, a in terms:
            if abs(abs(a) - mag) > atol:
                raise NotFrqaShapedError(f"term {i} has magnitude {abs(a)}, expected {mag}")
        by_t = terms_by_time(self.state)
        if sorted(by_t) != list(range(1 << self.l)) or any(len(v) != 1 for v in by_t.values()):
            raise NotFrqaShapedError("time indices are not each carried by exactly one term")
        clean = self.layout.clean_wires()
        n = self.state.n
        for i, _ in terms:
            if any((i >> (n - 1 - w)) & 1 for w in clean):
                raise NotFrqaShapedError("an ancilla wire is nonzero")

    def to_dict(self) -> dict:
        return {"q": self.q, "l": self.l, "layout": self.layout.to_dict(),
                "amplitudes": self.state.dump()}

    @classmethod
    def from_dict(cls, data: Mapping) -> FrqaState:
        layout = RegisterLayout.from_dict(data["layout"])
        return cls(data["q"], data["l"], StateVector.load(layout, data["amplitudes"]))


def sample_bits(value: int, q: int) -> Bits:
    """Plain binary ADC code B_t of a signed amplitude."""
    return int_to_bits(amplitude_to_resolution(value, q), q)


def build_value_setting_op(bits: Sequence[int], q: int | None = None) -> Circuit:
    """Uncontrolled value setting: load B_t, then flip the MSB (NOT gates only)."""
    q = len(bits) if q is None else q
    if len(bits) != q:
        raise ShapeError(f"sample has {len(bits)} bits, register has {q}")
    layout = RegisterLayout().add("amplitude", q, "amplitude")
    amp = layout.wires("amplitude")
    gates = [X(amp[i]) for i, b in enumerate(bits) if b]
    gates.append(X(amp[0]))
    return Circuit(layout, tuple(gates))


def _and_ladder(controls: Sequence[tuple[int, bool]], anc: Sequence[int]) -> list[Gate]:
    """Compute the AND of >= 2 polarity-adjusted controls into anc[-1]."""
    ladder = [X(anc[0], controls[0], controls[1])]
    for i in range(2, len(controls)):
        ladder.append(X(anc[i - 1], controls[i], (anc[i - 2], True)))
    return ladder


def controlled_flips(controls: Sequence[tuple[int, bool]], targets: Sequence[int],
                     anc: Sequence[int]) -> list[Gate]:
    """Flip every target when all controls hold, sharing one AND ancilla.

    With k >= 2 controls: 2(k-1) Toffoli plus one CNOT per target.
    """
    k = len(controls)
    if k == 0:
        return [X(t) for t in targets]
    if k == 1:
        return [X(t, controls[0]) for t in targets]
    ladder = _and_ladder(controls, anc)
    return ladder + [X(t, anc[k - 2]) for t in targets] + ladder[::-1]


@lru_cache(maxsize=4096)
def _value_setting_gates(k: int, pattern: Bits, q: int, l: int) -> tuple[Gate, ...]:
    """R_k gates over the standard layout: amplitude, time, then l-1 AND ancillas."""
    amp, time = range(q), range(q, q + l)
    anc = range(q + l, q + 2 * l - 1)
    targets = [amp[i] for i, b in enumerate(pattern) if b]
    if not targets:
        return ()
    controls = [(time[i], bool((k >> (l - 1 - i)) & 1)) for i in range(l)]
    return tuple(controlled_flips(controls, targets, anc))


def build_controlled_value_setting(k: int, bits: Sequence[int], l: int,
                                   conversion: bool = True) -> Circuit:
    """R_k: value setting on the amplitude register only when time == k.

    With ``conversion`` the MSB flip is folded in (CNOT count = popcount of
    S_k); without it only B_k is loaded and the caller owes a global MSB NOT.
    """
    if not 0 <= k < 1 << l:
        raise RangeError(f"time index {k} outside [0, {1 << l})")
    layout = data_layout(len(bits), l).add("and", max(l - 1, 0), "ancilla")
    pattern = list(bits)
    if conversion:
        pattern[0] ^= 1
    return Circuit(layout, _value_setting_gates(k, tuple(pattern), len(bits), l))


def build_preparation_circuit(signal: AudioSignal) -> Circuit:
    """Hadamard layer, then R_t for every t, then one MSB NOT for the conversion."""
    if not signal.is_padded:
        raise ShapeError(f"signal of length {signal.L} must be padded to a power of two")
    q, l = signal.q, signal.l
    layout = data_layout(q, l).add("and", max(l - 1, 0), "ancilla")
    gates: list[Gate] = [H(w) for w in layout.wires("time")]
    for t, s in enumerate(signal.samples):
        gates.extend(_value_setting_gates(t, sample_bits(s, q), q, l))
    gates.append(X(layout.wires("amplitude")[0]))
    return Circuit(layout, tuple(gates))


def drop_clean(state: StateVector, names: Sequence[str] | None = None) -> StateVector:
    """Remove clean-role registers after checking they are 0 in every term."""
    layout = state.layout
    regs = [r for r in layout.registers
            if (r.role in CLEAN_ROLES if names is None else r.name in names)]
    drop = sorted(w for r in regs for w in r.wires)
    if not drop:
        return state
    n = state.n
    psi = state.amplitudes.reshape((2,) * n)
    idx = tuple(0 if w in drop else slice(None) for w in range(n))
    kept = psi[idx]
    if abs(np.linalg.norm(kept) - state.norm()) > 1e-12:
        raise ResourceError("an ancilla register was not returned to 0")
    keep = [w for w in range(n) if w not in drop]
    renum = {w: i for i, w in enumerate(keep)}
    new_regs = tuple(Register(r.name, r.role, tuple(renum[w] for w in r.wires))
                     for r in layout.registers if r not in regs)
    return StateVector(np.ascontiguousarray(kept).reshape(-1), RegisterLayout(new_regs))


def run_on_state(state: StateVector, circuit: Circuit, bind: Mapping[str, str],
                 max_wires: int = MAX_WIRES) -> StateVector:
    """Apply ``circuit`` to ``state``.

    ``bind`` maps circuit register names onto existing state registers; all
    other circuit registers are appended as fresh zero wires.  Clean-role
    registers are verified and dropped afterwards; the rest are kept (renamed
    on collision).
    """
    layout = state.layout
    mapping: dict[int, int] = {}
    fresh: list[str] = []
    for reg in circuit.layout.registers:
        if reg.name in bind:
            target = layout[bind[reg.name]]
            if target.size != reg.size:
                raise ShapeError(f"register {reg.name} has {reg.size} wires, "
                                 f"{target.name} has {target.size}")
            mapping.update(zip(reg.wires, target.wires))
            continue
        name = reg.name
        n = 2
        while name in layout:
            name = f"{reg.name}_{n}"
            n += 1
        layout = layout.add(name, reg.size, reg.role)
        mapping.update(zip(reg.wires, layout.wires(name)))
        fresh.append(name)
    check_width(layout.width, max_wires)
    extra = layout.width - state.n
    amps = np.zeros(1 << layout.width, dtype=np.complex128)
    amps[:: 1 << extra] = state.amplitudes
    full = StateVector(amps, layout)
    mapped = Circuit(layout, tuple(g.remap(mapping) for g in circuit.gates))
    out = apply_circuit(full, mapped)
    clean_fresh = [nm for nm in fresh if layout[nm].role in CLEAN_ROLES]
    return drop_clean(out, clean_fresh)


def prepare(signal: AudioSignal, max_wires: int = MAX_WIRES) -> FrqaState:
    padded = pad_to_power_of_two(signal)
    circuit = build_preparation_circuit(padded)
    check_width(circuit.width, max_wires)
    out = apply_circuit(StateVector.zeros(circuit.layout, max_wires), circuit)
    return FrqaState(padded.q, padded.l, drop_clean(out))


def retrieve(state: FrqaState) -> AudioSignal:
    by_t = terms_by_time(state.state)
    samples = []
    for t in range(1 << state.l):
        patterns = by_t.get(t, ())
        if len(patterns) != 1:
            # delegate for the precise error message
            readout_amplitude(state.state, t)
        samples.append(decode_twos_complement(next(iter(patterns))))
    return AudioSignal(tuple(samples), state.q)


def sample_retrieve(state: FrqaState, shots: int, seed: int) -> AudioSignal:
    """Retrieve by repeated measurement, re-using the prepared state per shot.

    Each shot measures the time register, then the amplitude register of the
    collapsed state.  Every time index must be observed at least once.
    """
    seeds = np.random.SeedSequence(seed).generate_state(2 * shots)
    seen: dict[int, set[Bits]] = {}
    for i in range(shots):
        t_bits, collapsed = measure_register(state.state, "time", int(seeds[2 * i]))
        a_bits, _ = measure_register(collapsed, "amplitude", int(seeds[2 * i + 1]))
        seen.setdefault(bits_to_int(t_bits), set()).add(a_bits)
    missing = [t for t in range(1 << state.l) if t not in seen]
    if missing:
        raise NotFrqaShapedError(f"{shots} shots never observed time indices {missing}")
    samples = []
    for t in range(1 << state.l):
        if len(seen[t]) != 1:
            raise NotFrqaShapedError(f"time index {t} produced {len(seen[t])} amplitude patterns")
        samples.append(decode_twos_complement(next(iter(seen[t]))))
    return AudioSignal(tuple(samples), state.q)
