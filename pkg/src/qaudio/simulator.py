"""Exact statevector simulation and measurement.

Amplitudes are stored flat with wire 0 as the most significant index bit,
so lexicographic order of basis bitstrings equals index order.
"""
from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np

from .audio import Bits, bits_to_int, decode_twos_complement, int_to_bits
from .errors import (DegenerateMeasurementError, NotFrqaShapedError, ResourceError,
                     ShapeError)
from .gates import Circuit, Gate, RegisterLayout

MAX_WIRES = 26
ATOL = 1e-10
DUMP_THRESHOLD = 1e-12
_SQRT1_2 = 1 / np.sqrt(2)


@dataclass
class StateVector:
    amplitudes: np.ndarray
    layout: RegisterLayout

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=np.complex128).reshape(-1)
        if self.amplitudes.size != 1 << self.n:
            raise ShapeError(f"{self.amplitudes.size} amplitudes for {self.n} wires")

    @property
    def n(self) -> int:
        return self.layout.width

    @classmethod
    def zeros(cls, layout: RegisterLayout, max_wires: int = MAX_WIRES) -> StateVector:
        check_width(layout.width, max_wires)
        amps = np.zeros(1 << layout.width, dtype=np.complex128)
        amps[0] = 1.0
        return cls(amps, layout)

    @classmethod
    def basis(cls, layout: RegisterLayout, bits: Sequence[int]) -> StateVector:
        check_width(layout.width)
        amps = np.zeros(1 << layout.width, dtype=np.complex128)
        amps[bits_to_int(bits)] = 1.0
        return cls(amps, layout)

    def copy(self) -> StateVector:
        return StateVector(self.amplitudes.copy(), self.layout)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def nonzero(self, threshold: float = DUMP_THRESHOLD) -> list[tuple[int, complex]]:
        idx = np.flatnonzero(np.abs(self.amplitudes) > threshold)
        return [(int(i), complex(self.amplitudes[i])) for i in idx]

    def register_value(self, index: int, name: str) -> Bits:
        n = self.n
        return tuple((index >> (n - 1 - w)) & 1 for w in self.layout.wires(name))

    def dump(self) -> list[list]:
        """(basis bitstring, real, imag) for every amplitude above 1e-12."""
        return [[format(i, f"0{self.n}b"), a.real, a.imag] for i, a in self.nonzero()]

    @classmethod
    def load(cls, layout: RegisterLayout, dump: Sequence[Sequence]) -> StateVector:
        check_width(layout.width)
        amps = np.zeros(1 << layout.width, dtype=np.complex128)
        for bitstring, re, im in dump:
            if len(bitstring) != layout.width:
                raise ShapeError(f"bitstring {bitstring!r} does not match width {layout.width}")
            amps[int(bitstring, 2)] = complex(re, im)
        return cls(amps, layout)


def check_width(n: int, max_wires: int = MAX_WIRES) -> None:
    if n > max_wires:
        raise ResourceError(f"{n} wires exceed the simulator cap of {max_wires}")


def apply_gate(psi: np.ndarray, gate: Gate) -> None:
    """In-place update of a (2,)*n tensor."""
    idx = [slice(None)] * psi.ndim
    for w, p in gate.controls:
        idx[w] = int(p)
    i0 = list(idx)
    i1 = list(idx)
    i0[gate.target] = 0
    i1[gate.target] = 1
    i0, i1 = tuple(i0), tuple(i1)
    a = psi[i0].copy()
    if gate.hadamard:
        b = psi[i1].copy()
        psi[i0] = (a + b) * _SQRT1_2
        psi[i1] = (a - b) * _SQRT1_2
    else:
        psi[i0] = psi[i1]
        psi[i1] = a


def apply_circuit(state: StateVector, circuit: Circuit, *, check_norm: bool = False) -> StateVector:
    """Return a new state with ``circuit`` applied gate by gate."""
    if circuit.width != state.n:
        raise ShapeError(f"circuit width {circuit.width} != state width {state.n}")
    psi = state.amplitudes.copy().reshape((2,) * state.n) if state.n else state.amplitudes.copy()
    for g in circuit.gates:
        apply_gate(psi, g)
        if check_norm and abs(np.linalg.norm(psi) - 1) > 1e-12:
            raise AssertionError(f"norm drifted after {g}")
    return StateVector(psi.reshape(-1), state.layout)


def register_probabilities(state: StateVector, name: str) -> np.ndarray:
    wires = state.layout.wires(name)
    probs = np.abs(state.amplitudes.reshape((2,) * state.n)) ** 2
    others = tuple(w for w in range(state.n) if w not in wires)
    marg = probs.sum(axis=others)
    # sum keeps remaining axes in ascending wire order; reorder to register order
    order = np.argsort(np.argsort(wires))
    marg = np.transpose(marg, order) if len(wires) > 1 else marg
    return marg.reshape(-1)


def measure_register(state: StateVector, name: str, rng_seed: int) -> tuple[Bits, StateVector]:
    """Projective measurement of one register; deterministic given the seed."""
    wires = state.layout.wires(name)
    probs = register_probabilities(state, name)
    probs = probs / probs.sum()
    rng = np.random.default_rng(rng_seed)
    outcome = int(rng.choice(probs.size, p=probs))
    bits = int_to_bits(outcome, len(wires))
    psi = state.amplitudes.reshape((2,) * state.n).copy()
    for w, b in zip(wires, bits):
        idx = [slice(None)] * state.n
        idx[w] = 1 - b
        psi[tuple(idx)] = 0
    norm = np.linalg.norm(psi)
    if norm < 1e-9:
        raise DegenerateMeasurementError(f"projection onto {name}={bits} has norm {norm:.3g}")
    return bits, StateVector(psi.reshape(-1) / norm, state.layout)


def _register_ints(idx: np.ndarray, n: int, wires: Sequence[int]) -> np.ndarray:
    out = np.zeros_like(idx)
    for w in wires:
        out = (out << 1) | ((idx >> (n - 1 - w)) & 1)
    return out


def terms_by_time(state: StateVector, amp: str = "amplitude", time: str = "time",
                  threshold: float = ATOL) -> dict[int, set[Bits]]:
    idx = np.flatnonzero(np.abs(state.amplitudes) > threshold)
    amp_wires = state.layout.wires(amp)
    ts = _register_ints(idx, state.n, state.layout.wires(time))
    vals = _register_ints(idx, state.n, amp_wires)
    out: dict[int, set[Bits]] = {}
    for t, v in zip(ts.tolist(), vals.tolist()):
        out.setdefault(t, set()).add(int_to_bits(v, len(amp_wires)))
    return out


def readout_amplitude(state: StateVector, t: int, amp: str = "amplitude",
                      time: str = "time") -> int:
    """Exact, non-destructive amplitude extraction at time index ``t``."""
    patterns = terms_by_time(state, amp, time).get(t, set())
    if not patterns:
        raise NotFrqaShapedError(f"time index {t} has zero probability")
    if len(patterns) > 1:
        raise NotFrqaShapedError(f"time index {t} carries {len(patterns)} amplitude patterns")
    return decode_twos_complement(next(iter(patterns)))
