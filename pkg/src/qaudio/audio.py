"""Classical audio signals, the two's-complement codec and DSP oracles.

Bit strings are tuples of 0/1 with index 0 the most significant bit.
Sample index 0 is time 0.
"""
from __future__ import annotations

from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

from .errors import RangeError, ShapeError

Bits = tuple[int, ...]


def time_bits(length: int) -> int:
    """Number of time qubits for ``length`` samples (1 when length is 1)."""
    if length < 1:
        raise RangeError(f"signal length must be >= 1, got {length}")
    if length == 1:
        return 1
    return (length - 1).bit_length()


def amplitude_range(q: int) -> tuple[int, int]:
    return -(1 << (q - 1)), (1 << (q - 1)) - 1


def min_resolution(samples: Iterable[int]) -> int:
    """Smallest q whose two's-complement range holds every sample."""
    q = 1
    for s in samples:
        while not amplitude_range(q)[0] <= s <= amplitude_range(q)[1]:
            q += 1
    return q


@dataclass(frozen=True)
class AudioSignal:
    samples: tuple[int, ...]
    q: int

    def __post_init__(self):
        object.__setattr__(self, "samples", tuple(int(s) for s in self.samples))
        if self.q < 1:
            raise RangeError(f"resolution q must be >= 1, got {self.q}")
        if not self.samples:
            raise ShapeError("a signal needs at least one sample")
        lo, hi = amplitude_range(self.q)
        bad = [i for i, s in enumerate(self.samples) if not lo <= s <= hi]
        if bad:
            raise RangeError(
                f"samples at indices {bad} fall outside [{lo}, {hi}] for q={self.q}"
            )

    @property
    def L(self) -> int:
        return len(self.samples)

    @property
    def l(self) -> int:
        return time_bits(self.L)

    @property
    def is_padded(self) -> bool:
        return self.L == 1 << self.l

    def widen(self, q: int) -> AudioSignal:
        if q < self.q:
            raise ShapeError(f"cannot narrow q={self.q} to q={q}")
        return AudioSignal(self.samples, q)

    def __len__(self) -> int:
        return self.L

    def __getitem__(self, i):
        return self.samples[i]


def encode_twos_complement(value: int, q: int) -> Bits:
    lo, hi = amplitude_range(q)
    if not lo <= value <= hi:
        raise RangeError(f"{value} is outside the {q}-bit range [{lo}, {hi}]")
    pattern = value & ((1 << q) - 1)
    return tuple((pattern >> (q - 1 - i)) & 1 for i in range(q))


def decode_twos_complement(bits: Sequence[int]) -> int:
    if len(bits) == 0:
        raise ShapeError("cannot decode an empty bit string")
    q = len(bits)
    value = bits_to_int(bits)
    return value - (1 << q) if bits[0] else value


def bits_to_int(bits: Sequence[int]) -> int:
    """Unsigned reading, MSB first."""
    out = 0
    for b in bits:
        out = (out << 1) | (b & 1)
    return out


def int_to_bits(value: int, width: int) -> Bits:
    return tuple((value >> (width - 1 - i)) & 1 for i in range(width))


def resolution_to_amplitude(r: int, q: int) -> int:
    """Map an unsigned ADC code 0..2^q-1 to the signed amplitude r - 2^(q-1)."""
    if not 0 <= r <= (1 << q) - 1:
        raise RangeError(f"resolution code {r} outside [0, {(1 << q) - 1}]")
    return r - (1 << (q - 1))


def amplitude_to_resolution(value: int, q: int) -> int:
    lo, hi = amplitude_range(q)
    if not lo <= value <= hi:
        raise RangeError(f"{value} is outside the {q}-bit range [{lo}, {hi}]")
    return value + (1 << (q - 1))


def conversion_table(q: int) -> list[tuple[int, Bits, Bits, int]]:
    """Rows (resolution, binary, two's complement, amplitude), highest code first."""
    rows = []
    for r in reversed(range(1 << q)):
        amp = resolution_to_amplitude(r, q)
        rows.append((r, int_to_bits(r, q), encode_twos_complement(amp, q), amp))
    return rows


def pad_to_power_of_two(signal: AudioSignal) -> AudioSignal:
    n = 1 << signal.l
    return AudioSignal(signal.samples + (0,) * (n - signal.L), signal.q)


def _require_padded(x: AudioSignal) -> None:
    if not x.is_padded:
        raise ShapeError(f"signal of length {x.L} is not padded to a power of two")


def oracle_add(x: AudioSignal, y: AudioSignal) -> AudioSignal:
    if x.q != y.q:
        raise ShapeError(f"resolution mismatch: q={x.q} vs q={y.q}")
    if (1 << x.l) != (1 << y.l) or x.L != y.L:
        raise ShapeError(f"length mismatch: {x.L} vs {y.L}")
    return AudioSignal(tuple(a + b for a, b in zip(x.samples, y.samples)), x.q + 1)


def oracle_invert(x: AudioSignal) -> AudioSignal:
    # -2^(q-1) is a fixed point of modular negation
    out = []
    for s in x.samples:
        bits = encode_twos_complement(s, x.q)
        flipped = tuple(1 - b for b in bits)
        out.append(decode_twos_complement(int_to_bits(bits_to_int(flipped) + 1, x.q)))
    return AudioSignal(tuple(out), x.q)


def oracle_delay(x: AudioSignal, dt: int) -> AudioSignal:
    _require_padded(x)
    if not 0 <= dt <= x.L - 1:
        raise RangeError(f"delay {dt} outside [0, {x.L - 1}]")
    return AudioSignal((0,) * dt + x.samples[: x.L - dt], x.q)


def oracle_reverse(x: AudioSignal) -> AudioSignal:
    _require_padded(x)
    n = x.L - 1
    return AudioSignal(tuple(x.samples[n - t] for t in range(x.L)), x.q)


def oracle_reverse_restricted(x: AudioSignal, fixed_bits: Mapping[int, int]) -> AudioSignal:
    """Complement the unfixed time bits of every index matching ``fixed_bits``.

    ``fixed_bits`` maps time-bit position (0 = MSB) to the value it must hold.
    """
    _require_padded(x)
    l = x.l
    for pos, val in fixed_bits.items():
        if not 0 <= pos < l:
            raise RangeError(f"time-bit position {pos} outside [0, {l})")
        if val not in (0, 1):
            raise RangeError(f"fixed bit value must be 0 or 1, got {val}")
    free_mask = sum(1 << (l - 1 - p) for p in range(l) if p not in fixed_bits)

    def matches(t: int) -> bool:
        return all(((t >> (l - 1 - p)) & 1) == v for p, v in fixed_bits.items())

    out = list(x.samples)
    for t in range(x.L):
        if matches(t):
            out[t ^ free_mask] = x.samples[t]
    return AudioSignal(tuple(out), x.q)
