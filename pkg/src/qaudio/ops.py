"""Circuit builders and state-level semantics for addition, inversion,
delay, reversal and restricted reversal."""
from __future__ import annotations

from collections.abc import Mapping, Sequence

import numpy as np

from .audio import AudioSignal, bits_to_int, decode_twos_complement, int_to_bits
from .errors import (DegenerateRestrictionError, NotFrqaShapedError, RangeError,
                     ShapeError)
from .frqa import FrqaState, controlled_flips, run_on_state
from .gates import Circuit, Gate, Register, RegisterLayout, X, add_controls
from .simulator import MAX_WIRES, StateVector


# --- ripple-carry adder -------------------------------------------------------

def adder_gates(a: Sequence[int], b: Sequence[int], carry: Sequence[int]) -> list[Gate]:
    """|a>|b> -> |a>|a+b> with CARRY/SUM blocks.

    ``a`` holds q wires MSB first; ``b`` holds q+1 wires with the overflow
    (top) wire first; ``carry`` holds q clean wires.  The top wire of ``b``
    receives the carry-out by XOR.  Census: 4q-2 Toffoli, 4q CNOT.
    """
    q = len(a)
    if len(b) != q + 1 or len(carry) != q:
        raise ShapeError("adder needs |a| = q, |b| = q+1, |carry| = q")
    A = [a[q - 1 - i] for i in range(q)]           # LSB first
    B = [b[q - i] for i in range(q)] + [b[0]]
    C = list(carry) + [B[q]]                        # c_q is the overflow wire

    def carry_block(i):
        return [X(C[i + 1], A[i], B[i]), X(B[i], A[i]), X(C[i + 1], C[i], B[i])]

    def sum_block(i):
        return [X(B[i], A[i]), X(B[i], C[i])]

    gates: list[Gate] = []
    for i in range(q):
        gates += carry_block(i)
    gates.append(X(B[q - 1], A[q - 1]))
    gates += sum_block(q - 1)
    for i in reversed(range(q - 1)):
        gates += carry_block(i)[::-1]
        gates += sum_block(i)
    return gates


def build_adder(q: int) -> Circuit:
    if q < 1:
        raise RangeError("adder width must be >= 1")
    layout = (RegisterLayout().add("a", q, "amplitude").add("b", q + 1, "amplitude")
              .add("carry", q, "carry"))
    return Circuit(layout, tuple(adder_gates(layout.wires("a"), layout.wires("b"),
                                             layout.wires("carry"))))


# --- comparator ---------------------------------------------------------------

def comparator_gates(a: Sequence[int], b: Sequence[int], e0: int, e1: int,
                     prefix: Sequence[int]) -> list[Gate]:
    """Set e0 iff a > b and e1 iff a < b; a and b are restored.

    Bit-serial from the MSB: b is overwritten with a XOR b, an equal-prefix
    chain lives in ``prefix`` (l-1 clean wires) and is uncomputed.
    """
    l = len(a)
    if len(b) != l or len(prefix) < l - 1:
        raise ShapeError("comparator needs equal operand widths and l-1 prefix wires")
    diff = [X(b[i], a[i]) for i in range(l)]
    body: list[Gate] = [X(e0, b[0], a[0]), X(e1, b[0], (a[0], False))]
    chain: list[Gate] = []
    if l > 1:
        chain.append(X(prefix[0], (b[0], False)))
    for i in range(1, l):
        z = prefix[i - 1]
        body += [X(e0, z, b[i], a[i]), X(e1, z, b[i], (a[i], False))]
        if i < l - 1:
            chain.append(X(prefix[i], z, (b[i], False)))
    # the flag updates for bit i only need the chain up to prefix[i-1]
    return diff + chain + body + chain[::-1] + diff


def build_comparator(l: int) -> Circuit:
    if l < 1:
        raise RangeError("comparator width must be >= 1")
    layout = (RegisterLayout().add("a", l, "time").add("b", l, "time")
              .add("flags", 2, "flags").add("prefix", l - 1, "ancilla"))
    e0, e1 = layout.wires("flags")
    return Circuit(layout, tuple(comparator_gates(layout.wires("a"), layout.wires("b"),
                                                  e0, e1, layout.wires("prefix"))))


# --- sign extension and addition ----------------------------------------------

def sign_extension_gates(sign_x: int, sign_y: int, ext: int,
                         flags: Sequence[int]) -> list[Gate]:
    """Under flags == 00, XOR both operands' sign bits into the extension wire.

    The adder then XORs its carry-out into the same wire, which yields the
    correct top bit of the (q+1)-bit two's-complement sum.
    """
    e0, e1 = flags
    return [X(ext, (e0, False), (e1, False), sign_x), X(ext, (e0, False), (e1, False), sign_y)]


def build_sign_extension(q: int) -> Circuit:
    layout = (RegisterLayout().add("x", q, "amplitude").add("y", q, "amplitude")
              .add("ext", 1, "extension").add("flags", 2, "flags"))
    return Circuit(layout, tuple(sign_extension_gates(
        layout.wires("x")[0], layout.wires("y")[0], layout.wires("ext")[0], layout.wires("flags"))))


def addition_layout(q: int, l: int) -> RegisterLayout:
    return (RegisterLayout()
            .add("x.amplitude", q, "amplitude").add("x.time", l, "time")
            .add("y.amplitude", q, "amplitude").add("y.time", l, "time")
            .add("ext", 1, "extension").add("carry", q, "carry")
            .add("flags", 2, "flags").add("prefix", l - 1, "ancilla"))


def addition_parts(q: int, l: int) -> dict[str, Circuit]:
    """The three stages of the addition circuit over the joint layout."""
    layout = addition_layout(q, l)
    w = layout.wires
    e0, e1 = w("flags")
    cmp_ = Circuit(layout, tuple(comparator_gates(w("x.time"), w("y.time"), e0, e1, w("prefix"))))
    ext = Circuit(layout, tuple(sign_extension_gates(w("x.amplitude")[0], w("y.amplitude")[0],
                                                     w("ext")[0], (e0, e1))))
    adder = Circuit(layout, tuple(adder_gates(w("x.amplitude"), w("ext") + w("y.amplitude"),
                                              w("carry"))))
    return {"comparator": cmp_, "extension": ext,
            "adder": add_controls(adder, [(e0, False), (e1, False)])}


def build_addition_circuit(q: int, l: int, uncompute_flags: bool = False) -> Circuit:
    """Comparator on the time registers, then 2-controlled EXT and ADDER.

    The sum lands in ``ext`` + ``y.amplitude`` (q+1 bits, MSB first) on every
    term with t_x == t_y.  ``uncompute_flags`` appends the comparator's
    inverse so the flag register returns to 00.
    """
    parts = addition_parts(q, l)
    circuit = parts["comparator"] + parts["extension"] + parts["adder"]
    if uncompute_flags:
        circuit = circuit + parts["comparator"].inverse()
        flags = circuit.layout["flags"]
        regs = tuple(Register(r.name, "ancilla", r.wires) if r is flags else r
                     for r in circuit.layout.registers)
        circuit = Circuit(RegisterLayout(regs), circuit.gates)
    return circuit


def _joint_state(x: FrqaState, y: FrqaState) -> StateVector:
    regs = []
    for prefix, st, offset in (("x.", x.state, 0), ("y.", y.state, x.state.n)):
        for r in st.layout.registers:
            regs.append(Register(prefix + r.name, r.role, tuple(w + offset for w in r.wires)))
    return StateVector(np.kron(x.state.amplitudes, y.state.amplitudes), RegisterLayout(tuple(regs)))


def add_states(x: FrqaState, y: FrqaState, max_wires: int = MAX_WIRES) -> StateVector:
    """Joint state after running the addition circuit on |A_x>|A_y>."""
    if x.q != y.q or x.l != y.l:
        raise ShapeError(f"cannot add (q={x.q}, l={x.l}) and (q={y.q}, l={y.l})")
    circuit = build_addition_circuit(x.q, x.l)
    bind = {n: n for n in ("x.amplitude", "x.time", "y.amplitude", "y.time")}
    return run_on_state(_joint_state(x, y), circuit, bind, max_wires)


def add_signals(x: FrqaState, y: FrqaState, max_wires: int = MAX_WIRES) -> AudioSignal:
    """Post-select terms with t_x == t_y and decode the (q+1)-bit sum per time."""
    joint = add_states(x, y, max_wires)
    sums: dict[int, set[int]] = {}
    for i, _ in joint.nonzero():
        tx = bits_to_int(joint.register_value(i, "x.time"))
        ty = bits_to_int(joint.register_value(i, "y.time"))
        flags = joint.register_value(i, "flags")
        if (tx == ty) != (flags == (0, 0)):
            raise NotFrqaShapedError(f"comparator flags {flags} disagree with t_x={tx}, t_y={ty}")
        if tx != ty:
            continue
        bits = joint.register_value(i, "ext") + joint.register_value(i, "y.amplitude")
        sums.setdefault(tx, set()).add(decode_twos_complement(bits))
    out = []
    for t in range(1 << x.l):
        if len(sums.get(t, ())) != 1:
            raise NotFrqaShapedError(f"time index {t} has sums {sorted(sums.get(t, ()))}")
        out.append(sums[t].pop())
    return AudioSignal(tuple(out), x.q + 1)


# --- inversion ----------------------------------------------------------------

def build_inversion_circuit(q: int, uncompute: bool = False) -> Circuit:
    """Complement every amplitude bit, then add 1 modulo 2^q.

    The increment is a half-adder chain fed by a constant-one wire:
    q-1 Toffoli and q CNOT.  Its carries are left holding prefix ANDs unless
    ``uncompute`` appends q-1 anti-controlled Toffolis that clear them.
    """
    if q < 1:
        raise RangeError("resolution must be >= 1")
    layout = (RegisterLayout().add("amplitude", q, "amplitude").add("one", 1, "constant")
              .add("carry", q - 1, "carry" if uncompute else "junk"))
    amp = layout.wires("amplitude")
    n = [amp[q - 1 - j] for j in range(q)]          # LSB first
    c = list(layout.wires("one")) + list(layout.wires("carry"))
    gates = [X(w) for w in amp] + [X(c[0])]
    for j in range(q):
        if j < q - 1:
            gates.append(X(c[j + 1], n[j], c[j]))
        gates.append(X(n[j], c[j]))
    if uncompute:
        for j in reversed(range(q - 1)):
            gates.append(X(c[j + 1], c[j], (n[j], False)))
    gates.append(X(c[0]))
    return Circuit(layout, tuple(gates))


def invert_signal(x: FrqaState, max_wires: int = MAX_WIRES) -> FrqaState:
    out = run_on_state(x.state, build_inversion_circuit(x.q, uncompute=True),
                       {"amplitude": "amplitude"}, max_wires)
    return FrqaState(x.q, x.l, out)


# --- delay --------------------------------------------------------------------

def build_delay_circuit(l: int, q: int, dt: int) -> Circuit:
    """Add dt to the time register; wrapped terms hand their amplitude to ancillas.

    Census: one l-bit adder (4l-2 Toffoli, 4l CNOT) plus 2q Toffoli.  The
    overflow wire and the q ``move`` wires keep the discarded tail samples.
    """
    if not 0 <= dt < 1 << l:
        raise RangeError(f"delay {dt} outside [0, {(1 << l) - 1}]")
    layout = (RegisterLayout().add("amplitude", q, "amplitude").add("time", l, "time")
              .add("dt", l, "constant").add("overflow", 1, "junk")
              .add("carry", l, "carry").add("move", q, "junk"))
    w = layout.wires
    load = [X(wire) for wire, bit in zip(w("dt"), int_to_bits(dt, l)) if bit]
    gates = list(load)
    gates += adder_gates(w("dt"), w("overflow") + w("time"), w("carry"))
    ov = w("overflow")[0]
    for s, m in zip(w("amplitude"), w("move")):
        gates += [X(m, ov, s), X(s, ov, m)]
    gates += load
    return Circuit(layout, tuple(gates))


def delay_signal(x: FrqaState, dt: int, max_wires: int = MAX_WIRES) -> FrqaState:
    circuit = build_delay_circuit(x.l, x.q, dt)
    out = run_on_state(x.state, circuit, {"amplitude": "amplitude", "time": "time"}, max_wires)
    return FrqaState(x.q, x.l, out)


# --- reversal -----------------------------------------------------------------

def build_reversal_circuit(l: int) -> Circuit:
    if l < 1:
        raise RangeError("time width must be >= 1")
    layout = RegisterLayout().add("time", l, "time")
    return Circuit(layout, tuple(X(w) for w in layout.wires("time")))


def check_fixed_bits(l: int, fixed_bits: Mapping[int, int]) -> None:
    for pos, val in fixed_bits.items():
        if not 0 <= pos < l:
            raise RangeError(f"time-bit position {pos} outside [0, {l})")
        if val not in (0, 1):
            raise RangeError(f"fixed bit value must be 0 or 1, got {val}")


def build_restricted_reversal_circuit(l: int, fixed_bits: Mapping[int, int]) -> Circuit:
    """Complement the unfixed time wires on terms matching ``fixed_bits``.

    ``fixed_bits`` maps time-bit position (0 = t_0, the MSB) to 0 or 1.  Two or
    more fixed bits are ANDed once into an ancilla that drives one CNOT per
    free wire; the worst case (l-1 fixed bits) costs 12l-23.
    """
    check_fixed_bits(l, fixed_bits)
    if len(fixed_bits) >= l:
        raise DegenerateRestrictionError("every time bit is fixed; nothing left to reverse")
    k = len(fixed_bits)
    layout = RegisterLayout().add("time", l, "time").add("and", max(k - 1, 0), "ancilla")
    time = layout.wires("time")
    controls = [(time[p], bool(v)) for p, v in sorted(fixed_bits.items())]
    targets = [time[p] for p in range(l) if p not in fixed_bits]
    return Circuit(layout, tuple(controlled_flips(controls, targets, layout.wires("and"))))


def reverse_signal(x: FrqaState, fixed_bits: Mapping[int, int] | None = None,
                   max_wires: int = MAX_WIRES) -> FrqaState:
    circuit = (build_restricted_reversal_circuit(x.l, fixed_bits) if fixed_bits
               else build_reversal_circuit(x.l))
    return FrqaState(x.q, x.l, run_on_state(x.state, circuit, {"time": "time"}, max_wires))
