"""Reversible-gate circuit IR, multi-controlled NOT decomposition and cost model.

Every gate is either a Hadamard or an X with any number of polarity-tagged
controls.  The gate *kind* is derived from the control count: NOT (0),
CNOT (1), TOFFOLI (2), MCX(k) for k >= 3.
"""
from __future__ import annotations

from collections import Counter
from collections.abc import Iterable, Mapping, Sequence
from functools import cached_property
from dataclasses import dataclass, field

from .errors import NotPermutationError, ResourceError, ShapeError, WiringError

ROLES = ("amplitude", "time", "ancilla", "carry", "extension", "flags", "constant", "junk")
# roles whose wires must be returned to 0 by every circuit that declares them
CLEAN_ROLES = ("ancilla", "carry", "constant")

COST_MODELS = ("standard", "all-gates")

Control = tuple[int, bool]


@dataclass(frozen=True)
class Gate:
    target: int
    controls: tuple[Control, ...] = ()
    hadamard: bool = False

    def __post_init__(self):
        ctrls = tuple((int(w), bool(p)) for w, p in self.controls)
        object.__setattr__(self, "controls", ctrls)
        wires = [self.target] + [w for w, _ in ctrls]
        if len(set(wires)) != len(wires):
            raise WiringError(f"gate wires must be distinct, got {wires}")
        if self.hadamard and ctrls:
            raise WiringError("controlled Hadamards are not part of the gate set")

    @property
    def kind(self) -> str:
        if self.hadamard:
            return "HADAMARD"
        k = len(self.controls)
        return ("NOT", "CNOT", "TOFFOLI")[k] if k < 3 else f"MCX({k})"

    @property
    def wires(self) -> tuple[int, ...]:
        return (self.target,) + tuple(w for w, _ in self.controls)

    def remap(self, mapping: Mapping[int, int]) -> Gate:
        return Gate(mapping[self.target], tuple((mapping[w], p) for w, p in self.controls),
                    self.hadamard)

    def __str__(self):
        if not self.controls:
            return f"{self.kind} {self.target}"
        ctl = ",".join(f"{'' if p else '~'}{w}" for w, p in self.controls)
        return f"{self.kind} [{ctl}] -> {self.target}"


def X(target: int, *controls: int | Control) -> Gate:
    """X gate; bare ints are positive controls, ``(wire, False)`` is an anti-control."""
    ctrls = tuple(c if isinstance(c, tuple) else (c, True) for c in controls)
    return Gate(target, ctrls)


def H(target: int) -> Gate:
    return Gate(target, hadamard=True)


@dataclass(frozen=True)
class Register:
    name: str
    role: str
    wires: tuple[int, ...]

    @property
    def size(self) -> int:
        return len(self.wires)


@dataclass(frozen=True)
class RegisterLayout:
    registers: tuple[Register, ...] = ()

    def __post_init__(self):
        seen: set[int] = set()
        names: set[str] = set()
        for reg in self.registers:
            if reg.role not in ROLES:
                raise WiringError(f"unknown register role {reg.role!r}")
            if reg.name in names:
                raise WiringError(f"duplicate register name {reg.name!r}")
            names.add(reg.name)
            overlap = seen.intersection(reg.wires)
            if overlap:
                raise WiringError(f"register {reg.name!r} reuses wires {sorted(overlap)}")
            seen.update(reg.wires)

    @cached_property
    def width(self) -> int:
        return max((max(r.wires) + 1 for r in self.registers if r.wires), default=0)

    def add(self, name: str, size: int, role: str) -> RegisterLayout:
        """Return a new layout with ``size`` fresh wires appended as ``name``."""
        start = self.width
        return RegisterLayout(self.registers + (Register(name, role, tuple(range(start, start + size))),))

    def __getitem__(self, name: str) -> Register:
        for reg in self.registers:
            if reg.name == name:
                return reg
        raise KeyError(name)

    def __contains__(self, name: str) -> bool:
        return any(r.name == name for r in self.registers)

    def wires(self, name: str) -> tuple[int, ...]:
        return self[name].wires

    def by_role(self, *roles: str) -> list[Register]:
        return [r for r in self.registers if r.role in roles]

    def clean_wires(self) -> tuple[int, ...]:
        return tuple(w for r in self.by_role(*CLEAN_ROLES) for w in r.wires)

    def to_dict(self) -> list[dict]:
        return [{"name": r.name, "role": r.role, "wires": list(r.wires)} for r in self.registers]

    @classmethod
    def from_dict(cls, data: Iterable[Mapping]) -> RegisterLayout:
        return cls(tuple(Register(d["name"], d["role"], tuple(d["wires"])) for d in data))


@dataclass(frozen=True)
class Circuit:
    layout: RegisterLayout
    gates: tuple[Gate, ...] = ()
    width: int = field(default=-1)

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.width < 0:
            object.__setattr__(self, "width", self.layout.width)
        for g in self.gates:
            if max(g.wires) >= self.width:
                raise WiringError(f"gate {g} touches a wire beyond width {self.width}")

    def __add__(self, other: Circuit) -> Circuit:
        if other.layout != self.layout:
            raise ShapeError("cannot concatenate circuits over different layouts")
        return Circuit(self.layout, self.gates + other.gates, self.width)

    def __len__(self):
        return len(self.gates)

    def extend(self, gates: Iterable[Gate]) -> Circuit:
        return Circuit(self.layout, self.gates + tuple(gates), self.width)

    def inverse(self) -> Circuit:
        # every gate in the set is self-inverse
        return Circuit(self.layout, tuple(reversed(self.gates)), self.width)

    @property
    def has_hadamard(self) -> bool:
        return any(g.hadamard for g in self.gates)

    def used_wires(self) -> set[int]:
        return {w for g in self.gates for w in g.wires}

    def census(self) -> GateCensus:
        return GateCensus.of(lower_polarity(self).gates)

    def to_dict(self) -> dict:
        return {
            "width": self.width,
            "registers": self.layout.to_dict(),
            "gates": [
                {"kind": g.kind, "target": g.target,
                 "controls": [[w, "positive" if p else "negative"] for w, p in g.controls]}
                for g in self.gates
            ],
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> Circuit:
        gates = []
        for g in data["gates"]:
            ctrls = tuple((w, p == "positive") for w, p in g["controls"])
            gates.append(Gate(g["target"], ctrls, g["kind"] == "HADAMARD"))
        return cls(RegisterLayout.from_dict(data["registers"]), tuple(gates), data["width"])

    def to_qasm(self) -> str:
        """OpenQASM 3 text, one gate per line, anti-controls lowered to X sandwiches."""
        lines = ["OPENQASM 3.0;", 'include "stdgates.inc";', f"qubit[{self.width}] q;"]
        for reg in self.layout.registers:
            lines.append(f"// {reg.name} ({reg.role}): {list(reg.wires)}")
        for g in lower_polarity(self).gates:
            lines.append(_qasm_line(g))
        return "\n".join(lines) + "\n"


def _qasm_line(g: Gate) -> str:
    args = ", ".join(f"q[{w}]" for w, _ in g.controls)
    tgt = f"q[{g.target}]"
    k = len(g.controls)
    if g.hadamard:
        return f"h {tgt};"
    if k == 0:
        return f"x {tgt};"
    if k == 1:
        return f"cx {args}, {tgt};"
    if k == 2:
        return f"ccx {args}, {tgt};"
    return f"ctrl({k}) @ x {args}, {tgt};"


def lower_polarity(circuit: Circuit) -> Circuit:
    """Rewrite anti-controls as NOT sandwiches around a positively controlled gate."""
    out = []
    for g in circuit.gates:
        neg = [w for w, p in g.controls if not p]
        if not neg:
            out.append(g)
            continue
        out.extend(X(w) for w in neg)
        out.append(Gate(g.target, tuple((w, True) for w, _ in g.controls)))
        out.extend(X(w) for w in neg)
    return Circuit(circuit.layout, tuple(out), circuit.width)


@dataclass(frozen=True)
class GateCensus:
    counts: Mapping[str, int]

    def __post_init__(self):
        clean = {k: int(v) for k, v in self.counts.items() if v}
        if any(v < 0 for v in clean.values()):
            raise ValueError("census counts must be nonnegative")
        object.__setattr__(self, "counts", dict(sorted(clean.items())))

    @classmethod
    def of(cls, gates: Iterable[Gate]) -> GateCensus:
        return cls(Counter(g.kind for g in gates))

    @classmethod
    def from_kinds(cls, *, cnot=0, toffoli=0, not_=0, hadamard=0, mcx: Mapping[int, int] | None = None):
        counts = {"CNOT": cnot, "TOFFOLI": toffoli, "NOT": not_, "HADAMARD": hadamard}
        for k, n in (mcx or {}).items():
            counts[_kind_for(k)] = counts.get(_kind_for(k), 0) + n
        return cls(counts)

    def __getitem__(self, kind: str) -> int:
        return self.counts.get(kind, 0)

    def __add__(self, other: GateCensus) -> GateCensus:
        return GateCensus(Counter(self.counts) + Counter(other.counts))

    def scaled(self, n: int) -> GateCensus:
        return GateCensus({k: v * n for k, v in self.counts.items()})

    def mcx(self) -> dict[int, int]:
        return {int(k[4:-1]): v for k, v in self.counts.items() if k.startswith("MCX(")}

    def to_dict(self) -> dict[str, int]:
        return dict(self.counts)


def _kind_for(k: int) -> str:
    return ("NOT", "CNOT", "TOFFOLI")[k] if k < 3 else f"MCX({k})"


def mcx_cost(k: int) -> int:
    """CNOT-equivalent price of a k-controlled NOT (k >= 3)."""
    return 12 * (k - 1) + 1


def cnot_cost(census: GateCensus, model: str = "standard") -> int:
    """CNOT-equivalent cost: CNOT 1, Toffoli 6, MCX(k) 12(k-1)+1.

    The ``standard`` model prices single-qubit gates at 0; ``all-gates`` charges 1
    for each NOT and Hadamard.
    """
    if model not in COST_MODELS:
        raise ValueError(f"unknown cost model {model!r}")
    cost = census["CNOT"] + 6 * census["TOFFOLI"]
    cost += sum(mcx_cost(k) * n for k, n in census.mcx().items())
    if model == "all-gates":
        cost += census["NOT"] + census["HADAMARD"]
    return cost


def decompose_mcx(gate: Gate, ancillas: Sequence[int]) -> list[Gate]:
    """Toffoli ladder for a k-controlled NOT: 2(k-1) Toffoli + 1 CNOT.

    Uses k-1 zero-initialized ancillas and returns them to 0.  Anti-controls
    are wrapped in NOT gates first.
    """
    k = len(gate.controls)
    if gate.hadamard or k < 3:
        raise ValueError(f"decompose_mcx needs >= 3 controls, got {gate.kind}")
    if len(ancillas) < k - 1:
        raise ResourceError(f"{gate.kind} needs {k - 1} clean ancillas, {len(ancillas)} given")
    anc = list(ancillas[: k - 1])
    if set(anc) & set(gate.wires):
        raise WiringError("ancillas overlap the gate's wires")
    neg = [w for w, p in gate.controls if not p]
    c = [w for w, _ in gate.controls]
    ladder = [X(anc[0], c[0], c[1])]
    for i in range(2, k):
        ladder.append(X(anc[i - 1], c[i], anc[i - 2]))
    body = ladder + [X(gate.target, anc[-1])] + ladder[::-1]
    return [X(w) for w in neg] + body + [X(w) for w in neg]


def decompose_circuit(circuit: Circuit, pool: str = "mcx_pool") -> Circuit:
    """Replace every MCX with its Toffoli ladder over a fresh clean-ancilla register."""
    need = max((len(g.controls) - 1 for g in circuit.gates if len(g.controls) >= 3), default=0)
    if not need:
        return circuit
    layout = circuit.layout.add(pool, need, "ancilla")
    anc = layout.wires(pool)
    gates: list[Gate] = []
    for g in circuit.gates:
        gates.extend(decompose_mcx(g, anc) if len(g.controls) >= 3 else [g])
    return Circuit(layout, tuple(gates))


def add_controls(circuit: Circuit, controls: Sequence[int | Control]) -> Circuit:
    """Condition every gate on ``controls`` (NOT -> CNOT -> Toffoli -> MCX)."""
    ctrls = tuple(c if isinstance(c, tuple) else (c, True) for c in controls)
    if not ctrls:
        return circuit
    if circuit.has_hadamard:
        raise WiringError("cannot control a circuit containing Hadamards")
    clash = {w for w, _ in ctrls} & circuit.used_wires()
    if clash:
        raise WiringError(f"control wires {sorted(clash)} are already used by the circuit")
    width = max(circuit.width, max(w for w, _ in ctrls) + 1)
    gates = tuple(Gate(g.target, ctrls + g.controls) for g in circuit.gates)
    return Circuit(circuit.layout, gates, width)


def apply_to_basis_state(circuit: Circuit, bits: Sequence[int]) -> tuple[int, ...]:
    """Image of a computational basis state under a Hadamard-free circuit."""
    if circuit.has_hadamard:
        raise NotPermutationError("circuit contains Hadamard gates")
    if len(bits) != circuit.width:
        raise ShapeError(f"input has {len(bits)} bits, circuit width is {circuit.width}")
    state = list(bits)
    for g in circuit.gates:
        if all(state[w] == p for w, p in g.controls):
            state[g.target] ^= 1
    return tuple(state)


def apply_to_int(circuit: Circuit, value: int) -> int:
    """Integer-packed variant of :func:`apply_to_basis_state` (wire 0 is the MSB)."""
    n = circuit.width
    for g in circuit.gates:
        if g.hadamard:
            raise NotPermutationError("circuit contains Hadamard gates")
        if all(((value >> (n - 1 - w)) & 1) == p for w, p in g.controls):
            value ^= 1 << (n - 1 - g.target)
    return value
