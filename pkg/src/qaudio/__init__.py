"""Quantum audio workbench: FRQA encoding, reversible-circuit operations and gate costing."""
from .audio import (AudioSignal, decode_twos_complement, encode_twos_complement, oracle_add,
                    oracle_delay, oracle_invert, oracle_reverse, oracle_reverse_restricted,
                    pad_to_power_of_two, resolution_to_amplitude)
from .frqa import FrqaState, build_preparation_circuit, prepare, retrieve
from .gates import Circuit, Gate, GateCensus, RegisterLayout, cnot_cost
from .ops import (add_signals, build_addition_circuit, build_adder, build_comparator,
                  build_delay_circuit, build_inversion_circuit, build_restricted_reversal_circuit,
                  build_reversal_circuit, delay_signal, invert_signal, reverse_signal)
from .simulator import StateVector, apply_circuit

__all__ = [
    "AudioSignal", "Circuit", "FrqaState", "Gate", "GateCensus", "RegisterLayout", "StateVector",
    "add_signals", "apply_circuit", "build_addition_circuit", "build_adder", "build_comparator",
    "build_delay_circuit", "build_inversion_circuit", "build_preparation_circuit",
    "build_restricted_reversal_circuit", "build_reversal_circuit", "cnot_cost",
    "decode_twos_complement", "delay_signal", "encode_twos_complement", "invert_signal",
    "oracle_add", "oracle_delay", "oracle_invert", "oracle_reverse", "oracle_reverse_restricted",
    "pad_to_power_of_two", "prepare", "resolution_to_amplitude", "retrieve", "reverse_signal",
]
