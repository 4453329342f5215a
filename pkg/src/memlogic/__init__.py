"""memlogic: a deterministic simulator for logic built from memristive elements.

The package models a nonvolatile resistive switching element, the three
memorized gates built from it (MOR, MAND, MNOT), a line-oriented netlist
and stimulus format, a time-stepped circuit engine, and a harness that
ships a one-bit full adder as the reference circuit.
"""

from .device import (
    DeviceParams,
    MemristorState,
    conductance,
    device_current,
    model_current,
    new_state,
    reset,
    step,
)
from .engine import AMBIGUOUS, SimConfig, Trace, i_to_v, read_binary, settle_time, simulate, write_trace
from .gates import (
    R_OFF_CAP,
    GateInstance,
    GateKind,
    make_gate,
    mand_effective_voltage,
    mor_effective_voltage,
)
from .harness import (
    Check,
    Experiment,
    Verdict,
    adder_truth,
    build_full_adder,
    characterize_gate,
    make_pattern_stimulus,
    run_pattern,
)
from .netlist import (
    ArityError,
    CircuitGraph,
    CoverageError,
    CycleError,
    DanglingNetError,
    DuplicateError,
    GateNode,
    NetlistError,
    NetlistSyntaxError,
    OverlapError,
    Segment,
    Stimulus,
    UnknownTerminalError,
    parse_circuit,
    parse_stimulus,
    serialize_circuit,
    serialize_stimulus,
    topological_order,
)

__version__ = "0.1.0"

__all__ = [
    "AMBIGUOUS",
    "ArityError",
    "Check",
    "CircuitGraph",
    "CoverageError",
    "CycleError",
    "DanglingNetError",
    "DeviceParams",
    "DuplicateError",
    "Experiment",
    "GateInstance",
    "GateKind",
    "GateNode",
    "MemristorState",
    "NetlistError",
    "NetlistSyntaxError",
    "OverlapError",
    "R_OFF_CAP",
    "Segment",
    "SimConfig",
    "Stimulus",
    "Trace",
    "UnknownTerminalError",
    "Verdict",
    "adder_truth",
    "build_full_adder",
    "characterize_gate",
    "conductance",
    "device_current",
    "i_to_v",
    "make_gate",
    "make_pattern_stimulus",
    "mand_effective_voltage",
    "model_current",
    "mor_effective_voltage",
    "new_state",
    "parse_circuit",
    "parse_stimulus",
    "read_binary",
    "reset",
    "run_pattern",
    "serialize_circuit",
    "serialize_stimulus",
    "settle_time",
    "simulate",
    "step",
    "topological_order",
    "write_trace",
]
