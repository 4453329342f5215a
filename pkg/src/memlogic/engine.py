"""Time-stepped circuit simulation.

Each timestep resolves node voltages in topological order with zero-delay
combinational semantics: a gate reads its drivers' freshly computed values
for the same step, advances its device by dt under the resulting drive,
and publishes its new output.  Cascade delays therefore come purely from
device kinetics, not from artificial gate delays.

MOR and MAND outputs are currents; the engine converts them to node
voltages through the proportionality constant ``b`` (V = I * b), chosen so
that a fully saturated device driven at logic-1 reproduces logic-1 at the
next input.  MNOT outputs are voltages already and pass through unchanged.
"""

from __future__ import annotations

import hashlib
import io
import json
from dataclasses import dataclass

from .device import DeviceParams, model_current
from .gates import GateInstance, GateKind
from .netlist import CircuitGraph, CoverageError, Stimulus, UnknownTerminalError, topological_order

AMBIGUOUS = "ambiguous"


@dataclass(frozen=True)
class SimConfig:
    """Timestep, horizon and signal-level conventions for one run.

    ``threshold_low``/``threshold_high`` bound the binary readout band:
    voltages above the high threshold read 1, below the low threshold read
    0, and anything between is reported as ambiguous.  The defaults put
    the canonical 0.3 V ambiguity marker inside the band while staying
    reachable by second-level gates within the standard 400 ms protocol.
    """

    dt: float = 1.0
    horizon: float = 400.0
    b: float = 1.5e6
    v_logic1: float = 0.6
    v_logic0: float = 0.1
    threshold_low: float = 0.25
    threshold_high: float = 0.35

    def __post_init__(self) -> None:
        if self.dt <= 0:
            raise ValueError("dt must be positive")
        if self.horizon < self.dt:
            raise ValueError("horizon must cover at least one step")
        if self.b <= 0:
            raise ValueError("current-to-voltage constant must be positive")
        if not self.threshold_low < self.threshold_high:
            raise ValueError("threshold_low must lie below threshold_high")

    @property
    def steps(self) -> int:
        return int(round(self.horizon / self.dt))


def i_to_v(i: float, cfg: SimConfig) -> float:
    """Convert a gate output current to the node voltage seen downstream."""
    return i * cfg.b


@dataclass
class Trace:
    """Per-timestep record of every node voltage and device state.

    ``voltages`` holds one series per column: input terminals by name,
    gates as ``g<ID>``, probes by their declared names (aliases of their
    gate's series).  ``currents``/``x1``/``x2`` hold the device internals
    per gate id.
    """

    config: SimConfig
    times: list[float]
    input_names: tuple[str, ...]
    gate_ids: tuple[int, ...]
    probes: dict[str, int]
    voltages: dict[str, list[float]]
    currents: dict[int, list[float]]
    x1: dict[int, list[float]]
    x2: dict[int, list[float]]

    def column(self, net: str) -> list[float]:
        """Voltage series for an input, probe, or ``g<ID>`` column name."""
        if net in self.voltages:
            return self.voltages[net]
        if net in self.probes:
            return self.voltages[f"g{self.probes[net]}"]
        raise KeyError(f"unknown net {net!r}")

    def index_at(self, t_ms: float) -> int:
        idx = int(round(t_ms / self.config.dt)) - 1
        if not 0 <= idx < len(self.times):
            raise ValueError(f"t={t_ms} ms is outside the recorded horizon")
        return idx

    def voltage_at(self, net: str, t_ms: float) -> float:
        return self.column(net)[self.index_at(t_ms)]

    def csv_columns(self) -> list[str]:
        cols = ["t_ms"]
        cols += list(self.input_names)
        cols += list(self.probes)
        cols += [f"g{i}" for i in self.gate_ids]
        for i in self.gate_ids:
            cols += [f"g{i}_I", f"g{i}_x1", f"g{i}_x2"]
        return cols

    def to_csv(self) -> str:
        """Render the trace as CSV, values in 9-significant-digit scientific notation."""
        out = io.StringIO()
        out.write(",".join(self.csv_columns()) + "\n")
        probe_ids = list(self.probes.values())
        for k, t in enumerate(self.times):
            row = [f"{t:.8e}"]
            row += [f"{self.voltages[name][k]:.8e}" for name in self.input_names]
            row += [f"{self.voltages[f'g{i}'][k]:.8e}" for i in probe_ids]
            row += [f"{self.voltages[f'g{i}'][k]:.8e}" for i in self.gate_ids]
            for i in self.gate_ids:
                row += [f"{self.currents[i][k]:.8e}", f"{self.x1[i][k]:.8e}", f"{self.x2[i][k]:.8e}"]
            out.write(",".join(row) + "\n")
        return out.getvalue()

    def metadata(self, fixture_texts: dict[str, str] | None = None) -> dict:
        """JSON-serializable sidecar: config echo, column list, fixture hashes."""
        meta = {
            "config": {
                "dt": self.config.dt,
                "horizon": self.config.horizon,
                "b": self.config.b,
                "v_logic1": self.config.v_logic1,
                "v_logic0": self.config.v_logic0,
                "threshold_low": self.config.threshold_low,
                "threshold_high": self.config.threshold_high,
            },
            "records": len(self.times),
            "columns": self.csv_columns(),
            "fixtures": {},
        }
        for name, text in (fixture_texts or {}).items():
            meta["fixtures"][name] = hashlib.sha256(text.encode()).hexdigest()
        return meta


def build_gates(graph: CircuitGraph, params: DeviceParams | None = None) -> dict[int, GateInstance]:
    """Fresh gate instances for every node of a graph."""
    params = params or DeviceParams()
    return {node.id: GateInstance(kind=node.kind, params=params) for node in graph.nodes}


def simulate(
    graph: CircuitGraph,
    stimulus: Stimulus,
    cfg: SimConfig | None = None,
    params: DeviceParams | None = None,
    gates: dict[int, GateInstance] | None = None,
) -> Trace:
    """Run the circuit under the stimulus and record a full trace.

    Identical arguments produce bit-identical traces.  Pass ``gates`` to
    continue from previously trained devices; by default every device
    starts fresh.
    """
    cfg = cfg or SimConfig()
    for name in graph.inputs:
        if name not in stimulus.terminals:
            raise UnknownTerminalError(f"stimulus does not drive circuit input {name!r}")
    if stimulus.horizon_ms < cfg.horizon:
        raise CoverageError(
            f"stimulus covers {stimulus.horizon_ms} ms but the run needs {cfg.horizon} ms")
    if gates is None:
        gates = build_gates(graph, params)

    order = topological_order(graph)
    nodes = {node.id: node for node in graph.nodes}
    gate_ids = tuple(node.id for node in graph.nodes)

    times: list[float] = []
    voltages: dict[str, list[float]] = {name: [] for name in graph.inputs}
    voltages.update({f"g{i}": [] for i in gate_ids})
    currents: dict[int, list[float]] = {i: [] for i in gate_ids}
    x1: dict[int, list[float]] = {i: [] for i in gate_ids}
    x2: dict[int, list[float]] = {i: [] for i in gate_ids}

    net: dict[str | int, float] = {}
    for k in range(cfg.steps):
        t0 = k * cfg.dt
        for name in graph.inputs:
            net[name] = stimulus.value_at(name, t0)
        for gate_id in order:
            node = nodes[gate_id]
            gate = gates[gate_id]
            drive_inputs = [net[src] for src in node.sources]
            out = gate.step(drive_inputs, cfg.dt)
            # MOR/MAND emit current; their node value is the B-converted voltage.
            net[gate_id] = out if node.kind is GateKind.MNOT else i_to_v(out, cfg)
        times.append(t0 + cfg.dt)
        for name in graph.inputs:
            voltages[name].append(net[name])
        for gate_id in gate_ids:
            voltages[f"g{gate_id}"].append(net[gate_id])
            currents[gate_id].append(model_current(gates[gate_id].state, gates[gate_id].params))
            x1[gate_id].append(gates[gate_id].state.x1)
            x2[gate_id].append(gates[gate_id].state.x2)

    return Trace(
        config=cfg,
        times=times,
        input_names=graph.inputs,
        gate_ids=gate_ids,
        probes=graph.probes,
        voltages=voltages,
        currents=currents,
        x1=x1,
        x2=x2,
    )


def read_binary(trace: Trace, net: str, t_ms: float, cfg: SimConfig | None = None):
    """Binary readout of a net at time t: 0, 1, or ``AMBIGUOUS``."""
    cfg = cfg or trace.config
    v = trace.voltage_at(net, t_ms)
    if v > cfg.threshold_high:
        return 1
    if v < cfg.threshold_low:
        return 0
    return AMBIGUOUS


def settle_time(
    trace: Trace,
    net: str,
    level,
    cfg: SimConfig | None = None,
    onset_ms: float = 100.0,
) -> float | None:
    """Earliest time from which the net reads ``level`` through the horizon.

    Scans records at or after the input onset; returns None if the net
    never reaches and holds the level.
    """
    cfg = cfg or trace.config
    column = trace.column(net)
    settled: float | None = None
    for k, t in enumerate(trace.times):
        if t < onset_ms:
            continue
        v = column[k]
        if v > cfg.threshold_high:
            verdict = 1
        elif v < cfg.threshold_low:
            verdict = 0
        else:
            verdict = AMBIGUOUS
        if verdict == level:
            if settled is None:
                settled = t
        else:
            settled = None
    return settled


def write_trace(trace: Trace, csv_path: str, fixture_texts: dict[str, str] | None = None) -> None:
    """Write the CSV trace and its JSON metadata sidecar."""
    with open(csv_path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(trace.to_csv())
    with open(csv_path + ".meta.json", "w", encoding="utf-8") as fh:
        json.dump(trace.metadata(fixture_texts), fh, indent=2, sort_keys=True)
        fh.write("\n")
