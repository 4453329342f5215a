"""Command-line front end.

Commands:
  run           simulate a netlist under a stimulus, write the trace CSV
  adder         run the bundled full-adder patterns and report verdicts
  characterize  run a single gate under a canned or custom schedule
  check         parse and validate fixtures without simulating

Exit codes: 0 success / all checks passed, 1 a verdict failed,
2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import sys

from .device import DeviceParams
from .engine import SimConfig, simulate, write_trace
from .gates import GateKind
from .harness import characterize_gate, default_characterization_schedule, run_pattern
from .netlist import NetlistError, parse_circuit, parse_stimulus


def _add_config_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--dt", type=float, default=1.0, help="timestep in ms (default 1)")
    parser.add_argument("--horizon", type=float, default=400.0, help="total simulated time in ms (default 400)")
    parser.add_argument("--b", type=float, default=1.5e6, help="current-to-voltage constant in ohms")
    parser.add_argument("--vox", type=float, default=0.5, help="oxidation potential in volts")
    parser.add_argument("--vred", type=float, default=-0.1, help="reduction potential in volts")


def _config_from(args: argparse.Namespace) -> tuple[SimConfig, DeviceParams]:
    cfg = SimConfig(dt=args.dt, horizon=args.horizon, b=args.b)
    params = DeviceParams(v_ox=args.vox, v_red=args.vred)
    return cfg, params


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def cmd_run(args: argparse.Namespace) -> int:
    cfg, params = _config_from(args)
    circuit_text = _read(args.circuit)
    stimulus_text = _read(args.stimulus)
    graph = parse_circuit(circuit_text)
    stimulus = parse_stimulus(stimulus_text)
    trace = simulate(graph, stimulus, cfg, params=params)
    write_trace(trace, args.out, {"circuit": circuit_text, "stimulus": stimulus_text})
    print(f"wrote {len(trace.times)} records to {args.out}")
    return 0


def cmd_adder(args: argparse.Namespace) -> int:
    cfg, _ = _config_from(args)
    report = []
    all_passed = True
    for bits in ((0, 1, 0), (1, 0, 1)):
        _, verdicts = run_pattern(*bits, cfg=cfg)
        for v in verdicts:
            line = f"[{'PASS' if v.passed else 'FAIL'}] {v.experiment}: {v.check}  measured {v.measured}"
            print(line)
            report.append(v.as_dict())
            all_passed = all_passed and v.passed
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(report, fh, indent=2)
            fh.write("\n")
    return 0 if all_passed else 1


def cmd_characterize(args: argparse.Namespace) -> int:
    cfg, params = _config_from(args)
    kind = GateKind(args.gate)
    if args.schedule:
        schedule = parse_stimulus(_read(args.schedule))
    else:
        schedule = default_characterization_schedule(kind, cfg)
    trace = characterize_gate(kind, schedule, cfg, params=params)
    write_trace(trace, args.out)
    print(f"wrote {len(trace.times)} records to {args.out}")
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    graph = parse_circuit(_read(args.circuit))
    print(f"circuit OK: {len(graph.nodes)} gates, inputs {', '.join(graph.inputs)}, "
          f"probes {', '.join(name for name, _ in graph.outputs)}")
    if args.stimulus:
        stimulus = parse_stimulus(_read(args.stimulus))
        print(f"stimulus OK: terminals {', '.join(stimulus.terminals)}, "
              f"horizon {stimulus.horizon_ms:g} ms")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="memlogic", description=__doc__,
                                     formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    p_run = sub.add_parser("run", help="simulate a netlist under a stimulus")
    p_run.add_argument("--circuit", required=True)
    p_run.add_argument("--stimulus", required=True)
    p_run.add_argument("--out", required=True, help="trace CSV path (metadata sidecar written next to it)")
    _add_config_flags(p_run)
    p_run.set_defaults(func=cmd_run)

    p_adder = sub.add_parser("adder", help="run the bundled full-adder acceptance patterns")
    p_adder.add_argument("--out", help="optional JSON verdict report path")
    _add_config_flags(p_adder)
    p_adder.set_defaults(func=cmd_adder)

    p_char = sub.add_parser("characterize", help="run a single gate under a schedule")
    p_char.add_argument("--gate", required=True, choices=[k.value for k in GateKind])
    p_char.add_argument("--schedule", help="stimulus file; a canned schedule is used if omitted")
    p_char.add_argument("--out", required=True)
    _add_config_flags(p_char)
    p_char.set_defaults(func=cmd_characterize)

    p_check = sub.add_parser("check", help="parse and validate fixtures")
    p_check.add_argument("--circuit", required=True)
    p_check.add_argument("--stimulus")
    p_check.set_defaults(func=cmd_check)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except NetlistError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
