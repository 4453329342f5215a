"""Reference adder experiments and gate characterization runs."""

import json

import pytest

from memlogic.engine import SimConfig, build_gates, read_binary, settle_time, simulate
from memlogic.gates import GateKind
from memlogic.harness import (
    adder_truth,
    build_full_adder,
    characterize_gate,
    default_characterization_schedule,
    fixture_text,
    make_pattern_stimulus,
    mnot_minimum_across,
    pattern_experiment,
    run_pattern,
)
from memlogic.netlist import parse_stimulus, topological_order

CFG = SimConfig()


class TestAdderGraph:
    def test_shape(self):
        graph = build_full_adder()
        assert len(graph.nodes) == 12
        assert graph.probes == {"COUT": 7, "SUM": 12}
        assert topological_order(graph)  # acyclic

    def test_truth_helper(self):
        assert adder_truth(0, 1, 0) == (1, 0)
        assert adder_truth(1, 0, 1) == (0, 1)
        assert adder_truth(1, 1, 1) == (1, 1)

    def test_pattern_stimulus_matches_fixture(self):
        assert make_pattern_stimulus(0, 1, 0, CFG) == parse_stimulus(fixture_text("pattern_010.mls"))
        assert make_pattern_stimulus(1, 0, 1, CFG) == parse_stimulus(fixture_text("pattern_101.mls"))

    def test_fixture_dir_env_override(self, tmp_path, monkeypatch):
        (tmp_path / "adder.mlc").write_text("input A\ninput B\ngate 1 MOR A B\noutput SUM 1\n")
        monkeypatch.setenv("MEMLOGIC_FIXTURES", str(tmp_path))
        graph = build_full_adder()
        assert len(graph.nodes) == 1
        assert graph.probes == {"SUM": 1}


class TestReferencePatterns:
    def test_010_verdicts(self):
        trace, verdicts = run_pattern(0, 1, 0, CFG)
        assert all(v.passed for v in verdicts), [v.as_dict() for v in verdicts]
        assert read_binary(trace, "SUM", 400.0) == 1
        assert read_binary(trace, "COUT", 400.0) == 0

    def test_101_verdicts(self):
        trace, verdicts = run_pattern(1, 0, 1, CFG)
        assert all(v.passed for v in verdicts), [v.as_dict() for v in verdicts]
        assert read_binary(trace, "SUM", 400.0) == 0
        assert read_binary(trace, "COUT", 400.0) == 1

    def test_010_regression_bands(self):
        trace, _ = run_pattern(0, 1, 0, CFG)
        assert 0.555 < trace.voltage_at("SUM", 400.0) < 0.568
        assert trace.voltage_at("COUT", 400.0) == 0.0

    def test_101_regression_bands(self):
        trace, _ = run_pattern(1, 0, 1, CFG)
        assert 0.234 < trace.voltage_at("SUM", 400.0) < 0.247
        assert 0.388 < trace.voltage_at("COUT", 400.0) < 0.401

    def test_no_probed_net_in_dead_band_at_400(self):
        for bits in ((0, 1, 0), (1, 0, 1)):
            trace, _ = run_pattern(*bits, cfg=CFG)
            for net in ("SUM", "COUT"):
                v = trace.voltage_at(net, 400.0)
                assert not (0.25 < v < 0.35), (bits, net, v)

    def test_000_is_fully_quiescent(self):
        trace, _ = run_pattern(0, 0, 0, CFG)
        for gate_id in trace.gate_ids:
            assert trace.x1[gate_id][-1] == 1.0
            assert trace.x2[gate_id][-1] == 1.0
        assert all(read_binary(trace, "SUM", t) == 0 for t in (1.0, 100.0, 250.0, 400.0))

    def test_verdict_report_is_json_serializable(self):
        _, verdicts = run_pattern(1, 0, 1, CFG)
        payload = json.dumps([v.as_dict() for v in verdicts])
        assert "adder_101" in payload


class TestExtendedTruthTable:
    @pytest.mark.parametrize("a,b,cin", [(a, b, c) for a in (0, 1) for b in (0, 1) for c in (0, 1)])
    def test_all_patterns(self, a, b, cin):
        trace, _ = run_pattern(a, b, cin, CFG)
        s_expected, c_expected = adder_truth(a, b, cin)
        assert read_binary(trace, "SUM", 400.0) == s_expected
        assert read_binary(trace, "COUT", 400.0) == c_expected


class TestMnotFloor:
    def test_global_minimum_brackets_reported_floor(self):
        graph = build_full_adder()
        traces = [run_pattern(*bits, cfg=CFG)[0] for bits in ((0, 1, 0), (1, 0, 1))]
        floor = mnot_minimum_across(traces, graph)
        assert 0.07 <= floor <= 0.13
        # regression: the realized floor sits near 0.104-0.108
        assert 0.10 < floor < 0.115

    def test_inverters_never_reach_zero(self):
        graph = build_full_adder()
        mnot_ids = [n.id for n in graph.nodes if n.kind is GateKind.MNOT]
        for bits in ((0, 1, 0), (1, 0, 1)):
            trace, _ = run_pattern(*bits, cfg=CFG)
            for gate_id in mnot_ids:
                assert min(trace.voltages[f"g{gate_id}"]) > 0.0


class TestLearningPersistence:
    def test_retrained_circuit_settles_faster_on_reinforcing_pattern(self):
        graph = build_full_adder()
        gates = build_gates(graph)
        stim = make_pattern_stimulus(0, 1, 0, CFG)
        first = simulate(graph, stim, CFG, gates=gates)
        t_first = settle_time(first, "SUM", 1)
        second = simulate(graph, stim, CFG, gates=gates)
        t_second = settle_time(second, "SUM", 1)
        assert t_first is not None and t_second is not None
        assert t_second < t_first

    def test_retrained_carry_settles_faster(self):
        graph = build_full_adder()
        gates = build_gates(graph)
        stim = make_pattern_stimulus(1, 0, 1, CFG)
        first = simulate(graph, stim, CFG, gates=gates)
        t_first = settle_time(first, "COUT", 1)
        second = simulate(graph, stim, CFG, gates=gates)
        t_second = settle_time(second, "COUT", 1)
        assert t_first is not None and t_second is not None
        assert t_second < t_first

    @pytest.mark.xfail(
        strict=True,
        reason="Accumulated device state raises the retrained XOR-low readout above the "
        "low threshold: inhibition is nonvolatile but the surviving drive path keeps "
        "strengthening, so the 101 SUM verdict degrades instead of settling faster.",
    )
    def test_retraining_helps_every_probed_verdict(self):
        graph = build_full_adder()
        for bits in ((0, 1, 0), (1, 0, 1)):
            gates = build_gates(graph)
            stim = make_pattern_stimulus(*bits, cfg=CFG)
            s_expected, c_expected = adder_truth(*bits)
            first = simulate(graph, stim, CFG, gates=gates)
            second = simulate(graph, stim, CFG, gates=gates)
            for net, level in (("SUM", s_expected), ("COUT", c_expected)):
                t_first = settle_time(first, net, level)
                t_second = settle_time(second, net, level)
                assert t_first is not None and t_second is not None
                assert t_second < t_first


class TestCharacterization:
    def test_mor_rises_during_activation_and_holds_between(self):
        trace = characterize_gate(GateKind.MOR, default_characterization_schedule(GateKind.MOR, CFG), CFG)
        out = trace.column("OUT")
        idx = {int(ms): trace.index_at(float(ms)) for ms in (100, 101, 150, 160, 200, 250, 300, 310, 400)}
        assert out[idx[150]] > out[idx[101]]                 # rises while driven
        assert out[idx[200]] == out[idx[160]]                # holds in the gap (low-bias readout)
        assert trace.x1[1][idx[200]] == trace.x1[1][idx[150]]  # state frozen in the gap
        assert out[idx[300]] > out[idx[250]]                 # resumes rising
        assert out[idx[400]] == out[idx[310]]                # holds after release
        assert out[idx[300]] > out[idx[150]]                 # accumulation across activations

    def test_mand_flat_for_alternating_then_rises_together(self):
        trace = characterize_gate(GateKind.MAND, default_characterization_schedule(GateKind.MAND, CFG), CFG)
        out = trace.column("OUT")
        t = trace.times
        assert all(out[k] == 0.0 for k in range(t.index(300.0)))   # single inputs: no change
        assert out[-1] > 0.0                                        # joint drive reinforces

    def test_mnot_starts_high_falls_then_holds(self):
        trace = characterize_gate(GateKind.MNOT, default_characterization_schedule(GateKind.MNOT, CFG), CFG)
        out = trace.column("OUT")
        t = trace.times
        k_onset, k_off = t.index(100.0), t.index(250.0)
        assert out[0] >= 0.98 * 0.8
        assert out[k_off] < out[k_onset]
        assert out[-1] == out[k_off + 1]                            # nonvolatile after pulse

    def test_experiment_checks_reference_existing_nets(self):
        exp = pattern_experiment(0, 1, 0, CFG)
        net_names = set(exp.graph.probes) | set(exp.graph.inputs)
        assert all(check.net in net_names for check in exp.checks)
