"""Parsing and validation of circuit and stimulus descriptions.

Both formats are line oriented, UTF-8, with ``#`` starting a comment and
an optional leading ``format memlogic/1`` version line.

Netlist grammar::

    input <NAME>
    gate <ID> <MOR|MAND|MNOT> <src> [<src>]
    output <NAME> <ID>

where ``<src>`` is either a declared input name or a gate id.  Gates may
reference ids declared later in the file; the graph is validated as a
whole after parsing.

Stimulus grammar::

    <NAME>: <start>..<end>=<volts>, <start>..<end>=<volts>, ...

with times in milliseconds.  Intervals per terminal must tile [0, horizon]
without gaps or overlaps, where the horizon is the largest end time in
the file.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass

from .gates import GateKind

FORMAT_LINE = "format memlogic/1"


class NetlistError(ValueError):
    """Base class for every diagnostic produced by this module."""

    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}"
            if column is not None:
                where += f", column {column}"
            where += ": "
        super().__init__(where + message)


class NetlistSyntaxError(NetlistError):
    pass


class DuplicateError(NetlistError):
    pass


class ArityError(NetlistError):
    pass


class DanglingNetError(NetlistError):
    pass


class CycleError(NetlistError):
    pass


class OverlapError(NetlistError):
    pass


class CoverageError(NetlistError):
    pass


class UnknownTerminalError(NetlistError):
    pass


@dataclass(frozen=True)
class GateNode:
    """One gate declaration: id, kind and its driver references.

    Sources are input terminal names (str) or gate ids (int), in pin order.
    """

    id: int
    kind: GateKind
    sources: tuple[str | int, ...]


@dataclass(frozen=True)
class CircuitGraph:
    """Validated, acyclic gate-level netlist."""

    nodes: tuple[GateNode, ...]
    inputs: tuple[str, ...]
    outputs: tuple[tuple[str, int], ...]  # (probe name, gate id), declaration order

    def node_by_id(self, node_id: int) -> GateNode:
        for node in self.nodes:
            if node.id == node_id:
                return node
        raise KeyError(node_id)

    @property
    def probes(self) -> dict[str, int]:
        return dict(self.outputs)


@dataclass(frozen=True)
class Segment:
    start: float
    end: float
    volts: float


@dataclass(frozen=True)
class Stimulus:
    """Piecewise-constant input waveforms covering [0, horizon_ms]."""

    segments: tuple[tuple[str, tuple[Segment, ...]], ...]
    horizon_ms: float

    @property
    def terminals(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.segments)

    def value_at(self, terminal: str, t_ms: float) -> float:
        """Voltage on a terminal at time t (segments are half-open on the right)."""
        for name, segs in self.segments:
            if name == terminal:
                for seg in segs:
                    if seg.start <= t_ms < seg.end:
                        return seg.volts
                if t_ms >= self.horizon_ms:
                    return segs[-1].volts
                raise CoverageError(f"terminal {terminal} has no segment covering t={t_ms}")
        raise UnknownTerminalError(f"unknown terminal {terminal!r}")


_NAME_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


def _significant_lines(text: str) -> list[tuple[int, str]]:
    out = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        stripped = raw.split("#", 1)[0].rstrip()
        if stripped.strip():
            out.append((lineno, stripped))
    return out


def _check_format_line(lines: list[tuple[int, str]]) -> list[tuple[int, str]]:
    if lines and lines[0][1].strip().startswith("format"):
        lineno, content = lines[0]
        if content.strip() != FORMAT_LINE:
            raise NetlistSyntaxError(f"unsupported format {content.strip()!r}", lineno, 1)
        return lines[1:]
    return lines


def _column_of(line: str, token_index: int) -> int:
    # 1-based column of the token_index-th whitespace-separated token
    pos = 0
    for i, tok in enumerate(line.split()):
        pos = line.index(tok, pos)
        if i == token_index:
            return pos + 1
        pos += len(tok)
    return len(line) + 1


def parse_circuit(text: str) -> CircuitGraph:
    """Parse and validate a netlist, returning the circuit graph.

    Raises a :class:`NetlistError` subclass with the offending line (and
    column where it applies) on any problem: unknown syntax, duplicate
    ids or names, arity mismatches, dangling references and cycles each
    produce a distinct error type.
    """
    inputs: list[str] = []
    nodes: list[GateNode] = []
    outputs: list[tuple[str, int]] = []
    seen_ids: dict[int, int] = {}
    seen_names: dict[str, int] = {}
    output_lines: list[tuple[int, str, int]] = []

    for lineno, line in _check_format_line(_significant_lines(text)):
        tokens = line.split()
        keyword = tokens[0]
        if keyword == "input":
            if len(tokens) != 2:
                raise NetlistSyntaxError("expected: input <NAME>", lineno, 1)
            name = tokens[1]
            if not _NAME_RE.match(name):
                raise NetlistSyntaxError(f"invalid input name {name!r}", lineno, _column_of(line, 1))
            if name in seen_names:
                raise DuplicateError(f"name {name!r} already declared on line {seen_names[name]}", lineno)
            seen_names[name] = lineno
            inputs.append(name)
        elif keyword == "gate":
            if len(tokens) < 4:
                raise NetlistSyntaxError("expected: gate <ID> <KIND> <src> [<src>]", lineno, 1)
            try:
                gate_id = int(tokens[1])
            except ValueError:
                raise NetlistSyntaxError(f"gate id must be an integer, got {tokens[1]!r}",
                                         lineno, _column_of(line, 1)) from None
            if gate_id <= 0:
                raise NetlistSyntaxError(f"gate id must be positive, got {gate_id}", lineno, _column_of(line, 1))
            if gate_id in seen_ids:
                raise DuplicateError(f"gate id {gate_id} already declared on line {seen_ids[gate_id]}", lineno)
            try:
                kind = GateKind(tokens[2])
            except ValueError:
                raise NetlistSyntaxError(f"unknown gate kind {tokens[2]!r}",
                                         lineno, _column_of(line, 2)) from None
            srcs = tokens[3:]
            if len(srcs) != kind.arity:
                raise ArityError(f"{kind.value} takes {kind.arity} input(s), got {len(srcs)}", lineno)
            sources: list[str | int] = []
            for i, src in enumerate(srcs):
                if re.fullmatch(r"\d+", src):
                    sources.append(int(src))
                elif _NAME_RE.match(src):
                    sources.append(src)
                else:
                    raise NetlistSyntaxError(f"invalid source {src!r}", lineno, _column_of(line, 3 + i))
            seen_ids[gate_id] = lineno
            nodes.append(GateNode(gate_id, kind, tuple(sources)))
        elif keyword == "output":
            if len(tokens) != 3:
                raise NetlistSyntaxError("expected: output <NAME> <ID>", lineno, 1)
            name = tokens[1]
            if not _NAME_RE.match(name):
                raise NetlistSyntaxError(f"invalid output name {name!r}", lineno, _column_of(line, 1))
            if name in seen_names:
                raise DuplicateError(f"name {name!r} already declared on line {seen_names[name]}", lineno)
            try:
                target = int(tokens[2])
            except ValueError:
                raise NetlistSyntaxError(f"output target must be a gate id, got {tokens[2]!r}",
                                         lineno, _column_of(line, 2)) from None
            seen_names[name] = lineno
            output_lines.append((lineno, name, target))
        elif keyword == "format":
            raise NetlistSyntaxError("format line must come first", lineno, 1)
        else:
            raise NetlistSyntaxError(f"unknown directive {keyword!r}", lineno, 1)

    input_set = set(inputs)
    for node in nodes:
        for src in node.sources:
            if isinstance(src, int):
                if src not in seen_ids:
                    raise DanglingNetError(f"gate {node.id} references undeclared gate {src}",
                                           seen_ids[node.id])
            elif src not in input_set:
                raise DanglingNetError(f"gate {node.id} references undeclared input {src!r}",
                                       seen_ids[node.id])
    for lineno, name, target in output_lines:
        if target not in seen_ids:
            raise DanglingNetError(f"output {name!r} references undeclared gate {target}", lineno)
        outputs.append((name, target))

    graph = CircuitGraph(tuple(nodes), tuple(inputs), tuple(outputs))
    topological_order(graph)  # rejects cycles
    return graph


def topological_order(graph: CircuitGraph) -> list[int]:
    """Gate ids ordered so that every gate follows all of its drivers.

    Ties are broken by declaration order, so the result is deterministic.
    Raises :class:`CycleError` naming a member if the graph has a cycle.
    """
    decl_index = {node.id: i for i, node in enumerate(graph.nodes)}
    dependents: dict[int, list[int]] = {node.id: [] for node in graph.nodes}
    in_degree: dict[int, int] = {}
    for node in graph.nodes:
        gate_deps = [s for s in node.sources if isinstance(s, int)]
        in_degree[node.id] = len(gate_deps)
        for dep in gate_deps:
            dependents[dep].append(node.id)

    ready = sorted((i for i, d in in_degree.items() if d == 0), key=decl_index.__getitem__)
    order: list[int] = []
    while ready:
        current = ready.pop(0)
        order.append(current)
        changed = False
        for dep in dependents[current]:
            in_degree[dep] -= 1
            if in_degree[dep] == 0:
                ready.append(dep)
                changed = True
        if changed:
            ready.sort(key=decl_index.__getitem__)
    if len(order) != len(graph.nodes):
        stuck = min((i for i, d in in_degree.items() if d > 0), key=decl_index.__getitem__)
        raise CycleError(f"circuit contains a feedback loop through gate {stuck}")
    return order


_SEGMENT_RE = re.compile(r"^\s*([-0-9.eE+]+)\s*\.\.\s*([-0-9.eE+]+)\s*=\s*([-0-9.eE+]+)\s*$")


def parse_stimulus(text: str) -> Stimulus:
    """Parse and validate a stimulus description.

    Every terminal's intervals must tile [0, horizon] exactly, where the
    horizon is the largest end time seen anywhere in the file.
    """
    per_terminal: list[tuple[str, list[Segment], int]] = []
    seen: dict[str, int] = {}
    for lineno, line in _check_format_line(_significant_lines(text)):
        if ":" not in line:
            raise NetlistSyntaxError("expected: <NAME>: <start>..<end>=<volts>, ...", lineno, 1)
        name, _, rest = line.partition(":")
        name = name.strip()
        if not _NAME_RE.match(name):
            raise NetlistSyntaxError(f"invalid terminal name {name!r}", lineno, 1)
        if name in seen:
            raise DuplicateError(f"terminal {name!r} already declared on line {seen[name]}", lineno)
        seen[name] = lineno
        segments = []
        for piece in rest.split(","):
            m = _SEGMENT_RE.match(piece)
            if not m:
                raise NetlistSyntaxError(f"bad interval {piece.strip()!r}", lineno, line.index(piece.strip()) + 1)
            try:
                start, end, volts = (float(m.group(i)) for i in (1, 2, 3))
            except ValueError:
                raise NetlistSyntaxError(f"bad number in interval {piece.strip()!r}", lineno) from None
            if not (math.isfinite(start) and math.isfinite(end) and math.isfinite(volts)):
                raise NetlistSyntaxError(f"non-finite value in interval {piece.strip()!r}", lineno)
            if end <= start:
                raise NetlistSyntaxError(f"empty interval {piece.strip()!r}", lineno)
            segments.append(Segment(start, end, volts))
        if not segments:
            raise NetlistSyntaxError(f"terminal {name!r} declares no intervals", lineno)
        per_terminal.append((name, segments, lineno))

    if not per_terminal:
        raise NetlistSyntaxError("stimulus declares no terminals", 1, 1)

    horizon = max(seg.end for _, segs, _ in per_terminal for seg in segs)
    validated: list[tuple[str, tuple[Segment, ...]]] = []
    for name, segs, lineno in per_terminal:
        segs = sorted(segs, key=lambda s: s.start)
        cursor = 0.0
        for seg in segs:
            if seg.start < cursor:
                raise OverlapError(f"terminal {name!r}: interval {seg.start}..{seg.end} overlaps the previous one",
                                   lineno)
            if seg.start > cursor:
                raise CoverageError(f"terminal {name!r}: gap between t={cursor} and t={seg.start}", lineno)
            cursor = seg.end
        if cursor != horizon:
            raise CoverageError(f"terminal {name!r} ends at t={cursor} but the horizon is {horizon}", lineno)
        validated.append((name, tuple(segs)))
    return Stimulus(tuple(validated), horizon)


def serialize_circuit(graph: CircuitGraph) -> str:
    """Canonical text for a graph; parsing it back yields an equal graph."""
    lines = [FORMAT_LINE]
    lines += [f"input {name}" for name in graph.inputs]
    for node in graph.nodes:
        srcs = " ".join(str(s) for s in node.sources)
        lines.append(f"gate {node.id} {node.kind.value} {srcs}")
    lines += [f"output {name} {target}" for name, target in graph.outputs]
    return "\n".join(lines) + "\n"


def serialize_stimulus(stim: Stimulus) -> str:
    """Canonical text for a stimulus; parsing it back yields an equal stimulus."""
    lines = [FORMAT_LINE]
    for name, segs in stim.segments:
        body = ", ".join(f"{seg.start:g}..{seg.end:g}={seg.volts:g}" for seg in segs)
        lines.append(f"{name}: {body}")
    return "\n".join(lines) + "\n"
