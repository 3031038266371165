"""Circuit IR: gate lists over numbered wires, coupling maps, metrics, JSON.

A Circuit is immutable.  known_zero records wires promised to start in |0>;
compilation passes may rely on that promise and verification restricts input
columns to it.

JSON schema (stable interchange format):

    circuit:  {"n": int, "known_zero": [int], "gates":
                 [{"kind": str, "wires": [int], "params": [float]}]}
    coupling: {"n": int, "edges": [[int, int]]}

"params" may be omitted for parameter-free kinds; "known_zero" may be omitted
when empty.  Gate kind names are the lowercase strings from gates.ARITY.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Any, Iterable

from .gates import ARITY, GateKind


class CircuitFormatError(ValueError):
    """Raised when circuit/coupling JSON is malformed; message names the field."""


@dataclass(frozen=True)
class Gate:
    kind: GateKind
    wires: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        if len(self.wires) != self.kind.arity:
            raise ValueError(
                f"{self.kind} expects {self.kind.arity} wires, got {self.wires}"
            )
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"repeated wire in {self.kind} on {self.wires}")

    def __str__(self) -> str:
        return f"{self.kind} {' '.join(map(str, self.wires))}"


@dataclass(frozen=True)
class Circuit:
    n_wires: int
    gates: tuple[Gate, ...] = ()
    known_zero: frozenset[int] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        object.__setattr__(self, "known_zero", frozenset(self.known_zero))
        if self.n_wires < 1:
            raise ValueError("circuit needs at least one wire")
        for g in self.gates:
            for w in g.wires:
                if not 0 <= w < self.n_wires:
                    raise ValueError(f"gate {g} touches wire {w} outside 0..{self.n_wires - 1}")
        for w in self.known_zero:
            if not 0 <= w < self.n_wires:
                raise ValueError(f"known_zero wire {w} outside 0..{self.n_wires - 1}")

    def __len__(self) -> int:
        return len(self.gates)

    def extended(self, more: Iterable[Gate]) -> "Circuit":
        return Circuit(self.n_wires, self.gates + tuple(more), self.known_zero)


@dataclass(frozen=True)
class CouplingMap:
    """Undirected connectivity; edges stored as sorted pairs."""

    n_wires: int
    edges: frozenset[tuple[int, int]]

    def __post_init__(self):
        norm = frozenset((min(a, b), max(a, b)) for a, b in self.edges)
        object.__setattr__(self, "edges", norm)
        for a, b in norm:
            if a == b:
                raise ValueError(f"self-loop edge ({a}, {b})")
            if not (0 <= a < self.n_wires and 0 <= b < self.n_wires):
                raise ValueError(f"edge ({a}, {b}) outside 0..{self.n_wires - 1}")

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges

    @staticmethod
    def line(n: int) -> "CouplingMap":
        return CouplingMap(n, frozenset((i, i + 1) for i in range(n - 1)))

    @staticmethod
    def ring(n: int) -> "CouplingMap":
        if n < 3:
            raise ValueError("ring needs n >= 3")
        return CouplingMap(n, frozenset((i, (i + 1) % n) for i in range(n)))

    @staticmethod
    def grid(rows: int, cols: int) -> "CouplingMap":
        edges = set()
        for r in range(rows):
            for c in range(cols):
                w = r * cols + c
                if c + 1 < cols:
                    edges.add((w, w + 1))
                if r + 1 < rows:
                    edges.add((w, w + cols))
        return CouplingMap(rows * cols, frozenset(edges))

    @staticmethod
    def complete(n: int) -> "CouplingMap":
        return CouplingMap(
            n, frozenset((i, j) for i in range(n) for j in range(i + 1, n))
        )


@dataclass(frozen=True)
class Metrics:
    total_gates: int
    single_qubit_gates: int
    two_qubit_gates: int
    three_qubit_gates: int
    depth: int
    two_qubit_depth: int

    def line(self) -> str:
        return (
            f"gates={self.total_gates} 1q={self.single_qubit_gates} "
            f"2q={self.two_qubit_gates} 3q={self.three_qubit_gates} "
            f"depth={self.depth} 2q_depth={self.two_qubit_depth}"
        )


def layers(circuit: Circuit) -> list[list[Gate]]:
    """Greedy as-soon-as-possible layering: each gate lands one past the busiest wire it touches."""
    frontier = [0] * circuit.n_wires
    out: list[list[Gate]] = []
    for g in circuit.gates:
        layer = max(frontier[w] for w in g.wires)
        if layer == len(out):
            out.append([])
        out[layer].append(g)
        for w in g.wires:
            frontier[w] = layer + 1
    return out


def metrics(circuit: Circuit) -> Metrics:
    by_arity = {1: 0, 2: 0, 3: 0}
    for g in circuit.gates:
        by_arity[len(g.wires)] += 1
    lays = layers(circuit)
    two_q_depth = sum(1 for lay in lays if any(len(g.wires) >= 2 for g in lay))
    return Metrics(
        total_gates=len(circuit.gates),
        single_qubit_gates=by_arity[1],
        two_qubit_gates=by_arity[2],
        three_qubit_gates=by_arity[3],
        depth=len(lays),
        two_qubit_depth=two_q_depth,
    )


# Alias: layer count is the headline number, so the metrics bundle also answers to "depth".
depth = metrics


@dataclass(frozen=True)
class Violation:
    gate_index: int
    gate: Gate | None
    reason: str

    def __str__(self) -> str:
        if self.gate is None:
            return self.reason
        return f"gate {self.gate_index} ({self.gate}): {self.reason}"


def validate(circuit: Circuit, coupling: CouplingMap | None = None) -> list[Violation]:
    """Structural checks beyond construction: coupling-map conformance of multi-qubit gates."""
    out = []
    if coupling is None:
        return out
    if coupling.n_wires != circuit.n_wires:
        out.append(Violation(-1, None, f"coupling map has {coupling.n_wires} wires, circuit {circuit.n_wires}"))
        return out
    for i, g in enumerate(circuit.gates):
        if len(g.wires) < 2:
            continue
        for a_i in range(len(g.wires)):
            for b_i in range(a_i + 1, len(g.wires)):
                a, b = g.wires[a_i], g.wires[b_i]
                if not coupling.has_edge(a, b):
                    out.append(Violation(i, g, f"wires {a},{b} not coupled"))
    return out


def circuit_to_dict(circuit: Circuit) -> dict[str, Any]:
    gates = []
    for g in circuit.gates:
        entry: dict[str, Any] = {"kind": g.kind.name, "wires": list(g.wires)}
        if g.kind.params:
            entry["params"] = list(g.kind.params)
        gates.append(entry)
    out: dict[str, Any] = {"n": circuit.n_wires, "gates": gates}
    if circuit.known_zero:
        out["known_zero"] = sorted(circuit.known_zero)
    return out


def circuit_from_dict(data: Any) -> Circuit:
    if not isinstance(data, dict):
        raise CircuitFormatError("circuit document must be a JSON object")
    try:
        n = int(data["n"])
    except (KeyError, TypeError, ValueError):
        raise CircuitFormatError('circuit field "n" must be an integer') from None
    raw_gates = data.get("gates", [])
    if not isinstance(raw_gates, list):
        raise CircuitFormatError('circuit field "gates" must be a list')
    gates = []
    for i, entry in enumerate(raw_gates):
        if not isinstance(entry, dict) or "kind" not in entry or "wires" not in entry:
            raise CircuitFormatError(f'gates[{i}] needs "kind" and "wires"')
        name = entry["kind"]
        if not isinstance(name, str) or name not in ARITY:
            raise CircuitFormatError(f"gates[{i}].kind {name!r} is not a known gate")
        params = entry.get("params", [])
        if not isinstance(params, list):
            raise CircuitFormatError(f"gates[{i}].params must be a list")
        try:
            kind = GateKind(name, tuple(float(p) for p in params))
            gates.append(Gate(kind, tuple(entry["wires"])))
        except (TypeError, ValueError) as e:
            raise CircuitFormatError(f"gates[{i}]: {e}") from None
    known_zero = data.get("known_zero", [])
    if not isinstance(known_zero, list):
        raise CircuitFormatError('circuit field "known_zero" must be a list')
    try:
        return Circuit(n, tuple(gates), frozenset(int(w) for w in known_zero))
    except (TypeError, ValueError) as e:
        raise CircuitFormatError(str(e)) from None


def coupling_to_dict(coupling: CouplingMap) -> dict[str, Any]:
    return {"n": coupling.n_wires, "edges": sorted(list(e) for e in coupling.edges)}


def coupling_from_dict(data: Any) -> CouplingMap:
    if not isinstance(data, dict):
        raise CircuitFormatError("coupling document must be a JSON object")
    try:
        n = int(data["n"])
        edges = frozenset((int(a), int(b)) for a, b in data.get("edges", []))
        return CouplingMap(n, edges)
    except CircuitFormatError:
        raise
    except (KeyError, TypeError, ValueError) as e:
        raise CircuitFormatError(f"bad coupling document: {e}") from None


def dump_json(obj: Circuit | CouplingMap, path: str) -> None:
    to_dict = circuit_to_dict if isinstance(obj, Circuit) else coupling_to_dict
    with open(path, "w") as fh:
        json.dump(to_dict(obj), fh, indent=1)
        fh.write("\n")


def load_circuit(path: str) -> Circuit:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise CircuitFormatError(f"{path}: invalid JSON ({e})") from None
    return circuit_from_dict(data)


def load_coupling(path: str) -> CouplingMap:
    with open(path) as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as e:
            raise CircuitFormatError(f"{path}: invalid JSON ({e})") from None
    return coupling_from_dict(data)
