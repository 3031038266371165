"""Command line front end.

Result data goes to stdout or the requested output file; metrics, summaries
and progress go to stderr.  Exit codes: 0 success, 1 a verification check
failed, 2 malformed input or I/O trouble.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Any

import numpy as np

from . import __version__, gates
from .circuit import (
    Circuit,
    CircuitFormatError,
    circuit_to_dict,
    load_circuit,
    load_coupling,
    metrics,
)
from .compiler import (
    UnschedulableCZError,
    compile_cnot_baseline,
    compile_ext1,
    compile_ext2,
    compile_iscz,
    load_swap_path,
    verify_equivalence,
)
from .gates import ARITY, GateKind, gate_matrix
from .netbench import MODES, BenchConfig, run_benchmark, summary_text, write_csv, write_json
from .qram import (
    QramSpec,
    build_qram_circuit,
    count_gates,
    load_qram_spec,
    pipeline_schedule,
    verify_qram,
)
from .qram.build import qram_spec_from_dict


def _parse_wires(text: str | None) -> frozenset[int]:
    if not text:
        return frozenset()
    try:
        return frozenset(int(w) for w in text.split(","))
    except ValueError:
        raise CircuitFormatError(f"bad wire list {text!r}; expected e.g. 0,2,5") from None


def _parse_sizes(text: str) -> tuple[int, ...]:
    try:
        if ".." in text:
            lo, hi = text.split("..")
            return tuple(range(int(lo), int(hi) + 1))
        return tuple(int(t) for t in text.split(","))
    except ValueError:
        raise CircuitFormatError(
            f"bad sizes {text!r}; expected e.g. 3..8 or 3,5,7"
        ) from None


def _write_circuit(circuit: Circuit, out_path: str | None) -> None:
    doc = json.dumps(circuit_to_dict(circuit), indent=1) + "\n"
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(doc)
    else:
        sys.stdout.write(doc)


def cmd_compile(args: argparse.Namespace) -> int:
    path = load_swap_path(args.path)
    corrections = 0
    if args.mode == "cnot":
        circuit = compile_cnot_baseline(path)
    elif args.mode == "iscz":
        res = compile_iscz(path)
        circuit, corrections = res.circuit, res.n_corrections
    elif args.mode == "ext1":
        res = compile_ext1(path, _parse_wires(args.known_zero))
        circuit, corrections = res.circuit, res.n_corrections
    else:  # ext2
        if not args.coupling:
            raise CircuitFormatError("--mode ext2 needs --coupling MAP.json")
        coupling = load_coupling(args.coupling)
        res = compile_ext2(path, coupling, args.policy)
        circuit, corrections = res.circuit, res.n_corrections
    _write_circuit(circuit, args.out)
    met = metrics(circuit)
    print(
        f"mode={args.mode} swaps={len(path)} {met.line()} corrections={corrections}",
        file=sys.stderr,
    )
    return 0


def cmd_verify(args: argparse.Namespace) -> int:
    path = load_swap_path(args.path)
    circuit = load_circuit(args.circuit)
    dev = verify_equivalence(path, circuit, constraints=circuit.known_zero)
    print(f"max deviation: {dev:.6e}")
    if dev <= args.tol:
        print("equivalent", file=sys.stderr)
        return 0
    print(f"NOT equivalent at tolerance {args.tol:g}", file=sys.stderr)
    return 1


def cmd_bench(args: argparse.Namespace) -> int:
    config = BenchConfig(
        sizes=_parse_sizes(args.sizes),
        trials=args.trials,
        p=args.p,
        seed=args.seed,
        modes=tuple(args.modes.split(",")) if args.modes else MODES,
    )
    records = run_benchmark(config, jobs=args.jobs)
    if args.csv:
        with open(args.csv, "w") as fh:
            write_csv(records, fh)
    else:
        write_csv(records, sys.stdout)
    if args.json:
        with open(args.json, "w") as fh:
            write_json(records, fh)
    print(summary_text(records), file=sys.stderr)
    return 0


def _qram_spec_from_args(args: argparse.Namespace) -> QramSpec:
    if args.spec:
        return load_qram_spec(args.spec)
    if args.n is None or args.k is None or args.memory is None:
        raise CircuitFormatError("need --spec FILE or all of --n, --k, --memory")
    try:
        memory = tuple(int(v) for v in args.memory.split(","))
    except ValueError:
        raise CircuitFormatError(f"bad memory list {args.memory!r}") from None
    return qram_spec_from_dict(
        {
            "n": args.n,
            "k": args.k,
            "memory": list(memory),
            "extensions": args.extensions,
            "pipeline": args.pipeline,
        }
    )


def cmd_qram_build(args: argparse.Namespace) -> int:
    spec = _qram_spec_from_args(args)
    build = build_qram_circuit(spec)
    _write_circuit(build.circuit, args.out)
    met = metrics(build.circuit)
    rec = build.record
    print(
        f"n={spec.n} k={spec.k} extensions={spec.extensions} pipeline={spec.pipeline} "
        f"wires={build.circuit.n_wires} {met.line()} "
        f"cz_free_pairs={rec.ext1_saved_pairs} deferred_cz_pairs={rec.ext2_saved_pairs} "
        f"bus_cz={rec.cz_on_qpu} phase_gates={rec.phase_correction_gates}",
        file=sys.stderr,
    )
    return 0


def cmd_qram_count(args: argparse.Namespace) -> int:
    report = count_gates(args.n, args.k)
    if args.json:
        print(report.to_json())
    else:
        print(report.table())
    return 0


def cmd_qram_verify(args: argparse.Namespace) -> int:
    spec = _qram_spec_from_args(args)
    inputs = None
    if args.max_inputs:
        rng = np.random.default_rng(args.seed)
        total = 2 ** (spec.n + spec.k)
        chosen = rng.choice(total, size=min(args.max_inputs, total), replace=False)
        inputs = [(int(c) >> spec.k, int(c) % 2**spec.k) for c in sorted(chosen)]
    dev = verify_qram(spec, inputs=inputs)
    print(f"max deviation: {dev:.6e}")
    if dev <= args.tol:
        print("qram circuit verified", file=sys.stderr)
        return 0
    print(f"verification FAILED at tolerance {args.tol:g}", file=sys.stderr)
    return 1


def cmd_schedule(args: argparse.Namespace) -> int:
    print(pipeline_schedule(args.n, args.k).text())
    return 0


def cmd_matrix(args: argparse.Namespace) -> int:
    name = args.gate
    if name not in ARITY:
        raise CircuitFormatError(
            f"unknown gate {name!r}; choose from {', '.join(sorted(ARITY))}"
        )
    params = ()
    if args.params:
        try:
            params = tuple(float(p) for p in args.params.split(","))
        except ValueError:
            raise CircuitFormatError(f"bad params {args.params!r}") from None
    try:
        kind = GateKind(name, params)
    except ValueError as e:
        raise CircuitFormatError(str(e)) from None
    m = gate_matrix(kind)
    if args.json:
        doc: Any = [[[z.real, z.imag] for z in row] for row in m]
        print(json.dumps(doc))
    else:
        for row in m:
            print("  ".join(f"{z.real:+.6f}{z.imag:+.6f}i" for z in row))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="swapnet",
        description="SWAP networks on {CZ, iSWAP}; QRAM circuits and counts.",
    )
    parser.add_argument("--version", action="version", version=f"swapnet {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a swap path JSON to a circuit")
    c.add_argument("--path", required=True, help="swap path JSON file")
    c.add_argument("--mode", choices=("iscz", "cnot", "ext1", "ext2"), default="iscz")
    c.add_argument("--known-zero", help="comma list of wires starting in |0> (ext1)")
    c.add_argument("--coupling", help="coupling map JSON file (ext2)")
    c.add_argument("--policy", choices=("earliest", "latest"), default="earliest")
    c.add_argument("--out", help="write circuit JSON here instead of stdout")
    c.set_defaults(func=cmd_compile)

    v = sub.add_parser("verify", help="check a circuit realizes a swap path")
    v.add_argument("--path", required=True)
    v.add_argument("--circuit", required=True)
    v.add_argument("--tol", type=float, default=1e-10)
    v.set_defaults(func=cmd_verify)

    b = sub.add_parser("bench", help="depth/fidelity benchmark vs CNOT baseline")
    b.add_argument("--sizes", default="3..8", help="e.g. 3..8 or 3,5,7")
    b.add_argument("--trials", type=int, default=100)
    b.add_argument("--p", type=float, default=0.02, help="two-qubit depolarizing strength")
    b.add_argument("--seed", type=int, default=0)
    b.add_argument("--modes", help=f"comma list from {','.join(MODES)}")
    b.add_argument("--csv", help="write records CSV here instead of stdout")
    b.add_argument("--json", help="also write records JSON here")
    b.add_argument("--jobs", type=int, default=1)
    b.set_defaults(func=cmd_bench)

    qb = sub.add_parser("qram-build", help="build a bucket-brigade QRAM circuit")
    qb.add_argument("--spec", help="qram spec JSON file")
    qb.add_argument("--n", type=int, help="address bits (with --k, --memory)")
    qb.add_argument("--k", type=int, help="data bits per word")
    qb.add_argument("--memory", help="comma list of 2**n cell values")
    qb.add_argument("--extensions", action="store_true")
    qb.add_argument("--pipeline", action="store_true")
    qb.add_argument("--out", help="write circuit JSON here instead of stdout")
    qb.set_defaults(func=cmd_qram_build)

    qc = sub.add_parser("qram-count", help="closed-form QRAM gate counts")
    qc.add_argument("--n", type=int, required=True)
    qc.add_argument("--k", type=int, required=True)
    qc.add_argument("--json", action="store_true")
    qc.set_defaults(func=cmd_qram_count)

    qv = sub.add_parser("qram-verify", help="simulate a QRAM spec against the ideal fetch")
    qv.add_argument("--spec", help="qram spec JSON file")
    qv.add_argument("--n", type=int)
    qv.add_argument("--k", type=int)
    qv.add_argument("--memory")
    qv.add_argument("--extensions", action="store_true")
    qv.add_argument("--pipeline", action="store_true")
    qv.add_argument("--tol", type=float, default=1e-9)
    qv.add_argument("--max-inputs", type=int, default=0, help="sample this many basis inputs")
    qv.add_argument("--seed", type=int, default=0, help="sampling seed for --max-inputs")
    qv.set_defaults(func=cmd_qram_verify)

    s = sub.add_parser("schedule", help="print the pipelined fetch schedule")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s.set_defaults(func=cmd_schedule)

    m = sub.add_parser("matrix", help="print a gate unitary")
    m.add_argument("--gate", required=True)
    m.add_argument("--params", help="comma list of angles, e.g. 1.5708,3.1416")
    m.add_argument("--json", action="store_true")
    m.set_defaults(func=cmd_matrix)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (CircuitFormatError, UnschedulableCZError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
