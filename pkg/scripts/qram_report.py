"""Tabulate QRAM gate counts and pipeline schedules over an (n, k) grid.

For each grid point this prints the closed-form gate-count report and the
pipelined step count with its merged-routing tally; --check additionally
builds the circuit with both extensions and the pipeline on and confirms the
instrumented builder tallies equal every closed form.  --show-schedule n k
prints one full step-by-step schedule and exits.
"""

from __future__ import annotations

import argparse
import sys

from swapnet.qram.build import QramSpec, build_qram_circuit
from swapnet.qram.counts import count_gates
from swapnet.qram.schedule import pipeline_schedule

CHECK_FIELDS = (
    "internal_swap_pairs",
    "root_swaps",
    "setting_routing_pairs",
    "fetch_routing_ops",
    "fetch_unidirectional_pairs",
    "fetch_bidirectional_pairs",
    "ext1_saved_pairs",
    "ext2_saved_pairs",
    "cz_on_qpu",
    "parity_correction_events",
    "extra_memory_cells",
)


def check_against_builder(n: int, k: int) -> list[str]:
    memory = tuple(i % 2**k for i in range(2**n))
    spec = QramSpec(n, k, memory, extensions=True, pipeline=True)
    record = build_qram_circuit(spec).record
    report = count_gates(n, k)
    bad = []
    for field in CHECK_FIELDS:
        built, closed = getattr(record, field), getattr(report, field)
        if built != closed:
            bad.append(f"{field}: built {built} != closed form {closed}")
    return bad


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-n", type=int, default=4, help="largest address width")
    ap.add_argument("--max-k", type=int, default=4, help="largest word width")
    ap.add_argument(
        "--check", action="store_true", help="cross-check tallies by building circuits"
    )
    ap.add_argument(
        "--show-schedule",
        nargs=2,
        type=int,
        metavar=("N", "K"),
        help="print one full schedule and exit",
    )
    args = ap.parse_args(argv)

    if args.show_schedule:
        n, k = args.show_schedule
        print(pipeline_schedule(n, k).text())
        return 0

    failures = 0
    for n in range(1, args.max_n + 1):
        for k in range(1, args.max_k + 1):
            print(count_gates(n, k).table())
            sched = pipeline_schedule(n, k)
            print(
                f"pipeline: {sched.n_steps} steps, "
                f"{sched.merged_routings} merged routings"
            )
            if args.check:
                bad = check_against_builder(n, k)
                failures += len(bad)
                verdict = "builder tallies match" if not bad else "; ".join(bad)
                print(f"check: {verdict}")
            print()
    if failures:
        print(f"{failures} closed-form mismatches", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
