"""Command-line front end.

Subcommands: solve, compile, census, cross-check, demo, report. Exit codes
are 0 for satisfiable, 1 for unsatisfiable, 2 for input errors, 3 for an
exceeded size guard, and 4 when cross-check finds disagreeing engines.
"""

from __future__ import annotations

import argparse
import random
import sys

import numpy as np

from . import circuit as circuit_mod
from . import dna, report, sim, solver
from .cnf import (
    Formula,
    example_formula,
    format_assignment,
    parse_dimacs,
    random_formula,
)
from .errors import GuardError, InputError

EXIT_SAT = 0
EXIT_UNSAT = 1
EXIT_INPUT_ERROR = 2
EXIT_GUARD = 3
EXIT_MISMATCH = 4


def _load_formula(path: str) -> Formula:
    try:
        with open(path, "r", encoding="utf-8") as handle:
            return parse_dimacs(handle.read())
    except OSError as err:
        raise InputError(f"cannot read {path}: {err.strerror}") from None


def _format_solution(assignment) -> str:
    named = " ".join(
        f"u{v}={assignment[v - 1]}" for v in range(len(assignment), 0, -1)
    )
    return f"{named}    (bits {format_assignment(assignment)})"


# ---- solve ----


def _cmd_solve(args: argparse.Namespace) -> int:
    formula = _load_formula(args.path)
    if args.engine != "quantum" and (args.samples or args.dump_state):
        raise InputError("--samples and --dump-state need --engine quantum")
    if args.engine != "dna" and args.trace:
        raise InputError("--trace needs --engine dna")

    sample_lines: list[str] = []

    def on_final_state(state: sim.StateVector, layout: circuit_mod.RegisterLayout) -> None:
        if args.dump_state:
            written = sim.dump_state(state, args.dump_state)
            sample_lines.append(f"wrote {written} support lines to {args.dump_state}")
        if args.samples:
            rng = np.random.default_rng(args.seed)
            counts = sim.sample_counts(state, args.samples, rng)
            sample_lines.append(f"samples ({args.samples} shots of the final state):")
            hits_on_final_and = 0
            for index in sorted(counts):
                if (index >> layout.c[-1]) & 1:
                    hits_on_final_and += counts[index]
                sample_lines.append(
                    f"  {layout.format_basis(index)}  {counts[index]}"
                )
            sample_lines.append(
                f"shots with c{formula.m}=1: {hits_on_final_and}/{args.samples}"
            )

    if args.trace:
        with dna.trace_primitives() as trace:
            result = solver.solve(formula, args.engine, qubit_limit=args.qubit_limit)
        for line in trace.format_lines():
            print(line, file=sys.stderr)
    else:
        result = solver.solve(
            formula,
            args.engine,
            qubit_limit=args.qubit_limit,
            on_final_state=on_final_state,
        )

    if args.json:
        print(solver.report_to_json(result))
    else:
        print(f"formula: {formula}   [n={formula.n} m={formula.m}]")
        print(f"engine: {result.engine}")
        if result.solutions:
            print(f"solutions ({len(result.solutions)}):")
            for assignment in result.solutions:
                print(f"  {_format_solution(assignment)}")
        else:
            print("no solutions (UNSAT)")
        if result.selection_probability is not None:
            print(f"selection probability: {result.selection_probability!r}")
        if result.census is not None:
            census = result.census
            print(
                f"census: H={census.h} X={census.x} CNOT={census.cnot} "
                f"TOFFOLI={census.toffoli} PHASE={census.phase} qubits={census.qubits}"
            )
        print(f"elapsed: {result.elapsed_ms:.3f} ms")
    # keep stdout pure JSON when asked for it
    sample_sink = sys.stderr if args.json else sys.stdout
    for line in sample_lines:
        print(line, file=sample_sink)
    return EXIT_SAT if result.satisfiable else EXIT_UNSAT


# ---- compile ----


def _cmd_compile(args: argparse.Namespace) -> int:
    formula = _load_formula(args.path)
    compiled = circuit_mod.compile_formula(formula, qubit_limit=args.qubit_limit)
    text = circuit_mod.format_circuit(compiled)
    if args.output == "-":
        sys.stdout.write(text)
    else:
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text)
        census = circuit_mod.gate_census(compiled)
        print(f"wrote {census.total_gates} gates on {census.qubits} qubits to {args.output}")
    return EXIT_SAT


# ---- census ----


def _cmd_census(args: argparse.Namespace) -> int:
    formula = _load_formula(args.path)
    compiled = circuit_mod.compile_formula(formula, qubit_limit=args.qubit_limit)
    census = circuit_mod.gate_census(compiled)
    bounds = circuit_mod.check_bounds(census, formula.n, formula.m)
    if args.json:
        import json

        payload = {
            "n": formula.n,
            "m": formula.m,
            "census": census.as_dict(),
            "bounds": [
                {
                    "name": check.name,
                    "measured": check.measured,
                    "bound": check.bound,
                    "exact": check.exact,
                    "passed": check.passed,
                    "ratio": check.ratio,
                }
                for check in bounds.checks
            ],
            "all_bounds_pass": bounds.all_passed,
        }
        print(json.dumps(payload, indent=2))
    else:
        print(f"formula: {formula}   [n={formula.n} m={formula.m}]")
        print(bounds.format_table())
        print(f"all bounds pass: {bounds.all_passed}")
    return EXIT_SAT


# ---- cross-check ----


def _cmd_cross_check(args: argparse.Namespace) -> int:
    formula = _load_formula(args.path)
    result = solver.cross_check(formula, qubit_limit=args.qubit_limit)
    for engine in solver.ENGINES:
        engine_report = result.reports[engine]
        print(
            f"{engine:<8} solutions={len(engine_report.solutions)} "
            f"elapsed={engine_report.elapsed_ms:.3f} ms"
        )
    if not result.agree:
        print("ENGINES DISAGREE:")
        for line in result.mismatches:
            print(f"  {line}")
        return EXIT_MISMATCH
    satisfiable = result.reports["brute"].satisfiable
    print(f"all engines agree: {'SAT' if satisfiable else 'UNSAT'}")
    return EXIT_SAT if satisfiable else EXIT_UNSAT


# ---- demo ----


def _print_support(state: sim.StateVector, layout: circuit_mod.RegisterLayout) -> None:
    for entry in sim.support(state):
        amplitude = entry.amplitude
        if abs(amplitude.imag) < 1e-15:
            shown = f"{amplitude.real:+.10g}"
        else:
            shown = f"{amplitude:.10g}"
        print(f"  {layout.format_basis(entry.index)}  amplitude {shown}")


def _demo_example_formula(qubit_limit: int) -> int:
    formula = example_formula()
    print(f"formula: {formula}")
    print("dimacs: p cnf 2 3 / 2 1 0 / -2 -1 0 / 1 0")
    compiled = circuit_mod.compile_formula(formula, qubit_limit=qubit_limit)
    layout = compiled.layout
    census = circuit_mod.gate_census(compiled)
    print(
        f"layout: qubits={layout.qubit_count} u={list(layout.u)} y={list(layout.y)} "
        f"r={list(layout.r)} c={list(layout.c)}"
    )
    print(f"initial state: {layout.format_basis(compiled.initial_index)}")
    print(
        f"census: H={census.h} X={census.x} CNOT={census.cnot} "
        f"TOFFOLI={census.toffoli} qubits={census.qubits}"
    )
    state = sim.run(compiled)
    print("final support (one branch per assignment, ket reads u y r c):")
    _print_support(state, layout)
    probability, selected = sim.post_select(state, layout.c[-1], 1)
    print(f"post-select c{formula.m}=1: probability {probability!r}")
    print("post-selected support:")
    _print_support(selected, layout)
    for entry in sim.support(selected):
        bits_high_first = sim.read_register(entry, layout, "u")
        assignment = tuple(reversed(bits_high_first))
        print(f"solution: {_format_solution(assignment)}")
    return EXIT_SAT


def _demo_minimal_circuit() -> int:
    compiled = circuit_mod.minimal_single_variable_circuit()
    layout = compiled.layout
    print("minimal single-variable circuit (qubits: u1=2, y1=1, c1=0):")
    print(circuit_mod.format_circuit(compiled), end="")
    state = sim.run(compiled)
    print("output support (ket reads u1 y1 c1):")
    _print_support(state, layout)
    probability, selected = sim.post_select(state, layout.c[-1], 1)
    print(f"post-select c1=1: probability {probability!r}")
    _print_support(selected, layout)
    return EXIT_SAT


def _demo_superposition(n: int) -> int:
    if n > dna.TUBE_MAX_VARS:
        raise GuardError(f"superposition demo is capped at n <= {dna.TUBE_MAX_VARS}")
    with dna.trace_primitives() as trace:
        tube = dna.uniform_tube(n)
    print(f"primitive trace ({len(trace.events)} steps):")
    for line in trace.format_lines():
        print(f"  {line}")
    print(f"tube: {len(tube)} distinct strands, {tube.total} molecules")
    strands = sorted(tube.strands(), key=dna.Strand.sort_key)
    shown = strands if len(strands) <= 64 else strands[:64]
    for strand in shown:
        print(f"  {strand}")
    if len(strands) > len(shown):
        print(f"  ... {len(strands) - len(shown)} more")
    print(
        f"matches the H^{n} state: 2^{n} equal-weight bitstrings, "
        f"amplitude 2^(-{n}/2) each"
    )
    return EXIT_SAT


def _cmd_demo(args: argparse.Namespace) -> int:
    if args.eq1:
        return _demo_example_formula(args.qubit_limit)
    if args.fig3:
        return _demo_minimal_circuit()
    return _demo_superposition(args.superposition)


# ---- report ----


def _cmd_report(args: argparse.Namespace) -> int:
    formulas: list[tuple[str, Formula]] = []
    for path in args.paths:
        formulas.append((path.rsplit("/", 1)[-1], _load_formula(path)))
    if args.random:
        rng = random.Random(args.seed)
        for i in range(args.random):
            n = rng.randint(1, args.max_n)
            m = rng.randint(1, args.max_m)
            formulas.append((f"random-{i:03d}", random_formula(rng, n, m)))
    if not formulas:
        raise InputError("report needs .cnf paths and/or --random N")
    paths = report.write_report(formulas, args.out_dir, qubit_limit=args.qubit_limit)
    for label, path in paths.items():
        print(f"{label}: {path}")
    return EXIT_SAT


# ---- parser ----


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dnaqsat",
        description=(
            "SAT via two simulated physical substrates: DNA tube filtering and "
            "a compiled reversible circuit, cross-checked against brute force."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_solve = sub.add_parser("solve", help="solve a DIMACS file with one engine")
    p_solve.add_argument("path", help="DIMACS .cnf file")
    p_solve.add_argument(
        "--engine", choices=solver.ENGINES, default="quantum", help="engine to run"
    )
    p_solve.add_argument("--json", action="store_true", help="print the report as JSON")
    p_solve.add_argument(
        "--samples", type=int, default=0, metavar="N",
        help="also draw N measurement shots from the final state (quantum)",
    )
    p_solve.add_argument(
        "--seed", type=int, default=None, help="seed for --samples shots"
    )
    p_solve.add_argument(
        "--qubit-limit", type=int, default=circuit_mod.DEFAULT_QUBIT_LIMIT,
        help="refuse circuits wider than this (default %(default)s)",
    )
    p_solve.add_argument(
        "--trace", action="store_true",
        help="print one line per tube primitive to stderr (dna)",
    )
    p_solve.add_argument(
        "--dump-state", metavar="PATH", default=None,
        help="write the final pre-selection state's support to PATH (quantum)",
    )
    p_solve.set_defaults(func=_cmd_solve)

    p_compile = sub.add_parser("compile", help="compile a DIMACS file to circuit text")
    p_compile.add_argument("path", help="DIMACS .cnf file")
    p_compile.add_argument(
        "--output", default="-", metavar="PATH", help="output file (default stdout)"
    )
    p_compile.add_argument(
        "--qubit-limit", type=int, default=circuit_mod.DEFAULT_QUBIT_LIMIT,
        help="refuse circuits wider than this (default %(default)s)",
    )
    p_compile.set_defaults(func=_cmd_compile)

    p_census = sub.add_parser("census", help="gate counts and resource-envelope audit")
    p_census.add_argument("path", help="DIMACS .cnf file")
    p_census.add_argument("--json", action="store_true", help="JSON output")
    p_census.add_argument(
        "--qubit-limit", type=int, default=circuit_mod.DEFAULT_QUBIT_LIMIT,
        help="refuse circuits wider than this (default %(default)s)",
    )
    p_census.set_defaults(func=_cmd_census)

    p_cross = sub.add_parser("cross-check", help="run all three engines and compare")
    p_cross.add_argument("path", help="DIMACS .cnf file")
    p_cross.add_argument(
        "--qubit-limit", type=int, default=circuit_mod.DEFAULT_QUBIT_LIMIT,
        help="refuse circuits wider than this (default %(default)s)",
    )
    p_cross.set_defaults(func=_cmd_cross_check)

    p_demo = sub.add_parser("demo", help="built-in walkthroughs")
    group = p_demo.add_mutually_exclusive_group(required=True)
    group.add_argument(
        "--eq1", action="store_true",
        help="the two-variable three-clause instance, compiled and post-selected",
    )
    group.add_argument(
        "--fig3", action="store_true",
        help="the minimal 3-qubit single-variable circuit",
    )
    group.add_argument(
        "--superposition", type=int, metavar="N",
        help="build the 2^N-strand uniform tube from primitives, with trace",
    )
    p_demo.add_argument(
        "--qubit-limit", type=int, default=circuit_mod.DEFAULT_QUBIT_LIMIT,
        help=argparse.SUPPRESS,
    )
    p_demo.set_defaults(func=_cmd_demo)

    p_report = sub.add_parser(
        "report", help="census CSV plus audit figures for a batch of formulas"
    )
    p_report.add_argument("paths", nargs="*", help="DIMACS .cnf files")
    p_report.add_argument(
        "--random", type=int, default=0, metavar="K", help="add K random formulas"
    )
    p_report.add_argument("--seed", type=int, default=0, help="seed for --random")
    p_report.add_argument("--max-n", type=int, default=5, help="random formula n cap")
    p_report.add_argument("--max-m", type=int, default=8, help="random formula m cap")
    p_report.add_argument(
        "--out-dir", default="dnaqsat-report", help="output directory"
    )
    p_report.add_argument(
        "--qubit-limit", type=int, default=circuit_mod.DEFAULT_QUBIT_LIMIT,
        help="simulate only circuits within this width (default %(default)s)",
    )
    p_report.set_defaults(func=_cmd_report)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except InputError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except GuardError as err:
        print(f"guard exceeded: {err}", file=sys.stderr)
        return EXIT_GUARD
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT_ERROR


if __name__ == "__main__":
    raise SystemExit(main())
