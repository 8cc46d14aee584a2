"""Three SAT engines behind one report format, plus their cross-check.

Engines:
  brute    exhaustive evaluation of all 2^n assignments
  dna      tube filtering over exact strand multisets
  quantum  compile to a reversible circuit, simulate, post-select the
           final AND qubit on 1, and read assignments off the support

All three return a SolveReport with identical `solutions`; cross_check
runs them together and reports any symmetric differences.
"""

from __future__ import annotations

import json
import time
from dataclasses import dataclass, field

from . import circuit as circuit_mod
from . import sim
from .cnf import Assignment, Formula, brute_force_solutions
from .dna import lipton_solve
from .errors import InputError

ENGINES = ("quantum", "dna", "brute")


@dataclass
class SolveReport:
    """Outcome of one engine run.

    census and selection_probability are populated for the quantum engine
    and None otherwise. `support` keeps the post-selected support entries
    (quantum only); it is working metadata and stays out of the JSON form.
    """

    engine: str
    n: int
    m: int
    solutions: list[Assignment]
    census: circuit_mod.GateCensus | None
    selection_probability: float | None
    elapsed_ms: float
    support: list[sim.SupportEntry] = field(default_factory=list, compare=False, repr=False)

    @property
    def satisfiable(self) -> bool:
        return bool(self.solutions)


def _solve_quantum(
    formula: Formula, qubit_limit: int, on_final_state=None
) -> tuple[list[Assignment], circuit_mod.GateCensus, float, list[sim.SupportEntry]]:
    compiled = circuit_mod.compile_formula(formula, qubit_limit=qubit_limit)
    census = circuit_mod.gate_census(compiled)
    layout = compiled.layout
    state = sim.run(compiled)
    if on_final_state is not None:
        on_final_state(state, layout)
    try:
        probability, selected = sim.post_select(state, layout.c[-1], 1)
    except sim.ZeroProbabilityError:
        return [], census, 0.0, []
    entries = sim.support(selected)
    solutions = []
    for entry in entries:
        bits_high_first = sim.read_register(entry, layout, "u")
        solutions.append(tuple(reversed(bits_high_first)))
    solutions = sorted(set(solutions), key=lambda a: sum(b << i for i, b in enumerate(a)))
    return solutions, census, probability, entries


def solve(
    formula: Formula,
    engine: str,
    qubit_limit: int = circuit_mod.DEFAULT_QUBIT_LIMIT,
    on_final_state=None,
) -> SolveReport:
    """Run one engine. `on_final_state(state, layout)` fires for the quantum
    engine right before post-selection, for dumps and sampling."""
    if engine not in ENGINES:
        raise InputError(f"engine must be one of {', '.join(ENGINES)}; got {engine!r}")
    census: circuit_mod.GateCensus | None = None
    probability: float | None = None
    entries: list[sim.SupportEntry] = []
    started = time.perf_counter()
    if engine == "brute":
        solutions = brute_force_solutions(formula)
    elif engine == "dna":
        solutions = lipton_solve(formula)
    else:
        solutions, census, probability, entries = _solve_quantum(
            formula, qubit_limit, on_final_state
        )
    elapsed_ms = (time.perf_counter() - started) * 1000.0
    return SolveReport(
        engine=engine,
        n=formula.n,
        m=formula.m,
        solutions=solutions,
        census=census,
        selection_probability=probability,
        elapsed_ms=elapsed_ms,
        support=entries,
    )


# ---- Cross-check ----


@dataclass
class CrossCheck:
    agree: bool
    reports: dict[str, SolveReport]
    mismatches: list[str]


def cross_check(
    formula: Formula, qubit_limit: int = circuit_mod.DEFAULT_QUBIT_LIMIT
) -> CrossCheck:
    """Run all three engines and compare solution sets pairwise."""
    reports = {engine: solve(formula, engine, qubit_limit=qubit_limit) for engine in ENGINES}
    mismatches = []
    for i, left in enumerate(ENGINES):
        for right in ENGINES[i + 1 :]:
            left_set = set(reports[left].solutions)
            right_set = set(reports[right].solutions)
            if left_set != right_set:
                only_left = sorted(left_set - right_set)
                only_right = sorted(right_set - left_set)
                mismatches.append(
                    f"{left} vs {right}: only_{left}={only_left} only_{right}={only_right}"
                )
    return CrossCheck(agree=not mismatches, reports=reports, mismatches=mismatches)


# ---- JSON form ----


def report_to_dict(report: SolveReport) -> dict:
    return {
        "engine": report.engine,
        "n": report.n,
        "m": report.m,
        "solutions": [list(a) for a in report.solutions],
        "census": report.census.as_dict() if report.census else None,
        "selection_probability": report.selection_probability,
        "elapsed_ms": report.elapsed_ms,
    }


def report_from_dict(data: dict) -> SolveReport:
    census = data["census"]
    return SolveReport(
        engine=data["engine"],
        n=data["n"],
        m=data["m"],
        solutions=[tuple(a) for a in data["solutions"]],
        census=circuit_mod.GateCensus.from_dict(census) if census else None,
        selection_probability=data["selection_probability"],
        elapsed_ms=data["elapsed_ms"],
    )


def report_to_json(report: SolveReport) -> str:
    return json.dumps(report_to_dict(report), indent=2)


def report_from_json(text: str) -> SolveReport:
    return report_from_dict(json.loads(text))
