"""Batch resource reports: census CSV plus rendered audit figures.

Given a collection of formulas, compile each one, audit its gate census
against the resource envelopes, solve the small ones, and write:

    <out>/census.csv                 one row per formula
    <out>/gate_bounds.png            measured counts vs envelope, per kind
    <out>/selection_probability.png  measured branch probability vs |S|/2^n

Formulas too wide for the simulator get census data only.
"""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

from . import circuit as circuit_mod
from . import solver
from .cnf import BRUTE_FORCE_MAX_VARS, Formula, brute_force_solutions

CSV_COLUMNS = [
    "name",
    "n",
    "m",
    "qubits",
    "H",
    "X",
    "CNOT",
    "TOFFOLI",
    "PHASE",
    "x_bound",
    "cnot_bound",
    "toffoli_bound",
    "bounds_ok",
    "solutions",
    "selection_probability",
]


@dataclass
class ReportRow:
    name: str
    formula: Formula
    census: circuit_mod.GateCensus
    bounds: circuit_mod.BoundReport
    solution_count: int | None
    selection_probability: float | None


def build_rows(
    formulas: list[tuple[str, Formula]],
    qubit_limit: int = circuit_mod.DEFAULT_QUBIT_LIMIT,
    simulate_limit: int = 22,
) -> list[ReportRow]:
    """Census every formula; simulate those within simulate_limit qubits."""
    rows = []
    for name, formula in formulas:
        compiled = circuit_mod.compile_formula(formula, qubit_limit=max(qubit_limit, 3 * formula.n + formula.m + 2))
        census = circuit_mod.gate_census(compiled)
        bounds = circuit_mod.check_bounds(census, formula.n, formula.m)
        solution_count: int | None = None
        probability: float | None = None
        if census.qubits <= min(simulate_limit, qubit_limit):
            report = solver.solve(formula, "quantum", qubit_limit=qubit_limit)
            solution_count = len(report.solutions)
            probability = report.selection_probability
        elif formula.n <= BRUTE_FORCE_MAX_VARS:
            solution_count = len(brute_force_solutions(formula))
        rows.append(ReportRow(name, formula, census, bounds, solution_count, probability))
    return rows


def write_csv(rows: list[ReportRow], path: str) -> None:
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(CSV_COLUMNS)
        for row in rows:
            census = row.census
            bound_of = {check.name: check.bound for check in row.bounds.checks}
            writer.writerow(
                [
                    row.name,
                    row.formula.n,
                    row.formula.m,
                    census.qubits,
                    census.h,
                    census.x,
                    census.cnot,
                    census.toffoli,
                    census.phase,
                    bound_of["X"],
                    bound_of["CNOT"],
                    bound_of["TOFFOLI"],
                    int(row.bounds.all_passed),
                    "" if row.solution_count is None else row.solution_count,
                    "" if row.selection_probability is None else repr(row.selection_probability),
                ]
            )


def render_gate_bounds(rows: list[ReportRow], path: str) -> None:
    """Scatter measured count vs envelope per gate kind; points below the
    diagonal are within budget."""
    kinds = ["X", "CNOT", "TOFFOLI"]
    fig, axes = plt.subplots(1, 3, figsize=(12.0, 4.0))
    for axis, kind in zip(axes, kinds):
        measured = []
        bounds = []
        for row in rows:
            check = next(c for c in row.bounds.checks if c.name == kind)
            measured.append(check.measured)
            bounds.append(check.bound)
        top = max(bounds + measured + [1])
        axis.plot([0, top], [0, top], lw=1.0, color="0.6", label="envelope = measured")
        axis.scatter(bounds, measured, s=18, alpha=0.7)
        axis.set_xlabel(f"{kind} envelope")
        axis.set_ylabel(f"{kind} measured")
        axis.set_title(kind)
    fig.suptitle("gate counts vs resource envelopes")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_selection_probability(rows: list[ReportRow], path: str) -> None:
    """Measured post-selection probability vs the counting prediction."""
    predicted = []
    measured = []
    for row in rows:
        if row.selection_probability is None or row.solution_count is None:
            continue
        predicted.append(row.solution_count / (1 << row.formula.n))
        measured.append(row.selection_probability)
    fig, axis = plt.subplots(figsize=(5.0, 4.5))
    axis.plot([0, 1], [0, 1], lw=1.0, color="0.6", label="predicted = measured")
    axis.scatter(predicted, measured, s=20, alpha=0.7)
    axis.set_xlabel("|solutions| / 2^n")
    axis.set_ylabel("measured branch probability")
    axis.set_title("post-selection probability vs counting")
    axis.legend(loc="upper left")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def write_report(
    formulas: list[tuple[str, Formula]],
    out_dir: str,
    qubit_limit: int = circuit_mod.DEFAULT_QUBIT_LIMIT,
) -> dict[str, str]:
    """Build everything; returns the paths written keyed by artifact name."""
    os.makedirs(out_dir, exist_ok=True)
    rows = build_rows(formulas, qubit_limit=qubit_limit)
    paths = {
        "census_csv": os.path.join(out_dir, "census.csv"),
        "gate_bounds_png": os.path.join(out_dir, "gate_bounds.png"),
        "selection_probability_png": os.path.join(out_dir, "selection_probability.png"),
    }
    write_csv(rows, paths["census_csv"])
    render_gate_bounds(rows, paths["gate_bounds_png"])
    render_selection_probability(rows, paths["selection_probability_png"])
    return paths
