"""Engine reports, cross-check agreement, and JSON round trips."""

from __future__ import annotations

import random

import pytest

from conftest import oracle_solutions, random_small_formula
from dnaqsat.cnf import Clause, Formula, Literal, example_formula, parse_dimacs
from dnaqsat.errors import GuardError, InputError
from dnaqsat.solver import (
    ENGINES,
    cross_check,
    report_from_dict,
    report_from_json,
    report_to_dict,
    report_to_json,
    solve,
)

UNSAT = "p cnf 1 2\n1 0\n-1 0\n"


def test_engines_agree_on_example():
    formula = example_formula()
    for engine in ENGINES:
        report = solve(formula, engine)
        assert report.solutions == [(1, 0)]
        assert report.n == 2 and report.m == 3
        assert report.satisfiable
        assert report.elapsed_ms >= 0.0


def test_quantum_report_extras():
    report = solve(example_formula(), "quantum")
    assert report.census is not None
    assert report.census.as_dict()["qubits"] == 11
    assert abs(report.selection_probability - 0.25) < 1e-10
    assert len(report.support) == 1


def test_classical_reports_have_no_circuit_fields():
    for engine in ("dna", "brute"):
        report = solve(example_formula(), engine)
        assert report.census is None
        assert report.selection_probability is None
        assert report.support == []


def test_single_variable_probability():
    report = solve(parse_dimacs("p cnf 1 1\n1 0\n"), "quantum")
    assert report.solutions == [(1,)]
    assert abs(report.selection_probability - 0.5) < 1e-10


def test_unsat_quantum_probability_zero():
    report = solve(parse_dimacs(UNSAT), "quantum")
    assert report.solutions == []
    assert report.selection_probability == 0.0
    assert not report.satisfiable


def test_unknown_engine():
    with pytest.raises(InputError):
        solve(example_formula(), "annealer")


def test_engine_guards():
    wide = Formula(25, (Clause((Literal(1),)),))
    with pytest.raises(GuardError):
        solve(wide, "brute")
    tube_heavy = Formula(21, (Clause((Literal(1),)),))
    with pytest.raises(GuardError):
        solve(tube_heavy, "dna")
    with pytest.raises(GuardError):
        solve(example_formula(), "quantum", qubit_limit=10)


def test_engines_match_oracle_sweep():
    rng = random.Random(601)
    for _ in range(25):
        formula = random_small_formula(rng, max_n=4, max_m=6)
        expected = oracle_solutions(formula)
        for engine in ENGINES:
            assert solve(formula, engine).solutions == expected


def test_cross_check_agreement():
    result = cross_check(example_formula())
    assert result.agree
    assert result.mismatches == []
    assert set(result.reports) == set(ENGINES)
    unsat = cross_check(parse_dimacs(UNSAT))
    assert unsat.agree
    assert not unsat.reports["brute"].satisfiable


def test_json_schema_keys():
    report = solve(example_formula(), "quantum")
    data = report_to_dict(report)
    assert set(data) == {
        "engine", "n", "m", "solutions", "census",
        "selection_probability", "elapsed_ms",
    }
    assert data["solutions"] == [[1, 0]]
    assert set(data["census"]) == {"H", "X", "CNOT", "TOFFOLI", "PHASE", "qubits"}
    assert isinstance(data["elapsed_ms"], float)

    brute_data = report_to_dict(solve(example_formula(), "brute"))
    assert brute_data["census"] is None
    assert brute_data["selection_probability"] is None


def test_json_round_trip_lossless():
    for engine in ENGINES:
        report = solve(example_formula(), engine)
        assert report_from_json(report_to_json(report)) == report
        assert report_from_dict(report_to_dict(report)) == report


def test_json_round_trip_unsat():
    report = solve(parse_dimacs(UNSAT), "quantum")
    assert report_from_json(report_to_json(report)) == report
