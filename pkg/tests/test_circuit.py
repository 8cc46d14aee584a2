"""Compiler checks: layout, gate structure, envelopes, inversion, text format."""

from __future__ import annotations

import random

import pytest

from conftest import random_small_formula
from dnaqsat.circuit import (
    Circuit,
    Gate,
    RegisterLayout,
    check_bounds,
    cnot,
    compile_formula,
    format_circuit,
    gate_census,
    h,
    invert,
    minimal_single_variable_circuit,
    parse_circuit,
    phase,
    toffoli,
    x,
)
from dnaqsat.cnf import example_formula, parse_dimacs
from dnaqsat.errors import GuardError, InputError


def clause_gate_oracle(formula):
    """Closed-form per-clause counts of this construction, derived by hand:

    a clause with k literals, p negated, costs 6k CNOT (+2 when k == 1 for
    the doubled OR CNOT), 4p + 2 X, and 1 Toffoli when k == 1 else 4k - 5.
    """
    cnots = xs = toffs = 0
    for clause in formula.clauses:
        k = len(clause.literals)
        p = sum(lit.negated for lit in clause.literals)
        cnots += 6 * k + (2 if k == 1 else 0)
        xs += 4 * p + 2
        toffs += 1 if k == 1 else 4 * k - 5
    return cnots, xs, toffs


# ---- gates ----


def test_gate_validation():
    with pytest.raises(InputError):
        Gate("SWAP", 0)
    with pytest.raises(InputError):
        Gate("CNOT", 0)  # missing control
    with pytest.raises(InputError):
        cnot(1, 1)
    with pytest.raises(InputError):
        toffoli(0, 1, 1)
    with pytest.raises(InputError):
        Gate("X", 0, theta=1.0)
    with pytest.raises(InputError):
        phase(7.0, 0)  # >= 2*pi
    with pytest.raises(InputError):
        phase(-0.1, 0)
    assert phase(0.0, 0).theta == 0.0


# ---- layout ----


@pytest.mark.parametrize("n, m", [(1, 1), (2, 3), (4, 2), (5, 8)])
def test_layout_partitions_all_qubits(n, m):
    layout = RegisterLayout.standard(n, m)
    assert layout.qubit_count == 3 * n + m + 2
    assert layout.c == tuple(range(0, m + 1))
    assert layout.r == tuple(range(m + 1, m + n + 2))
    assert layout.y[0] == m + n + 2 and len(layout.y) == n
    assert layout.u[-1] == layout.qubit_count - 1 and len(layout.u) == n
    every = set(layout.u) | set(layout.y) | set(layout.r) | set(layout.c)
    assert every == set(range(layout.qubit_count))


def test_layout_labels_and_basis_format():
    layout = RegisterLayout.standard(2, 3)
    assert layout.register_of(0) == "c0"
    assert layout.register_of(3) == "c3"
    assert layout.register_of(4) == "r0"
    assert layout.register_of(7) == "y1"
    assert layout.register_of(10) == "u2"
    assert layout.format_basis(97) == "|00 00 110 0001>"


# ---- compilation ----


def test_compile_example_shape():
    circuit = compile_formula(example_formula())
    assert circuit.qubit_count == 11
    assert circuit.initial_index == 97  # c0, r1, r2 set
    census = gate_census(circuit)
    assert census.as_dict() == {
        "H": 2, "X": 14, "CNOT": 32, "TOFFOLI": 7, "PHASE": 0, "qubits": 11,
    }


def test_compile_counts_match_closed_form():
    rng = random.Random(401)
    for _ in range(40):
        formula = random_small_formula(rng)
        census = gate_census(compile_formula(formula))
        cnots, xs, toffs = clause_gate_oracle(formula)
        assert census.h == formula.n
        assert census.cnot == cnots
        assert census.x == xs
        assert census.toffoli == toffs
        assert census.phase == 0


def test_h_layer_leads_and_is_exactly_n():
    rng = random.Random(402)
    for _ in range(20):
        formula = random_small_formula(rng)
        circuit = compile_formula(formula)
        head = circuit.gates[: formula.n]
        assert all(g.kind == "H" for g in head)
        assert {g.target for g in head} == set(circuit.layout.u)
        assert all(g.kind != "H" for g in circuit.gates[formula.n :])


def test_clause_blocks_are_palindromes_around_the_and_gate():
    formula = parse_dimacs("p cnf 4 2\n1 -2 3 0\n-4 1 0\n")
    circuit = compile_formula(formula)
    for span in circuit.sections:
        before = circuit.gates[span.start : span.and_gate]
        after = circuit.gates[span.and_gate + 1 : span.end]
        assert before == tuple(reversed(after))
        and_gate = circuit.gates[span.and_gate]
        assert and_gate.kind == "TOFFOLI"
        assert and_gate.target == circuit.layout.c[span.clause_index]


def test_compile_qubit_guard():
    formula = parse_dimacs("p cnf 9 1\n1 0\n")  # 3*9+1+2 = 30 qubits
    with pytest.raises(GuardError):
        compile_formula(formula)
    compile_formula(formula, qubit_limit=30)  # override allows it


def test_minimal_circuit_pinned():
    circuit = minimal_single_variable_circuit()
    assert circuit.qubit_count == 3
    assert circuit.initial_pattern == (0, 0, 0)
    assert circuit.gates == (h(2), cnot(2, 1), cnot(1, 0), cnot(2, 1))
    census = gate_census(circuit)
    assert (census.h, census.cnot, census.x, census.toffoli) == (1, 3, 0, 0)


# ---- bounds ----


def test_bounds_example():
    census = gate_census(compile_formula(example_formula()))
    report = check_bounds(census, 2, 3)
    assert report.all_passed
    by_name = {check.name: check for check in report.checks}
    assert by_name["H"].exact and by_name["H"].bound == 2
    assert by_name["qubits"].exact and by_name["qubits"].bound == 11
    assert by_name["X"].bound == 6 * 6
    assert by_name["CNOT"].bound == 8 * 6
    assert by_name["TOFFOLI"].bound == 4 * (6 + 3)
    assert by_name["CNOT"].ratio == 32 / 48


def test_bounds_random_sweep():
    rng = random.Random(403)
    for _ in range(60):
        formula = random_small_formula(rng)
        census = gate_census(compile_formula(formula))
        assert check_bounds(census, formula.n, formula.m).all_passed


def test_bounds_flag_violations():
    census = gate_census(compile_formula(example_formula()))
    report = check_bounds(census, 2, 1)  # wrong m: envelopes shrink
    assert not report.all_passed


def test_bounds_table_renders():
    census = gate_census(compile_formula(example_formula()))
    table = check_bounds(census, 2, 3).format_table()
    assert "CNOT" in table and "ok" in table


# ---- inversion ----


def test_invert_reverses_and_maps_phase():
    circuit = Circuit(
        qubit_count=2,
        gates=(h(0), phase(1.5, 1), cnot(0, 1)),
        initial_pattern=(0, 0),
    )
    inverse = invert(circuit)
    assert inverse.gates[0] == cnot(0, 1)
    assert inverse.gates[1].kind == "PHASE"
    assert inverse.gates[1].theta == pytest.approx(2 * 3.141592653589793 - 1.5, abs=1e-15)
    assert inverse.gates[2] == h(0)


def test_invert_involution():
    circuit = compile_formula(example_formula())
    assert invert(invert(circuit)) == circuit
    with_phase = Circuit(2, (phase(0.5, 0), x(1)), (0, 0))
    assert invert(invert(with_phase)) == with_phase


def test_phase_zero_inverts_to_zero():
    circuit = Circuit(1, (phase(0.0, 0),), (0,))
    assert invert(circuit).gates[0].theta == 0.0


# ---- text format ----


def test_format_example_headers():
    circuit = compile_formula(example_formula())
    text = format_circuit(circuit)
    lines = text.splitlines()
    assert lines[0] == "# qubits 11"
    assert lines[1] == "# init 00001100001"  # qubit 0 rightmost
    assert lines[2] == "H 9"


def test_text_round_trip_compiled():
    rng = random.Random(404)
    for _ in range(20):
        formula = random_small_formula(rng)
        circuit = compile_formula(formula)
        assert parse_circuit(format_circuit(circuit)) == circuit


def test_text_round_trip_phase_bit_exact():
    theta = 2.0 ** 0.5  # irrational-looking float, must survive repr
    circuit = Circuit(3, (phase(theta, 2), toffoli(0, 1, 2), x(0)), (1, 0, 1))
    parsed = parse_circuit(format_circuit(circuit))
    assert parsed == circuit
    assert parsed.gates[0].theta == theta


def test_parse_circuit_errors():
    with pytest.raises(InputError):
        parse_circuit("")
    with pytest.raises(InputError):
        parse_circuit("# qubits x\n# init 0\n")
    with pytest.raises(InputError):
        parse_circuit("# qubits 2\n# init 003\n")
    with pytest.raises(InputError):
        parse_circuit("# qubits 2\n# init 00\nSWAP 0 1\n")
    with pytest.raises(InputError):
        parse_circuit("# qubits 2\n# init 00\nH 5\n")
    with pytest.raises(InputError):
        parse_circuit("# qubits 2\n# init 00\nCNOT 0\n")
