"""SAT via two simulated physical substrates, cross-checked against brute force.

The package compiles CNF formulas two ways: into exact DNA tube filtering
(multisets of bit-strands under seven primitives) and into a reversible
circuit over {H, X, CNOT, TOFFOLI, PHASE} run on a dense state-vector
simulator with post-selection. A brute-force oracle and a cross-check
harness keep the engines honest, and a report path renders gate-census
audits to CSV and figures.
"""

from .circuit import (
    Circuit,
    Gate,
    GateCensus,
    RegisterLayout,
    check_bounds,
    compile_formula,
    format_circuit,
    gate_census,
    invert,
    minimal_single_variable_circuit,
    parse_circuit,
)
from .cnf import (
    Assignment,
    Clause,
    Formula,
    Literal,
    brute_force_solutions,
    evaluate,
    example_formula,
    format_dimacs,
    parse_dimacs,
    random_formula,
)
from .dna import (
    Strand,
    Tube,
    amplify,
    append_head,
    append_tail,
    detect,
    discard,
    extract,
    lipton_solve,
    merge,
    read,
    trace_primitives,
    uniform_tube,
)
from .errors import GuardError, InputError
from .sim import (
    StateVector,
    SupportEntry,
    apply,
    dump_state,
    init_state,
    post_select,
    read_register,
    run,
    sample_counts,
    support,
)
from .solver import (
    ENGINES,
    CrossCheck,
    SolveReport,
    cross_check,
    report_from_json,
    report_to_json,
    solve,
)

__version__ = "0.1.0"

__all__ = [
    "Assignment",
    "Circuit",
    "Clause",
    "CrossCheck",
    "ENGINES",
    "Formula",
    "Gate",
    "GateCensus",
    "GuardError",
    "InputError",
    "Literal",
    "RegisterLayout",
    "SolveReport",
    "StateVector",
    "Strand",
    "SupportEntry",
    "Tube",
    "amplify",
    "append_head",
    "append_tail",
    "apply",
    "brute_force_solutions",
    "check_bounds",
    "compile_formula",
    "cross_check",
    "detect",
    "discard",
    "dump_state",
    "evaluate",
    "example_formula",
    "extract",
    "format_circuit",
    "format_dimacs",
    "gate_census",
    "init_state",
    "invert",
    "lipton_solve",
    "merge",
    "minimal_single_variable_circuit",
    "parse_circuit",
    "parse_dimacs",
    "post_select",
    "random_formula",
    "read",
    "read_register",
    "report_from_json",
    "report_to_json",
    "run",
    "sample_counts",
    "solve",
    "support",
    "trace_primitives",
    "uniform_tube",
]
