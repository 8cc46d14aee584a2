"""Shared helpers: an independent evaluation oracle and sweep samplers.

oracle_solutions deliberately avoids the package's own evaluate/satisfied_by
helpers so engine results are checked against a second code path.
"""

from __future__ import annotations

import random

from dnaqsat.cnf import Clause, Formula, Literal
from dnaqsat.dna import Strand, Tube


def oracle_solutions(formula: Formula) -> list[tuple[int, ...]]:
    """All satisfying assignments by raw enumeration, ascending binary order."""
    found = []
    for index in range(1 << formula.n):
        bits = [(index >> i) & 1 for i in range(formula.n)]
        satisfied = True
        for clause in formula.clauses:
            clause_hit = False
            for literal in clause.literals:
                value = bits[literal.variable - 1]
                if (value == 0) if literal.negated else (value == 1):
                    clause_hit = True
                    break
            if not clause_hit:
                satisfied = False
                break
        if satisfied:
            found.append(tuple(bits))
    return found


def random_small_formula(rng: random.Random, max_n: int = 5, max_m: int = 8) -> Formula:
    """Uniform draw over the full (n, m) box, for compile-only sweeps."""
    n = rng.randint(1, max_n)
    m = rng.randint(1, max_m)
    width_cap = min(n, 3)
    clauses = []
    for _ in range(m):
        width = rng.randint(1, width_cap)
        variables = rng.sample(range(1, n + 1), width)
        clauses.append(
            Clause(tuple(Literal(v, negated=rng.random() < 0.5) for v in variables))
        )
    return Formula(n, tuple(clauses))


def random_tube(rng: random.Random, max_vars: int = 6) -> Tube:
    """A tube of random partial strands with small random multiplicities."""
    counts: dict[Strand, int] = {}
    for _ in range(rng.randint(0, 8)):
        width = rng.randint(0, max_vars)
        variables = rng.sample(range(1, max_vars + 1), width)
        strand = Strand(tuple((v, rng.randint(0, 1)) for v in variables))
        counts[strand] = counts.get(strand, 0) + rng.randint(1, 5)
    return Tube(counts)


def budgeted_formula(rng: random.Random) -> Formula:
    """Draw within n <= 5, m <= 8 but keep 3n + m + 2 <= 20 qubits.

    Full-state sweeps over hundreds of formulas need the width capped to
    stay inside their runtime budget; the (n=5, m=8) corner is still
    exercised by the compile-only sweeps.
    """
    n = rng.randint(1, 5)
    m = rng.randint(1, min(8, 18 - 3 * n))
    width_cap = min(n, 3)
    clauses = []
    for _ in range(m):
        width = rng.randint(1, width_cap)
        variables = rng.sample(range(1, n + 1), width)
        clauses.append(
            Clause(tuple(Literal(v, negated=rng.random() < 0.5) for v in variables))
        )
    return Formula(n, tuple(clauses))
