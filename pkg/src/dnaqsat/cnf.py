"""CNF formulas: DIMACS parsing, evaluation, and exhaustive solving.

Variables are 1-based (u1..un). An assignment is a tuple of n bits where
position i-1 holds the value of variable i, so the tuple reads u1 first.
Rendered bitstrings read the other way (u_n leftmost, matching ket
notation), and the integer value of an assignment treats u1 as the least
significant bit; both orderings therefore agree on what "ascending binary
order" means.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

from .errors import GuardError, InputError

# brute_force_solutions walks all 2^n assignments; past this point the walk
# stops being a sane oracle and callers should use another engine.
BRUTE_FORCE_MAX_VARS = 24

Assignment = tuple[int, ...]


# ---- 1. Formula types ----


@dataclass(frozen=True)
class Literal:
    """A 1-based variable index, possibly negated."""

    variable: int
    negated: bool = False

    def __post_init__(self) -> None:
        if self.variable < 1:
            raise InputError(f"variable index must be >= 1, got {self.variable}")

    def satisfied_by(self, value: int) -> bool:
        return bool(value) != self.negated

    def __str__(self) -> str:
        return f"-{self.variable}" if self.negated else f"{self.variable}"


@dataclass(frozen=True)
class Clause:
    """A non-empty disjunction of literals over pairwise distinct variables.

    Repeated variables are rejected outright, so neither duplicate literals
    nor tautological pairs (v and not-v) can be represented.
    """

    literals: tuple[Literal, ...]

    def __post_init__(self) -> None:
        if not self.literals:
            raise InputError("empty clause")
        seen: set[int] = set()
        for lit in self.literals:
            if lit.variable in seen:
                raise InputError(f"variable {lit.variable} appears twice in one clause")
            seen.add(lit.variable)

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(lit.variable for lit in self.literals)

    def satisfied_by(self, assignment: Assignment) -> bool:
        return any(lit.satisfied_by(assignment[lit.variable - 1]) for lit in self.literals)

    def __str__(self) -> str:
        return "(" + " v ".join(("~" if l.negated else "") + f"u{l.variable}" for l in self.literals) + ")"


@dataclass(frozen=True)
class Formula:
    """A conjunction of clauses over variables u1..un."""

    n: int
    clauses: tuple[Clause, ...]

    def __post_init__(self) -> None:
        if self.n < 1:
            raise InputError(f"variable count must be >= 1, got {self.n}")
        if not self.clauses:
            raise InputError("formula needs at least one clause")
        for clause in self.clauses:
            for lit in clause.literals:
                if lit.variable > self.n:
                    raise InputError(
                        f"literal references variable {lit.variable} but formula has n={self.n}"
                    )

    @property
    def m(self) -> int:
        return len(self.clauses)

    def __str__(self) -> str:
        return " & ".join(str(c) for c in self.clauses)


# ---- 2. Assignments ----


def index_to_assignment(index: int, n: int) -> Assignment:
    """Bits of `index`, u1 taken from the least significant position."""
    if not 0 <= index < (1 << n):
        raise InputError(f"assignment index {index} out of range for n={n}")
    return tuple((index >> i) & 1 for i in range(n))


def assignment_to_index(assignment: Assignment) -> int:
    return sum(bit << i for i, bit in enumerate(assignment))


def format_assignment(assignment: Assignment) -> str:
    """Bitstring with u_n leftmost, e.g. (u1=1, u2=0) -> "01"."""
    return "".join(str(bit) for bit in reversed(assignment))


def evaluate(formula: Formula, assignment: Assignment) -> bool:
    """True when every clause has a satisfied literal."""
    if len(assignment) != formula.n:
        raise InputError(
            f"assignment has {len(assignment)} bits but formula has n={formula.n}"
        )
    return all(clause.satisfied_by(assignment) for clause in formula.clauses)


def brute_force_solutions(formula: Formula) -> list[Assignment]:
    """All satisfying assignments in ascending binary order."""
    if formula.n > BRUTE_FORCE_MAX_VARS:
        raise GuardError(
            f"brute force is capped at n <= {BRUTE_FORCE_MAX_VARS}, got n={formula.n}"
        )
    return [
        assignment
        for index in range(1 << formula.n)
        if evaluate(formula, assignment := index_to_assignment(index, formula.n))
    ]


# ---- 3. DIMACS ----


def parse_dimacs(text: str) -> Formula:
    """Parse DIMACS CNF text.

    Comment lines start with 'c'. The header `p cnf <n> <m>` must precede
    all clause tokens; clauses are signed integers terminated by 0, with
    arbitrary whitespace (including newlines) between tokens.
    """
    tokens: list[str] = []
    header: tuple[int, int] | None = None
    for line in text.splitlines():
        stripped = line.strip()
        if not stripped or stripped[0] == "c":
            continue
        if stripped[0] == "p":
            if header is not None:
                raise InputError("duplicate DIMACS header")
            if tokens:
                raise InputError("DIMACS header must precede all clauses")
            fields = stripped.split()
            if len(fields) != 4 or fields[0] != "p" or fields[1] != "cnf":
                raise InputError(f"malformed DIMACS header: {stripped!r}")
            try:
                header = (int(fields[2]), int(fields[3]))
            except ValueError:
                raise InputError(f"malformed DIMACS header: {stripped!r}") from None
            continue
        tokens.extend(stripped.split())
    if header is None:
        raise InputError("missing DIMACS header 'p cnf <n> <m>'")
    n, m = header
    if n < 1 or m < 1:
        raise InputError(f"DIMACS header needs n >= 1 and m >= 1, got n={n} m={m}")

    clauses: list[Clause] = []
    literals: list[Literal] = []
    for token in tokens:
        try:
            value = int(token)
        except ValueError:
            raise InputError(f"non-integer token in clause data: {token!r}") from None
        if value == 0:
            if not literals:
                raise InputError(f"empty clause (clause {len(clauses) + 1})")
            clauses.append(Clause(tuple(literals)))
            literals = []
            continue
        variable = abs(value)
        if variable > n:
            raise InputError(f"literal {value} out of range for n={n}")
        literals.append(Literal(variable, negated=value < 0))
    if literals:
        raise InputError("last clause is missing its 0 terminator")
    if len(clauses) != m:
        raise InputError(f"header promises {m} clauses but file has {len(clauses)}")
    return Formula(n, tuple(clauses))


def format_dimacs(formula: Formula) -> str:
    lines = [f"p cnf {formula.n} {formula.m}"]
    for clause in formula.clauses:
        lines.append(" ".join(str(lit) for lit in clause.literals) + " 0")
    return "\n".join(lines) + "\n"


# ---- 4. Canned and random instances ----


def example_formula() -> Formula:
    """The built-in demo instance (u2 v u1) & (~u2 v ~u1) & (u1).

    Exactly one assignment satisfies it: u2=0, u1=1.
    """
    return parse_dimacs("p cnf 2 3\n2 1 0\n-2 -1 0\n1 0\n")


def random_formula(
    rng: random.Random, n: int, m: int, max_clause_len: int = 3
) -> Formula:
    """A random formula with m clauses of 1..max_clause_len distinct variables."""
    width_cap = min(n, max_clause_len)
    clauses = []
    for _ in range(m):
        width = rng.randint(1, width_cap)
        variables = rng.sample(range(1, n + 1), width)
        clauses.append(
            Clause(tuple(Literal(v, negated=rng.random() < 0.5) for v in variables))
        )
    return Formula(n, tuple(clauses))
