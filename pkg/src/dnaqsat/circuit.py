"""Reversible-circuit compilation of CNF formulas.

Gate set is {H, X, CNOT, TOFFOLI, PHASE}. A compiled circuit for a formula
with n variables and m clauses uses Q = 3n + m + 2 qubits in four
registers, least significant first:

    index 0 .. m          c_0 .. c_m    AND chain; c_0 starts at 1
    index m+1 .. m+n+1    r_0 .. r_n    OR scratch; r_1..r_n start at 1, r_0 at 0
    index m+n+2 .. m+2n+1 y_1 .. y_n    copy register, starts at 0
    index m+2n+2 ..       u_1 .. u_n    variable register, starts at 0

Kets print most significant qubit first (u side leftmost), so qubit 0 is
the rightmost character of a basis bitstring.

Compilation opens with one H per u qubit and then emits, per clause j:

  1. copy      CNOT each clause variable u_v onto y_v
  2. negate    X on y_v for negated literals, so y_v holds the literal value
  3. transfer  CNOT y_v onto r_v; r_v starts at 1 and ends as NOT(literal)
  4. null y    undo negate, undo copy (y back to 0)
  5. AND the r slots into r_0: one CNOT for a unit clause, one Toffoli for
     two literals, else a palindromic Toffoli cascade borrowing nulled
     y qubits as scratch
  6. X r_0     De Morgan: r_0 now holds the clause value
  7. TOFFOLI (r_0, c_{j-1}) onto c_j: c_j = first j clause values ANDed
  8. mirror of steps 6..1, restoring r and y; the c chain stays

Every emitted gate is self-inverse, so the mirror is literally the reversed
gate list of steps 1..6.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .cnf import Formula
from .errors import GuardError, InputError

GATE_KINDS = ("H", "X", "CNOT", "TOFFOLI", "PHASE")

TWO_PI = 2.0 * math.pi

# Default ceiling on compiled width; 2^26 amplitudes is the most the dense
# simulator should be asked for without the caller opting in explicitly.
DEFAULT_QUBIT_LIMIT = 26

# Envelope constants for check_bounds, from the exact per-clause counts of
# this construction (k literals, p of them negated):
#   CNOT    = 6k + 2 if k == 1 else 6k   <= 8k        -> total <= 8 m n
#   X       = 4p + 2                     <= 4k + 2 <= 6k -> total <= 6 m n
#   TOFFOLI = 1 if k == 1 else 4k - 5    <= 4k        -> total <= 4 (m n + m)
# The H count and qubit width are exact: n and 3n + m + 2.
X_ENVELOPE_FACTOR = 6
CNOT_ENVELOPE_FACTOR = 8
TOFFOLI_ENVELOPE_FACTOR = 4


# ---- 1. Gates ----


@dataclass(frozen=True)
class Gate:
    """One gate: kind, target qubit, control qubits, and theta for PHASE."""

    kind: str
    target: int
    controls: tuple[int, ...] = ()
    theta: float | None = None

    def __post_init__(self) -> None:
        if self.kind not in GATE_KINDS:
            raise InputError(f"unknown gate kind {self.kind!r}")
        expected_controls = {"H": 0, "X": 0, "PHASE": 0, "CNOT": 1, "TOFFOLI": 2}
        if len(self.controls) != expected_controls[self.kind]:
            raise InputError(
                f"{self.kind} takes {expected_controls[self.kind]} controls, "
                f"got {len(self.controls)}"
            )
        qubits = (self.target, *self.controls)
        if len(set(qubits)) != len(qubits):
            raise InputError(f"gate touches a qubit twice: {qubits}")
        if any(q < 0 for q in qubits):
            raise InputError(f"negative qubit index in {qubits}")
        if self.kind == "PHASE":
            if self.theta is None or not 0.0 <= self.theta < TWO_PI:
                raise InputError(f"PHASE needs theta in [0, 2*pi), got {self.theta}")
        elif self.theta is not None:
            raise InputError(f"{self.kind} does not take theta")

    @property
    def qubits(self) -> tuple[int, ...]:
        return (*self.controls, self.target)


def h(qubit: int) -> Gate:
    return Gate("H", qubit)


def x(qubit: int) -> Gate:
    return Gate("X", qubit)


def cnot(control: int, target: int) -> Gate:
    return Gate("CNOT", target, (control,))


def toffoli(control_a: int, control_b: int, target: int) -> Gate:
    return Gate("TOFFOLI", target, (control_a, control_b))


def phase(theta: float, qubit: int) -> Gate:
    return Gate("PHASE", qubit, theta=theta)


# ---- 2. Register layout ----


@dataclass(frozen=True)
class RegisterLayout:
    """Qubit indices of the u, y, r, c registers.

    Tuples are stored least-significant register slot first (c[0] is c_0,
    u[0] is u_1); displays reverse them.
    """

    n: int
    m: int
    u: tuple[int, ...]
    y: tuple[int, ...]
    r: tuple[int, ...]
    c: tuple[int, ...]
    qubit_count: int

    @classmethod
    def standard(cls, n: int, m: int) -> RegisterLayout:
        if n < 1 or m < 1:
            raise InputError(f"layout needs n >= 1 and m >= 1, got n={n} m={m}")
        c = tuple(range(0, m + 1))
        r = tuple(range(m + 1, m + n + 2))
        y = tuple(range(m + n + 2, m + 2 * n + 2))
        u = tuple(range(m + 2 * n + 2, m + 3 * n + 2))
        return cls(n=n, m=m, u=u, y=y, r=r, c=c, qubit_count=3 * n + m + 2)

    @classmethod
    def minimal_three_qubit(cls) -> RegisterLayout:
        """The stripped single-variable layout: c_1, y_1, u_1 and nothing else."""
        return cls(n=1, m=1, u=(2,), y=(1,), r=(), c=(0,), qubit_count=3)

    def register_of(self, qubit: int) -> str:
        for name in ("u", "y", "r", "c"):
            slots = getattr(self, name)
            if qubit in slots:
                index = slots.index(qubit)
                if name in ("u", "y"):
                    index += 1
                return f"{name}{index}"
        raise InputError(f"qubit {qubit} not in layout")

    def format_basis(self, index: int) -> str:
        """Ket string |u..|y..|r..|c..> for one basis index."""
        groups = []
        for name in ("u", "y", "r", "c"):
            slots = getattr(self, name)
            groups.append("".join(str((index >> q) & 1) for q in reversed(slots)))
        return "|" + " ".join(g for g in groups if g) + ">"


# ---- 3. Circuits ----


@dataclass(frozen=True)
class ClauseSpan:
    """Gate-list span of one clause block: gates[and_gate] is its AND Toffoli."""

    clause_index: int
    start: int
    and_gate: int
    end: int


@dataclass(frozen=True)
class Circuit:
    """A gate list plus the basis state it is meant to start from.

    Layout and clause spans are derived metadata: they do not survive the
    text format and do not participate in equality.
    """

    qubit_count: int
    gates: tuple[Gate, ...]
    initial_pattern: tuple[int, ...]
    layout: RegisterLayout | None = field(default=None, compare=False)
    sections: tuple[ClauseSpan, ...] = field(default=(), compare=False)

    def __post_init__(self) -> None:
        if self.qubit_count < 1:
            raise InputError(f"qubit count must be >= 1, got {self.qubit_count}")
        if len(self.initial_pattern) != self.qubit_count:
            raise InputError(
                f"initial pattern has {len(self.initial_pattern)} bits "
                f"for {self.qubit_count} qubits"
            )
        if any(bit not in (0, 1) for bit in self.initial_pattern):
            raise InputError("initial pattern bits must be 0 or 1")
        for gate in self.gates:
            if max(gate.qubits) >= self.qubit_count:
                raise InputError(
                    f"gate {gate} out of range for {self.qubit_count} qubits"
                )

    @property
    def initial_index(self) -> int:
        return sum(bit << q for q, bit in enumerate(self.initial_pattern))


# ---- 4. Compilation ----


def _and_onto(slots: list[int], target: int, scratch_pool: tuple[int, ...]) -> list[Gate]:
    """XOR the AND of `slots` onto `target`.

    Three or more slots use a palindromic Toffoli cascade through borrowed
    scratch qubits, which must be 0 on entry and are returned to 0. The
    whole block is self-inverse.
    """
    k = len(slots)
    if k == 1:
        return [cnot(slots[0], target)]
    if k == 2:
        return [toffoli(slots[0], slots[1], target)]
    scratch = list(scratch_pool[: k - 2])
    climb = [toffoli(slots[0], slots[1], scratch[0])]
    for i in range(2, k - 1):
        climb.append(toffoli(scratch[i - 2], slots[i], scratch[i - 1]))
    return climb + [toffoli(scratch[-1], slots[-1], target)] + climb[::-1]


def _clause_block(layout: RegisterLayout, clause) -> list[Gate]:
    """Steps 1..6 for one clause; ends with r_0 holding the clause value."""
    copy = [cnot(layout.u[l.variable - 1], layout.y[l.variable - 1]) for l in clause.literals]
    negate = [x(layout.y[l.variable - 1]) for l in clause.literals if l.negated]
    transfer = [cnot(layout.y[l.variable - 1], layout.r[l.variable]) for l in clause.literals]
    slots = [layout.r[l.variable] for l in clause.literals]
    or_onto_r0 = _and_onto(slots, layout.r[0], scratch_pool=layout.y)
    return copy + negate + transfer + negate + copy + or_onto_r0 + [x(layout.r[0])]


def compile_formula(formula: Formula, qubit_limit: int = DEFAULT_QUBIT_LIMIT) -> Circuit:
    """Compile a formula; after the run, c_m holds the formula value.

    The u register ends in uniform superposition over all assignments, y is
    back to 0, r back to its start pattern, and each c_j holds the AND of
    the first j clause values for that branch's assignment.
    """
    layout = RegisterLayout.standard(formula.n, formula.m)
    if layout.qubit_count > qubit_limit:
        raise GuardError(
            f"formula needs {layout.qubit_count} qubits, over the limit {qubit_limit}"
        )
    pattern = [0] * layout.qubit_count
    for slot in layout.r[1:]:
        pattern[slot] = 1
    pattern[layout.c[0]] = 1

    gates: list[Gate] = [h(q) for q in layout.u]
    sections: list[ClauseSpan] = []
    for j, clause in enumerate(formula.clauses, start=1):
        block = _clause_block(layout, clause)
        start = len(gates)
        gates.extend(block)
        and_gate = len(gates)
        gates.append(toffoli(layout.r[0], layout.c[j - 1], layout.c[j]))
        gates.extend(reversed(block))
        sections.append(ClauseSpan(j, start, and_gate, len(gates)))
    return Circuit(
        qubit_count=layout.qubit_count,
        gates=tuple(gates),
        initial_pattern=tuple(pattern),
        layout=layout,
        sections=tuple(sections),
    )


def minimal_single_variable_circuit() -> Circuit:
    """The stripped 3-qubit circuit for F = (u1): H, copy, transfer, uncopy.

    All qubits start at 0; afterwards c_1 mirrors u_1, so the state is an
    equal superposition of |000> and |101> (reading u1 y1 c1).
    """
    layout = RegisterLayout.minimal_three_qubit()
    gates = (h(2), cnot(2, 1), cnot(1, 0), cnot(2, 1))
    return Circuit(
        qubit_count=3,
        gates=gates,
        initial_pattern=(0, 0, 0),
        layout=layout,
    )


# ---- 5. Census and bounds ----


@dataclass(frozen=True)
class GateCensus:
    h: int
    x: int
    cnot: int
    toffoli: int
    phase: int
    qubits: int

    @property
    def total_gates(self) -> int:
        return self.h + self.x + self.cnot + self.toffoli + self.phase

    def as_dict(self) -> dict[str, int]:
        return {
            "H": self.h,
            "X": self.x,
            "CNOT": self.cnot,
            "TOFFOLI": self.toffoli,
            "PHASE": self.phase,
            "qubits": self.qubits,
        }

    @classmethod
    def from_dict(cls, data: dict[str, int]) -> GateCensus:
        return cls(
            h=data["H"],
            x=data["X"],
            cnot=data["CNOT"],
            toffoli=data["TOFFOLI"],
            phase=data["PHASE"],
            qubits=data["qubits"],
        )


def gate_census(circuit: Circuit) -> GateCensus:
    counts = {kind: 0 for kind in GATE_KINDS}
    for gate in circuit.gates:
        counts[gate.kind] += 1
    return GateCensus(
        h=counts["H"],
        x=counts["X"],
        cnot=counts["CNOT"],
        toffoli=counts["TOFFOLI"],
        phase=counts["PHASE"],
        qubits=circuit.qubit_count,
    )


@dataclass(frozen=True)
class BoundCheck:
    name: str
    measured: int
    bound: int
    exact: bool  # True: measured must equal bound; False: measured <= bound
    passed: bool
    ratio: float


@dataclass(frozen=True)
class BoundReport:
    n: int
    m: int
    checks: tuple[BoundCheck, ...]

    @property
    def all_passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def format_table(self) -> str:
        lines = [f"{'resource':<10} {'measured':>9} {'bound':>9}  relation  status"]
        for check in self.checks:
            relation = "==" if check.exact else "<="
            status = "ok" if check.passed else "VIOLATED"
            lines.append(
                f"{check.name:<10} {check.measured:>9} {check.bound:>9}"
                f"      {relation}    {status}"
            )
        return "\n".join(lines)


def check_bounds(census: GateCensus, n: int, m: int) -> BoundReport:
    """Audit a census against the construction's resource envelopes."""
    mn = m * n
    entries = (
        ("H", census.h, n, True),
        ("X", census.x, X_ENVELOPE_FACTOR * mn, False),
        ("CNOT", census.cnot, CNOT_ENVELOPE_FACTOR * mn, False),
        ("TOFFOLI", census.toffoli, TOFFOLI_ENVELOPE_FACTOR * (mn + m), False),
        ("PHASE", census.phase, 0, False),
        ("qubits", census.qubits, 3 * n + m + 2, True),
    )
    checks = []
    for name, measured, bound, exact in entries:
        passed = measured == bound if exact else measured <= bound
        ratio = measured / bound if bound else float(measured == 0)
        checks.append(BoundCheck(name, measured, bound, exact, passed, ratio))
    return BoundReport(n=n, m=m, checks=tuple(checks))


# ---- 6. Inversion ----


def invert(circuit: Circuit) -> Circuit:
    """The inverse gate list: reversed order, PHASE theta mapped to 2*pi - theta.

    H, X, CNOT and TOFFOLI are self-inverse. Running `circuit` then
    `invert(circuit)` from any state is the identity; initial_pattern is
    carried over untouched as metadata.
    """
    inverted = []
    for gate in reversed(circuit.gates):
        if gate.kind == "PHASE":
            inverted.append(phase((TWO_PI - gate.theta) % TWO_PI, gate.target))
        else:
            inverted.append(gate)
    return Circuit(
        qubit_count=circuit.qubit_count,
        gates=tuple(inverted),
        initial_pattern=circuit.initial_pattern,
        layout=circuit.layout,
    )


# ---- 7. Text format ----

_FORMAT_TOKEN = {"H": "H", "X": "X", "CNOT": "CNOT", "TOFFOLI": "TOFF", "PHASE": "PHASE"}
_PARSE_TOKEN = {token: kind for kind, token in _FORMAT_TOKEN.items()}


def format_circuit(circuit: Circuit) -> str:
    """Plain-text form: two header lines, then one line per gate.

    The init bitstring prints qubit 0 rightmost. PHASE theta is written
    with repr so the float survives the round trip bit-exactly.
    """
    lines = [
        f"# qubits {circuit.qubit_count}",
        "# init " + "".join(str(b) for b in reversed(circuit.initial_pattern)),
    ]
    for gate in circuit.gates:
        if gate.kind == "PHASE":
            lines.append(f"PHASE {gate.theta!r} {gate.target}")
        elif gate.kind in ("CNOT", "TOFFOLI"):
            controls = " ".join(str(q) for q in gate.controls)
            lines.append(f"{_FORMAT_TOKEN[gate.kind]} {controls} {gate.target}")
        else:
            lines.append(f"{gate.kind} {gate.target}")
    return "\n".join(lines) + "\n"


def parse_circuit(text: str) -> Circuit:
    lines = [line.strip() for line in text.splitlines() if line.strip()]
    if len(lines) < 2:
        raise InputError("circuit text needs '# qubits' and '# init' header lines")
    header = lines[0].split()
    if header[:2] != ["#", "qubits"] or len(header) != 3:
        raise InputError(f"bad qubits header: {lines[0]!r}")
    try:
        qubit_count = int(header[2])
    except ValueError:
        raise InputError(f"bad qubits header: {lines[0]!r}") from None
    init = lines[1].split()
    if init[:2] != ["#", "init"] or len(init) != 3:
        raise InputError(f"bad init header: {lines[1]!r}")
    bits = init[2]
    if len(bits) != qubit_count or set(bits) - {"0", "1"}:
        raise InputError(f"init bitstring must be {qubit_count} bits of 0/1")
    pattern = tuple(int(ch) for ch in reversed(bits))

    gates = []
    for line in lines[2:]:
        tokens = line.split()
        kind = _PARSE_TOKEN.get(tokens[0])
        if kind is None:
            raise InputError(f"unknown gate line: {line!r}")
        try:
            if kind == "PHASE":
                if len(tokens) != 3:
                    raise InputError(f"bad PHASE line: {line!r}")
                gates.append(phase(float(tokens[1]), int(tokens[2])))
            elif kind in ("H", "X"):
                if len(tokens) != 2:
                    raise InputError(f"bad {kind} line: {line!r}")
                gates.append(Gate(kind, int(tokens[1])))
            elif kind == "CNOT":
                if len(tokens) != 3:
                    raise InputError(f"bad CNOT line: {line!r}")
                gates.append(cnot(int(tokens[1]), int(tokens[2])))
            else:
                if len(tokens) != 4:
                    raise InputError(f"bad TOFF line: {line!r}")
                gates.append(toffoli(int(tokens[1]), int(tokens[2]), int(tokens[3])))
        except ValueError:
            raise InputError(f"non-numeric field in gate line: {line!r}") from None
    return Circuit(qubit_count=qubit_count, gates=tuple(gates), initial_pattern=pattern)
