"""Exact multiset simulation of tube-based DNA computation.

A strand is an ordered sequence of (variable, bit) symbols and a tube is a
multiset of strands with exact integer counts; nothing is probabilistic.
The seven primitives (append-head, append-tail, extract, discard, amplify,
merge, detect, read) treat tubes as linear resources: every primitive
except detect and read consumes its input tubes, and feeding a consumed
tube to another primitive raises TubeConsumedError. Plain Python
introspection of a tube (counts, totals, equality of contents) stays legal
after consumption.

Wrapping a sequence of primitive calls in `with trace_primitives() as tr:`
records one event per call, carrying tube ids and molecule counts; the
solver's --trace flag prints these.
"""

from __future__ import annotations

import itertools
from contextlib import contextmanager
from dataclasses import dataclass
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .cnf import Assignment, Formula, assignment_to_index
from .errors import GuardError, InputError

# lipton_solve starts from all 2^n strands; past this the multisets stop
# fitting in memory in any useful way.
TUBE_MAX_VARS = 20


class TubeConsumedError(RuntimeError):
    """A primitive received a tube that an earlier primitive already used up."""


class EmptyTubeError(ValueError):
    """read() was asked to pick a strand out of an empty tube."""


# ---- 1. Strands ----


@dataclass(frozen=True)
class Strand:
    """An ordered sequence of (variable, bit) symbols; () is the null strand."""

    symbols: tuple[tuple[int, int], ...] = ()

    def __post_init__(self) -> None:
        for variable, bit in self.symbols:
            if variable < 1:
                raise InputError(f"strand variable must be >= 1, got {variable}")
            if bit not in (0, 1):
                raise InputError(f"strand bit must be 0 or 1, got {bit}")

    @property
    def variables(self) -> frozenset[int]:
        return frozenset(variable for variable, _ in self.symbols)

    def value_of(self, variable: int) -> int | None:
        for v, bit in self.symbols:
            if v == variable:
                return bit
        return None

    def bitstring(self) -> str:
        """Bits sorted by descending variable (u_n leftmost, ket order)."""
        return "".join(str(bit) for _, bit in sorted(self.symbols, reverse=True))

    def sort_key(self) -> tuple[str, tuple[tuple[int, int], ...]]:
        return (self.bitstring(), tuple(sorted(self.symbols)))

    def __str__(self) -> str:
        if not self.symbols:
            return "(null)"
        return self.bitstring()


def strand_to_assignment(strand: Strand, n: int) -> Assignment:
    """Read a strand carrying all of u1..un as an assignment tuple."""
    values = dict(strand.symbols)
    if set(values) != set(range(1, n + 1)):
        raise InputError(f"strand does not carry exactly u1..u{n}: {strand!r}")
    return tuple(values[v] for v in range(1, n + 1))


# ---- 2. Tubes ----

_tube_ids = itertools.count(1)


class Tube:
    """An immutable multiset of strands with a unique id and a consumed flag."""

    __slots__ = ("tube_id", "_counts", "total", "consumed")

    def __init__(self, counts: Mapping[Strand, int] | None = None) -> None:
        cleaned: dict[Strand, int] = {}
        for strand, count in (counts or {}).items():
            if count < 0:
                raise InputError(f"negative strand count {count}")
            if count > 0:
                cleaned[strand] = count
        self._counts = cleaned
        self.total = sum(cleaned.values())
        self.tube_id = next(_tube_ids)
        self.consumed = False

    @classmethod
    def empty(cls) -> Tube:
        return cls()

    @classmethod
    def single_null_strand(cls) -> Tube:
        return cls({Strand(): 1})

    @classmethod
    def from_strands(cls, strands: Iterable[Strand]) -> Tube:
        counts: dict[Strand, int] = {}
        for strand in strands:
            counts[strand] = counts.get(strand, 0) + 1
        return cls(counts)

    @property
    def counts(self) -> Mapping[Strand, int]:
        return MappingProxyType(self._counts)

    def count(self, strand: Strand) -> int:
        return self._counts.get(strand, 0)

    def strands(self) -> Iterator[Strand]:
        return iter(self._counts)

    def same_contents(self, other: Tube) -> bool:
        return self._counts == other._counts

    def __len__(self) -> int:
        return len(self._counts)

    def __contains__(self, strand: Strand) -> bool:
        return strand in self._counts

    def __repr__(self) -> str:
        return f"Tube(id={self.tube_id}, kinds={len(self._counts)}, total={self.total})"


# ---- 3. Primitive trace ----


@dataclass(frozen=True)
class TraceEvent:
    """One primitive application: operation name, tube ids, molecule count.

    `molecules` is the total molecule count across the output tubes, or the
    observed tube's count for the outputless detect/read.
    """

    op: str
    inputs: tuple[int, ...]
    outputs: tuple[int, ...]
    molecules: int

    def format(self) -> str:
        ins = ",".join(str(i) for i in self.inputs) or "-"
        outs = ",".join(str(i) for i in self.outputs) or "-"
        return f"{self.op} in={ins} out={outs} count={self.molecules}"


class PrimitiveTrace:
    """Collects TraceEvents while active (see trace_primitives)."""

    def __init__(self) -> None:
        self.events: list[TraceEvent] = []

    def operations(self) -> set[str]:
        return {event.op for event in self.events}

    def format_lines(self) -> list[str]:
        return [event.format() for event in self.events]


_TRACE_STACK: list[PrimitiveTrace] = []


@contextmanager
def trace_primitives() -> Iterator[PrimitiveTrace]:
    trace = PrimitiveTrace()
    _TRACE_STACK.append(trace)
    try:
        yield trace
    finally:
        _TRACE_STACK.remove(trace)


def _record(op: str, inputs: tuple[Tube, ...], outputs: tuple[Tube, ...]) -> None:
    if not _TRACE_STACK:
        return
    if outputs:
        molecules = sum(t.total for t in outputs)
    else:
        molecules = sum(t.total for t in inputs)
    event = TraceEvent(
        op,
        tuple(t.tube_id for t in inputs),
        tuple(t.tube_id for t in outputs),
        molecules,
    )
    for trace in _TRACE_STACK:
        trace.events.append(event)


# ---- 4. The seven primitives ----


def _use(tube: Tube) -> Tube:
    if tube.consumed:
        raise TubeConsumedError(f"tube {tube.tube_id} was already consumed")
    tube.consumed = True
    return tube


def _observe(tube: Tube) -> Tube:
    if tube.consumed:
        raise TubeConsumedError(f"tube {tube.tube_id} was already consumed")
    return tube


def _append(tube: Tube, symbol: tuple[int, int], at_head: bool, op: str) -> Tube:
    variable, bit = symbol
    if variable < 1 or bit not in (0, 1):
        raise InputError(f"bad symbol {symbol!r}")
    _use(tube)
    counts: dict[Strand, int] = {}
    for strand, count in tube.counts.items():
        if strand.value_of(variable) is not None:
            raise InputError(
                f"cannot append u{variable}: a strand already carries it"
            )
        extended = Strand(
            (symbol,) + strand.symbols if at_head else strand.symbols + (symbol,)
        )
        counts[extended] = counts.get(extended, 0) + count
    out = Tube(counts)
    _record(op, (tube,), (out,))
    return out


def append_head(tube: Tube, symbol: tuple[int, int]) -> Tube:
    """Prepend one (variable, bit) symbol to every strand in the tube."""
    return _append(tube, symbol, at_head=True, op="APPEND_HEAD")


def append_tail(tube: Tube, symbol: tuple[int, int]) -> Tube:
    """Append one (variable, bit) symbol to every strand in the tube."""
    return _append(tube, symbol, at_head=False, op="APPEND_TAIL")


def extract(tube: Tube, variable: int, bit: int) -> tuple[Tube, Tube]:
    """Split into (plus, minus): strands carrying (variable, bit) vs the rest.

    Strands that do not mention the variable at all land in minus, so
    plus and minus always partition the input exactly.
    """
    if variable < 1 or bit not in (0, 1):
        raise InputError(f"bad extraction symbol ({variable}, {bit})")
    _use(tube)
    plus_counts: dict[Strand, int] = {}
    minus_counts: dict[Strand, int] = {}
    for strand, count in tube.counts.items():
        if strand.value_of(variable) == bit:
            plus_counts[strand] = count
        else:
            minus_counts[strand] = count
    plus, minus = Tube(plus_counts), Tube(minus_counts)
    _record("EXTRACT", (tube,), (plus, minus))
    return plus, minus


def discard(tube: Tube) -> Tube:
    """Throw the tube away; returns a fresh empty tube."""
    _use(tube)
    out = Tube.empty()
    _record("DISCARD", (tube,), (out,))
    return out


def amplify(tube: Tube) -> tuple[Tube, Tube]:
    """Two exact copies of the tube; the original is consumed."""
    _use(tube)
    first, second = Tube(tube.counts), Tube(tube.counts)
    _record("AMPLIFY", (tube,), (first, second))
    return first, second


def merge(tubes: Iterable[Tube]) -> Tube:
    """Multiset union of any number of tubes."""
    tubes = tuple(tubes)
    counts: dict[Strand, int] = {}
    for tube in tubes:
        _use(tube)
        for strand, count in tube.counts.items():
            counts[strand] = counts.get(strand, 0) + count
    out = Tube(counts)
    _record("MERGE", tubes, (out,))
    return out


def detect(tube: Tube) -> bool:
    """True when the tube holds at least one molecule. Does not consume."""
    _observe(tube)
    _record("DETECT", (tube,), ())
    return tube.total > 0


def read(tube: Tube) -> Strand:
    """One strand from the tube, smallest by variable-sorted bitstring.

    Deterministic tie-break so tests and traces are reproducible. Does not
    consume the tube.
    """
    _observe(tube)
    if tube.total == 0:
        raise EmptyTubeError(f"tube {tube.tube_id} is empty")
    strand = min(tube.strands(), key=Strand.sort_key)
    _record("READ", (tube,), ())
    return strand


# ---- 5. Tube-level SAT ----


def uniform_tube(n: int) -> Tube:
    """All 2^n assignment strands over u1..un, one molecule each.

    Built from primitives only: starting from the single null strand, each
    round amplifies, appends u_v=0 to one copy and u_v=1 to the other, and
    merges. Rounds run v = n down to 1, so strands carry u_n at the head.
    """
    if n < 1:
        raise InputError(f"uniform tube needs n >= 1, got {n}")
    tube = Tube.single_null_strand()
    for variable in range(n, 0, -1):
        zero_copy, one_copy = amplify(tube)
        zero_copy = append_tail(zero_copy, (variable, 0))
        one_copy = append_tail(one_copy, (variable, 1))
        tube = merge((zero_copy, one_copy))
    return tube


def lipton_solve(formula: Formula) -> list[Assignment]:
    """Satisfying assignments via per-clause tube filtering.

    Starts from uniform_tube(n). For each clause, extract the strands
    satisfying each literal in turn (plus tubes kept, minus fed to the next
    literal), discard what no literal claimed, and merge the keeps. After
    the last clause, detect and read off the survivors.
    """
    if formula.n > TUBE_MAX_VARS:
        raise GuardError(
            f"tube solving is capped at n <= {TUBE_MAX_VARS}, got n={formula.n}"
        )
    tube = uniform_tube(formula.n)
    for clause in formula.clauses:
        remainder = tube
        kept: list[Tube] = []
        for literal in clause.literals:
            wanted_bit = 0 if literal.negated else 1
            plus, remainder = extract(remainder, literal.variable, wanted_bit)
            kept.append(plus)
        discard(remainder)
        tube = merge(kept)
    if not detect(tube):
        return []
    solutions = [strand_to_assignment(s, formula.n) for s in tube.strands()]
    solutions.sort(key=assignment_to_index)
    return solutions
