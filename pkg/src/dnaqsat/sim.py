"""Dense state-vector simulation of the gate set {H, X, CNOT, TOFFOLI, PHASE}.

Amplitudes live in one flat complex128 array where qubit q is bit q of the
basis index (qubit 0 least significant). Every gate reshapes that array to
(2,)*Q and works on axis slices: X, CNOT and TOFFOLI swap two slices
outright, so permutation gates move amplitudes with no arithmetic at all;
H and PHASE are the only gates that touch the values. Post-selection is a
deterministic projection plus renormalisation, never a sampled collapse;
sampling exists separately for shot-style demos.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, Gate, RegisterLayout
from .errors import InputError

SUPPORT_TOL = 1e-9
POST_SELECT_MIN_PROBABILITY = 1e-12
INV_SQRT2 = 2.0 ** -0.5


class ZeroProbabilityError(RuntimeError):
    """Post-selection asked for a branch holding (almost) no probability."""


class StateVector:
    """qubit_count and a 2^qubit_count complex128 amplitude array."""

    __slots__ = ("qubit_count", "amplitudes")

    def __init__(self, qubit_count: int, amplitudes: np.ndarray | None = None) -> None:
        if qubit_count < 1:
            raise InputError(f"state needs >= 1 qubit, got {qubit_count}")
        size = 1 << qubit_count
        if amplitudes is None:
            amplitudes = np.zeros(size, dtype=np.complex128)
        else:
            amplitudes = np.asarray(amplitudes, dtype=np.complex128).reshape(-1)
            if amplitudes.size != size:
                raise InputError(
                    f"amplitude array has {amplitudes.size} entries, expected {size}"
                )
        self.qubit_count = qubit_count
        self.amplitudes = amplitudes

    @classmethod
    def basis_state(cls, qubit_count: int, index: int) -> StateVector:
        state = cls(qubit_count)
        if not 0 <= index < (1 << qubit_count):
            raise InputError(f"basis index {index} out of range")
        state.amplitudes[index] = 1.0
        return state

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> StateVector:
        return StateVector(self.qubit_count, self.amplitudes.copy())

    def __repr__(self) -> str:
        return f"StateVector(qubits={self.qubit_count})"


# ---- 1. Gate application ----


def _slices(qubit_count: int, target: int, controls: tuple[int, ...], bit: int) -> tuple:
    """Index tuple into the (2,)*Q view selecting target=bit, controls=1."""
    index: list = [slice(None)] * qubit_count
    for control in controls:
        index[qubit_count - 1 - control] = 1
    index[qubit_count - 1 - target] = bit
    return tuple(index)


def apply(state: StateVector, gate: Gate) -> StateVector:
    """Apply one gate in place; returns the same state for chaining."""
    qubit_count = state.qubit_count
    if max(gate.qubits) >= qubit_count:
        raise InputError(f"gate {gate} out of range for {qubit_count} qubits")
    view = state.amplitudes.reshape((2,) * qubit_count)
    if gate.kind in ("X", "CNOT", "TOFFOLI"):
        lo = _slices(qubit_count, gate.target, gate.controls, 0)
        hi = _slices(qubit_count, gate.target, gate.controls, 1)
        swap = np.array(view[lo])
        view[lo] = view[hi]
        view[hi] = swap
    elif gate.kind == "H":
        lo = _slices(qubit_count, gate.target, (), 0)
        hi = _slices(qubit_count, gate.target, (), 1)
        low = np.array(view[lo])
        high = view[hi]
        view[lo] = (low + high) * INV_SQRT2
        view[hi] = (low - high) * INV_SQRT2
    else:  # PHASE
        hi = _slices(qubit_count, gate.target, (), 1)
        view[hi] *= np.exp(1j * gate.theta)
    return state


def init_state(circuit: Circuit) -> StateVector:
    return StateVector.basis_state(circuit.qubit_count, circuit.initial_index)


def run(circuit: Circuit, state: StateVector | None = None, hook=None) -> StateVector:
    """Run all gates; starts from the circuit's initial pattern by default.

    `hook(i, gate, state)`, when given, fires after gate i has been applied;
    tests use it to watch mid-circuit register hygiene.
    """
    if state is None:
        state = init_state(circuit)
    elif state.qubit_count != circuit.qubit_count:
        raise InputError(
            f"state has {state.qubit_count} qubits, circuit {circuit.qubit_count}"
        )
    for i, gate in enumerate(circuit.gates):
        apply(state, gate)
        if hook is not None:
            hook(i, gate, state)
    return state


# ---- 2. Projection and readout ----


def post_select(state: StateVector, qubit: int, bit: int) -> tuple[float, StateVector]:
    """Project onto qubit=bit and renormalise.

    Returns (branch probability, projected state). Raises
    ZeroProbabilityError when the branch holds less than
    POST_SELECT_MIN_PROBABILITY, which is how an UNSAT run shows up.
    """
    if not 0 <= qubit < state.qubit_count:
        raise InputError(f"qubit {qubit} out of range")
    if bit not in (0, 1):
        raise InputError(f"bit must be 0 or 1, got {bit}")
    view = state.amplitudes.reshape((2,) * state.qubit_count)
    picked = view[_slices(state.qubit_count, qubit, (), bit)]
    probability = float(np.sum(picked.real**2 + picked.imag**2))
    if probability < POST_SELECT_MIN_PROBABILITY:
        raise ZeroProbabilityError(
            f"qubit {qubit}={bit} holds probability {probability:.3e}"
        )
    projected = np.zeros_like(state.amplitudes).reshape((2,) * state.qubit_count)
    projected[_slices(state.qubit_count, qubit, (), bit)] = picked / np.sqrt(probability)
    return probability, StateVector(state.qubit_count, projected.reshape(-1))


@dataclass(frozen=True)
class SupportEntry:
    """One basis state carrying weight: its index and exact stored amplitude."""

    index: int
    amplitude: complex

    def bit(self, qubit: int) -> int:
        return (self.index >> qubit) & 1

    def bitstring(self, qubit_count: int) -> str:
        return format(self.index, f"0{qubit_count}b")


def support(state: StateVector, tol: float = SUPPORT_TOL) -> list[SupportEntry]:
    """Entries with |amplitude| > tol, ascending by basis index."""
    indices = np.nonzero(np.abs(state.amplitudes) > tol)[0]
    return [SupportEntry(int(i), complex(state.amplitudes[i])) for i in indices]


def read_register(entry: SupportEntry, layout: RegisterLayout, register: str) -> tuple[int, ...]:
    """Bits of one named register, most significant slot first.

    `register` is one of "u", "y", "r", "c"; the returned tuple reads like
    the ket (u_n..u_1, r_n..r_0, c_m..c_0).
    """
    if register not in ("u", "y", "r", "c"):
        raise InputError(f"register must be one of u, y, r, c; got {register!r}")
    slots: tuple[int, ...] = getattr(layout, register)
    return tuple(entry.bit(q) for q in reversed(slots))


# ---- 3. Sampling and dumps ----


def sample_counts(
    state: StateVector, shots: int, rng: np.random.Generator
) -> dict[int, int]:
    """Shot-style measurement of all qubits: basis index -> hit count."""
    if shots < 1:
        raise InputError(f"shots must be >= 1, got {shots}")
    amplitudes = state.amplitudes
    probabilities = amplitudes.real**2 + amplitudes.imag**2
    probabilities = probabilities / probabilities.sum()
    drawn = rng.choice(len(probabilities), size=shots, p=probabilities)
    counts: dict[int, int] = {}
    for index in drawn:
        counts[int(index)] = counts.get(int(index), 0) + 1
    return counts


def dump_state(state: StateVector, path: str, tol: float = SUPPORT_TOL) -> int:
    """Write one `<bitstring> <re> <im>` line per support entry.

    Bitstrings print qubit 0 rightmost; floats carry 17 significant digits
    so they round-trip. Returns the number of lines written.
    """
    entries = support(state, tol)
    with open(path, "w", encoding="utf-8") as handle:
        for entry in entries:
            handle.write(
                f"{entry.bitstring(state.qubit_count)} "
                f"{entry.amplitude.real:.17g} {entry.amplitude.imag:.17g}\n"
            )
    return len(entries)
