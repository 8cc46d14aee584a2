"""Shared exception types.

InputError covers malformed text (DIMACS, circuit files) and violated
structural invariants; GuardError covers exceeded size guards. The CLI
maps them to exit codes 2 and 3 respectively.
"""


class InputError(ValueError):
    """Malformed input or violated structural invariant."""


class GuardError(RuntimeError):
    """A size guard (enumeration, tube, or qubit limit) was exceeded."""
