# src/algebra/errors.py
# Error types shared by every area. All of them are ValueErrors so callers
# that only know about bad input can keep catching ValueError.


class InputError(ValueError):
    """Malformed input: unknown labels, slot or dimension mismatch, bad literals."""


class PreconditionError(ValueError):
    """An operation was called on data that violates its precondition."""


class WindowError(InputError):
    """A requested degree or weight lies outside the finite window."""
