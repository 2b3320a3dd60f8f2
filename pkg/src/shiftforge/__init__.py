"""Shift spaces over countable group alphabets: entrywise inverse
semigroup operations, follower-set coset structure, decomposition into
a fractal factor and full shifts, and embedding of abstract inverse
monoids into one-sided full shifts."""

__version__ = "0.1.0"

from .errors import ShiftforgeError
from .sequences import EMPTY, Axis, Sequence
from .shifts import ShiftPresentation, shift_from_descriptor

__all__ = [
    "EMPTY",
    "Axis",
    "Sequence",
    "ShiftPresentation",
    "ShiftforgeError",
    "shift_from_descriptor",
    "__version__",
]
