"""Exception hierarchy shared by all symcount modules.

The CLI maps these onto exit codes: malformed or out-of-contract input
exits 2, a failed mathematical contract (a count, bound, or identity
that the library promises) exits 1.
"""


class SymcountError(Exception):
    """Base class for all library errors."""


class InputError(SymcountError):
    """Malformed input: wrong shapes, bad ranges, unparseable documents."""


class PreconditionError(InputError):
    """An operation's stated precondition does not hold for the input."""


class DegeneracyError(SymcountError):
    """A numerical quantity is too degenerate to resolve reliably."""


class InconsistencyError(SymcountError):
    """An internal exactness constraint failed (e.g. a non-integer dimension)."""


class VerificationError(SymcountError):
    """A mathematically guaranteed outcome failed to verify numerically."""


class ConstraintViolationError(SymcountError):
    """A structural validation rule on the input data is violated."""


class TruncationError(SymcountError):
    """An integration left its admissible range before completing."""
