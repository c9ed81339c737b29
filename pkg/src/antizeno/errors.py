"""Shared exception types."""


class NumericalError(RuntimeError):
    """A numerical operation failed or an internal invariant was violated.

    Raised for eigensolver failures, unconverged Fock cutoffs, certain-click
    measurement branches and similar conditions that indicate the simulation
    cannot proceed (CLI exit code 3). Plain ``ValueError`` is reserved for
    input validation (exit code 2).
    """
