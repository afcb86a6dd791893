"""Exception types raised by the exact-arithmetic layers."""


class CyclicTDError(Exception):
    """Base class for all package-specific errors."""


class PoleAtRootError(CyclicTDError):
    """A scalar has a genuine pole at the requested root of unity."""

    def __init__(self, message, lead_order=None):
        super().__init__(message)
        self.lead_order = lead_order


class DivergentLimitError(CyclicTDError):
    """A limit does not exist: the expansion has negative leading order."""

    def __init__(self, message, lead_order, lead_coeff=None):
        super().__init__(message)
        self.lead_order = lead_order
        self.lead_coeff = lead_coeff


class PrecisionError(CyclicTDError):
    """The series truncation order is too low to decide the question."""


class BranchAmbiguityError(CyclicTDError):
    """A formal unit phase survived; the result is branch dependent."""

    def __init__(self, message, symbols=()):
        super().__init__(message)
        self.symbols = tuple(symbols)


class DegenerateSpectrumError(CyclicTDError):
    """Eigenvalues merge where distinctness is required."""


class DecompositionError(CyclicTDError):
    """An operator fails to diagonalize over the requested candidates."""


class VerificationError(CyclicTDError):
    """A verification step failed; details carry the counterexample."""
