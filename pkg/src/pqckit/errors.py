"""Exception types shared across the package."""


class CapacityError(ValueError):
    """A register or operator size exceeds the supported range."""


class UnitarityError(ValueError):
    """A gate matrix failed its unitarity check."""


class HamiltonianFormatError(ValueError):
    """A Pauli-Hamiltonian source violates the term-per-line format."""

    def __init__(self, message: str, line_no: int | None = None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class EomLeakageError(RuntimeError):
    """Band-truncated modulation pushed too much probability out of the register."""

    def __init__(self, leakage: float, threshold: float):
        super().__init__(
            f"frequency-shift leakage {leakage:.4g} exceeds {threshold:.4g}; "
            "increase the number of levels d or reduce the modulation depth"
        )
        self.leakage = leakage
        self.threshold = threshold
