"""Exception hierarchy shared across the package."""


class VQNetError(Exception):
    """Base class for all errors raised by this package."""


class ShapeError(VQNetError):
    """Operand shapes do not conform for the requested operation."""


class DomainError(VQNetError):
    """Numerically invalid input (zero divisor, log of non-positive, overflow)."""


class PauliParseError(VQNetError):
    """Malformed Hamiltonian text; message carries line/token position."""


class CircuitError(VQNetError):
    """Invalid gate or qubit index in a circuit."""


class ResourceError(VQNetError):
    """Requested problem size exceeds a configured cap."""


class UnboundVariableError(VQNetError):
    """A leaf or circuit binding was used before being given a value."""


class UnsupportedHamiltonianError(VQNetError):
    """Hamiltonian does not satisfy the structure required by an operation."""


class UsageError(VQNetError):
    """API invoked in an unsupported way (wrong node kind, non-scalar root, ...)."""


class DataError(VQNetError):
    """Malformed data file contents."""
