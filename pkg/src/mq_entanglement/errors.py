"""Exception hierarchy for spin-dynamics operations."""


class SpinDynamicsError(Exception):
    """Base exception for all library errors."""

    pass


class DimensionError(SpinDynamicsError):
    """Matrix or vector has the wrong shape for the operation."""

    pass


class SymmetryError(SpinDynamicsError):
    """Matrix expected to be Hermitian is not, beyond tolerance."""

    pass


class SpinIndexError(SpinDynamicsError, IndexError):
    """Spin index, label or bipartition is out of range."""

    pass


class DomainError(SpinDynamicsError, ValueError):
    """Argument lies outside the domain of the formula."""

    pass


class StructureError(SpinDynamicsError):
    """Hamiltonian mixes parity sectors."""

    pass


class NormalizationError(SpinDynamicsError):
    """Trace or norm is not what the operation requires."""

    pass


class PositivityError(SpinDynamicsError):
    """Matrix expected to be positive semidefinite has a negative eigenvalue."""

    pass


class NumericError(SpinDynamicsError):
    """Numerical result violates a property it must have (e.g. real spectrum)."""

    pass


class ConsistencyError(SpinDynamicsError):
    """Two independent evaluations of the same quantity disagree."""

    pass


class ClassificationError(SpinDynamicsError):
    """State is not supported on the GHZ/W family basis."""

    pass


class ScopeError(SpinDynamicsError):
    """System is outside the scope of a closed-form identity."""

    pass


class ChannelError(SpinDynamicsError):
    """Requested sweep channel is unknown or unavailable for the system."""

    pass
