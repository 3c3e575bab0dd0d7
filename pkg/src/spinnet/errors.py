"""Exception types shared across the package."""


class SpinnetError(Exception):
    """Base class for all package errors."""


class DomainError(SpinnetError, ValueError):
    """An input lies outside the mathematical domain of an operation."""


class ReflectionNeededError(DomainError):
    """The direct Racah parameter map is invalid for this orientation.

    six_j_racah resolves this by moving to a symmetry-equivalent
    orientation; callers of param_map see the failure explicitly.
    """


class GeometryError(DomainError):
    """Edge lengths do not embed as a non-degenerate Euclidean tetrahedron."""

    def __init__(self, message, determinant=None):
        super().__init__(message)
        self.determinant = determinant


class DocumentError(SpinnetError, ValueError):
    """A triangulation document failed validation.

    ``location`` points at the offending element, e.g. "edges[3].spin_twice".
    """

    def __init__(self, message, location=""):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class InternalError(SpinnetError):
    """An internal invariant was violated (reported as exit code 3 by the CLI)."""
