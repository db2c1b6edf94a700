"""Exception hierarchy shared across the package.

The CLI maps these onto its stable exit codes: infeasible -> 2,
insufficient data -> 3, invariant failure -> 4, I/O -> 1.
"""

from __future__ import annotations


class SvpercError(Exception):
    """Base class for all package errors."""


class ConfigError(SvpercError, ValueError):
    """Invalid lattice or run configuration."""


class DomainError(SvpercError, ValueError):
    """Argument outside the mathematical domain of an operation."""


class RangeError(DomainError):
    """Requested n (or N) beyond the enumerated range of a table."""


class InfeasibleError(SvpercError):
    """Requested enumeration exceeds the feasibility budget."""

    def __init__(self, message: str, estimated_nodes: float | None = None):
        super().__init__(message)
        self.estimated_nodes = estimated_nodes


class InsufficientDataError(SvpercError):
    """Too few usable points for a fit or probe."""


class InvariantError(SvpercError):
    """A checked invariant failed."""
