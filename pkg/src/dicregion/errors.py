"""Exception types shared across the package."""


class DicRegionError(Exception):
    """Base class for all package-specific errors."""


class ChannelFormatError(DicRegionError):
    """A channel description is structurally malformed (missing or ragged
    table entries, inconsistent sizes).  Distinct from a channel that is
    well-formed but fails the injectivity check."""


class InfeasibleRegionError(DicRegionError):
    """An inequality system was proven infeasible (a variable elimination
    produced 0 <= rhs with rhs < 0)."""


class UnboundedDirectionError(DicRegionError):
    """A linear objective is unbounded over a region."""

    def __init__(self, direction, message=None):
        self.direction = tuple(direction)
        super().__init__(message or f"region is unbounded in direction {self.direction}")


class EnumerationOverflowError(DicRegionError):
    """Facet enumeration exceeded the configured size guard."""


class SchemeReductionError(DicRegionError):
    """A weight-shifting reduction could not be completed.  For schemes that
    satisfy the documented preconditions this cannot happen, so raising it
    signals either a precondition violation by the caller or an internal
    inconsistency."""
