"""Exception types raised by fibercavity."""


class CavityDomainError(ValueError):
    """Input outside the domain where the cavity formulas are defined."""


class InconsistentMeasurementError(ValueError):
    """A (finesse, contrast) measurement that no reflectivity pair can produce."""


class InsufficientDataError(ValueError):
    """Not enough features in a trace or series to complete an analysis."""


class FitError(ValueError):
    """Degenerate regression problem."""
