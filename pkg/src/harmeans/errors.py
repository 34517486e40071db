"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of an operation."""


class DegenerateSampleError(ValueError):
    """A sample has no usable variation (e.g. all residuals are zero)."""


class DegenerateReplicatesError(RuntimeError):
    """Bootstrap replication kept producing zero-variance resamples."""


class IngestError(ValueError):
    """Input file could not be parsed into the requested series."""
