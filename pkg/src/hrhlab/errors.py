"""Exception types shared by every hrhlab module."""


class DomainError(ValueError):
    """An input lies outside the domain of an operation."""


class ConsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""
