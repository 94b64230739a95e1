"""Exact computation of HRH levels and related singularity invariants."""

from .errors import ConsistencyError, DomainError

__all__ = ["ConsistencyError", "DomainError", "__version__"]
__version__ = "0.1.0"
