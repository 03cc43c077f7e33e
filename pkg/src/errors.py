"""Exception hierarchy for the k3fib toolkit.

Every error raised on bad input derives from :class:`DomainError`, which the
command-line front end maps to exit code 1. Internal consistency failures
(an assertion the mathematics guarantees) raise :class:`InternalCheckError`.
"""
from typing import Iterable, List, Optional


class K3FibError(Exception):
    """Base class for all k3fib errors."""


class DomainError(K3FibError, ValueError):
    """Invalid input or a request the mathematics cannot satisfy."""


class LatticeError(DomainError):
    """Malformed Gram matrix, degenerate lattice or incompatible sublattices."""


class RootSystemError(DomainError):
    """Out-of-range root type, irreducible Kodaira type or bad component index."""


class CatalogError(DomainError):
    """Niemeier catalog data that fails validation."""


class EmbeddingError(DomainError):
    """Unsupported T0 or no primitive embedding found."""


class UniquenessViolation(EmbeddingError):
    """Two primitive embeddings produced complements with different invariants."""

    def __init__(self, message: str, complements: Optional[List[dict]] = None):
        super().__init__(message)
        self.complements = complements or []


class ConfigError(DomainError):
    """Curve configuration that fails parsing or validation.

    Attributes:
        violations: Itemized problems, one human-readable line each
    """

    def __init__(self, message: str, violations: Optional[Iterable[str]] = None):
        self.violations = list(violations or [])
        if self.violations:
            message = f"{message}: " + "; ".join(self.violations)
        super().__init__(message)


class CurveError(DomainError):
    """A curve, section or fiber request that does not apply to the configuration."""


class WeierstrassError(DomainError):
    """Degenerate curve, off-curve point or unparsable expression."""


class InternalCheckError(K3FibError, AssertionError):
    """A computed invariant contradicts a guaranteed identity."""
