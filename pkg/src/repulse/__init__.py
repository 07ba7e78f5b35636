"""Certified optimal spacing, transform-positivity certificates and
clustered ground-state simulation for the inverse-power-plus-one
repulsive potential family."""

__version__ = "0.1.0"

from .interval import DomainError, Interval
from .potential import (
    AmbiguousSignChangeError,
    LatticeEnergyTerms,
    PotentialContext,
    solve_s_alpha,
)

__all__ = [
    "__version__",
    "DomainError",
    "Interval",
    "AmbiguousSignChangeError",
    "LatticeEnergyTerms",
    "PotentialContext",
    "solve_s_alpha",
]
