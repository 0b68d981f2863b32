"""Sharp radii of starlikeness and convexity for analytic functions whose
Taylor coefficients obey |a_2| = 2b and |a_n| <= n, M or M/n, plus the
analogous positive-real-part radius for Caratheodory-type functions."""

from .model import (
    ClassSpec,
    DomainError,
    Family,
    Kind,
    MultipleRoots,
    NoRoot,
    NonConvergence,
    PoleError,
    RadiiError,
    RadiusKind,
    RadiusQuery,
    RadiusResult,
    UnsupportedClass,
    VerificationReport,
    validate,
)
from .solver import RadicalId, closed_form_radical, radius, solve_radius
from .extremal import ExtremalFunction, Form

__all__ = [
    "ClassSpec",
    "DomainError",
    "ExtremalFunction",
    "Family",
    "Form",
    "Kind",
    "MultipleRoots",
    "NoRoot",
    "NonConvergence",
    "PoleError",
    "RadiiError",
    "RadicalId",
    "RadiusKind",
    "RadiusQuery",
    "RadiusResult",
    "UnsupportedClass",
    "VerificationReport",
    "closed_form_radical",
    "radius",
    "solve_radius",
    "validate",
]
