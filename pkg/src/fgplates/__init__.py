"""Smoothed triangular finite elements for functionally graded Mindlin plates."""

from .materials import (
    DomainError,
    NumericError,
    PhaseProperties,
    ShearCorrection,
    FgmSection,
    ThermalState,
    SectionStiffness,
    section_stiffness,
    preset,
)

__version__ = "0.1.0"

__all__ = [
    "DomainError",
    "NumericError",
    "PhaseProperties",
    "ShearCorrection",
    "FgmSection",
    "ThermalState",
    "SectionStiffness",
    "section_stiffness",
    "preset",
    "__version__",
]
