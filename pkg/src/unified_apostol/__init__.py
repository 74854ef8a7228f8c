"""Exact computation and identity checking for the unified Apostol-type family."""

from .exact_algebra import ArgumentError, PoleError, TSeries, XPoly
from .unified_family import (
    FamilyParams,
    PolySequence,
    family_numbers,
    family_polynomials,
    family_series,
    make_params,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "PoleError",
    "TSeries",
    "XPoly",
    "FamilyParams",
    "PolySequence",
    "family_numbers",
    "family_polynomials",
    "family_series",
    "make_params",
]
