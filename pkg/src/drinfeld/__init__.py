"""Exact computations with rank-2 Drinfeld modules, h-structures and the Tate-Drinfeld module."""
from ._kernels import backend
from .dmodule import (DrinfeldError, DrinfeldModule, HStructure, autoduality_check, carlitz, dm_make, dm_phi,
                      dual, h_exists_criterion, h_structure_find, j_invariant, twist)
from .fields import GF, FieldElem, FieldError, ResourceCapError, extension, fq, get_field
from .ore import OrePoly, additive_kernel
from .poly import ModElem, Poly, PolyRing, QuotientRing
from .series import PrecisionError, SeriesRing, TruncSeries

__version__ = "0.1.0"

__all__ = [
    "backend", "DrinfeldError", "DrinfeldModule", "HStructure", "autoduality_check", "carlitz", "dm_make",
    "dm_phi", "dual", "h_exists_criterion", "h_structure_find", "j_invariant", "twist", "GF", "FieldElem",
    "FieldError", "ResourceCapError", "extension", "fq", "get_field", "OrePoly", "additive_kernel", "ModElem",
    "Poly", "PolyRing", "QuotientRing", "PrecisionError", "SeriesRing", "TruncSeries",
]
