"""Exact computations in the rank-one lattice vertex algebra V_{A1} and its dual lattice extension.

The main entry points are re-exported here; see the submodules for the rest.
"""
from .fock import FockVector, TermSyntaxError
from .kernels import IMPLEMENTATION, InternalBoundError
from .qseries import QSeries, compare, fermionic_char_C, fermionic_char_W
from .report import IdentityReport
from .subspaces import commutant_dimension_table, phi
from .vertex import derivation, state_field_mode, vertex_mode_apply, virasoro_mode

__all__ = [
    "FockVector",
    "TermSyntaxError",
    "IMPLEMENTATION",
    "InternalBoundError",
    "QSeries",
    "compare",
    "fermionic_char_C",
    "fermionic_char_W",
    "IdentityReport",
    "commutant_dimension_table",
    "phi",
    "derivation",
    "state_field_mode",
    "vertex_mode_apply",
    "virasoro_mode",
]
__version__ = "0.1.0"
