"""Kernel selection: the compiled Cython core when available, else pure Python.

Set ``LATTICE_COMMUTANT_PURE=1`` to force the pure-Python kernels.
"""
from __future__ import annotations

import os

from . import _pykernels

if os.environ.get("LATTICE_COMMUTANT_PURE"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[attr-defined]
    except ImportError:
        _impl = _pykernels

IMPLEMENTATION = "compiled" if _impl is not _pykernels else "python"

InternalBoundError = _pykernels.InternalBoundError
partitions = _pykernels.partitions
schur_terms = _pykernels.schur_terms
insert_part = _pykernels.insert_part

annihilation_terms = _impl.annihilation_terms
heisenberg_on_monomial = _impl.heisenberg_on_monomial
vertex_on_monomial = _impl.vertex_on_monomial
mode_on_monomial = _impl.mode_on_monomial
add_into = _impl.add_into
rref = _impl.rref
clear_caches = _impl.clear_caches
memo_size = _impl.memo_size
mode_on_vector = _impl.mode_on_vector
binom_half = _impl.binom_half
borcherds_sides = _impl.borcherds_sides
