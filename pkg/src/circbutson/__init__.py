"""Circulant Butson complex Hadamard matrices: exact verification, duality,
obstructions and symmetry-reduced classification."""

from .circulant import ExponentRow, canonicalize, is_hadamard, is_hermitian
from .obstructions import check_obstructions
from .search import SearchConfig, classify_cell

__version__ = "0.1.0"

__all__ = [
    "ExponentRow",
    "SearchConfig",
    "canonicalize",
    "check_obstructions",
    "classify_cell",
    "is_hadamard",
    "is_hermitian",
]
