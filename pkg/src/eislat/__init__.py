"""Exact Hermitian lattices over the Eisenstein integers and their verification suites."""
from .eisenstein import EisensteinInt, EisensteinOverflowError
from .elinalg import ScaledEMatrix, ScaledEVector
from .lattice import HermitianLattice

__version__ = "0.1.0"

__all__ = [
    "EisensteinInt",
    "EisensteinOverflowError",
    "HermitianLattice",
    "ScaledEMatrix",
    "ScaledEVector",
    "__version__",
]
