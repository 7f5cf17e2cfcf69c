"""Independent brute-force oracle: explicit Verma modules for the affine sl(l+1)."""

from .liealg import LoopAlgebra, UnsupportedSeriesError
from .verma import VermaLattice

__all__ = ["LoopAlgebra", "UnsupportedSeriesError", "VermaLattice"]
