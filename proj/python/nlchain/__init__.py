"""Nonlocal Laplacians of the N-periodic harmonic chain.

Matrix functions of the next-neighbor Laplacian: operator assembly, Bloch
spectra, energies, exact and Verlet dynamics, long-wave (continuum) limits
and the inverse reconstruction problem with a Gaussian-kernel benchmark.
"""

from ._core import *  # noqa: F401,F403
from ._core import __doc__ as _core_doc  # noqa: F401

__all__ = [name for name in dir() if not name.startswith("_")]
