"""Exact computations for the order-32 central product of Q8 and D8 in Sp4.

Everything is arbitrary-precision rational / Gaussian-rational arithmetic:
group structure, character theory, the trace-condition hyperplane
classification of the deformation parameter space, truncated zeroth Poisson
homology of the invariant ring, and the automorphism group.
"""

from .exact import GaussQ, Matrix, kron
from .group import FiniteMatrixGroup, build_group, close_group, preserves_form

__version__ = "0.1.0"
