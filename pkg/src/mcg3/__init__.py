"""Mapping-class groups of connected sums of prime 3-manifolds.

Core library: exact word arithmetic, finite permutation groups, a
residual-finiteness word-problem decider, a symbolic prime-manifold catalog,
Fouxe-Rabinovitch mapping-class generators, and unitary representation
analysis.  A FastAPI service and a thin CLI front both surfaces.
"""

__version__ = "0.1.0"
