"""Exact incidence-algebra computations on finite posets and matroids."""
from .kernels import backend

__version__ = "0.1.0"
__all__ = ["backend", "__version__"]
