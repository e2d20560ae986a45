"""Exact series toolkit for the factorized low-temperature Ising correlations."""

from .series_core import KERNEL, EXACT, KSeries, LamPoly, Q

__version__ = "0.1.0"

__all__ = ["KERNEL", "EXACT", "KSeries", "LamPoly", "Q", "__version__"]
