"""Correlation functions of the real Ginibre ensemble: finite-N kernels,
scaling limits, quadrature and Monte Carlo cross-checks."""

__version__ = "0.1.0"

from .correlation import SpectralConfiguration, complex_density, correlation, integrated_counts, real_density
from .finite import KernelBlock, kernel_closed_form, kernel_skew_sum, partition_function
from .pfaffian import pfaffian
from .regimes import (
    ComplexBulk,
    ComplexEdge,
    ComplexGinibreBulk,
    ComplexGinibreEdge,
    ComplexGinibreFinite,
    FiniteN,
    OriginBulk,
    RealEdge,
    make_regime,
)

__all__ = [
    "SpectralConfiguration",
    "complex_density",
    "correlation",
    "integrated_counts",
    "real_density",
    "KernelBlock",
    "kernel_closed_form",
    "kernel_skew_sum",
    "partition_function",
    "pfaffian",
    "ComplexBulk",
    "ComplexEdge",
    "ComplexGinibreBulk",
    "ComplexGinibreEdge",
    "ComplexGinibreFinite",
    "FiniteN",
    "OriginBulk",
    "RealEdge",
    "make_regime",
]
