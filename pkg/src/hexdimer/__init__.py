"""Dimers on the toroidal honeycomb lattice: exact winding statistics and their
discrete Gaussian limit."""

__version__ = "0.1.0"

from .honeycomb import TorusGraph, build
from .kasteleyn import Perturbation, count, extract_winding_counts, mgf, partition
from .logproduct import LogProduct, PrecisionError

__all__ = [
    "TorusGraph",
    "build",
    "Perturbation",
    "count",
    "extract_winding_counts",
    "mgf",
    "partition",
    "LogProduct",
    "PrecisionError",
]
