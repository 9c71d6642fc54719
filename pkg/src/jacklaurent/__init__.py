"""Exact computations for Jack-Laurent symmetric functions at special values
of p0: spectral equivalence classes, Pieri coefficients, regular bases and
the dual-numbers algebra on generalized eigenspaces."""

from .diagrams import Bipartition, Box, Partition, Rectangle
from .exactfield import K, P0, RatKP, SpecialPoint, leading_coeff_at, parse, valuation
from .spectrum import EquivClass, equivalence_class

__version__ = "0.1.0"

__all__ = [
    "Bipartition",
    "Box",
    "Partition",
    "Rectangle",
    "K",
    "P0",
    "RatKP",
    "SpecialPoint",
    "leading_coeff_at",
    "parse",
    "valuation",
    "EquivClass",
    "equivalence_class",
]
