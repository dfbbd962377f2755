"""Demazure crystals, restricted RSK and last-passage percolation on staircase-like shapes."""

from . import crystal, kernel, lpp, polynomial, rsk, weyl
from .crystal import Tableau
from .kernel import ShapeDiagram
from .lpp import GeomParams, LawTable
from .polynomial import SparsePolynomial

__version__ = "0.1.0"

__all__ = [
    "GeomParams",
    "LawTable",
    "ShapeDiagram",
    "SparsePolynomial",
    "Tableau",
    "crystal",
    "kernel",
    "lpp",
    "polynomial",
    "rsk",
    "weyl",
]
