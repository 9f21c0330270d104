"""Exact cluster-algebra computations over tropical coefficients.

Seed and quiver mutation, freezing, ground-ring tests, the reduced Banff
algorithm and maximal green sequences.
"""

from .laurent import LaurentPoly, NotDivisible
from .quiver import Quiver
from .seed import ExchangeMatrix, Seed
from .semifield import GroundRing, TropMonomial

__all__ = [
    "ExchangeMatrix",
    "GroundRing",
    "LaurentPoly",
    "NotDivisible",
    "Quiver",
    "Seed",
    "TropMonomial",
]
