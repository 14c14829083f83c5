"""Exact q,t-polynomial engine: Macdonald operators, parking functions, ndinv.

The package computes the polynomials that enumerate shuffle-restricted
parking functions by (area, ndinv) through three independent routes:

* symmetric-function operators acting on the modified Macdonald basis,
* a combinatorial recursion on diagonal compositions,
* brute-force enumeration of parking-function families.

All arithmetic is exact (arbitrary-precision rationals); nothing is floated.
"""

from .laurent import LaurentPoly, RatFunc
from .qtpoly import QtPoly

__all__ = ["LaurentPoly", "RatFunc", "QtPoly"]
