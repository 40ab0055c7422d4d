"""
rdnlab - reduced deep networks for hyperbolic solution manifolds.

Builds explicit network constructions (bisection inverses, MATS
compositions, reduced deep networks) for transport-dominated problems and
compares them against classical POD reductions.
"""

__version__ = "0.1.0"
