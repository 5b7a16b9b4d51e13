"""Exact arithmetic for Lotka-Volterra algebras: idempotents, automorphisms, replicator dynamics."""

from .algebra import Element, LVAlgebra
from .linalg import Rational, RatMatrix
from .skew import SkewMatrix, pfaffian

__all__ = ["Element", "LVAlgebra", "Rational", "RatMatrix", "SkewMatrix", "pfaffian"]
