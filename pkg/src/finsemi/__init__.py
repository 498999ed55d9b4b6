"""finsemi: a desk-scale toolkit for finite regular semigroups.

Multiplication-table semigroups with Green's relations, congruences and
quotients, Rees matrix and strong-semilattice constructions, lambda-semidirect
products by inverse semigroups, a confluent reduction system for binary
semigroup terms over a doubled alphabet, derived semigroupoids with stable
arrows, and a bracketed-word invariant used to verify an embedding mechanism.
"""

from . import errors
from .core import FiniteSemigroup, GreenData, is_homomorphism

__version__ = "0.1.0"

__all__ = [
    "FiniteSemigroup",
    "GreenData",
    "is_homomorphism",
    "errors",
]
