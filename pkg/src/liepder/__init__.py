"""Exact rational arithmetic for Lie algebra derivations and prederivations.

The package decides, over Q, whether a finite-dimensional nilpotent Lie
algebra admits a non-singular derivation or prederivation, whether it is
characteristically nilpotent or strongly nilpotent, and produces
machine-checkable certificates for each answer.
"""

from .ratio import Q, ratio
from .core import LieAlgebra, Flag
from .deriv import SolutionSpace, derivation_space, prederivation_space
from .classify import classify, ClassificationReport

__all__ = [
    "Q",
    "ratio",
    "LieAlgebra",
    "Flag",
    "SolutionSpace",
    "derivation_space",
    "prederivation_space",
    "classify",
    "ClassificationReport",
]
