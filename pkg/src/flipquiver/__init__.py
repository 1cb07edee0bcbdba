"""Quivers with potential, crepant triangulations and flip graphs."""

from .quiver import (
    Arrow,
    Potential,
    Quiver,
    QwP,
    canonical_rotation,
    cycles_up_to,
    cyclic_derivative,
    degree_profile,
    fz_mutate,
    quiver_equal,
    tail_sequence,
)
from .mutation import premutate, qwp_mutate, reduce

__all__ = [
    "Arrow",
    "Potential",
    "Quiver",
    "QwP",
    "canonical_rotation",
    "cycles_up_to",
    "cyclic_derivative",
    "degree_profile",
    "fz_mutate",
    "premutate",
    "quiver_equal",
    "qwp_mutate",
    "reduce",
    "tail_sequence",
]
