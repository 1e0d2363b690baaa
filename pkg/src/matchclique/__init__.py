"""Exact computation with k-uniform set families under matching-number and
clique-number constraints: named extremal constructions, closed-form bound
evaluators, structural invariants, and an exact branch-and-bound oracle
over shifted families.
"""

from .families import (
    CapacityError,
    Family,
    InvariantReport,
    are_cross_intersecting,
    clique_number,
    compute_invariants,
    covering_number,
    edge_mask,
    edge_vertices,
    intersection_predicates,
    is_intersecting,
    is_shifted,
    is_t_intersecting,
    lex_family,
    link,
    link_within,
    matching_number,
    precedes,
    restrict_avoid,
    shadow,
    shift_closure,
    shift_ij,
)
from .kernels import BACKEND as KERNEL_BACKEND

__version__ = "0.1.0"

__all__ = [
    "CapacityError",
    "Family",
    "InvariantReport",
    "KERNEL_BACKEND",
    "are_cross_intersecting",
    "clique_number",
    "compute_invariants",
    "covering_number",
    "edge_mask",
    "edge_vertices",
    "intersection_predicates",
    "is_intersecting",
    "is_shifted",
    "is_t_intersecting",
    "lex_family",
    "link",
    "link_within",
    "matching_number",
    "precedes",
    "restrict_avoid",
    "shadow",
    "shift_closure",
    "shift_ij",
]
