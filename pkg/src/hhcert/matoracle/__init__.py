"""Desk-scale matrix groups over small finite fields, used as ground truth."""

from __future__ import annotations

from .closure import DEFAULT_CAP, Closure, closure
from .ff import FF, GF
from .groups import (
    MatRep,
    build_su3_3_f2_module,
    isotropic_points,
    projective_points,
    singer_element,
    sl2,
    sl3_3,
    sl3_3_points_action,
    sp6_2,
    sp6_2_points_action,
    su3_3,
    su3_3_f2_module,
    su3_3_points_action,
    validate_rep,
)
from .linalg import (
    det,
    element_order,
    identity,
    inverse,
    jordan_type_unipotent,
    matmul,
    matpow,
    minpoly,
    nullspace,
    rank,
    rank_sequence,
)
from .meataxe import DEFAULT_BUDGET, DEFAULT_SEED, ChopResult, chop, spin
from .perm import (
    cycle_type,
    perm_matrix,
    perm_order,
    perm_trace,
    perm_trace_from_counts,
    schreier_sims_order,
)

__all__ = [
    "FF", "GF", "MatRep", "Closure", "closure", "DEFAULT_CAP",
    "sl2", "sl3_3", "sl3_3_points_action", "singer_element", "projective_points",
    "su3_3", "su3_3_points_action", "isotropic_points", "su3_3_f2_module",
    "build_su3_3_f2_module", "sp6_2", "sp6_2_points_action", "validate_rep",
    "identity", "matmul", "matpow", "det", "inverse", "rank", "nullspace",
    "minpoly", "rank_sequence", "jordan_type_unipotent", "element_order",
    "spin", "chop", "ChopResult", "DEFAULT_BUDGET", "DEFAULT_SEED",
    "perm_trace", "perm_trace_from_counts", "perm_matrix", "cycle_type", "perm_order",
    "schreier_sims_order",
]
