"""Exact certificates for minimal polynomial degrees of group elements.

Cyclotomic arithmetic, spectrum recovery from traces, Jordan block bounds in
characteristic 2, a symbolic ring for formulas in q, bundled character data
with ledger checkers, and a small matrix-group oracle.
"""

from __future__ import annotations

__version__ = "0.1.0"

from .cyclotomic import CycNum, arith, as_integer, cyclotomic_poly, zeta
from .jordan2 import JordanType, brute_max_j, f1, f2, j_of_type, max_j_bound
from .qpoly import QFamily, QPoly, box_inequality, eventually_positive, parse, qp_mod
from .spectrum import CyclicTrace, MultVector, eigen_multiplicities, spectrum_report

__all__ = [
    "__version__",
    "CycNum", "zeta", "arith", "as_integer", "cyclotomic_poly",
    "CyclicTrace", "MultVector", "eigen_multiplicities", "spectrum_report",
    "JordanType", "j_of_type", "max_j_bound", "brute_max_j", "f1", "f2",
    "QPoly", "QFamily", "parse", "qp_mod", "eventually_positive", "box_inequality",
]
