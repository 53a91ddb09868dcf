"""Group elements by breadth-first closure of a generating set."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from ..errors import CapExceeded
from .ff import FF
from .linalg import identity, matmul

__all__ = ["Closure", "closure", "DEFAULT_CAP"]

DEFAULT_CAP = 2 ** 20


@dataclass
class Closure:
    field: FF
    elements: list  # numpy matrices, identity first
    order: int


def _key(M: np.ndarray) -> bytes:
    return M.astype(np.int16).tobytes()


def closure(F: FF, gens: Sequence, cap: int = DEFAULT_CAP) -> Closure:
    """All products of the generators; raises CapExceeded past cap elements."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    n = gens[0].shape[0]
    one = identity(F, n)
    seen = {_key(one)}
    elements = [one]
    frontier = [one]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = matmul(F, x, g)
                k = _key(y)
                if k not in seen:
                    seen.add(k)
                    elements.append(y)
                    nxt.append(y)
                    if len(elements) > cap:
                        raise CapExceeded("closure exceeds %d elements" % cap)
        frontier = nxt
    return Closure(F, elements, len(elements))
