"""Bit-packed matrices over GF(2): each row is a Python int, bit j = column j."""

from __future__ import annotations

from typing import Sequence

import numpy as np

__all__ = ["pack", "unpack", "rank", "matmul", "identity"]


def pack(A) -> list[int]:
    A = np.asarray(A, dtype=np.int64) & 1
    weights = [1 << j for j in range(A.shape[1])] if A.ndim == 2 else []
    return [int(sum(w for w, b in zip(weights, row) if b)) for row in A.tolist()]


def unpack(rows: Sequence[int], ncols: int) -> np.ndarray:
    return np.array([[(r >> j) & 1 for j in range(ncols)] for r in rows], dtype=np.int64).reshape(len(rows), ncols)


def rank(rows: Sequence[int]) -> int:
    """Rank by elimination on the lowest set bit."""
    basis: dict[int, int] = {}  # lowest bit -> row
    for r in rows:
        while r:
            low = r & -r
            if low in basis:
                r ^= basis[low]
            else:
                basis[low] = r
                break
    return len(basis)


def matmul(A: Sequence[int], B: Sequence[int]) -> list[int]:
    """Row i of AB is the XOR of the rows of B selected by the bits of row i of A."""
    out = []
    for a in A:
        acc, j = 0, 0
        while a:
            if a & 1:
                acc ^= B[j]
            a >>= 1
            j += 1
        out.append(acc)
    return out


def identity(n: int) -> list[int]:
    return [1 << i for i in range(n)]
