"""Permutations as tuples of images, their traces and a small Schreier-Sims."""

from __future__ import annotations

from math import gcd
from typing import Callable, Hashable, Sequence

import numpy as np

from ..cyclotomic import CycNum
from ..spectrum import CyclicTrace
from .ff import FF

__all__ = [
    "perm_mul",
    "perm_inv",
    "perm_pow",
    "perm_order",
    "cycle_type",
    "fixed_points",
    "perm_trace",
    "perm_trace_from_counts",
    "perm_matrix",
    "action_permutation",
    "schreier_sims_order",
]


def perm_mul(a: Sequence[int], b: Sequence[int]) -> tuple:
    """First a, then b: i -> b[a[i]]."""
    return tuple(b[i] for i in a)


def perm_inv(a: Sequence[int]) -> tuple:
    out = [0] * len(a)
    for i, x in enumerate(a):
        out[x] = i
    return tuple(out)


def perm_pow(a: Sequence[int], k: int) -> tuple:
    n = len(a)
    out = tuple(range(n))
    base = tuple(a)
    if k < 0:
        base, k = perm_inv(base), -k
    while k:
        if k & 1:
            out = perm_mul(out, base)
        base = perm_mul(base, base)
        k >>= 1
    return out


def cycle_type(a: Sequence[int]) -> list[int]:
    seen = [False] * len(a)
    out = []
    for i in range(len(a)):
        if not seen[i]:
            length, j = 0, i
            while not seen[j]:
                seen[j] = True
                j = a[j]
                length += 1
            out.append(length)
    return sorted(out, reverse=True)


def perm_order(a: Sequence[int]) -> int:
    o = 1
    for c in cycle_type(a):
        o = o * c // gcd(o, c)
    return o


def fixed_points(a: Sequence[int]) -> int:
    return sum(1 for i, x in enumerate(a) if i == x)


def perm_trace_from_counts(counts: Sequence[int], minus_trivial: bool = False,
                           ell: int | None = None) -> CyclicTrace:
    """Trace vector from fixed-point counts of g^0, g^1, ..., g^(n-1)."""
    shift = 1 if minus_trivial else 0
    return CyclicTrace(len(counts), tuple(CycNum.rational(c - shift) for c in counts), ell)


def perm_trace(a: Sequence[int], minus_trivial: bool = False, ell: int | None = None) -> CyclicTrace:
    """Permutation character of <a> as a trace vector; optionally minus the trivial character."""
    n = perm_order(a)
    lengths = cycle_type(a)
    # i is fixed by a^k iff its cycle length divides k
    counts = [sum(c for c in lengths if k % c == 0) for k in range(n)]
    return perm_trace_from_counts(counts, minus_trivial, ell)


def perm_matrix(F: FF, a: Sequence[int]) -> np.ndarray:
    """Matrix with e_i @ P = e_{a[i]}."""
    n = len(a)
    P = np.zeros((n, n), dtype=np.int64)
    P[np.arange(n), list(a)] = 1
    return P


def action_permutation(points: Sequence[Hashable], act: Callable[[Hashable], Hashable]) -> tuple:
    """The permutation induced on a list of points by act."""
    index = {p: i for i, p in enumerate(points)}
    try:
        return tuple(index[act(p)] for p in points)
    except KeyError as err:
        raise ValueError("action does not preserve the point set") from err


def schreier_sims_order(gens: Sequence[Sequence[int]]) -> int:
    """Group order from a base and strong generating set (deterministic Schreier-Sims)."""
    gens = [tuple(g) for g in gens]
    if not gens:
        return 1
    n = len(gens[0])
    ident = tuple(range(n))
    # one entry per base point: [point, generators fixing earlier base points, transversal]
    levels: list[list] = []

    def sift(g, start):
        for i in range(start, len(levels)):
            b, _, trans = levels[i]
            x = g[b]
            if x not in trans:
                return g, i
            g = perm_mul(g, perm_inv(trans[x]))
        return g, len(levels)

    def test_level(j):
        b, lgens, trans = levels[j]
        queue = list(trans)
        for x in queue:  # extend the orbit, keeping old coset representatives
            for s in lgens:
                y = s[x]
                if y not in trans:
                    trans[y] = perm_mul(trans[x], s)
                    queue.append(y)
        for x, u in list(trans.items()):
            for s in list(lgens):
                us = perm_mul(u, s)
                h = perm_mul(us, perm_inv(trans[us[b]]))
                if h != ident:
                    insert(h, j + 1)

    def insert(g, level):
        r, lev = sift(g, level)
        if r == ident:
            return
        if lev == len(levels):
            b = next(i for i in range(n) if r[i] != i)
            levels.append([b, [], {b: ident}])
        for j in range(lev, level - 1, -1):
            levels[j][1].append(r)
            test_level(j)

    for g in gens:
        insert(g, 0)
    order = 1
    for _, _, trans in levels:
        order *= len(trans)
    return order
