"""Spinning submodules and a budgeted chop into composition factors.

A module is a list of square matrices acting on row vectors from the right.
chop looks for proper submodules by spinning null vectors of random
group-algebra elements, in the module and in its dual.  A factor in which no
proper submodule turned up within the trial budget is reported as
irreducible within budget; this is a search result, not a proof.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..errors import BudgetExceeded
from .ff import FF
from .linalg import Echelon, identity, left_nullspace, mat_add, mat_sub, matmul, scalar_mul, vecmat

__all__ = ["spin", "submodule_action", "quotient_action", "Factor", "ChopResult", "chop",
           "DEFAULT_BUDGET", "DEFAULT_SEED"]

DEFAULT_BUDGET = 40
DEFAULT_SEED = 20240601


def spin(F: FF, gens: Sequence, seeds: Sequence) -> Echelon:
    """Smallest subspace containing the seeds and closed under every generator."""
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    n = gens[0].shape[0]
    ech = Echelon(F, n)
    queue = []
    for v in seeds:
        if ech.add(v):
            queue.append(ech.rows[-1])
    i = 0
    while i < len(queue) and len(ech) < n:
        v = queue[i]
        i += 1
        for g in gens:
            w = vecmat(F, v, g)
            if ech.add(w):
                queue.append(ech.rows[-1])
    return ech


def _coords(F: FF, ech: Echelon, v) -> np.ndarray:
    r, coefs = ech.reduce(v)
    if r.any():
        raise ValueError("vector is not in the subspace")
    return np.array(coefs, dtype=np.int64)


def submodule_action(F: FF, gens: Sequence, ech: Echelon) -> list[np.ndarray]:
    """Generator matrices on the submodule, in the basis ech.rows."""
    return [np.array([_coords(F, ech, vecmat(F, w, g)) for w in ech.rows], dtype=np.int64)
            for g in gens]


def quotient_action(F: FF, gens: Sequence, ech: Echelon) -> list[np.ndarray]:
    """Generator matrices on V / W, in the basis of unit vectors off the pivots."""
    n = ech.n
    free = [c for c in range(n) if c not in set(ech.pivots)]
    out = []
    for g in gens:
        rows = []
        for c in free:
            e = np.zeros(n, dtype=np.int64)
            e[c] = 1
            r, _ = ech.reduce(vecmat(F, e, g))
            rows.append(r[free])
        out.append(np.array(rows, dtype=np.int64).reshape(len(free), len(free)))
    return out


@dataclass
class Factor:
    dim: int
    gens: list
    status: str  # "irreducible within budget" or "one-dimensional"

    def to_json(self):
        return {"dim": self.dim, "status": self.status}


@dataclass
class ChopResult:
    factors: list = field(default_factory=list)
    budget: int = DEFAULT_BUDGET
    seed: int = DEFAULT_SEED
    budget_limited: bool = True

    def dims(self) -> list[int]:
        return sorted((f.dim for f in self.factors), reverse=True)

    def to_json(self):
        return {"dims": self.dims(), "budget": self.budget, "seed": self.seed,
                "budget_limited": self.budget_limited,
                "factors": [f.to_json() for f in self.factors]}


def _random_algebra_element(F: FF, gens, rng, words: int = 4, length: int = 6) -> np.ndarray:
    n = gens[0].shape[0]
    acc = np.zeros((n, n), dtype=np.int64)
    for _ in range(words):
        w = identity(F, n)
        for _ in range(int(rng.integers(1, length + 1))):
            w = matmul(F, w, gens[int(rng.integers(len(gens)))])
        c = int(rng.integers(1, F.q))
        acc = mat_add(F, acc, scalar_mul(F, c, w))
    return acc


def _find_split(F: FF, gens, budget: int, rng) -> Echelon | None:
    """A proper nonzero submodule, or None after budget random trials."""
    n = gens[0].shape[0]
    dual = [np.ascontiguousarray(g.T) for g in gens]
    eye = identity(F, n)
    for _ in range(budget):
        A = _random_algebra_element(F, gens, rng)
        for lam in range(F.q):
            N = left_nullspace(F, mat_sub(F, A, scalar_mul(F, lam, eye)))
            if len(N) == 0:
                continue
            picks = [N[0]] if len(N) == 1 else [N[0], N[int(rng.integers(len(N)))]]
            for v in picks:
                sub = spin(F, gens, [v])
                if 0 < len(sub) < n:
                    return sub
            # a submodule U of the dual gives the submodule U-perp of the module
            Nd = left_nullspace(F, mat_sub(F, A.T, scalar_mul(F, lam, eye)))
            for v in ([Nd[0]] if len(Nd) else []):
                sub = spin(F, dual, [v])
                if 0 < len(sub) < n:
                    perp = left_nullspace(F, sub.matrix().T)
                    ech = Echelon(F, n)
                    for w in perp:
                        ech.add(w)
                    return ech
    return None


def chop(F: FF, gens: Sequence, budget: int = DEFAULT_BUDGET, seed: int = DEFAULT_SEED,
         max_factors: int = 256) -> ChopResult:
    """Composition factors found by repeated splitting."""
    rng = np.random.default_rng(seed)
    gens = [np.asarray(g, dtype=np.int64) for g in gens]
    result = ChopResult(budget=budget, seed=seed)
    stack = [gens]
    while stack:
        cur = stack.pop()
        n = cur[0].shape[0]
        if n == 1:
            result.factors.append(Factor(1, cur, "one-dimensional"))
            continue
        sub = _find_split(F, cur, budget, rng)
        if sub is None:
            result.factors.append(Factor(n, cur, "irreducible within budget"))
        else:
            stack.append(quotient_action(F, cur, sub))
            stack.append(submodule_action(F, cur, sub))
        if len(result.factors) > max_factors:
            raise BudgetExceeded("more than %d factors" % max_factors)
    return result
