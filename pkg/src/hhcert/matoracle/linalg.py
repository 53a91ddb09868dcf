"""Dense linear algebra over a finite field.

Matrices are 2-d numpy integer arrays of field codes (see ff.FF).  Vectors
are rows and groups act on the right, v -> v @ g, which is the convention of
the spinning code in meataxe.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from ..errors import NotUnipotent
from . import gf2
from .ff import FF

__all__ = [
    "identity",
    "matmul",
    "vecmat",
    "matpow",
    "mat_sub",
    "mat_add",
    "scalar_mul",
    "rref",
    "rank",
    "nullspace",
    "left_nullspace",
    "inverse",
    "det",
    "Echelon",
    "poly_mul",
    "poly_divmod",
    "poly_gcd",
    "poly_lcm",
    "poly_monic",
    "poly_eval_matrix",
    "minpoly",
    "jordan_type_unipotent",
    "rank_sequence",
    "element_order",
]


def _arr(A) -> np.ndarray:
    return np.asarray(A, dtype=np.int64)


def identity(F: FF, n: int) -> np.ndarray:
    return np.eye(n, dtype=np.int64)


def matmul(F: FF, A, B) -> np.ndarray:
    A, B = _arr(A), _arr(B)
    if F.prime_field:
        return (A @ B) % F.p
    n = A.shape[1]
    acc = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for k in range(n):
        acc = F.add_table[acc, F.mul_table[A[:, k][:, None], B[k][None, :]]]
    return acc.astype(np.int64)


def vecmat(F: FF, v, A) -> np.ndarray:
    return matmul(F, _arr(v)[None, :], A)[0]


def matpow(F: FF, A, e: int) -> np.ndarray:
    A = _arr(A)
    out = identity(F, A.shape[0])
    while e:
        if e & 1:
            out = matmul(F, out, A)
        A = matmul(F, A, A)
        e >>= 1
    return out


def mat_add(F: FF, A, B) -> np.ndarray:
    return _arr(F.add(_arr(A), _arr(B)))


def mat_sub(F: FF, A, B) -> np.ndarray:
    return _arr(F.sub(_arr(A), _arr(B)))


def scalar_mul(F: FF, c: int, A) -> np.ndarray:
    A = _arr(A)
    return _arr(F.mul(np.full_like(A, int(c)), A))


def rref(F: FF, A) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and pivot columns."""
    R = _arr(A).copy()
    rows, cols = R.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(R[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            R[[r, i]] = R[[i, r]]
        R[r] = _arr(F.mul(np.full(cols, int(F.inv(int(R[r, c])))), R[r]))
        others = np.nonzero(R[:, c])[0]
        for j in others:
            if j != r:
                f = int(F.neg(int(R[j, c])))
                R[j] = _arr(F.add(R[j], F.mul(np.full(cols, f), R[r])))
        pivots.append(c)
        r += 1
    return R, pivots


def rank(F: FF, A) -> int:
    A = _arr(A)
    if A.size == 0:
        return 0
    if F.p == 2 and F.k == 1:
        return gf2.rank(gf2.pack(A))
    return len(rref(F, A)[1])


def nullspace(F: FF, A) -> np.ndarray:
    """Basis (as rows) of {x : A x = 0}."""
    A = _arr(A)
    R, piv = rref(F, A)
    n = A.shape[1]
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        x = np.zeros(n, dtype=np.int64)
        x[f] = 1
        for i, c in enumerate(piv):
            x[c] = int(F.neg(int(R[i, f])))
        basis.append(x)
    return np.array(basis, dtype=np.int64).reshape(len(basis), n)


def left_nullspace(F: FF, A) -> np.ndarray:
    """Basis of {v : v A = 0}."""
    return nullspace(F, _arr(A).T)


def inverse(F: FF, A) -> np.ndarray:
    A = _arr(A)
    n = A.shape[0]
    R, piv = rref(F, np.hstack([A, identity(F, n)]))
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return R[:, n:]


def det(F: FF, A) -> int:
    R = _arr(A).copy()
    n = R.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(R[c:, c])[0]
        if nz.size == 0:
            return 0
        i = c + int(nz[0])
        if i != c:
            R[[c, i]] = R[[i, c]]
            d = int(F.neg(d))
        piv = int(R[c, c])
        d = int(F.mul(d, piv))
        inv = int(F.inv(piv))
        for j in range(c + 1, n):
            if R[j, c]:
                f = int(F.neg(int(F.mul(int(R[j, c]), inv))))
                R[j] = _arr(F.add(R[j], F.mul(np.full(n, f), R[c])))
    return d


class Echelon:
    """Incremental semi-echelon basis: each row has a pivot 1 where later rows vanish."""

    def __init__(self, F: FF, n: int):
        self.F, self.n = F, n
        self.rows: list[np.ndarray] = []
        self.pivots: list[int] = []

    def __len__(self):
        return len(self.rows)

    def reduce(self, v) -> tuple[np.ndarray, list[int]]:
        """Residual of v and the coefficients subtracted along the way."""
        F = self.F
        v = _arr(v).copy()
        coefs = []
        for row, p in zip(self.rows, self.pivots):
            c = int(v[p])
            coefs.append(c)
            if c:
                v = _arr(F.sub(v, F.mul(np.full(self.n, c), row)))
        return v, coefs

    def contains(self, v) -> bool:
        return not self.reduce(v)[0].any()

    def add(self, v) -> bool:
        r, _ = self.reduce(v)
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return False
        p = int(nz[0])
        r = _arr(self.F.mul(np.full(self.n, int(self.F.inv(int(r[p])))), r))
        self.rows.append(r)
        self.pivots.append(p)
        return True

    def matrix(self) -> np.ndarray:
        return np.array(self.rows, dtype=np.int64).reshape(len(self.rows), self.n)


# polynomials, low degree first, as lists of field codes ----------------


def _trim(a: list[int]) -> list[int]:
    a = [int(x) for x in a]
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(F: FF, a, b) -> list[int]:
    a, b = _trim(a), _trim(b)
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = int(F.add(out[i + j], int(F.mul(x, y))))
    return _trim(out)


def poly_divmod(F: FF, a, b) -> tuple[list[int], list[int]]:
    a, b = _trim(a), _trim(b)
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    inv = int(F.inv(b[-1]))
    quot = [0] * max(len(a) - len(b) + 1, 0)
    rem = list(a)
    for i in range(len(a) - len(b), -1, -1):
        c = int(F.mul(rem[i + len(b) - 1], inv))
        quot[i] = c
        if c:
            for j, y in enumerate(b):
                rem[i + j] = int(F.sub(rem[i + j], int(F.mul(c, y))))
    return _trim(quot), _trim(rem)


def poly_monic(F: FF, a) -> list[int]:
    a = _trim(a)
    if not a:
        return a
    inv = int(F.inv(a[-1]))
    return [int(F.mul(x, inv)) for x in a]


def poly_gcd(F: FF, a, b) -> list[int]:
    a, b = _trim(a), _trim(b)
    while b:
        a, b = b, poly_divmod(F, a, b)[1]
    return poly_monic(F, a)


def poly_lcm(F: FF, a, b) -> list[int]:
    g = poly_gcd(F, a, b)
    return poly_monic(F, poly_divmod(F, poly_mul(F, a, b), g)[0])


def poly_eval_matrix(F: FF, poly, M) -> np.ndarray:
    """poly(M) by Horner's rule."""
    M = _arr(M)
    n = M.shape[0]
    out = np.zeros((n, n), dtype=np.int64)
    for c in reversed(_trim(poly)):
        out = mat_add(F, matmul(F, out, M), scalar_mul(F, c, identity(F, n)))
    return out


def _local_minpoly(F: FF, M, v, span: Echelon) -> list[int]:
    """Minimal polynomial of M relative to v; its Krylov vectors are added to span."""
    n = M.shape[0]
    ech = Echelon(F, n)
    track: list[list[int]] = []  # row i of ech as a polynomial in M applied to v
    w = _arr(v)
    d = 0
    while True:
        r, coefs = ech.reduce(w)
        # w = sum coefs_i * row_i + r, with row_i = track_i(M) v
        combo = [0] * (d + 1)
        combo[d] = 1
        for c, t in zip(coefs, track):
            if c:
                for e, x in enumerate(t):
                    if x:
                        combo[e] = int(F.sub(combo[e], int(F.mul(c, x))))
        nz = np.nonzero(r)[0]
        if nz.size == 0:
            return poly_monic(F, combo)
        inv = int(F.inv(int(r[int(nz[0])])))
        ech.rows.append(_arr(F.mul(np.full(n, inv), r)))
        ech.pivots.append(int(nz[0]))
        track.append([int(F.mul(x, inv)) for x in combo])
        span.add(w)
        w = vecmat(F, w, M)
        d += 1


def minpoly(F: FF, M) -> list[int]:
    """Monic minimal polynomial of M, low degree first.

    The lcm of the local minimal polynomials of basis vectors that are not
    yet in the sum of the cyclic subspaces found so far.
    """
    M = _arr(M)
    n = M.shape[0]
    span = Echelon(F, n)
    result = [1]
    for i in range(n):
        if len(span) == n:
            break
        e = np.zeros(n, dtype=np.int64)
        e[i] = 1
        if span.contains(e):
            continue
        result = poly_lcm(F, result, _local_minpoly(F, M, e, span))
    return result


def rank_sequence(F: FF, N) -> list[int]:
    """rank(N^0), rank(N^1), ... down to the first repeated value."""
    N = _arr(N)
    n = N.shape[0]
    ranks = [n]
    P = identity(F, n)
    while True:
        P = matmul(F, P, N)
        r = rank(F, P)
        if r == ranks[-1]:
            return ranks
        ranks.append(r)
        if r == 0:
            return ranks


def jordan_type_unipotent(F: FF, M):
    """Jordan block sizes of a unipotent matrix from the ranks of (M - I)^k."""
    from ..jordan2 import JordanType

    M = _arr(M)
    n = M.shape[0]
    ranks = rank_sequence(F, mat_sub(F, M, identity(F, n)))
    if ranks[-1] != 0:
        raise NotUnipotent("M - I is not nilpotent")
    ranks.append(0)
    parts = []
    for k in range(1, len(ranks) - 1):
        at_least_k = ranks[k - 1] - ranks[k]
        at_least_next = ranks[k] - ranks[k + 1]
        parts.extend([k] * (at_least_k - at_least_next))
    return JordanType.of(parts)


def element_order(F: FF, M, limit: int = 10 ** 6) -> int:
    M = _arr(M)
    n = M.shape[0]
    I = identity(F, n)
    P = M.copy()
    k = 1
    while not np.array_equal(P, I):
        P = matmul(F, P, M)
        k += 1
        if k > limit:
            raise ValueError("order exceeds %d" % limit)
    return k
