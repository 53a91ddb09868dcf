"""Generators for the small groups used as ground truth.

SL_2(3), SL_3(3) and SU_3(3) are given by matrices over their natural
fields; Sp_6(2) by symplectic transvections.  The 6-dimensional module of
SU_3(3) over GF(2) is rebuilt here from the 28-point permutation module and
also bundled as data (see su3_3_f2_module).
"""

from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from ..datafiles import load_json
from ..errors import DataError
from .closure import closure
from .ff import FF, GF
from .linalg import det, element_order, identity, inverse, matmul, nullspace
from .meataxe import chop
from .perm import action_permutation, perm_matrix, schreier_sims_order

__all__ = [
    "MatRep",
    "sl2",
    "sl3_3",
    "projective_points",
    "sl3_3_points_action",
    "singer_element",
    "su3_3",
    "isotropic_points",
    "su3_3_points_action",
    "sp6_2",
    "sp6_2_points_action",
    "build_su3_3_f2_module",
    "su3_3_f2_module",
    "invariant_alternating_forms",
    "validate_rep",
]


@dataclass
class MatRep:
    field: FF
    dim: int
    gens: list
    form: np.ndarray | None = None
    form_kind: str | None = None  # "bilinear" or "hermitian"
    name: str = ""
    expected_order: int | None = None
    extra: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        out = {"field": self.field.to_json(), "dim": self.dim,
               "generators": [np.asarray(g).tolist() for g in self.gens]}
        if self.form is not None:
            out["form"] = np.asarray(self.form).tolist()
            out["form_kind"] = self.form_kind
        if self.name:
            out["name"] = self.name
        if self.expected_order:
            out["order"] = self.expected_order
        return out

    @classmethod
    def from_json(cls, obj) -> "MatRep":
        F = GF(int(obj["field"]["p"]), int(obj["field"].get("k", 1)))
        gens = [np.array(g, dtype=np.int64) for g in obj["generators"]]
        dim = int(obj["dim"])
        if any(g.shape != (dim, dim) for g in gens):
            raise DataError("generator shape does not match dim=%d" % dim)
        form = np.array(obj["form"], dtype=np.int64) if "form" in obj else None
        return cls(F, dim, gens, form, obj.get("form_kind"), obj.get("name", ""), obj.get("order"))


def _conj_matrix(F: FF, A) -> np.ndarray:
    return np.asarray(F.conj(np.asarray(A, dtype=np.int64)), dtype=np.int64)


def preserves_form(rep: MatRep, g) -> bool:
    F, J = rep.field, rep.form
    if J is None:
        return True
    gt = np.asarray(g).T
    if rep.form_kind == "hermitian":
        gt = _conj_matrix(F, gt)
    return np.array_equal(matmul(F, matmul(F, g, J), gt), J)


def validate_rep(rep: MatRep, cap: int | None = None) -> dict:
    """Generators invertible, form preserved, and the closure order when requested."""
    F = rep.field
    out = {"invertible": all(det(F, g) != 0 for g in rep.gens),
           "form_preserved": all(preserves_form(rep, g) for g in rep.gens)}
    if cap is not None:
        out["order"] = closure(F, rep.gens, cap).order
        if rep.expected_order is not None:
            out["order_matches"] = out["order"] == rep.expected_order
    return out


# SL_n ---------------------------------------------------------------


def sl2(p: int) -> MatRep:
    F = GF(p)
    x = np.array([[1, 1], [0, 1]])
    y = np.array([[0, 1], [p - 1, 0]])
    return MatRep(F, 2, [x, y], name="SL2(%d)" % p, expected_order=p * (p * p - 1))


def sl3_3() -> MatRep:
    F = GF(3)
    x = np.array([[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    y = np.array([[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    return MatRep(F, 3, [x, y], name="SL3(3)", expected_order=5616)


def _normalise(F: FF, v) -> tuple:
    v = np.asarray(v, dtype=np.int64)
    nz = np.nonzero(v)[0]
    c = int(F.inv(int(v[nz[0]])))
    return tuple(int(x) for x in F.mul(np.full(len(v), c), v))


def projective_points(F: FF, n: int) -> list[tuple]:
    """Nonzero vectors of F^n up to scalars, normalised to leading entry 1."""
    pts = set()
    for v in itertools.product(range(F.q), repeat=n):
        if any(v):
            pts.add(_normalise(F, v))
    return sorted(pts)


def _point_action(F: FF, g, points) -> tuple:
    g = np.asarray(g, dtype=np.int64)
    return action_permutation(points, lambda v: _normalise(F, matmul(F, np.array([v]), g)[0]))


def sl3_3_points_action() -> tuple[list, list[tuple]]:
    rep = sl3_3()
    pts = projective_points(rep.field, 3)
    return pts, [_point_action(rep.field, g, pts) for g in rep.gens]


def singer_element(F: FF | None = None) -> np.ndarray:
    """An element of SL_3(3) of order 13: the square of a primitive companion matrix."""
    F = F or GF(3)
    for a, b, c in itertools.product(range(F.q), repeat=3):
        if c == 0:
            continue
        C = np.array([[0, 1, 0], [0, 0, 1], [(-c) % 3, (-b) % 3, (-a) % 3]])
        if element_order(F, C, 100) == 26:
            S = matmul(F, C, C)
            if det(F, S) == 1:
                return S
    raise ValueError("no primitive cubic found")  # cannot happen


# SU_3(3) ------------------------------------------------------------


def _antidiag(n: int) -> np.ndarray:
    return np.fliplr(np.eye(n, dtype=np.int64))


def _is_unitary(F: FF, g, J) -> bool:
    return np.array_equal(matmul(F, matmul(F, g, J), _conj_matrix(F, np.asarray(g).T)), J)


def su3_3() -> MatRep:
    """SU_3(3) over GF(9) preserving the hermitian form with antidiagonal Gram matrix."""
    F = GF(3, 2)
    J = _antidiag(3)
    unip = []
    for a, b, c in itertools.product(range(F.q), repeat=3):
        g = np.array([[1, a, b], [0, 1, c], [0, 0, 1]])
        if (a or b or c) and _is_unitary(F, g, J):
            unip.append(g)
    weyl = None
    for a, b, c in itertools.product(range(1, F.q), repeat=3):
        w = np.array([[0, 0, a], [0, b, 0], [c, 0, 0]])
        if _is_unitary(F, w, J) and det(F, w) == 1:
            weyl = w
            break
    gens = [weyl]
    # add unipotent generators until the closure reaches the full order
    for u in unip:
        trial = gens + [u]
        if closure(F, trial).order > closure(F, gens).order:
            gens = trial
        if closure(F, gens).order == 6048:
            break
    return MatRep(F, 3, gens, J, "hermitian", "SU3(3)", 6048)


def isotropic_points(F: FF, J) -> list[tuple]:
    """Projective points v with v J conj(v)^T = 0."""
    pts = []
    for v in projective_points(F, J.shape[0]):
        row = np.array([v])
        if not matmul(F, matmul(F, row, J), _conj_matrix(F, row.T)).any():
            pts.append(v)
    return pts


def su3_3_points_action(rep: MatRep | None = None) -> tuple[list, list[tuple]]:
    rep = rep or su3_3()
    pts = isotropic_points(rep.field, rep.form)
    return pts, [_point_action(rep.field, g, pts) for g in rep.gens]


# Sp_6(2) ------------------------------------------------------------


def _sp_form(n: int = 6) -> np.ndarray:
    h = n // 2
    J = np.zeros((n, n), dtype=np.int64)
    J[:h, h:] = np.eye(h, dtype=np.int64)
    J[h:, :h] = np.eye(h, dtype=np.int64)
    return J


def _transvection(v, J) -> np.ndarray:
    """x -> x + B(x, v) v as a right-acting matrix over GF(2)."""
    v = np.asarray(v, dtype=np.int64)
    col = (J @ v) % 2
    return (np.eye(len(v), dtype=np.int64) + np.outer(col, v)) % 2


# a product of seven transvections and one further transvection; the pair
# generates the whole group (checked by schreier_sims_order on 63 points)
_SP6_WORD = [(1, 1, 0, 1, 0, 1), (1, 1, 1, 0, 0, 0), (0, 1, 0, 1, 1, 0), (0, 1, 0, 0, 0, 0),
             (1, 0, 1, 1, 1, 1), (0, 1, 0, 1, 0, 1), (1, 0, 1, 1, 1, 0)]
_SP6_EXTRA = (1, 1, 1, 0, 0, 0)


def sp6_2() -> MatRep:
    """Sp_6(2) preserving the form pairing coordinate i with i + 3."""
    F = GF(2)
    J = _sp_form()
    a = identity(F, 6)
    for v in _SP6_WORD:
        a = matmul(F, a, _transvection(v, J))
    b = _transvection(_SP6_EXTRA, J)
    return MatRep(F, 6, [a, b], J, "bilinear", "Sp6(2)", 1451520)


def sp6_2_points_action(rep: MatRep | None = None) -> tuple[list, list[tuple]]:
    rep = rep or sp6_2()
    pts = [tuple(v) for v in itertools.product(range(2), repeat=6) if any(v)]
    act = lambda g: action_permutation(pts, lambda v: tuple(int(x) for x in (np.array(v) @ g) % 2))
    return pts, [act(g) for g in rep.gens]


# the 6-dimensional GF(2)-module of SU_3(3) ----------------------------


def invariant_alternating_forms(F: FF, gens) -> list[np.ndarray]:
    """Basis of alternating Gram matrices B with g B g^T = B for every generator (GF(2) only)."""
    n = gens[0].shape[0]
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    rows = []
    for g in gens:
        g = np.asarray(g) % 2
        for a in range(n):
            for b in range(a + 1, n):
                # (g B g^T)[a, b] - B[a, b] as a linear function of the pair entries
                row = []
                for i, j in pairs:
                    c = (g[a, i] * g[b, j] + g[a, j] * g[b, i]) % 2
                    if (i, j) == (a, b):
                        c ^= 1
                    row.append(int(c))
                rows.append(row)
    ns = nullspace(F, np.array(rows, dtype=np.int64))
    out = []
    for vec in ns:
        B = np.zeros((n, n), dtype=np.int64)
        for (i, j), x in zip(pairs, vec):
            B[i, j] = B[j, i] = int(x)
        out.append(B)
    return out


def build_su3_3_f2_module(seed: int = 1, budget: int = 40) -> MatRep:
    """Chop the 28-point permutation module of SU_3(3) over GF(2) and keep a 6-dim factor."""
    F2 = GF(2)
    _, perms = su3_3_points_action()
    mats = [perm_matrix(F2, p) for p in perms]
    res = chop(F2, mats, budget=budget, seed=seed)
    six = [f for f in res.factors if f.dim == 6]
    if not six:
        raise DataError("no 6-dimensional factor found; factors %s" % res.dims())
    gens = [np.asarray(g, dtype=np.int64) for g in six[0].gens]
    forms = invariant_alternating_forms(F2, gens)
    form = next((B for B in forms if det(F2, B) != 0), None)
    return MatRep(F2, 6, gens, form, "bilinear", "SU3(3) on GF(2)^6", 6048,
                  {"factor_dims": res.dims()})


def su3_3_f2_module(directory=None) -> MatRep:
    """The bundled 6-dimensional GF(2) module."""
    return MatRep.from_json(load_json("su3_3_f2_module.json", directory))
