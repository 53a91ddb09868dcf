from __future__ import annotations

from itertools import combinations, product
from math import lcm

import numpy as np
import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.combinatorics import Permutation, PermutationGroup

from hhcert.errors import CapExceeded, NotUnipotent
from hhcert.jordan2 import JordanType, j_of_type, order_of_type
from hhcert.matoracle import gf2
from hhcert.matoracle import groups as G
from hhcert.matoracle.closure import closure
from hhcert.matoracle.ff import GF
from hhcert.matoracle.linalg import (
    identity,
    inverse,
    jordan_type_unipotent,
    matmul,
    matpow,
    minpoly,
    poly_divmod,
    poly_eval_matrix,
    rank,
    rref,
)
from hhcert.matoracle.meataxe import chop, spin
from hhcert.matoracle.perm import perm_matrix, perm_trace, schreier_sims_order
from hhcert.spectrum import spectrum_report

SMALL_FIELDS = [(2, 1), (3, 1), (5, 1), (2, 2), (2, 3), (3, 2), (2, 4)]


def jordan_matrix(parts):
    n = sum(parts)
    M = np.eye(n, dtype=np.int64)
    pos = 0
    for p in parts:
        for i in range(p - 1):
            M[pos + i, pos + i + 1] = 1
        pos += p
    return M


def cycles_perm(lengths):
    perm, start = [], 0
    for c in lengths:
        perm.extend(start + (i + 1) % c for i in range(c))
        start += c
    return tuple(perm)


# finite fields -------------------------------------------------------


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_field_axioms_exhaustive(p, k):
    F = GF(p, k)
    els = np.arange(F.q)
    A, B = np.meshgrid(els, els, indexing="ij")
    assert np.array_equal(F.add(A, B), F.add(B, A))
    assert np.array_equal(F.mul(A, B), F.mul(B, A))
    assert np.array_equal(F.add(A, 0), A) and np.array_equal(F.mul(A, 1), A)
    assert not F.add(A, F.neg(A)).any()
    nonzero = els[1:]
    assert np.all(F.mul(nonzero, F.inv(nonzero)) == 1)
    for c in els:
        assert np.array_equal(F.mul(F.add(A, B), c), F.add(F.mul(A, c), F.mul(B, c)))
        assert np.array_equal(F.mul(F.mul(A, B), c), F.mul(A, F.mul(B, c)))
    assert len({F.pow(F.primitive, e) for e in range(F.q - 1)}) == F.q - 1


@pytest.mark.parametrize("p,k", SMALL_FIELDS)
def test_frobenius_is_an_automorphism(p, k):
    F = GF(p, k)
    els = np.arange(F.q)
    A, B = np.meshgrid(els, els, indexing="ij")
    fr = F.frob
    assert np.array_equal(fr(F.add(A, B)), F.add(fr(A), fr(B)))
    assert np.array_equal(fr(F.mul(A, B)), F.mul(fr(A), fr(B)))
    assert sorted(fr(els).tolist()) == els.tolist()
    x = els
    for _ in range(k):
        x = fr(x)
    assert np.array_equal(x, els)
    if k % 2 == 0:
        assert np.array_equal(F.conj(F.conj(els)), els)


def test_zero_has_no_inverse():
    with pytest.raises(ZeroDivisionError):
        GF(5).inv(0)


# closure -------------------------------------------------------------


def test_closure_examples():
    assert closure(GF(3), G.sl2(3).gens).order == 24
    su3 = G.su3_3()
    assert closure(su3.field, su3.gens).order == 6048
    assert closure(GF(7), [np.eye(3, dtype=np.int64)]).order == 1
    with pytest.raises(CapExceeded):
        closure(su3.field, su3.gens, cap=1000)


def test_closure_matches_schreier_sims():
    _, perms = G.sl3_3_points_action()
    rep = G.sl3_3()
    assert closure(rep.field, rep.gens).order == schreier_sims_order(perms) == 5616


# minimal polynomials -------------------------------------------------


def test_minpoly_examples():
    F2, F5 = GF(2), GF(5)
    assert minpoly(F5, np.eye(4, dtype=np.int64)) == [F5.neg(1), 1]
    assert minpoly(F2, jordan_matrix([3])) == [1, 1, 1, 1]
    cycle = perm_matrix(F5, cycles_perm([13]))
    assert minpoly(F5, cycle) == [4] + [0] * 12 + [1]


def _monic_polys(F, degree):
    for low in product(range(F.q), repeat=degree):
        yield list(low) + [1]


def random_matrix(F, n, data):
    return np.array(data.draw(st.lists(st.lists(st.integers(0, F.q - 1), min_size=n, max_size=n),
                                       min_size=n, max_size=n)), dtype=np.int64)


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([(2, 1), (3, 1), (2, 2)]), st.integers(1, 5), st.data())
def test_minpoly_is_minimal(pk, n, data):
    F = GF(*pk)
    M = random_matrix(F, n, data)
    mp = minpoly(F, M)
    assert mp[-1] == 1
    assert not poly_eval_matrix(F, mp, M).any()
    deg = len(mp) - 1
    assert deg <= 8
    # no proper monic divisor annihilates M
    for d in range(deg):
        for cand in _monic_polys(F, d):
            if not any(poly_divmod(F, mp, cand)[1]):
                assert poly_eval_matrix(F, cand, M).any()


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([2, 3, 5, 7]), st.integers(1, 6), st.data())
def test_minpoly_divides_sympy_charpoly(p, n, data):
    F = GF(p)
    M = random_matrix(F, n, data)
    x = sympy.symbols("x")
    cp = sympy.Poly(sympy.Matrix(M.tolist()).charpoly(x).as_expr(), x, modulus=p)
    coeffs = [int(c) % p for c in reversed(cp.all_coeffs())]
    _, rem = poly_divmod(F, coeffs, minpoly(F, M))
    assert not any(rem)


def _conjugated(F, M, seed):
    n = M.shape[0]
    rng = np.random.default_rng(seed)
    while True:
        P = rng.integers(0, F.q, size=(n, n))
        if rank(F, P) == n:
            return matmul(F, matmul(F, inverse(F, P), M), P)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 8), min_size=1, max_size=4), st.integers(0, 2 ** 32))
def test_unipotent_minpoly_and_j(parts, seed):
    F2 = GF(2)
    t = JordanType.of(parts)
    M = _conjugated(F2, jordan_matrix(t.parts), seed)
    assert jordan_type_unipotent(F2, M) == t
    assert len(minpoly(F2, M)) - 1 == max(parts)
    order = order_of_type(t)
    if order >= 2:
        half = matpow(F2, M, order // 2)
        n = M.shape[0]
        assert rank(F2, (half - identity(F2, n)) % 2) == j_of_type(t, order)


def _cyclic_actions(n_max=30, max_orbits=3):
    for n in range(2, n_max + 1):
        divs = [d for d in range(1, n + 1) if n % d == 0]
        for r in range(1, max_orbits + 1):
            for lengths in combinations(divs, r):
                if lcm(*lengths) == n:
                    yield n, lengths


def test_minpoly_matches_spectrum_on_cyclic_actions():
    count = 0
    for n, lengths in _cyclic_actions():
        ell = next(p for p in sympy.primerange(2, 100) if n % p)
        F = GF(ell)
        a = cycles_perm(lengths)
        deg = len(minpoly(F, perm_matrix(F, a))) - 1
        assert deg == spectrum_report(perm_trace(a, ell=ell))["degree"], (n, lengths)
        count += 1
    assert count > 300


def test_jordan_type_examples():
    F2 = GF(2)
    assert jordan_type_unipotent(F2, jordan_matrix([5, 3])).parts == (5, 3)
    assert jordan_type_unipotent(F2, np.eye(4, dtype=np.int64)).parts == (1, 1, 1, 1)
    with pytest.raises(NotUnipotent):
        jordan_type_unipotent(GF(3), 2 * np.eye(2, dtype=np.int64))


# permutations --------------------------------------------------------


def test_perm_trace_examples():
    assert [int(v.rational_value()) for v in perm_trace(cycles_perm([13])).values] == [13] + [0] * 12
    t = perm_trace(cycles_perm([13]), minus_trivial=True)
    assert [int(v.rational_value()) for v in t.values] == [12] + [-1] * 12
    assert [int(v.rational_value()) for v in perm_trace(cycles_perm([4, 1])).values] == [5, 1, 1, 1]


@settings(max_examples=40, deadline=None)
@given(st.integers(3, 9), st.data())
def test_schreier_sims_matches_sympy(n, data):
    count = data.draw(st.integers(1, 3))
    gens = [tuple(data.draw(st.permutations(range(n)))) for _ in range(count)]
    want = PermutationGroup([Permutation(list(g)) for g in gens]).order()
    assert schreier_sims_order(gens) == want


def test_sp6_2_order():
    _, perms = G.sp6_2_points_action()
    assert schreier_sims_order(perms) == 1451520
    assert PermutationGroup([Permutation(list(p)) for p in perms]).order() == 1451520


# modules -------------------------------------------------------------


def test_spin_and_chop_trivial_module():
    F = GF(5)
    one = [np.eye(1, dtype=np.int64)]
    assert len(spin(F, one, [np.array([1])])) == 1
    assert chop(F, one).dims() == [1]


def test_chop_sl3_3_points_f5():
    _, perms = G.sl3_3_points_action()
    F5 = GF(5)
    res = chop(F5, [perm_matrix(F5, p) for p in perms])
    assert res.dims() == [12, 1]
    all_ones = np.ones(13, dtype=np.int64)
    assert len(spin(F5, [perm_matrix(F5, p) for p in perms], [all_ones])) == 1


def test_chop_sp6_2_points_f3():
    _, perms = G.sp6_2_points_action()
    F3 = GF(3)
    dims = chop(F3, [perm_matrix(F3, p) for p in perms]).dims()
    assert 27 in dims and sum(dims) == 63
    assert dims == [34, 27, 1, 1]


def test_bundled_f2_module():
    rep = G.su3_3_f2_module()
    check = G.validate_rep(rep, cap=10000)
    assert check["invertible"] and check["form_preserved"] and check["order_matches"]
    assert check["order"] == 6048
    F2 = rep.field
    eye = np.eye(6, dtype=np.int64)
    types = set()
    for g in closure(F2, rep.gens).elements:
        g2 = (g @ g) % 2
        if not np.array_equal(g2, eye) and np.array_equal((g2 @ g2) % 2, eye):
            types.add((jordan_type_unipotent(F2, g).parts, len(minpoly(F2, g)) - 1))
    assert types == {((3, 3), 3)}


# GF(2) packed arithmetic --------------------------------------------


@settings(max_examples=150, deadline=None)
@given(st.integers(1, 12), st.integers(1, 12), st.data())
def test_packed_rank_matches_generic(rows, cols, data):
    A = np.array(data.draw(st.lists(st.lists(st.integers(0, 1), min_size=cols, max_size=cols),
                                    min_size=rows, max_size=rows)), dtype=np.int64)
    assert gf2.rank(gf2.pack(A)) == len(rref(GF(2), A)[1])
    assert np.array_equal(gf2.unpack(gf2.pack(A), cols), A)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 8), st.data())
def test_packed_matmul_matches_numpy(n, data):
    F2 = GF(2)
    A, B = random_matrix(F2, n, data), random_matrix(F2, n, data)
    got = gf2.unpack(gf2.matmul(gf2.pack(A), gf2.pack(B)), n)
    assert np.array_equal(got, (A @ B) % 2)
