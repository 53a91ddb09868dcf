from __future__ import annotations

from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from sympy.utilities.iterables import partitions as sympy_partitions

from hhcert.errors import BadRange, CapExceeded, OrderMismatch, UnsupportedResidue
from hhcert.jordan2 import (
    JordanType,
    brute_argmax_j,
    brute_max_j,
    count_partitions_with_largest,
    f1,
    f2,
    j_of_type,
    max_j_bound,
    order_of_type,
    partitions_with_largest,
)
from hhcert.matoracle.ff import GF
from hhcert.matoracle.linalg import matpow, rank
from hhcert.qpoly import QPoly, parse_qpoly


def jordan_matrix(parts):
    n = sum(parts)
    M = np.eye(n, dtype=np.int64)
    pos = 0
    for p in parts:
        for i in range(p - 1):
            M[pos + i, pos + i + 1] = 1
        pos += p
    return M


def test_j_of_type_examples():
    assert j_of_type(JordanType.of([5, 3]), 8) == 1
    assert j_of_type(JordanType.of([2]), 2) == 1
    assert j_of_type(JordanType.of([6, 3]), 8) == 2
    with pytest.raises(OrderMismatch):
        j_of_type(JordanType.of([5, 3]), 4)
    with pytest.raises(OrderMismatch):
        j_of_type(JordanType.of([3]), 8)


def test_type_order():
    assert order_of_type(JordanType.of([5, 3])) == 8
    assert order_of_type(JordanType.of([4, 1])) == 4
    assert order_of_type(JordanType.of([1, 1])) == 1


def test_max_j_bound_examples():
    assert max_j_bound(7, 3, 4) == 2
    assert max_j_bound(14, 7, 8) == 6
    for order in (4, 8, 16):
        for d in range(order // 2 + 1, order):
            assert max_j_bound(d, d, order) == d - order // 2
    with pytest.raises(BadRange):
        max_j_bound(10, 2, 4)
    with pytest.raises(BadRange):
        max_j_bound(10, 4, 4)


def test_brute_examples():
    assert brute_argmax_j(7, 3, 4) == (2, [(3, 3, 1)])
    best, arg = brute_argmax_j(14, 7, 8)
    assert best == 6 and (7, 7) in arg
    assert brute_max_j(2, 2, 2) == 1
    with pytest.raises(CapExceeded):
        brute_max_j(61, 40, 64)


@pytest.mark.parametrize("n", range(1, 25))
def test_partition_enumeration_matches_sympy(n):
    by_largest = {}
    for p in sympy_partitions(n):
        by_largest[max(p)] = by_largest.get(max(p), 0) + 1
    for d in range(1, n + 1):
        listed = list(partitions_with_largest(n, d))
        assert len(listed) == by_largest.get(d, 0) == count_partitions_with_largest(n, d)
        assert len(set(listed)) == len(listed)
        assert all(sum(p) == n and p[0] == d and list(p) == sorted(p, reverse=True) for p in listed)


@pytest.mark.parametrize("order", [4, 8, 16])
def test_formula_equals_brute_small(order):
    # the full n <= 40 sweep lives in the acceptance suite
    for n in range(1, 25):
        for d in range(order // 2 + 1, min(order - 1, n) + 1):
            assert max_j_bound(n, d, order) == brute_max_j(n, d, order)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from([4, 8, 16, 32]), st.integers(1, 40), st.data())
def test_monotone_in_d(order, n, data):
    lo, hi = order // 2 + 1, min(order - 1, n)
    if lo > hi:
        return
    d = data.draw(st.integers(lo, hi))
    e = data.draw(st.integers(d, hi))
    assert max_j_bound(n, d, order) <= max_j_bound(n, e, order)


def _all_partitions(n):
    for d in range(1, n + 1):
        yield from partitions_with_largest(n, d)


@pytest.mark.parametrize("n", range(1, 17))
def test_j_matches_matrix_rank(n):
    F2 = GF(2)
    for p in _all_partitions(n):
        t = JordanType.of(p)
        order = order_of_type(t)
        if order < 2:
            continue
        M = jordan_matrix(p)
        half = matpow(F2, M, order // 2)
        assert rank(F2, (half - np.eye(n, dtype=np.int64)) % 2) == j_of_type(t, order)


def test_f1_examples():
    assert f1(12, 7) == 4
    assert brute_max_j(12, 3, 4) == 4
    q = QPoly.q()
    assert f1(q * q - q, q) == parse_qpoly("1/2*q^2 - 5/4*q - 7/4")


def test_f2_examples():
    assert f2(14, 7) == 6
    q = QPoly.q()
    assert f2(q * q - q, q) == parse_qpoly("(q-1)^2/2")
    assert f2(15, 7) == Fraction(6)
    assert f2(13, 7) == Fraction(14 * 6, 14) - 1
    with pytest.raises(UnsupportedResidue):
        f2(10, 7)
    with pytest.raises(UnsupportedResidue):
        f2(q * q + 2, q)
