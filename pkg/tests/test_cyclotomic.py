from __future__ import annotations

from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from hhcert.cyclotomic import CycNum, arith, as_integer, cyclotomic_poly, euler_phi, zeta


def _sympy_cyclotomic(n):
    x = sympy.Symbol("x")
    return [int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, x), x).all_coeffs())]


def test_cyclotomic_poly_examples():
    assert cyclotomic_poly(1) == [-1, 1]
    assert cyclotomic_poly(12) == [1, 0, -1, 0, 1]
    assert cyclotomic_poly(6) == [1, -1, 1]


def test_cyclotomic_poly_rejects_zero():
    with pytest.raises(ValueError):
        cyclotomic_poly(0)


@pytest.mark.parametrize("n", range(1, 101))
def test_cyclotomic_poly_matches_sympy(n):
    assert cyclotomic_poly(n) == _sympy_cyclotomic(n)
    assert len(cyclotomic_poly(n)) - 1 == euler_phi(n)


def test_zeta_examples():
    assert zeta(4, 1).coeffs == (0, 1)
    assert zeta(2, 1) == CycNum.rational(-1)
    assert zeta(3, 1) + zeta(3, 2) == CycNum.rational(-1)
    assert zeta(7, 0) == CycNum.rational(1, 7)
    assert zeta(5, 5) == zeta(5, 0)


def test_arith_examples():
    assert zeta(5, 1) * zeta(5, 4) == CycNum.rational(1)
    assert (1 + zeta(3, 1)) * (1 + zeta(3, 2)) == CycNum.rational(1)
    assert zeta(4, 1) + zeta(4, 3) == CycNum.rational(0)
    assert arith(zeta(4, 1), zeta(4, 1), "mul") == CycNum.rational(-1)
    assert arith(zeta(3, 1), zeta(4, 1), "sub").n == 12


def test_as_integer_examples():
    assert as_integer(zeta(6, 1) + zeta(6, 5)) == 1
    assert as_integer(zeta(5, 1)) is None
    assert as_integer(3 * zeta(7, 0)) == 3
    assert as_integer(CycNum.rational(Fraction(1, 2))) is None


def test_rational_detection_is_exact():
    a = zeta(8, 1) + zeta(8, 7)  # sqrt 2
    assert not a.is_rational()
    assert (a * a).is_rational() and as_integer(a * a) == 2


@pytest.mark.parametrize("n", range(1, 101))
def test_orthogonality(n):
    one = CycNum.rational(1, n)
    for k in range(n):
        total = sum((zeta(n, j * k) for j in range(n)), CycNum.rational(0, n))
        assert total == (CycNum.rational(n, n) if k == 0 else CycNum.rational(0, n))
        norm = sum((zeta(n, j * k) * zeta(n, -j * k) for j in range(n)), CycNum.rational(0, n))
        assert norm / n == one


@pytest.mark.parametrize("n", range(1, 101))
def test_cyclotomic_poly_vanishes_at_zeta(n):
    z = zeta(n, 1)
    value = sum((c * z ** i for i, c in enumerate(cyclotomic_poly(n))), CycNum.rational(0, n))
    assert value.is_zero()


def _cyc(n):
    return st.lists(st.fractions(max_denominator=5).filter(lambda f: abs(f) < 50),
                    min_size=0, max_size=n).map(lambda cs: CycNum.from_exponents(n, cs))


def _divisors(n):
    return [d for d in range(1, n + 1) if n % d == 0]


# a field of order N <= 60 and two elements of subfields of it
embedded_pair = st.integers(1, 60).flatmap(
    lambda N: st.tuples(st.just(N), st.sampled_from(_divisors(N)).flatmap(_cyc),
                        st.sampled_from(_divisors(N)).flatmap(_cyc)))


@settings(max_examples=200, deadline=None)
@given(embedded_pair)
def test_embedding_commutes_with_arithmetic(args):
    big, a, b = args
    ea, eb = a.embed(big), b.embed(big)
    assert (a + b).embed(big) == ea + eb
    assert (a * b).embed(big) == ea * eb
    assert (a - b).embed(big) == ea - eb


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 30).flatmap(lambda n: st.tuples(_cyc(n), _cyc(n), _cyc(n))))
def test_ring_laws(abc):
    a, b, c = abc
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 40).flatmap(_cyc))
def test_json_round_trip_and_conjugation(a):
    assert CycNum.from_json(a.to_json()) == a
    assert a.conjugate().conjugate() == a
    assert (a * a.conjugate()).conjugate() == a * a.conjugate()
