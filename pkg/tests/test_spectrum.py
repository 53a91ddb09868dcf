from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hhcert.cyclotomic import CycNum
from hhcert.errors import NegativeMultiplicity, NonIntegral, NonIntegralMultiplicity, NotConstant, NotSemisimple
from hhcert.qpoly import QFamily, parse_qpoly
from hhcert.spectrum import (
    CyclicTrace,
    MultVector,
    eigen_multiplicities,
    minpoly_degree_semisimple,
    spectrum_report,
    torus_certificate,
    torus_certificate_detail,
    tr1_decompose,
    tr1_from_constant,
    trace_of,
)


def test_regular_trace_of_c5():
    m = eigen_multiplicities(CyclicTrace(5, (5, 0, 0, 0, 0)))
    assert m.mults == (1, 1, 1, 1, 1)
    assert minpoly_degree_semisimple(m) == 5


def test_thirteen_points_minus_trivial():
    t = CyclicTrace(13, (12,) + (-1,) * 12)
    m = eigen_multiplicities(t)
    assert m.mults == (0,) + (1,) * 12
    assert minpoly_degree_semisimple(m) == 12
    assert spectrum_report(t) == {"degree": 12, "order": 13, "hall_higman": False,
                                  "missing_eigenvalues": [0]}


def test_diag_i_minus_i():
    assert eigen_multiplicities(CyclicTrace(4, (2, 0, -2, 0))).mults == (0, 1, 0, 1)


def test_scalar_action_has_degree_one():
    assert minpoly_degree_semisimple(MultVector(4, (7, 0, 0, 0))) == 1


def test_rejections():
    with pytest.raises(NonIntegralMultiplicity):
        eigen_multiplicities(CyclicTrace(2, (1, 0)))
    with pytest.raises(NegativeMultiplicity):
        eigen_multiplicities(CyclicTrace(2, (1, 3)))
    with pytest.raises(NotSemisimple):
        eigen_multiplicities(CyclicTrace(5, (5, 0, 0, 0, 0), ell=5))


def test_irrational_trace_rejected():
    # a single eigenvalue zeta_5 has irrational trace; dropping a conjugate breaks integrality
    t = CyclicTrace(5, tuple(CycNum.from_exponents(5, {1 * k % 5: 1}) for k in range(5)))
    assert eigen_multiplicities(t).mults == (0, 1, 0, 0, 0)
    vals = list(t.values)
    vals[2] = CycNum.rational(0)
    with pytest.raises(NonIntegralMultiplicity):
        eigen_multiplicities(CyclicTrace(5, tuple(vals)))


def test_tr1_examples():
    assert tr1_decompose(CyclicTrace(7, (7,) + (0,) * 6)).to_json() == {"k": 1, "a": 0, "proper": True}
    st_c2 = tr1_from_constant(27 ** 3, -1, 28)
    assert (st_c2.k, st_c2.proper) == (703, True)
    with pytest.raises(NonIntegral):
        tr1_from_constant(3, -1, 5)
    with pytest.raises(NotConstant):
        tr1_decompose(CyclicTrace(3, (3, 1, 0)))


def test_torus_certificate_examples():
    assert torus_certificate(64624, -688, 37)
    assert 688 * 36 == 24768
    assert torus_certificate(1, 0, 10 ** 6)
    assert torus_certificate(24, -1, 13)
    assert not torus_certificate(10, -1, 12)


def test_torus_certificate_symbolic():
    fam = QFamily.odd_powers(3, 27)
    detail = torus_certificate_detail(parse_qpoly("q^3", 3), -1, parse_qpoly("q+1", 3), fam)
    assert detail.status == "verified"
    # q < q is never true: the degree bound q fails on every torus q + 1
    assert not torus_certificate(parse_qpoly("q", 3), -1, parse_qpoly("q+1", 3), fam)


multiplicities = st.integers(1, 100).flatmap(
    lambda n: st.lists(st.integers(0, 6), min_size=n, max_size=n))


@settings(max_examples=1000, deadline=None)
@given(multiplicities)
def test_fourier_round_trip(mults):
    t = trace_of(mults)
    m = eigen_multiplicities(t)
    assert list(m.mults) == mults
    assert sum(m.mults) == t.degree
    assert t.is_conjugate_symmetric() or any(mults[j] != mults[-j % len(mults)] for j in range(len(mults)))


@settings(max_examples=200, deadline=None)
@given(st.integers(2, 60), st.integers(-3, 5), st.integers(0, 4))
def test_tr1_reconstructs_trace(n, a, k):
    degree = k * n + a
    if degree < 0:
        return
    t = CyclicTrace(n, (degree,) + (a,) * (n - 1))
    res = tr1_decompose(t)
    rebuilt = [res.k * n + res.a] + [res.a] * (n - 1)
    assert rebuilt == [int(v.rational_value()) for v in t.values]
    assert res.proper == (a >= 0 or -a * (n - 1) < degree)
