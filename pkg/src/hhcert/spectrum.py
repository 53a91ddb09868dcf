"""Eigenvalue spectra of semisimple elements from their traces on a cyclic group.

A trace vector (chi(g^0), ..., chi(g^(n-1))) determines the multiplicity of
every n-th root of unity as an eigenvalue by Fourier inversion.  The number of
distinct eigenvalues is the degree of the minimal polynomial of g.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .cyclotomic import CycNum, as_integer, euler_phi, power_matrix, zeta
from .errors import (
    NegativeMultiplicity,
    NonIntegral,
    NonIntegralMultiplicity,
    NotConstant,
    NotSemisimple,
    TraceError,
)
from .qpoly import PositivityResult, QFamily, QPoly, eventually_positive

__all__ = [
    "CyclicTrace",
    "MultVector",
    "Tr1Result",
    "eigen_multiplicities",
    "minpoly_degree_semisimple",
    "trace_of",
    "spectrum_report",
    "tr1_decompose",
    "tr1_from_constant",
    "torus_certificate",
    "torus_certificate_detail",
]


@dataclass(frozen=True)
class CyclicTrace:
    """values[k] = chi(g^k) for an element g of order n."""

    n: int
    values: tuple
    ell: int | None = None
    series: str | None = None  # caller-asserted provenance, carried along unchecked

    def __post_init__(self):
        if self.n < 1:
            raise TraceError("order must be positive")
        vals = tuple(v if isinstance(v, CycNum) else CycNum.rational(v) for v in self.values)
        if len(vals) != self.n:
            raise TraceError("expected %d values, got %d" % (self.n, len(vals)))
        for v in vals:
            if self.n % v.n:
                raise TraceError("value in Q(zeta_%d) does not lie in Q(zeta_%d)" % (v.n, self.n))
        deg = as_integer(vals[0])
        if deg is None or deg < 0:
            raise TraceError("values[0] must be a nonnegative integer, got %s" % vals[0])
        object.__setattr__(self, "values", vals)

    @property
    def degree(self) -> int:
        return as_integer(self.values[0])

    def is_conjugate_symmetric(self) -> bool:
        n = self.n
        return all(self.values[(n - k) % n] == self.values[k].conjugate() for k in range(n))

    def to_json(self) -> dict:
        out = {"n": self.n, "values": [v.to_json() for v in self.values]}
        if self.ell is not None:
            out["ell"] = self.ell
        if self.series is not None:
            out["series"] = self.series
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "CyclicTrace":
        return cls(int(obj["n"]), tuple(CycNum.from_json(v) for v in obj["values"]),
                   obj.get("ell"), obj.get("series"))


@dataclass(frozen=True)
class MultVector:
    """mults[j] = multiplicity of zeta_n^j as an eigenvalue."""

    n: int
    mults: tuple

    def __post_init__(self):
        if len(self.mults) != self.n:
            raise ValueError("expected %d multiplicities" % self.n)
        for m in self.mults:
            if not isinstance(m, (int, np.integer)) or m < 0:
                raise NegativeMultiplicity("multiplicities must be nonnegative integers: %r" % (self.mults,))
        object.__setattr__(self, "mults", tuple(int(m) for m in self.mults))

    @property
    def degree(self) -> int:
        return sum(self.mults)

    def missing(self) -> list[int]:
        return [j for j, m in enumerate(self.mults) if m == 0]


def _value_rows(t: CyclicTrace) -> tuple[list[list[int]], int]:
    """Numerators of every value in the power basis of Q(zeta_n), over one denominator."""
    vals = [v.embed(t.n) for v in t.values]
    den = 1
    for v in vals:
        d = v.denominator
        den = den * d // np.gcd(den, d)
    rows = [[c * (den // v.denominator) for c in v.numerators] for v in vals]
    return rows, int(den)


def _fourier_sums(rows: list[list[int]], n: int) -> list[list[int]]:
    """S[j] = basis coefficients of sum_k values[k] * zeta^(-jk), scaled by the denominator."""
    d = euler_phi(n)
    big = max((abs(c) for r in rows for c in r), default=0)
    P = power_matrix(n)
    fits = P.dtype == np.int64 and big * n * d * max(1, int(np.abs(P).max())) < 2**62
    if fits:
        C = np.array(rows, dtype=np.int64)  # n x d
        j = np.arange(n).reshape(n, 1, 1)
        k = np.arange(n).reshape(1, n, 1)
        i = np.arange(d).reshape(1, 1, d)
        expo = (i - j * k) % n  # n x n x d
        H = np.zeros((n, n), dtype=np.int64)
        rows_idx = np.broadcast_to(j, expo.shape)
        np.add.at(H, (rows_idx.ravel(), expo.ravel()), np.broadcast_to(C, expo.shape).ravel())
        return (H @ P).tolist()
    # arbitrary-precision fallback
    Pl = P.tolist()
    out = []
    for jj in range(n):
        hist = [0] * n
        for kk, r in enumerate(rows):
            shift = (-jj * kk) % n
            for ii, c in enumerate(r):
                if c:
                    hist[(ii + shift) % n] += c
        acc = [0] * d
        for e, h in enumerate(hist):
            if h:
                for col in range(d):
                    if Pl[e][col]:
                        acc[col] += h * Pl[e][col]
        out.append(acc)
    return out


def eigen_multiplicities(t: CyclicTrace) -> MultVector:
    """Fourier inversion of a trace vector, with exact integrality checks."""
    if t.ell and t.n % t.ell == 0:
        raise NotSemisimple("ell=%d divides the element order %d" % (t.ell, t.n))
    n = t.n
    rows, den = _value_rows(t)
    sums = _fourier_sums(rows, n)
    scale = n * den
    mults = []
    for j, s in enumerate(sums):
        if any(s[1:]):
            raise NonIntegralMultiplicity("multiplicity of zeta^%d is irrational" % j)
        if s[0] % scale:
            raise NonIntegralMultiplicity(
                "multiplicity of zeta^%d is %s" % (j, Fraction(int(s[0]), scale)))
        m = int(s[0]) // scale
        if m < 0:
            raise NegativeMultiplicity("multiplicity of zeta^%d is %d" % (j, m))
        mults.append(m)
    out = MultVector(n, tuple(mults))
    if out.degree != t.degree:  # cannot happen for exact inversion, kept as a guard
        raise TraceError("multiplicities do not sum to the degree")
    return out


def minpoly_degree_semisimple(m: MultVector) -> int:
    """Number of distinct eigenvalues."""
    return sum(1 for x in m.mults if x > 0)


def trace_of(mults: Sequence[int], ell: int | None = None) -> CyclicTrace:
    """Trace vector of the diagonal matrix with the given eigenvalue multiplicities."""
    n = len(mults)
    weights = {j: m for j, m in enumerate(mults) if m}
    values = tuple(CycNum.from_exponents(n, _power_weights(weights, k, n)) for k in range(n))
    return CyclicTrace(n, values, ell)


def _power_weights(weights: Mapping[int, int], k: int, n: int) -> dict[int, int]:
    out: dict[int, int] = {}
    for j, m in weights.items():
        e = (j * k) % n
        out[e] = out.get(e, 0) + m
    return out


def spectrum_report(t: CyclicTrace) -> dict:
    m = eigen_multiplicities(t)
    deg = minpoly_degree_semisimple(m)
    return {
        "degree": deg,
        "order": t.n,
        "hall_higman": deg == t.n,
        "missing_eigenvalues": m.missing(),
    }


@dataclass(frozen=True)
class Tr1Result:
    """chi = k * rho_reg + a * 1_C on the cyclic group C."""

    k: int
    a: int
    proper: bool

    def to_json(self):
        return {"k": self.k, "a": self.a, "proper": self.proper}


def tr1_from_constant(degree: int, a: int, order: int) -> Tr1Result:
    num = degree - a
    if num % order:
        raise NonIntegral("(%d - %d)/%d is not an integer" % (degree, a, order))
    k = num // order
    proper = a >= 0 or -a * (order - 1) < degree
    return Tr1Result(k, a, proper)


def tr1_decompose(t: CyclicTrace, a: int | None = None) -> Tr1Result:
    """Split a trace that is constant off the identity into regular and trivial parts."""
    rest = t.values[1:]
    if not rest:
        const = 0 if a is None else a
    else:
        const = as_integer(rest[0])
        if const is None or any(v != rest[0] for v in rest):
            raise NotConstant("trace is not a constant integer on C minus 1")
        if a is not None and a != const:
            raise NotConstant("trace is constant %d, not %d" % (const, a))
    return tr1_from_constant(t.degree, const, t.n)


def torus_certificate_detail(phi_deg_lower, a: int, torus_order, fam: QFamily | None = None):
    """Positivity result for phi_deg_lower - (-a)(|T| - 1) (or trivially true when a >= 0)."""
    if a >= 0:
        return None
    diff = QPoly.coerce(phi_deg_lower) - (QPoly.coerce(torus_order) - 1) * (-Fraction(a))
    if diff.is_constant():
        c = diff.constant()
        ok = c > 0
        return PositivityResult(ok, "verified" if ok else "refuted", 0, [],
                                None, None if ok else c)
    if fam is None:
        raise ValueError("a QFamily is needed for symbolic inputs")
    return eventually_positive(diff, fam)


def torus_certificate(phi_deg_lower, a: int, torus_order, fam: QFamily | None = None) -> bool:
    """True when a >= 0 or -a(|T|-1) < phi_deg_lower (for every q in fam if symbolic)."""
    res = torus_certificate_detail(phi_deg_lower, a, torus_order, fam)
    return True if res is None else res.verdict is True
