"""Exact arithmetic in cyclotomic fields Q(zeta_n).

Elements are stored in the power basis {zeta^i : 0 <= i < phi(n)} modulo the
n-th cyclotomic polynomial.  Coefficients are kept as a tuple of integer
numerators over one positive common denominator, which keeps the hot loops
on plain ints while staying exact.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "cyclotomic_poly",
    "euler_phi",
    "CycNum",
    "zeta",
    "arith",
    "as_integer",
    "power_matrix",
]


def _divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def _poly_exact_div(num: list[int], den: Sequence[int]) -> list[int]:
    # both low-to-high, den monic
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        if c:
            out[i - dn] = c
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    if any(num[:dn]):
        raise ArithmeticError("inexact polynomial division")
    return out


@lru_cache(maxsize=None)
def _cyclo(n: int) -> tuple[int, ...]:
    poly = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        poly = _poly_exact_div(poly, _cyclo(d))
    return tuple(poly)


def cyclotomic_poly(n: int) -> list[int]:
    """Coefficients of Phi_n, lowest degree first.

    >>> cyclotomic_poly(12)
    [1, 0, -1, 0, 1]
    """
    if not isinstance(n, int) or n < 1:
        raise ValueError("cyclotomic_poly needs a positive integer, got %r" % (n,))
    return list(_cyclo(n))


def euler_phi(n: int) -> int:
    return len(_cyclo(n)) - 1


def _reduce(poly: list[int], n: int) -> list[int]:
    """Reduce an integer polynomial modulo Phi_n in place semantics."""
    phi = _cyclo(n)
    d = len(phi) - 1
    if len(poly) <= d:
        return poly + [0] * (d - len(poly))
    poly = list(poly)
    for i in range(len(poly) - 1, d - 1, -1):
        c = poly[i]
        if c:
            base = i - d
            for j in range(d):
                if phi[j]:
                    poly[base + j] -= c * phi[j]
    return poly[:d]


@lru_cache(maxsize=None)
def _powers(n: int) -> tuple[tuple[int, ...], ...]:
    """Reduced coefficient vectors of x^e for 0 <= e < n."""
    d = euler_phi(n)
    rows = []
    cur = [1] + [0] * (d - 1) if d else []
    phi = _cyclo(n)
    for _ in range(n):
        rows.append(tuple(cur))
        # multiply by x and reduce
        top = cur[-1]
        nxt = [0] + cur[:-1]
        if top:
            nxt = [nxt[j] - top * phi[j] for j in range(d)]
        cur = nxt
    return tuple(rows)


@lru_cache(maxsize=None)
def power_matrix(n: int) -> np.ndarray:
    """Integer matrix whose row e holds the basis coefficients of zeta_n^e."""
    arr = np.array(_powers(n), dtype=object)
    if arr.size and max(abs(int(v)) for v in arr.flat) < 2**31:
        arr = arr.astype(np.int64)
    arr.setflags(write=False)
    return arr


def _lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b


class CycNum:
    """An element of Q(zeta_n), immutable."""

    __slots__ = ("_n", "_num", "_den", "_hash")

    def __init__(self, n: int, coeffs: Iterable = (), *, _raw: tuple | None = None):
        if not isinstance(n, int) or n < 1:
            raise ValueError("order must be a positive integer")
        self._n = n
        self._hash = None
        if _raw is not None:
            num, den = _raw
        else:
            fr = [Fraction(c) for c in coeffs]
            den = 1
            for f in fr:
                den = _lcm(den, f.denominator)
            num = [int(f * den) for f in fr]
            if len(num) > euler_phi(n):
                num = self._fold(n, num)
            num = num + [0] * (euler_phi(n) - len(num))
        g = den
        for c in num:
            if c:
                g = gcd(g, c)
                if g == 1:
                    break
        if g > 1:
            num = [c // g for c in num]
            den //= g
        self._num = tuple(num)
        self._den = den

    @staticmethod
    def _fold(n: int, num: list[int]) -> list[int]:
        # treat num as a polynomial in zeta_n of arbitrary length
        folded = [0] * n
        for i, c in enumerate(num):
            folded[i % n] += c
        return _reduce(folded, n)

    @classmethod
    def _make(cls, n: int, num: list[int], den: int) -> "CycNum":
        if den < 0:
            num = [-c for c in num]
            den = -den
        return cls(n, _raw=(num, den))

    @classmethod
    def rational(cls, value, n: int = 1) -> "CycNum":
        f = Fraction(value)
        d = euler_phi(n)
        return cls._make(n, [f.numerator] + [0] * (d - 1), f.denominator)

    @classmethod
    def from_exponents(cls, n: int, weights: dict[int, object] | Sequence) -> "CycNum":
        """Sum of w_e * zeta_n^e, with e taken modulo n."""
        if isinstance(weights, dict):
            items = weights.items()
        else:
            items = enumerate(weights)
        den = 1
        fr = []
        for e, w in items:
            w = Fraction(w)
            if w:
                fr.append((e % n, w))
                den = _lcm(den, w.denominator)
        acc = [0] * n
        for e, w in fr:
            acc[e] += int(w * den)
        return cls._make(n, _reduce(acc, n), den)

    # accessors -------------------------------------------------------
    @property
    def n(self) -> int:
        return self._n

    @property
    def coeffs(self) -> tuple[Fraction, ...]:
        return tuple(Fraction(c, self._den) for c in self._num)

    @property
    def numerators(self) -> tuple[int, ...]:
        return self._num

    @property
    def denominator(self) -> int:
        return self._den

    def is_zero(self) -> bool:
        return not any(self._num)

    def is_rational(self) -> bool:
        return not any(self._num[1:])

    def rational_value(self) -> Fraction | None:
        if not self.is_rational():
            return None
        return Fraction(self._num[0] if self._num else 0, self._den)

    # field embedding -------------------------------------------------
    def embed(self, big: int) -> "CycNum":
        """Image of self inside Q(zeta_big); big must be a multiple of n."""
        if big == self._n:
            return self
        if big % self._n:
            raise ValueError("%d is not a multiple of %d" % (big, self._n))
        step = big // self._n
        rows = _powers(big)
        d = euler_phi(big)
        acc = [0] * d
        for i, c in enumerate(self._num):
            if c:
                row = rows[(i * step) % big]
                for j in range(d):
                    if row[j]:
                        acc[j] += c * row[j]
        return CycNum._make(big, acc, self._den)

    def _coerce(self, other) -> tuple["CycNum", "CycNum"]:
        if not isinstance(other, CycNum):
            other = CycNum.rational(other)
        if other._n == self._n:
            return self, other
        big = _lcm(self._n, other._n)
        return self.embed(big), other.embed(big)

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        try:
            a, b = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        den = _lcm(a._den, b._den)
        fa, fb = den // a._den, den // b._den
        return CycNum._make(a._n, [x * fa + y * fb for x, y in zip(a._num, b._num)], den)

    __radd__ = __add__

    def __neg__(self):
        return CycNum._make(self._n, [-c for c in self._num], self._den)

    def __sub__(self, other):
        try:
            a, b = self._coerce(other)
        except (TypeError, ValueError):
            return NotImplemented
        return a + (-b)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycNum._make(self._n, [c * f.numerator for c in self._num],
                                self._den * f.denominator)
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._coerce(other)
        n = a._n
        d = len(a._num)
        prod = [0] * max(2 * d - 1, 1)
        for i, x in enumerate(a._num):
            if x:
                for j, y in enumerate(b._num):
                    if y:
                        prod[i + j] += x * y
        return CycNum._make(n, _reduce(prod, n), a._den * b._den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            if not f:
                raise ZeroDivisionError
            return self * (1 / f)
        return NotImplemented

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = CycNum.rational(1, self._n)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def conjugate(self) -> "CycNum":
        """Complex conjugate, zeta -> zeta^-1."""
        n = self._n
        rows = _powers(n)
        d = len(self._num)
        acc = [0] * d
        for i, c in enumerate(self._num):
            if c:
                row = rows[(-i) % n]
                for j in range(d):
                    if row[j]:
                        acc[j] += c * row[j]
        return CycNum._make(n, acc, self._den)

    # comparison ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.rational_value() == other
        if not isinstance(other, CycNum):
            return NotImplemented
        a, b = self._coerce(other)
        return a._num == b._num and a._den == b._den

    def __hash__(self):
        if self._hash is None:
            r = self.rational_value()
            # irrational values can live in several fields, so they share one bucket
            self._hash = hash(r) if r is not None else hash("CycNum")
        return self._hash

    def __repr__(self):
        return "CycNum(%d, %r)" % (self._n, [str(c) for c in self.coeffs])

    def __str__(self):
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(str(c) if i == 0 else "%s*z%d^%d" % (c, self._n, i))
        return " + ".join(terms) if terms else "0"

    # serialization ---------------------------------------------------
    def to_json(self) -> dict:
        return {"n": self._n, "c": [[c.numerator, c.denominator] for c in self.coeffs]}

    @classmethod
    def from_json(cls, obj) -> "CycNum":
        if isinstance(obj, (int, str)):
            return cls.rational(Fraction(obj))
        coeffs = [Fraction(int(a), int(b)) for a, b in obj["c"]]
        return cls(int(obj["n"]), coeffs)


def zeta(n: int, k: int = 1) -> CycNum:
    """zeta_n^k in canonical form."""
    row = _powers(n)[k % n]
    return CycNum._make(n, list(row), 1)


def arith(a: CycNum, b: CycNum, op: str) -> CycNum:
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError("unknown op %r" % op)


def as_integer(a: CycNum) -> int | None:
    """The integer value of a, or None when a is not a rational integer."""
    r = a.rational_value()
    if r is None or r.denominator != 1:
        return None
    return r.numerator
