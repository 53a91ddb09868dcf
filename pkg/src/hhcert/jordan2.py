"""Jordan-block calculus for unipotent 2-elements in characteristic 2.

For g of order 2^(m+1) with Jordan blocks n_1 >= n_2 >= ..., the involution
z = g^(2^m) has rank(z - 1) = sum of max(0, n_i - 2^m).  Writing this sum as
j(g), the functions here give it exactly, bound it over all partitions with a
prescribed largest block, and evaluate the two closed-form bounds used for
SU_3(q) modules.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterator, Sequence

from .errors import BadRange, CapExceeded, OrderMismatch, UnsupportedResidue
from .qpoly import ParamExpr, QPoly, QRat

__all__ = [
    "JordanType",
    "order_of_type",
    "j_of_type",
    "max_j_bound",
    "brute_max_j",
    "brute_argmax_j",
    "partitions_with_largest",
    "count_partitions_with_largest",
    "f1",
    "f2",
    "f2_residue",
    "DEFAULT_CAP",
]

DEFAULT_CAP = 60


def _is_pow2(x: int) -> bool:
    return x >= 1 and x & (x - 1) == 0


@dataclass(frozen=True)
class JordanType:
    parts: tuple

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if not parts or any(p < 1 for p in parts):
            raise ValueError("Jordan type needs positive parts")
        if any(a < b for a, b in zip(parts, parts[1:])):
            raise ValueError("parts must be weakly decreasing: %r" % (parts,))
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, parts: Sequence[int]) -> "JordanType":
        return cls(tuple(sorted(parts, reverse=True)))

    @property
    def n(self) -> int:
        return sum(self.parts)

    @property
    def largest(self) -> int:
        return self.parts[0]

    def order(self) -> int:
        return order_of_type(self)


def order_of_type(t: JordanType) -> int:
    """Order of a unipotent element with Jordan type t over a field of characteristic 2."""
    o = 1
    while o < t.largest:
        o *= 2
    return o


def j_of_type(t: JordanType | Sequence[int], order: int) -> int:
    if not isinstance(t, JordanType):
        t = JordanType.of(t)
    if not _is_pow2(order) or order < 2:
        raise OrderMismatch("order must be a power of 2 at least 2, got %r" % order)
    half = order // 2
    if not (half < t.largest <= order):
        raise OrderMismatch("largest block %d is inconsistent with order %d" % (t.largest, order))
    return sum(max(0, p - half) for p in t.parts)


def max_j_bound(n: int, d: int, order: int) -> int:
    """Largest j over Jordan types of size n with largest block d, in closed form."""
    if not _is_pow2(order) or order < 2:
        raise BadRange("order must be a power of 2, got %r" % order)
    c = order // 2
    if not (c < d < order):
        raise BadRange("need order/2 < d < order, got d=%d, order=%d" % (d, order))
    if d > n:
        raise BadRange("largest block %d exceeds n=%d" % (d, n))
    k, l = divmod(n, d)
    return k * (d - c) + max(0, l - c)


def _parts_at_most(n: int, cap: int) -> Iterator[tuple]:
    """Partitions of n with all parts <= cap, each weakly decreasing."""
    if n == 0:
        yield ()
        return
    for first in range(min(n, cap), 0, -1):
        for rest in _parts_at_most(n - first, first):
            yield (first,) + rest


def partitions_with_largest(n: int, d: int) -> Iterator[tuple]:
    if d < 1 or d > n:
        return
    for rest in _parts_at_most(n - d, d):
        yield (d,) + rest


@lru_cache(maxsize=None)
def _count_at_most(n: int, cap: int) -> int:
    if n == 0:
        return 1
    if cap == 0:
        return 0
    return sum(_count_at_most(n - f, f) for f in range(1, min(n, cap) + 1))


def count_partitions_with_largest(n: int, d: int) -> int:
    if d < 1 or d > n:
        return 0
    return _count_at_most(n - d, d)


def brute_argmax_j(n: int, d: int, order: int, cap: int = DEFAULT_CAP) -> tuple[int, list[tuple]]:
    """Exhaustive maximum of j over partitions of n with largest part d, and all maximisers."""
    if n > cap:
        raise CapExceeded("n=%d exceeds the partition cap %d" % (n, cap))
    best, arg = None, []
    for p in partitions_with_largest(n, d):
        j = j_of_type(JordanType(p), order)
        if best is None or j > best:
            best, arg = j, [p]
        elif j == best:
            arg.append(p)
    if best is None:
        raise BadRange("no partition of %d has largest part %d" % (n, d))
    return best, arg


def brute_max_j(n: int, d: int, order: int, cap: int = DEFAULT_CAP) -> int:
    return brute_argmax_j(n, d, order, cap)[0]


# closed-form bounds -------------------------------------------------------


def _lift(x):
    if isinstance(x, (QPoly, QRat)):
        return x
    if isinstance(x, ParamExpr):
        return x.to_qpoly()
    return QPoly.const(x)


def f1(n, q):
    """n(q-3)/(2(q-1)) + (q-7)/4, exact for numbers and symbolic for QPolys."""
    if isinstance(n, (int, Fraction)) and isinstance(q, (int, Fraction)):
        return Fraction(n) * (q - 3) / (2 * (q - 1)) + Fraction(q - 7, 4)
    n, q = _lift(n), _lift(q)
    val = QRat(n * (q - 3), (q - 1) * 2) + (q - 7) / 4
    return val


def f2_residue(n, q) -> str:
    """Which of the cases n = 0, 1, -1 (mod q) applies."""
    if isinstance(n, (int, Fraction)) and isinstance(q, (int, Fraction)):
        n, q = Fraction(n), Fraction(q)
        if n.denominator != 1 or q.denominator != 1:
            raise UnsupportedResidue("f2 needs integer inputs")
        r = int(n) % int(q)
        if r == 0:
            return "0"
        if r == 1:
            return "1"
        if r == int(q) - 1:
            return "-1"
        raise UnsupportedResidue("n = %s is not 0, 1 or -1 mod %s" % (n, q))
    n, q = _lift(n), _lift(q)
    if isinstance(n, QRat) or n.has_s():
        raise UnsupportedResidue("symbolic f2 needs n in Q[q]")
    if q != QPoly.q():
        raise UnsupportedResidue("symbolic f2 reduces modulo q itself")
    # n mod q is the constant term
    r = n.constant()
    if r == 0:
        return "0"
    if r == 1:
        return "1"
    if r == -1:
        return "-1"
    raise UnsupportedResidue("constant term %s is not 0, 1 or -1" % r)


def f2(n, q):
    """Three-case bound by the residue of n modulo q."""
    case = f2_residue(n, q)
    if isinstance(n, (int, Fraction)) and isinstance(q, (int, Fraction)):
        n, q = Fraction(n), Fraction(q)
    else:
        n, q = _lift(n), _lift(q)
    if case == "0":
        return _div(n * (q - 1), q * 2)
    if case == "1":
        return _div((n - 1) * (q - 1), q * 2)
    return _div((n + 1) * (q - 1), q * 2) - 1


def _div(num, den):
    if isinstance(num, Fraction):
        return num / den
    return QRat(num, den).simplify()
