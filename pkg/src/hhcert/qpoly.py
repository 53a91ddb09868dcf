"""Symbolic polynomials in q and s = sqrt(m q), with certification helpers.

QPoly is an element of Q[q, s]/(s^2 - m q) for m in {2, 3}; an s-free QPoly
has ``m = None`` and combines with either radicand.  ParamExpr adds integer
parameters (multiplicities such as a, b, x8) on top, and QRat is a quotient
of two QPolys used for the few rational-function formulas that occur.

Positivity over a family of prime powers is decided by a positive-root bound
plus exact evaluation below it; see ``eventually_positive``.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from math import isqrt
from typing import Iterable, Iterator, Mapping

from .errors import (
    Inconclusive,
    MixedRadicand,
    NonMonicModulus,
    NonPolynomialQuotient,
    NotAffine,
    ParseError,
    RadicandNotSquare,
)

__all__ = [
    "QPoly",
    "QRat",
    "ParamExpr",
    "QFamily",
    "PositivityResult",
    "BoxResult",
    "parse",
    "parse_qpoly",
    "parse_rational",
    "exact_div",
    "qp_divmod",
    "box_extremes_at",
    "prime_power_base",
    "qp_mod",
    "eval_at",
    "eventually_positive",
    "box_inequality",
]


def _merge_m(a, b):
    if a is None:
        return b
    if b is None or a == b:
        return a
    raise MixedRadicand("radicands %s and %s do not mix" % (a, b))


class QPoly:
    """Immutable element of Q[q, s]/(s^2 - m q)."""

    __slots__ = ("terms", "m")

    def __init__(self, terms: Mapping[tuple[int, int], object] | None = None, m: int | None = None):
        if m not in (None, 2, 3):
            raise ValueError("radicand must be 2 or 3")
        clean: dict[tuple[int, int], Fraction] = {}
        for (a, b), c in (terms or {}).items():
            c = Fraction(c)
            if not c:
                continue
            # s^b = (mq)^(b//2) s^(b%2)
            if b > 1:
                if m is None:
                    raise MixedRadicand("s used without a radicand")
                c = c * Fraction(m) ** (b // 2)
                a, b = a + b // 2, b % 2
            key = (a, b)
            clean[key] = clean.get(key, Fraction(0)) + c
            if not clean[key]:
                del clean[key]
        self.terms = clean
        self.m = m if any(b for _, b in clean) else None

    # constructors ----------------------------------------------------
    @classmethod
    def const(cls, c) -> "QPoly":
        return cls({(0, 0): c})

    @classmethod
    def q(cls) -> "QPoly":
        return cls({(1, 0): 1})

    @classmethod
    def s(cls, m: int) -> "QPoly":
        return cls({(0, 1): 1}, m)

    @staticmethod
    def coerce(x) -> "QPoly":
        if isinstance(x, QPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return QPoly.const(x)
        raise TypeError("cannot coerce %r to QPoly" % (x,))

    # queries ---------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def has_s(self) -> bool:
        return any(b for _, b in self.terms)

    def is_constant(self) -> bool:
        return all(k == (0, 0) for k in self.terms)

    def constant(self) -> Fraction:
        return self.terms.get((0, 0), Fraction(0))

    def deg_q(self) -> int:
        """Degree in q of the s-free part and the s-coefficient, whichever is larger."""
        return max((a for a, _ in self.terms), default=-1)

    def coeff(self, a: int, b: int = 0) -> Fraction:
        return self.terms.get((a, b), Fraction(0))

    def parts(self) -> tuple[dict[int, Fraction], dict[int, Fraction]]:
        """Split into (A, B) with self = A(q) + B(q) s."""
        A, B = {}, {}
        for (a, b), c in self.terms.items():
            (B if b else A)[a] = c
        return A, B

    # arithmetic ------------------------------------------------------
    def __add__(self, other):
        try:
            other = QPoly.coerce(other)
        except TypeError:
            return NotImplemented
        m = _merge_m(self.m, other.m)
        t = dict(self.terms)
        for k, c in other.terms.items():
            t[k] = t.get(k, 0) + c
        return QPoly(t, m)

    __radd__ = __add__

    def __neg__(self):
        return QPoly({k: -c for k, c in self.terms.items()}, self.m)

    def __sub__(self, other):
        try:
            other = QPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return QPoly({k: c * other for k, c in self.terms.items()}, self.m)
        if not isinstance(other, QPoly):
            return NotImplemented
        m = _merge_m(self.m, other.m)
        t: dict[tuple[int, int], Fraction] = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                a, b, c = a1 + a2, b1 + b2, c1 * c2
                if b == 2:
                    a, b, c = a + 1, 0, c * m
                t[(a, b)] = t.get((a, b), 0) + c
        return QPoly(t, m)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError
            return self * (1 / Fraction(other))
        if isinstance(other, QPoly):
            if other.is_constant():
                return self / other.constant()
            return exact_div(self, other)
        return NotImplemented

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        out = QPoly.const(1)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = QPoly.const(other)
        if not isinstance(other, QPoly):
            return NotImplemented
        return self.terms == other.terms and (self.m == other.m or not self.has_s())

    def __hash__(self):
        return hash((frozenset(self.terms.items()), self.m))

    def __repr__(self):
        return "QPoly(%r)" % str(self)

    def __str__(self):
        if not self.terms:
            return "0"
        out = []
        for (a, b) in sorted(self.terms, key=lambda k: (-k[0], -k[1])):
            c = self.terms[(a, b)]
            mono = "*".join(x for x in (
                "" if a == 0 else ("q" if a == 1 else "q^%d" % a),
                "s" if b else "") if x)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else "%s*%s" % (_frac_str(mag), mono)
            else:
                body = _frac_str(mag)
            out.append(("-" if c < 0 else "+", body))
        text = ("-" if out[0][0] == "-" else "") + out[0][1]
        for sign, body in out[1:]:
            text += " %s %s" % (sign, body)
        return text

    def to_json(self):
        return {"expr": str(self), "m": self.m}

    # evaluation ------------------------------------------------------
    def evaluate(self, q: int, s: int | None = None) -> Fraction:
        if self.has_s():
            if s is None:
                s = _sqrt_exact(self.m, q)
        total = Fraction(0)
        for (a, b), c in self.terms.items():
            total += c * Fraction(q) ** a * (s if b else 1)
        return total


def _frac_str(f: Fraction) -> str:
    return str(f.numerator) if f.denominator == 1 else "%d/%d" % (f.numerator, f.denominator)


def _sqrt_exact(m: int, q: int) -> int:
    r = isqrt(m * q)
    if r * r != m * q:
        raise RadicandNotSquare("%d*%d is not a perfect square" % (m, q))
    return r


def eval_at(P: "QPoly", q_value: int, m: int | None = None) -> Fraction:
    """Exact value of P at q=q_value (s evaluated as sqrt(m q))."""
    P = QPoly.coerce(P)
    if P.has_s():
        return P.evaluate(q_value, _sqrt_exact(P.m, q_value))
    if m is not None:
        _sqrt_exact(m, q_value)
    return P.evaluate(q_value)


def _qdivmod(num: dict[int, Fraction], den: dict[int, Fraction]) -> tuple[dict, dict]:
    num = dict(num)
    dd = max(den)
    lead = den[dd]
    quo: dict[int, Fraction] = {}
    while num and max(num) >= dd:
        top = max(num)
        c = num[top] / lead
        quo[top - dd] = c
        for e, v in den.items():
            k = top - dd + e
            num[k] = num.get(k, 0) - c * v
            if not num[k]:
                del num[k]
    return quo, num


def exact_div(P: QPoly, D: QPoly) -> QPoly:
    """P / D for s-free D, raising NonPolynomialQuotient if it is not exact."""
    if D.has_s():
        raise NonPolynomialQuotient("division by an s-dependent polynomial")
    if D.is_zero():
        raise ZeroDivisionError
    A, B = P.parts()
    den, _ = D.parts()
    qa, ra = _qdivmod(A, den) if A else ({}, {})
    qb, rb = _qdivmod(B, den) if B else ({}, {})
    if ra or rb:
        raise NonPolynomialQuotient("%s is not divisible by %s" % (P, D))
    t = {(a, 0): c for a, c in qa.items()}
    t.update({(a, 1): c for a, c in qb.items()})
    return QPoly(t, P.m)


def qp_mod(P: QPoly, M: QPoly) -> QPoly:
    """Remainder of P modulo a monic (leading coefficient +-1) s-free M."""
    P, M = QPoly.coerce(P), QPoly.coerce(M)
    if P.has_s() or M.has_s():
        raise NonMonicModulus("qp_mod works on s-free polynomials")
    den, _ = M.parts()
    if not den or den[max(den)] not in (1, -1) or max(den) < 1:
        raise NonMonicModulus("modulus %s is not monic in q" % M)
    A, _ = P.parts()
    _, rem = _qdivmod(A, den)
    return QPoly({(a, 0): c for a, c in rem.items()})


def qp_divmod(P: QPoly, M: QPoly) -> tuple[QPoly, QPoly]:
    P, M = QPoly.coerce(P), QPoly.coerce(M)
    if P.has_s() or M.has_s():
        raise NonMonicModulus("qp_divmod works on s-free polynomials")
    den, _ = M.parts()
    A, _ = P.parts()
    quo, rem = _qdivmod(A, den)
    return (QPoly({(a, 0): c for a, c in quo.items()}),
            QPoly({(a, 0): c for a, c in rem.items()}))


class QRat:
    """A quotient num/den of QPolys, den s-free.  Reduced to QPoly when exact."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=1):
        num, den = QPoly.coerce(num), QPoly.coerce(den)
        if den.is_zero():
            raise ZeroDivisionError
        if den.has_s():
            raise NonPolynomialQuotient("denominators must be s-free")
        self.num, self.den = num, den

    def simplify(self) -> "QPoly | QRat":
        try:
            return exact_div(self.num, self.den)
        except NonPolynomialQuotient:
            return self

    @staticmethod
    def lift(x) -> "QRat":
        if isinstance(x, QRat):
            return x
        if isinstance(x, ParamExpr):
            x = x.to_qpoly()
        return QRat(QPoly.coerce(x), 1)

    def __add__(self, other):
        o = QRat.lift(other)
        return QRat(self.num * o.den + o.num * self.den, self.den * o.den).simplify()

    __radd__ = __add__

    def __neg__(self):
        return QRat(-self.num, self.den)

    def __sub__(self, other):
        return self + (-QRat.lift(other))

    def __rsub__(self, other):
        return QRat.lift(other) - self

    def __mul__(self, other):
        o = QRat.lift(other)
        return QRat(self.num * o.num, self.den * o.den).simplify()

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = QRat.lift(other)
        if o.num.has_s():
            raise NonPolynomialQuotient("cannot divide by an s-dependent expression")
        return QRat(self.num * o.den, self.den * o.num).simplify()

    def __rtruediv__(self, other):
        return QRat.lift(other) / self

    def __eq__(self, other):
        if isinstance(other, (QPoly, QRat, int, Fraction)):
            o = QRat.lift(other)
            return self.num * o.den == o.num * self.den
        return NotImplemented

    def __hash__(self):
        return hash(("QRat", str(self.num), str(self.den)))

    def evaluate(self, q: int, s: int | None = None) -> Fraction:
        return self.num.evaluate(q, s) / self.den.evaluate(q)

    def __str__(self):
        return "(%s)/(%s)" % (self.num, self.den)

    __repr__ = __str__


def _as_qrat_or_poly(x):
    if isinstance(x, QRat):
        return x.simplify()
    return x


# ---------------------------------------------------------------------------
# parameter expressions


Monomial = tuple  # sorted tuple of parameter names, repeats allowed


class ParamExpr:
    """Polynomial in named integer parameters with QPoly coefficients."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, QPoly] | None = None):
        clean: dict[Monomial, QPoly] = {}
        for mono, c in (terms or {}).items():
            c = QPoly.coerce(c)
            mono = tuple(sorted(mono))
            prev = clean.get(mono)
            c = c if prev is None else prev + c
            if c.is_zero():
                clean.pop(mono, None)
            else:
                clean[mono] = c
        self.terms = clean

    @classmethod
    def lift(cls, x) -> "ParamExpr":
        if isinstance(x, ParamExpr):
            return x
        return cls({(): QPoly.coerce(x)})

    @classmethod
    def param(cls, name: str) -> "ParamExpr":
        return cls({(name,): QPoly.const(1)})

    def params(self) -> set[str]:
        return {p for mono in self.terms for p in mono}

    def is_param_free(self) -> bool:
        return all(not mono for mono in self.terms)

    def to_qpoly(self) -> QPoly:
        if not self.is_param_free():
            raise ValueError("expression still depends on %s" % sorted(self.params()))
        return self.terms.get((), QPoly())

    def is_multi_affine(self) -> bool:
        return all(len(set(mono)) == len(mono) for mono in self.terms)

    def __add__(self, other):
        if isinstance(other, QRat):
            return NotImplemented
        o = ParamExpr.lift(other)
        t = dict(self.terms)
        for k, c in o.terms.items():
            t[k] = t[k] + c if k in t else c
        return ParamExpr(t)

    __radd__ = __add__

    def __neg__(self):
        return ParamExpr({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-ParamExpr.lift(other))

    def __rsub__(self, other):
        return ParamExpr.lift(other) - self

    def __mul__(self, other):
        if isinstance(other, QRat):
            return NotImplemented
        o = ParamExpr.lift(other)
        t: dict[Monomial, QPoly] = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                k = tuple(sorted(k1 + k2))
                t[k] = t[k] + c1 * c2 if k in t else c1 * c2
        return ParamExpr(t)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return ParamExpr({k: c / other for k, c in self.terms.items()})
        o = ParamExpr.lift(other)
        if not o.is_param_free():
            raise ParseError("division by a parameter is not supported")
        d = o.to_qpoly()
        if d.is_constant():
            return ParamExpr({k: c / d.constant() for k, c in self.terms.items()})
        if not self.is_param_free():
            raise ParseError("rational functions of parameters are not supported")
        return QRat(self.to_qpoly(), d).simplify()

    def __pow__(self, k: int):
        out = ParamExpr.lift(1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, QPoly)):
            other = ParamExpr.lift(other)
        if not isinstance(other, ParamExpr):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset((k, str(v)) for k, v in self.terms.items()))

    def subs(self, values: Mapping[str, object]) -> "ParamExpr":
        """Substitute parameters by ParamExpr/QPoly/number values."""
        out = ParamExpr()
        for mono, c in self.terms.items():
            term = ParamExpr.lift(c)
            for p in mono:
                term = term * (ParamExpr.lift(values[p]) if p in values else ParamExpr.param(p))
            out = out + term
        return out

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        for mono in sorted(self.terms, key=lambda k: (len(k), k)):
            c = self.terms[mono]
            if not mono:
                pieces.append("(%s)" % c)
            elif c == 1:
                pieces.append("*".join(mono))
            else:
                pieces.append("(%s)*%s" % (c, "*".join(mono)))
        return " + ".join(pieces)

    __repr__ = __str__


# ---------------------------------------------------------------------------
# parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    pos, out = 0, []
    text = text.strip()
    while pos < len(text):
        mt = _TOKEN.match(text, pos)
        if not mt or mt.end() == pos:
            raise ParseError("unexpected character at %d in %r" % (pos, text))
        num, ident, op = mt.groups()
        if num is not None:
            out.append(("num", num))
        elif ident is not None:
            out.append(("id", ident))
        else:
            out.append(("op", "^" if op == "**" else op))
        pos = mt.end()
        while pos < len(text) and text[pos].isspace():
            pos += 1
    return out


class _Parser:
    def __init__(self, text: str, m: int | None, allow_params: bool, symbols: Mapping | None):
        self.text = text
        self.toks = _tokenize(text)
        self.i = 0
        self.m = m
        self.allow_params = allow_params
        self.symbols = symbols or {}

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, val):
        kind, v = self.take()
        if v != val:
            raise ParseError("expected %r in %r" % (val, self.text))

    def parse(self):
        if not self.toks:
            raise ParseError("empty expression")
        val = self.expr()
        if self.i != len(self.toks):
            raise ParseError("trailing input in %r" % self.text)
        return val

    def expr(self):
        val = self.term()
        while self.peek() in (("op", "+"), ("op", "-")):
            _, op = self.take()
            rhs = self.term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def term(self):
        val = self.unary()
        while True:
            kind, v = self.peek()
            if (kind, v) == ("op", "*"):
                self.take()
                val = val * self.unary()
            elif (kind, v) == ("op", "/"):
                self.take()
                val = val / self.unary()
            elif kind in ("id", "num") or (kind, v) == ("op", "("):
                # implicit multiplication: 2q, q(q-1), (q-1)(q+1)
                val = val * self.power()
            else:
                return val

    def unary(self):
        kind, v = self.peek()
        if (kind, v) == ("op", "-"):
            self.take()
            return -self.unary()
        if (kind, v) == ("op", "+"):
            self.take()
            return self.unary()
        return self.power()

    def power(self):
        base = self.atom()
        if self.peek() == ("op", "^"):
            self.take()
            kind, v = self.peek()
            if (kind, v) == ("op", "("):
                self.take()
                k = self.expr()
                self.expect(")")
            else:
                k = self.atom()
            k = _as_int_exponent(k, self.text)
            base = base ** k
        return base

    def atom(self):
        kind, v = self.take()
        if kind == "num":
            return ParamExpr.lift(int(v))
        if kind == "id":
            if v == "q":
                return ParamExpr.lift(QPoly.q())
            if v == "s":
                if self.m is None:
                    raise MixedRadicand("s appears but no radicand was given in %r" % self.text)
                return ParamExpr.lift(QPoly.s(self.m))
            if v in self.symbols:
                return ParamExpr.lift(self.symbols[v])
            if not self.allow_params:
                raise ParseError("unknown symbol %r in %r" % (v, self.text))
            return ParamExpr.param(v)
        if (kind, v) == ("op", "("):
            val = self.expr()
            self.expect(")")
            return val
        raise ParseError("unexpected token %r in %r" % (v, self.text))


def _as_int_exponent(k, text) -> int:
    if isinstance(k, ParamExpr) and k.is_param_free():
        p = k.to_qpoly()
        if p.is_constant() and p.constant().denominator == 1 and p.constant() >= 0:
            return int(p.constant())
    raise ParseError("exponent must be a nonnegative integer in %r" % text)


def parse(text: str, m: int | None = None, *, allow_params: bool = True,
          symbols: Mapping | None = None):
    """Parse text into a ParamExpr (or QRat when a polynomial divisor appears)."""
    return _Parser(str(text), m, allow_params, symbols).parse()


def parse_qpoly(text: str, m: int | None = None) -> QPoly:
    val = parse(text, m, allow_params=False)
    if isinstance(val, QRat):
        raise NonPolynomialQuotient("%r is not a polynomial" % text)
    return val.to_qpoly()


def parse_rational(text: str, m: int | None = None) -> "QPoly | QRat":
    val = parse(text, m, allow_params=False)
    return val if isinstance(val, QRat) else val.to_qpoly()


# ---------------------------------------------------------------------------
# families of q


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def prime_power_base(n: int) -> int | None:
    """The prime r with n = r^k, or None."""
    if n < 2:
        return None
    f = 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                n //= f
            return f if n == 1 else None
        f += 1
    return n


@dataclass(frozen=True)
class QFamily:
    """An increasing set of admissible q values.

    kind "odd_power": q = base^(2k+1), k >= 0, q >= min_q (Suzuki/Ree shape).
    kind "power": q = base^a with a >= 1, q >= min_q.
    kind "prime_power": every prime power q >= min_q, optionally with
    q mod modulus in residues.
    """

    kind: str
    base: int | None = None
    min_q: int = 2
    m: int | None = None
    modulus: int | None = None
    residues: tuple[int, ...] = ()

    @classmethod
    def odd_powers(cls, base: int, min_q: int | None = None) -> "QFamily":
        return cls("odd_power", base, base if min_q is None else min_q, m=base if base in (2, 3) else None)

    @classmethod
    def powers(cls, base: int, min_q: int | None = None) -> "QFamily":
        return cls("power", base, base if min_q is None else min_q)

    @classmethod
    def prime_powers(cls, min_q: int = 2, modulus: int | None = None, residues: Iterable[int] = ()) -> "QFamily":
        return cls("prime_power", None, min_q, None, modulus, tuple(sorted(residues)))

    def _ok(self, q: int) -> bool:
        if q < self.min_q:
            return False
        if self.modulus and self.residues and q % self.modulus not in self.residues:
            return False
        return True

    def contains(self, q: int) -> bool:
        if not self._ok(q):
            return False
        if self.kind == "prime_power":
            return prime_power_base(q) is not None
        b = prime_power_base(q)
        if b != self.base:
            return False
        k = 0
        while q > 1:
            q //= self.base
            k += 1
        return k % 2 == 1 if self.kind == "odd_power" else k >= 1

    def members(self, limit: int | None = None, count: int | None = None) -> Iterator[int]:
        """Family members in increasing order, up to limit and/or count of them."""
        produced = 0
        if self.kind in ("odd_power", "power"):
            step = self.base ** 2 if self.kind == "odd_power" else self.base
            q = self.base
            while True:
                if limit is not None and q > limit:
                    return
                if self._ok(q):
                    yield q
                    produced += 1
                    if count is not None and produced >= count:
                        return
                q *= step
        else:
            q = max(2, self.min_q)
            while True:
                if limit is not None and q > limit:
                    return
                if self._ok(q) and prime_power_base(q) is not None:
                    yield q
                    produced += 1
                    if count is not None and produced >= count:
                        return
                q += 1

    def first(self) -> int:
        return next(self.members())

    def after(self, q: int) -> "QFamily":
        """The same family restricted to members > q."""
        return QFamily(self.kind, self.base, q + 1, self.m, self.modulus, self.residues)

    def to_json(self) -> dict:
        out = {"kind": self.kind, "min_q": self.min_q}
        if self.base is not None:
            out["base"] = self.base
        if self.m is not None:
            out["m"] = self.m
        if self.modulus:
            out["modulus"] = self.modulus
            out["residues"] = list(self.residues)
        return out

    @classmethod
    def from_json(cls, obj: Mapping) -> "QFamily":
        kind = obj["kind"]
        if kind == "odd_power":
            fam = cls.odd_powers(int(obj["base"]), int(obj.get("min_q", obj["base"])))
        elif kind == "power":
            fam = cls.powers(int(obj["base"]), int(obj.get("min_q", obj["base"])))
        elif kind == "prime_power":
            fam = cls.prime_powers(int(obj.get("min_q", 2)), obj.get("modulus"), obj.get("residues", ()))
        else:
            raise ValueError("unknown family kind %r" % kind)
        return fam

    def describe(self) -> str:
        if self.kind == "odd_power":
            return "q = %d^(2k+1) >= %d" % (self.base, self.min_q)
        if self.kind == "power":
            return "q = %d^a >= %d" % (self.base, self.min_q)
        text = "prime powers q >= %d" % self.min_q
        if self.modulus:
            text += " with q mod %d in %s" % (self.modulus, list(self.residues))
        return text


# ---------------------------------------------------------------------------
# positivity


@dataclass
class PositivityResult:
    verdict: bool | None
    status: str  # "verified", "refuted", "inconclusive"
    threshold: int
    checked: list[int] = field(default_factory=list)
    witness: int | None = None
    witness_value: Fraction | None = None
    reason: str = ""

    def __bool__(self):
        return bool(self.verdict)

    def to_json(self):
        out = {"status": self.status, "threshold": self.threshold, "checked": self.checked}
        if self.witness is not None:
            out["witness_q"] = self.witness
            out["witness_value"] = str(self.witness_value)
        if self.reason:
            out["reason"] = self.reason
        return out


def _ceil_root(x: Fraction, k: int) -> int:
    """Smallest integer b >= 0 with b^k >= x."""
    if x <= 0:
        return 0
    lo, hi = 0, 1
    while Fraction(hi) ** k < x:
        hi *= 2
    while lo < hi:
        mid = (lo + hi) // 2
        if Fraction(mid) ** k >= x:
            hi = mid
        else:
            lo = mid + 1
    return lo


def _positive_root_bound(coeffs: dict[int, Fraction]) -> int:
    """Integer B so that the polynomial has no real root x > B.

    Uses the Cauchy leading-term rule for positive roots: with a_n > 0 and k
    negative coefficients, every positive root is at most
    max over a_i < 0 of (k |a_i| / a_n)^(1/(n-i)).
    """
    n = max(coeffs)
    lead = coeffs[n]
    if lead < 0:
        coeffs = {e: -c for e, c in coeffs.items()}
        lead = -lead
    neg = [(e, c) for e, c in coeffs.items() if c < 0]
    if not neg:
        return 0
    k = len(neg)
    return max(_ceil_root(k * -c / lead, n - e) for e, c in neg)


def _as_variable_poly(P: QPoly, fam: QFamily) -> tuple[dict[int, Fraction], bool, int | None]:
    """Rewrite P as a one-variable polynomial.

    Returns (coeffs, uses_t, m).  When P involves s the variable is t = s with
    q = t^2/m, so P = A(t^2/m) + t B(t^2/m).
    """
    if not P.has_s():
        A, _ = P.parts()
        return A, False, None
    m = P.m
    out: dict[int, Fraction] = {}
    for (a, b), c in P.terms.items():
        e = 2 * a + b
        out[e] = out.get(e, 0) + c / Fraction(m) ** a
    return {e: c for e, c in out.items() if c}, True, m


def eventually_positive(P, fam: QFamily, *, strict: bool = True, max_checks: int = 200000) -> PositivityResult:
    """Decide whether P(q) > 0 (>= 0 if not strict) for every q in fam."""
    P = QPoly.coerce(P)
    if P.has_s() and fam.kind == "prime_power":
        raise RadicandNotSquare("s-dependent polynomial over a family without integral s")
    if P.is_zero():
        q0 = fam.first()
        if strict:
            return PositivityResult(False, "refuted", q0, [q0], q0, Fraction(0), "identically zero")
        return PositivityResult(True, "verified", q0, [], reason="identically zero")
    coeffs, uses_t, m = _as_variable_poly(P, fam)
    top = max(coeffs)
    lead = coeffs[top]
    bound = _positive_root_bound(coeffs)
    q_thr = (bound * bound) // m + 1 if uses_t else bound
    checked: list[int] = []
    members = fam.members(limit=max(q_thr, fam.min_q))
    for q in members:
        if len(checked) >= max_checks:
            return PositivityResult(None, "inconclusive", q_thr, checked,
                                    reason="more than %d family members below the root bound" % max_checks)
        val = eval_at(P, q)
        checked.append(q)
        if val < 0 or (strict and val == 0):
            return PositivityResult(False, "refuted", q_thr, checked, q, val)
    if lead > 0:
        if not checked:
            q = fam.first()
            checked.append(q)
            val = eval_at(P, q)
            if val < 0 or (strict and val == 0):
                return PositivityResult(False, "refuted", q_thr, checked, q, val)
        return PositivityResult(True, "verified", q_thr, checked)
    # negative leading coefficient: the first member past the bound is a witness
    for q in fam.members():
        if q > q_thr:
            val = eval_at(P, q)
            checked.append(q)
            if val < 0 or (strict and val == 0):
                return PositivityResult(False, "refuted", q_thr, checked, q, val)
            break
    return PositivityResult(None, "inconclusive", q_thr, checked, reason="leading coefficient is not positive")


@dataclass
class BoxResult:
    verdict: bool | None
    status: str
    corners: int
    failing_corner: dict | None = None
    witness: int | None = None
    witness_value: Fraction | None = None
    worst: dict = field(default_factory=dict)
    reason: str = ""

    def __bool__(self):
        return bool(self.verdict)

    def to_json(self):
        out = {"status": self.status, "corners": self.corners}
        if self.failing_corner is not None:
            out["failing_corner"] = {k: str(v) for k, v in sorted(self.failing_corner.items())}
        if self.witness is not None:
            out["witness_q"] = self.witness
            out["witness_value"] = str(self.witness_value)
        if self.reason:
            out["reason"] = self.reason
        return out


def box_inequality(expr, bounds: Mapping[str, tuple], fam: QFamily, *, strict: bool = True) -> BoxResult:
    """Check expr > 0 (or >= 0) on every corner of a parameter box, for all q in fam.

    bounds maps each parameter to (low, high), endpoints QPoly or numbers.
    expr must be affine in each parameter separately, so the extreme values
    over the box are attained at corners.
    """
    expr = ParamExpr.lift(expr)
    if not expr.is_multi_affine():
        raise NotAffine("expression is not affine in each parameter: %s" % expr)
    names = sorted(expr.params())
    missing = [p for p in names if p not in bounds]
    if missing:
        raise KeyError("no bounds for parameters %s" % missing)
    ends = [(QPoly.coerce(bounds[p][0]), QPoly.coerce(bounds[p][1])) for p in names]
    n_corner = 0
    for choice in itertools.product((0, 1), repeat=len(names)):
        corner = {p: ends[i][c] for i, (p, c) in enumerate(zip(names, choice))}
        val = expr.subs(corner).to_qpoly()
        n_corner += 1
        res = eventually_positive(val, fam, strict=strict)
        if res.status != "verified":
            return BoxResult(res.verdict, res.status, n_corner, corner, res.witness,
                             res.witness_value, reason=res.reason)
    return BoxResult(True, "verified", n_corner)


def box_extremes_at(expr, bounds: Mapping[str, tuple], q: int) -> tuple[Fraction, Fraction]:
    """Minimum and maximum of a multi-affine expr over the box at a fixed q."""
    expr = ParamExpr.lift(expr)
    if not expr.is_multi_affine():
        raise NotAffine("expression is not affine in each parameter: %s" % expr)
    names = sorted(expr.params())
    ends = [(eval_at(QPoly.coerce(bounds[p][0]), q), eval_at(QPoly.coerce(bounds[p][1]), q)) for p in names]
    lo = hi = None
    for choice in itertools.product((0, 1), repeat=len(names)):
        corner = {p: QPoly.const(ends[i][c]) for i, (p, c) in enumerate(zip(names, choice))}
        v = eval_at(expr.subs(corner).to_qpoly(), q)
        lo = v if lo is None or v < lo else lo
        hi = v if hi is None or v > hi else hi
    if lo is None:
        v = eval_at(expr.to_qpoly(), q)
        lo = hi = v
    return lo, hi
