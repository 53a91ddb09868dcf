"""Finite fields GF(p^k) with table arithmetic.

Elements are the integers 0 .. p^k - 1, read as base-p digit vectors of a
polynomial in a root of a fixed monic primitive polynomial.  Addition and
multiplication go through precomputed numpy tables, so arrays of field
elements can be combined elementwise with fancy indexing.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product

import numpy as np

__all__ = ["FF", "GF"]

MAX_ORDER = 512


def _is_prime(n: int) -> bool:
    return n >= 2 and all(n % d for d in range(2, int(n ** 0.5) + 1))


def _digits(x: int, p: int, k: int) -> list[int]:
    out = []
    for _ in range(k):
        x, r = divmod(x, p)
        out.append(r)
    return out


def _undigits(ds, p: int) -> int:
    x = 0
    for d in reversed(ds):
        x = x * p + int(d)
    return x


def _mulmod(a: list[int], b: list[int], mod: list[int], p: int) -> list[int]:
    """Product of digit vectors modulo a monic polynomial (low to high)."""
    k = len(mod) - 1
    prod = [0] * (2 * k)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] = (prod[i + j] + x * y) % p
    for i in range(len(prod) - 1, k - 1, -1):
        c = prod[i]
        if c:
            for j in range(k + 1):
                prod[i - k + j] = (prod[i - k + j] - c * mod[j]) % p
    return prod[:k]


def _find_primitive(p: int, k: int) -> list[int]:
    """First monic degree-k polynomial (in lexicographic order) whose root generates GF(p^k)^*."""
    if k == 1:
        # x - g for the least primitive root g
        for g in range(1, p):
            if p == 2 or all(pow(g, (p - 1) // r, p) != 1 for r in range(2, p) if (p - 1) % r == 0 and _is_prime(r)):
                return [(-g) % p, 1]
    order = p ** k - 1
    primes = [r for r in range(2, order + 1) if order % r == 0 and _is_prime(r)]
    for tail in product(range(p), repeat=k):
        mod = list(tail) + [1]
        if mod[0] == 0:
            continue
        x = [0, 1] + [0] * (k - 2)

        def power(e):
            out, base = [1] + [0] * (k - 1), x
            while e:
                if e & 1:
                    out = _mulmod(out, base, mod, p)
                base = _mulmod(base, base, mod, p)
                e >>= 1
            return out

        one = [1] + [0] * (k - 1)
        if power(order) != one:
            continue
        if all(power(order // r) != one for r in primes):
            return mod
    raise ValueError("no primitive polynomial found")  # cannot happen


class FF:
    """The field with p^k elements."""

    def __init__(self, p: int, k: int = 1):
        if not _is_prime(p) or k < 1 or p ** k > MAX_ORDER:
            raise ValueError("need a prime p and p^k <= %d, got %r^%r" % (MAX_ORDER, p, k))
        self.p, self.k = p, k
        self.q = q = p ** k
        self.modulus = _find_primitive(p, k)
        digits = np.array([_digits(x, p, k) for x in range(q)], dtype=np.int64)
        place = p ** np.arange(k, dtype=np.int64)
        self.add_table = (((digits[:, None, :] + digits[None, :, :]) % p) @ place).astype(np.int32)
        self.neg_table = (((-digits) % p) @ place).astype(np.int32)
        # discrete logs from the primitive root x (for k = 1, the root of x - g is g)
        gen = _undigits([(-self.modulus[0]) % p], p) if k == 1 else p
        exp = [1]
        for _ in range(q - 2):
            exp.append(_undigits(_mulmod(_digits(exp[-1], p, k), _digits(gen, p, k), self.modulus, p), p))
        self.exp_table = np.array(exp + exp, dtype=np.int32)
        log = np.full(q, -1, dtype=np.int64)
        for i, e in enumerate(exp):
            log[e] = i
        self.log_table = log
        mul = np.zeros((q, q), dtype=np.int32)
        nz = np.arange(1, q)
        mul[1:, 1:] = self.exp_table[(log[nz][:, None] + log[nz][None, :]) % (q - 1)]
        self.mul_table = mul
        inv = np.zeros(q, dtype=np.int32)
        inv[1:] = self.exp_table[(-(log[nz])) % (q - 1)]
        self.inv_table = inv
        self.primitive = int(gen)
        self.frob_table = np.array([self._pow(a, p) for a in range(q)], dtype=np.int32)
        self.prime_field = k == 1

    # scalar helpers ---------------------------------------------------
    def _pow(self, a: int, e: int) -> int:
        if a == 0:
            return 0 if e else 1
        return int(self.exp_table[(int(self.log_table[a]) * e) % (self.q - 1)])

    def add(self, a, b):
        if self.prime_field:
            return np.mod(np.add(a, b), self.p)
        return self.add_table[a, b]

    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def neg(self, a):
        if self.prime_field:
            return np.mod(np.negative(a), self.p)
        return self.neg_table[a]

    def mul(self, a, b):
        if self.prime_field:
            return np.mod(np.multiply(a, b), self.p)
        return self.mul_table[a, b]

    def inv(self, a):
        if np.isscalar(a) and int(a) == 0:
            raise ZeroDivisionError("inverse of 0")
        return self.inv_table[a]

    def pow(self, a: int, e: int) -> int:
        return self._pow(int(a), e)

    def frob(self, a):
        """x -> x^p, applied elementwise."""
        return self.frob_table[a]

    def conj(self, a):
        """x -> x^sqrt(q) for even k, the involutory field automorphism."""
        if self.k % 2:
            raise ValueError("GF(%d) has no involutory automorphism" % self.q)
        half = self.p ** (self.k // 2)
        return np.array([self._pow(x, half) for x in range(self.q)], dtype=np.int32)[a]

    def elements(self) -> range:
        return range(self.q)

    def __eq__(self, other):
        return isinstance(other, FF) and (self.p, self.k) == (other.p, other.k)

    def __hash__(self):
        return hash((self.p, self.k))

    def __repr__(self):
        return "GF(%d)" % self.q if self.k == 1 else "GF(%d^%d)" % (self.p, self.k)

    def to_json(self):
        return {"p": self.p, "k": self.k}


@lru_cache(maxsize=None)
def GF(p: int, k: int = 1) -> FF:
    return FF(p, k)
