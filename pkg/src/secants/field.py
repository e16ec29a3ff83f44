"""Finite field arithmetic for GF(p) and GF(p^k).

Elements are encoded as integers in [0, q-1]: the base-p digits of an
encoding are the coefficients of the residue polynomial, lowest degree
first.  For prime fields this is the ordinary residue in [0, p-1], so
encodings double as the integer lift used by the order-based
constructions.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

# Legendre values are looked up in a residue table for moduli below this,
# computed by Euler's criterion above it.
_CHI_TABLE_LIMIT = 1 << 16


class FieldError(ValueError):
    """Invalid field construction or an operation outside its domain."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def factor_prime_power(q: int):
    """Return (p, k) with q = p**k, or None if q is not a prime power."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            k, m = 0, q
            while m % p == 0:
                m //= p
                k += 1
            return (p, k) if m == 1 else None
        p += 1
    return q, 1


# -- polynomial helpers over GF(p), coefficients low degree first ------------

def _poly_mod(a, m, p):
    """Remainder of a modulo the monic polynomial m, over GF(p)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    return [x % p for x in a[:dm]] + [0] * max(0, dm - len(a))


def _poly_mul(a, b, p):
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] = (out[i + j] + ai * bj) % p
    return out


def _is_irreducible(poly, p):
    """Trial division of a monic polynomial by every monic divisor of
    degree at most deg/2 (degree-1 trials subsume the root check)."""
    k = len(poly) - 1
    for d in range(1, k // 2 + 1):
        for enc in range(p ** d):
            div = _decode_digits(enc, p, d) + [1]
            if all(c == 0 for c in _poly_mod(poly, div, p)):
                return False
    return True


def _decode_digits(e: int, p: int, k: int):
    digits = []
    for _ in range(k):
        e, r = divmod(e, p)
        digits.append(r)
    return digits


def _encode_digits(digits, p: int) -> int:
    e = 0
    for d in reversed(digits):
        e = e * p + d
    return e


def _smallest_irreducible(p: int, k: int):
    """Lexicographically smallest monic irreducible of degree k over GF(p),
    low-degree coefficients compared first."""
    for low in itertools.product(range(p), repeat=k):
        poly = list(low) + [1]
        if _is_irreducible(poly, p):
            return tuple(poly)
    raise FieldError(f"no irreducible polynomial of degree {k} over GF({p})")


class Field:
    """The finite field GF(q) = GF(p^k) with integer-encoded elements.

    Immutable after construction; every operation is pure, so instances
    can be shared freely across workers.
    """

    def __init__(self, p: int, k: int, modulus=None):
        self.p = p
        self.k = k
        self.q = p ** k
        self.modulus = tuple(modulus) if modulus is not None else None
        self._chi = None
        if k > 1:
            if (self.modulus is None or len(self.modulus) != k + 1
                    or self.modulus[-1] != 1):
                raise FieldError("extension field requires a monic modulus of degree k")
            if not _is_irreducible(list(self.modulus), p):
                raise FieldError("modulus is reducible over the prime field")

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k}; modulus={list(self.modulus)})"

    def __eq__(self, other):
        return (isinstance(other, Field) and self.p == other.p
                and self.k == other.k and self.modulus == other.modulus)

    def __hash__(self):
        return hash((self.p, self.k, self.modulus))

    # -- element codec -------------------------------------------------------

    def digits(self, a: int):
        return _decode_digits(a, self.p, self.k)

    def encode(self, digits) -> int:
        return _encode_digits([d % self.p for d in digits], self.p)

    def elements(self):
        return range(self.q)

    # -- arithmetic ----------------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a + b) % self.p
        return self.encode([x + y for x, y in zip(self.digits(a), self.digits(b))])

    def sub(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a - b) % self.p
        return self.encode([x - y for x, y in zip(self.digits(a), self.digits(b))])

    def neg(self, a: int) -> int:
        if self.k == 1:
            return (-a) % self.p
        return self.encode([-x for x in self.digits(a)])

    def mul(self, a: int, b: int) -> int:
        if self.k == 1:
            return (a * b) % self.p
        prod = _poly_mul(self.digits(a), self.digits(b), self.p)
        return self.encode(_poly_mod(prod, list(self.modulus), self.p))

    def pow(self, a: int, e: int) -> int:
        if self.k == 1:
            return pow(a, e, self.p) if e >= 0 else self.inv(pow(a, -e, self.p))
        if e < 0:
            return self.pow(self.inv(a), -e)
        r, base = 1, a
        while e:
            if e & 1:
                r = self.mul(r, base)
            base = self.mul(base, base)
            e >>= 1
        return r

    def inv(self, a: int) -> int:
        if a == 0:
            raise FieldError("zero has no multiplicative inverse")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        return self.pow(a, self.q - 2)

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    # -- prime-field extras ---------------------------------------------------

    def lift(self, a: int) -> int:
        """Integer representative in [0, p-1]; defines the strict order used
        by the region constructions."""
        if self.k != 1:
            raise FieldError("order defined only on prime fields")
        if not 0 <= a < self.p:
            raise FieldError(f"element {a} out of range for GF({self.p})")
        return a

    def legendre(self, a: int) -> int:
        """Quadratic character of a: +1 on nonzero squares, -1 on
        non-squares, 0 at zero."""
        if self.k != 1 or self.p == 2:
            raise FieldError("Legendre requires odd prime field")
        a %= self.p
        if self.p < _CHI_TABLE_LIMIT:
            if self._chi is None:
                self._chi = legendre_table(self.p)
            return int(self._chi[a])
        if a == 0:
            return 0
        e = pow(a, (self.p - 1) // 2, self.p)
        return 1 if e == 1 else -1


@lru_cache(maxsize=128)
def legendre_table(p: int) -> np.ndarray:
    """int8 array of length p with the quadratic character of each residue."""
    if p == 2 or not is_prime(p):
        raise FieldError("Legendre requires odd prime field")
    chi = np.full(p, -1, dtype=np.int8)
    chi[0] = 0
    sq = (np.arange(1, p, dtype=np.int64) ** 2) % p
    chi[sq] = 1
    return chi


@lru_cache(maxsize=128)
def inverse_table(p: int) -> np.ndarray:
    """int64 array: multiplicative inverses mod p (index 0 unused, set to 0)."""
    inv = np.zeros(p, dtype=np.int64)
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def make_field(q: int) -> Field:
    """Build GF(q), factoring q = p^k; for k > 1 the modulus is the
    lexicographically smallest monic irreducible of degree k."""
    fac = factor_prime_power(q)
    if fac is None:
        raise FieldError("not a prime power")
    p, k = fac
    if k == 1:
        return Field(p, 1)
    return Field(p, k, _smallest_irreducible(p, k))


def legendre(field: Field, x: int) -> int:
    return field.legendre(x)


def lift(field: Field, x: int) -> int:
    return field.lift(x)
