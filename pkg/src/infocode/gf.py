"""Finite-field arithmetic for GF(p^m).

Elements are stored as plain integers: the coefficient vector
``(c_0, ..., c_{m-1})`` of the polynomial residue is packed base ``p``,
so for ``p = 2`` an element is simply a bit string of length ``m``.
Hot paths (matrix code, cyclic codes) work on those integers directly;
:class:`FieldElement` is a thin immutable wrapper for readable arithmetic.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from sympy import factorint, isprime

MAX_ORDER_BITS = 63


# Polynomials over F_p as coefficient lists, lowest degree first.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def poly_mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _trim(out)


def poly_divmod(a, b, p):
    """Quotient and remainder of ``a / b`` over F_p."""
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _trim(list(a))
    inv_lead = pow(b[-1], p - 2, p) if p > 2 else 1
    quot = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b):
        shift = len(a) - len(b)
        coef = a[-1] * inv_lead % p
        quot[shift] = coef
        for j, y in enumerate(b):
            a[shift + j] = (a[shift + j] - coef * y) % p
        _trim(a)
    return _trim(quot), a


def poly_mod(a, b, p):
    return poly_divmod(a, b, p)[1]


def poly_sub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _trim(out)


def poly_gcd(a, b, p):
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        a, b = b, poly_mod(a, b, p)
    if a:
        inv = pow(a[-1], p - 2, p) if p > 2 else 1
        a = [c * inv % p for c in a]
    return a


def poly_powmod(base, e, mod, p):
    result = [1]
    base = poly_mod(base, mod, p)
    while e:
        if e & 1:
            result = poly_mod(poly_mul(result, base, p), mod, p)
        base = poly_mod(poly_mul(base, base, p), mod, p)
        e >>= 1
    return result


def is_irreducible(f, p) -> bool:
    """Rabin's irreducibility test for a monic polynomial over F_p."""
    f = _trim(list(f))
    m = len(f) - 1
    if m < 1:
        return False
    if m == 1:
        return True
    x = [0, 1]
    # x^(p^m) == x mod f
    xp = x
    for _ in range(m):
        xp = poly_powmod(xp, p, f, p)
    if poly_sub(xp, x, p):
        return False
    for r in factorint(m):
        xp = x
        for _ in range(m // r):
            xp = poly_powmod(xp, p, f, p)
        if len(poly_gcd(poly_sub(xp, x, p), f, p)) != 1:
            return False
    return True


def is_irreducible_trial(f, p) -> bool:
    """Irreducibility by trial division with every monic polynomial of degree <= m/2.

    Exponential in ``m``; kept as an independent check of :func:`is_irreducible`.
    """
    f = _trim(list(f))
    m = len(f) - 1
    for deg in range(1, m // 2 + 1):
        for low in itertools.product(range(p), repeat=deg):
            if not poly_mod(f, list(low) + [1], p):
                return False
    return m >= 1


def _multiplicative_order(x: int, n: int) -> int:
    """Order of x modulo n (gcd(x, n) = 1)."""
    order = 1
    phi = 1
    for r, e in factorint(n).items():
        phi *= (r - 1) * r ** (e - 1)
    order = phi
    for r in factorint(phi):
        while order % r == 0 and pow(x, order // r, n) == 1:
            order //= r
    return order


class GF:
    """The field GF(p^m) with a fixed monic irreducible modulus.

    Use :func:`field_create` rather than instantiating directly so that the
    modulus choice is the canonical one.
    """

    def __init__(self, p: int, m: int, modulus):
        self.p = p
        self.m = m
        self.modulus = tuple(modulus)
        self.order = p ** m
        self._mod_int = sum(1 << i for i, c in enumerate(self.modulus) if c) if p == 2 else None
        self._factors = None

    def __repr__(self):
        return f"GF({self.p}^{self.m})"

    def __reduce__(self):
        return field_create, (self.p, self.m)

    # conversion
    def to_coeffs(self, a: int) -> list[int]:
        out = []
        for _ in range(self.m):
            a, r = divmod(a, self.p)
            out.append(r)
        return out

    def from_coeffs(self, coeffs) -> int:
        value = 0
        for c in reversed(list(coeffs)):
            value = value * self.p + c % self.p
        return value

    def __call__(self, value: int) -> FieldElement:
        if not 0 <= value < self.order:
            raise ValueError(f"{value} is not an element of {self}")
        return FieldElement(value, self)

    def elements(self):
        return [FieldElement(v, self) for v in range(self.order)]

    # integer-level arithmetic
    def add(self, a: int, b: int) -> int:
        if self.p == 2:
            return a ^ b
        if self.m == 1:
            return (a + b) % self.p
        return self.from_coeffs(x + y for x, y in zip(self.to_coeffs(a), self.to_coeffs(b)))

    def neg(self, a: int) -> int:
        if self.p == 2:
            return a
        if self.m == 1:
            return -a % self.p
        return self.from_coeffs(-x for x in self.to_coeffs(a))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def mul(self, a: int, b: int) -> int:
        if self.p == 2:
            mod, top = self._mod_int, 1 << self.m
            out = 0
            while b:
                if b & 1:
                    out ^= a
                b >>= 1
                a <<= 1
                if a & top:
                    a ^= mod
            return out
        if self.m == 1:
            return a * b % self.p
        prod = poly_mul(_trim(self.to_coeffs(a)), _trim(self.to_coeffs(b)), self.p)
        return self.from_coeffs(poly_mod(prod, self.modulus, self.p))

    def pow(self, a: int, e: int) -> int:
        if e < 0:
            a, e = self.inv(a), -e
        result = 1
        while e:
            if e & 1:
                result = self.mul(result, a)
            a = self.mul(a, a)
            e >>= 1
        return result

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError(f"zero has no inverse in {self}")
        return self.pow(a, self.order - 2)

    def mult_order(self, a: int) -> int:
        if a == 0:
            raise ValueError("zero has no multiplicative order")
        if self._factors is None:
            self._factors = factorint(self.order - 1)
        order = self.order - 1
        for r in self._factors:
            while order % r == 0 and self.pow(a, order // r) == 1:
                order //= r
        return order

    def primitive_element(self) -> FieldElement:
        """Smallest element (in integer encoding) of order ``q - 1``."""
        return FieldElement(_primitive_value(self.p, self.m), self)


@lru_cache(maxsize=None)
def _primitive_value(p, m):
    f = field_create(p, m)
    for v in range(1, f.order):
        if f.mult_order(v) == f.order - 1:
            return v
    raise AssertionError("multiplicative group is cyclic")


@lru_cache(maxsize=None)
def field_create(p: int, m: int = 1) -> GF:
    """Return GF(p^m) with the lexicographically smallest irreducible modulus.

    Coefficients are compared lowest degree first. Repeated calls return
    the same object.
    """
    if not isprime(p):
        raise ValueError(f"characteristic {p} is not prime")
    if m < 1 or (p ** m).bit_length() > MAX_ORDER_BITS + (1 if p == 2 else 0):
        raise ValueError(f"extension degree {m} out of range for p={p}")
    for c0 in range(0 if m == 1 else 1, p):
        for rest in itertools.product(range(p), repeat=m - 1):
            f = [c0, *rest, 1]
            if is_irreducible(f, p):
                return GF(p, m, f)
    raise AssertionError(f"no irreducible polynomial of degree {m} over F_{p}")


def prime_power(q: int) -> tuple[int, int]:
    """Split ``q = p^e``; raise if q is not a prime power."""
    f = factorint(q)
    if len(f) != 1:
        raise ValueError(f"{q} is not a prime power")
    ((p, e),) = f.items()
    return p, e


def gf(q: int) -> GF:
    """Field of order ``q`` (a prime power)."""
    return field_create(*prime_power(q))


@dataclass(frozen=True)
class FieldElement:
    value: int
    field: GF

    def _check(self, other):
        if not isinstance(other, FieldElement):
            return FieldElement(int(other) % self.field.p, self.field) if isinstance(other, int) else other
        if other.field is not self.field:
            raise ValueError(f"mixed-field operands: {self.field} and {other.field}")
        return other

    def __add__(self, other):
        other = self._check(other)
        return FieldElement(self.field.add(self.value, other.value), self.field)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._check(other)
        return FieldElement(self.field.sub(self.value, other.value), self.field)

    def __neg__(self):
        return FieldElement(self.field.neg(self.value), self.field)

    def __mul__(self, other):
        other = self._check(other)
        return FieldElement(self.field.mul(self.value, other.value), self.field)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = self._check(other)
        return self * other.inverse()

    def __pow__(self, e: int):
        return FieldElement(self.field.pow(self.value, e), self.field)

    def inverse(self):
        return FieldElement(self.field.inv(self.value), self.field)

    def order(self) -> int:
        return self.field.mult_order(self.value)

    def __int__(self):
        return self.value

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.field}({self.value})"


def arith(a: FieldElement, b: FieldElement | None, op: str) -> FieldElement:
    """Dispatch ``op`` in {add, mul, inv, pow, neg}; for ``pow`` pass an int as ``b``."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "inv":
        return a.inverse()
    if op == "neg":
        return -a
    if op == "pow":
        return a ** int(b)
    raise ValueError(f"unknown operation {op!r}")


def primitive_element(f: GF) -> FieldElement:
    return f.primitive_element()


def nth_root_of_unity(n: int, q: int) -> tuple[GF, FieldElement]:
    """Field F_{q^m}, m = ord_n(q), and a primitive n-th root of unity in it."""
    p, e = prime_power(q)
    if n < 1:
        raise ValueError("n must be positive")
    if n % p == 0:
        raise ValueError(f"gcd({n}, {q}) != 1")
    m = 1 if n == 1 else _multiplicative_order(q % n, n)
    field = field_create(p, e * m)
    g = field.primitive_element()
    return field, g ** ((field.order - 1) // n)


def power_table(f: GF, g: int, count: int | None = None):
    """Array [g^0, g^1, ..., g^(count-1)] for a binary field, as uint64.

    Multiplication by a fixed element is F_2-linear, so after a short scalar
    warm-up whole blocks are advanced at once through byte-indexed lookup
    tables of the map x -> g^B x.
    """
    if f.p != 2:
        raise ValueError("power_table is implemented for binary fields")
    count = f.order - 1 if count is None else count
    block = min(count, 1024)
    out = np.empty(count, dtype=np.uint64)
    x = 1
    for i in range(block):
        out[i] = x
        x = f.mul(x, g)
    step = x  # g^block
    nbytes = (f.m + 7) // 8
    tables = np.zeros((nbytes, 256), dtype=np.uint64)
    for byte in range(nbytes):
        for v in range(256):
            tables[byte, v] = f.mul(v << (8 * byte), step) if v << (8 * byte) < f.order else 0
    pos = block
    while pos < count:
        size = min(block, count - pos)
        prev = out[pos - block:pos - block + size]
        acc = np.zeros(size, dtype=np.uint64)
        for byte in range(nbytes):
            acc ^= tables[byte, (prev >> np.uint64(8 * byte)) & np.uint64(0xFF)]
        out[pos:pos + size] = acc
        pos += size
    return out
