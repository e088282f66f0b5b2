"""Cyclotomic cosets and the algebra of cyclic codes in R_n = F_q[x]/(x^n - 1).

Only prime alphabets q are supported here; every cyclic construction in the
package is binary.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

import numpy as np
from sympy import isprime

from .code import GeneratorMatrix
from .gf import (
    GF,
    FieldElement,
    field_create,
    nth_root_of_unity,
    poly_divmod,
    poly_mod,
    poly_mul,
    poly_sub,
)


def _check_params(n: int, q: int):
    if n < 1:
        raise ValueError("length must be positive")
    if not isprime(q):
        raise ValueError(f"alphabet size {q} must be prime")
    if gcd(n, q) != 1:
        raise ValueError(f"gcd({n}, {q}) != 1")


@dataclass(frozen=True)
class CyclotomicCoset:
    rep: int
    members: tuple[int, ...]  # orbit order i, qi, q^2 i, ...
    n: int
    q: int

    def __len__(self):
        return len(self.members)

    def __contains__(self, i):
        return i % self.n in self.members

    @property
    def set(self) -> frozenset[int]:
        return frozenset(self.members)


def coset(i: int, n: int, q: int) -> CyclotomicCoset:
    _check_params(n, q)
    i %= n
    orbit = [i]
    j = i * q % n
    while j != i:
        orbit.append(j)
        j = j * q % n
    return CyclotomicCoset(min(orbit), tuple(orbit), n, q)


@lru_cache(maxsize=None)
def coset_partition(n: int, q: int) -> tuple[CyclotomicCoset, ...]:
    _check_params(n, q)
    seen = set()
    out = []
    for i in range(n):
        if i not in seen:
            c = coset(i, n, q)
            seen.update(c.members)
            out.append(c)
    return tuple(out)


def cosets_union(reps, n: int, q: int) -> frozenset[int]:
    """Union of the cosets of the given representatives."""
    out = set()
    for r in reps:
        out.update(coset(r, n, q).members)
    return frozenset(out)


@dataclass(frozen=True)
class CyclicCodeSpec:
    """A cyclic code identified by its length, alphabet and set of nonzeroes."""

    n: int
    q: int
    nonzeroes: tuple[int, ...]

    def __post_init__(self):
        _check_params(self.n, self.q)
        nz = tuple(sorted({int(i) % self.n for i in self.nonzeroes}))
        object.__setattr__(self, "nonzeroes", nz)
        s = set(nz)
        if any(i * self.q % self.n not in s for i in nz):
            raise ValueError("nonzero set is not a union of cyclotomic cosets")

    @classmethod
    def from_cosets(cls, reps, n: int, q: int = 2) -> CyclicCodeSpec:
        return cls(n, q, tuple(cosets_union(reps, n, q)))

    @property
    def k(self) -> int:
        return len(self.nonzeroes)

    @property
    def zeroes(self) -> tuple[int, ...]:
        s = set(self.nonzeroes)
        return tuple(i for i in range(self.n) if i not in s)

    def to_json(self) -> dict:
        return {"n": self.n, "q": self.q, "nonzeroes": list(self.nonzeroes)}

    @classmethod
    def from_json(cls, obj) -> CyclicCodeSpec:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(int(obj["n"]), int(obj["q"]), tuple(obj["nonzeroes"]))


@dataclass(frozen=True)
class RingPolynomial:
    """Element of R_n = F_q[x]/(x^n - 1); ``coeffs`` has length exactly n."""

    coeffs: tuple[int, ...]
    n: int
    q: int

    @classmethod
    def from_coeffs(cls, coeffs, n, q):
        c = [0] * n
        for i, x in enumerate(coeffs):
            c[i % n] = (c[i % n] + int(x)) % q
        return cls(tuple(c), n, q)

    @property
    def degree(self) -> int:
        for i in range(self.n - 1, -1, -1):
            if self.coeffs[i]:
                return i
        return -1

    def __bool__(self):
        return any(self.coeffs)

    def __add__(self, other):
        return RingPolynomial(tuple((a + b) % self.q for a, b in zip(self.coeffs, other.coeffs)), self.n, self.q)

    def __mul__(self, other):
        return RingPolynomial.from_coeffs(poly_mul(list(self.coeffs), list(other.coeffs), self.q), self.n, self.q)

    def shift(self, j: int):
        """Multiplication by x^j (a cyclic shift)."""
        return RingPolynomial(tuple(np.roll(self.coeffs, j).tolist()), self.n, self.q)

    def weight(self) -> int:
        return sum(1 for c in self.coeffs if c)


def _trimmed(coeffs):
    c = list(coeffs)
    while c and c[-1] == 0:
        c.pop()
    return c


@lru_cache(maxsize=None)
def _root(n, q):
    return nth_root_of_unity(n, q)


@lru_cache(maxsize=None)
def minimal_polynomial(i: int, n: int, q: int) -> tuple[int, ...]:
    """Minimal polynomial of alpha^i over F_q, as prod_{j in C_i} (x - alpha^j).

    Coefficients are computed in F_{q^m} and projected to the base field.
    """
    field, alpha = _root(n, q)
    poly = [1]  # over F_{q^m}, low degree first
    for j in coset(i, n, q).members:
        root = field.neg(field.pow(alpha.value, j))
        nxt = [0] * (len(poly) + 1)
        for d, c in enumerate(poly):
            nxt[d + 1] = field.add(nxt[d + 1], c)
            nxt[d] = field.add(nxt[d], field.mul(c, root))
        poly = nxt
    if any(c >= field.p for c in poly):
        raise AssertionError("minimal polynomial has coefficients outside the base field")
    return tuple(poly)


def _xn_minus_1(n, q):
    return [q - 1] + [0] * (n - 1) + [1]


def _product_over_cosets(indices, n, q):
    poly = [1]
    done = set()
    for i in sorted(indices):
        if i in done:
            continue
        c = coset(i, n, q)
        done.update(c.members)
        poly = poly_mul(poly, list(minimal_polynomial(i, n, q)), q)
    return poly


def generator_polynomial(spec: CyclicCodeSpec) -> tuple[int, ...]:
    """g(x) = prod over zeroes of (x - alpha^i); coefficients low degree first."""
    return tuple(_product_over_cosets(spec.zeroes, spec.n, spec.q))


def check_polynomial(spec: CyclicCodeSpec) -> tuple[int, ...]:
    """h(x) = (x^n - 1) / g(x)."""
    quot, rem = poly_divmod(_xn_minus_1(spec.n, spec.q), list(generator_polynomial(spec)), spec.q)
    if rem:
        raise AssertionError("g(x) does not divide x^n - 1")
    return tuple(quot)


def multiplier_permutation(n: int, a: int) -> np.ndarray:
    """perm[i] = a*i mod n: coordinate i of c is moved to position a*i under mu_a."""
    if gcd(a, n) != 1:
        raise ValueError(f"gcd({a}, {n}) != 1")
    return (a * np.arange(n)) % n


def apply_multiplier(word, a: int) -> np.ndarray:
    """mu_a(c)(x) = c(x^a) mod x^n - 1."""
    word = np.asarray(word)
    n = word.shape[-1]
    out = np.zeros_like(word)
    out[..., multiplier_permutation(n, a)] = word
    return out


def multiplier_transform(spec: CyclicCodeSpec, a: int) -> CyclicCodeSpec:
    """Spec of mu_a(C): nonzeroes become a^{-1} T."""
    if gcd(a, spec.n) != 1:
        raise ValueError(f"gcd({a}, {spec.n}) != 1")
    a_inv = pow(a, -1, spec.n)
    return CyclicCodeSpec(spec.n, spec.q, tuple(a_inv * i % spec.n for i in spec.nonzeroes))


def even_weight_subcode(spec: CyclicCodeSpec) -> CyclicCodeSpec:
    if spec.q != 2:
        raise ValueError("even-weight subcode is defined for binary codes")
    if 0 not in spec.nonzeroes:
        raise ValueError("code is already even-weight (0 is not a nonzero)")
    return CyclicCodeSpec(spec.n, 2, tuple(i for i in spec.nonzeroes if i != 0))


def is_irreducible_code(spec: CyclicCodeSpec) -> bool:
    if not spec.nonzeroes:
        return False
    return set(coset(spec.nonzeroes[0], spec.n, spec.q).members) == set(spec.nonzeroes)


def cu_family_degree(spec: CyclicCodeSpec) -> int | None:
    """m if ``spec`` is mu_a of the dual of the length-(2^m - 1) double-error-correcting BCH code.

    That dual has nonzeroes C_{-1} u C_{-3}; multiplier images have a*(C_1 u C_3).
    """
    n = spec.n
    m = (n + 1).bit_length() - 1
    if spec.q != 2 or m < 3 or n != 2 ** m - 1 or spec.k != 2 * m:
        return None
    base = cosets_union((1, 3), n, 2)
    target = set(spec.nonzeroes)
    for a in range(1, n):
        if gcd(a, n) == 1 and {a * i % n for i in base} == target:
            return m
    return None


def _ext_euclid(a, b, p):
    """Return (s, t) with s*a + t*b = gcd (monic) over F_p."""
    r0, r1 = _trimmed(a), _trimmed(b)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        quo, rem = poly_divmod(r0, r1, p)
        r0, r1 = r1, rem
        s0, s1 = s1, poly_sub(s0, poly_mul(quo, s1, p), p)
        t0, t1 = t1, poly_sub(t0, poly_mul(quo, t1, p), p)
    inv = pow(r0[-1], p - 2, p) if p > 2 else 1
    return [c * inv % p for c in s0], [c * inv % p for c in t0], [c * inv % p for c in r0]


def primitive_idempotent(spec: CyclicCodeSpec) -> RingPolynomial:
    """Identity element e of the ideal (g): e = a*g mod (x^n - 1) with a*g + b*h = 1."""
    if not spec.nonzeroes:
        raise ValueError("zero code has no idempotent")
    g = list(generator_polynomial(spec))
    h = list(check_polynomial(spec))
    a, _, d = _ext_euclid(g, h, spec.q)
    if d != [1]:
        raise AssertionError("g and h are not coprime")
    e = poly_mod(poly_mul(a, g, spec.q), _xn_minus_1(spec.n, spec.q), spec.q)
    return RingPolynomial.from_coeffs(e, spec.n, spec.q)


def generator_matrix_of(spec: CyclicCodeSpec) -> GeneratorMatrix:
    """Rows x^j g(x), j = 0..|T|-1."""
    g = generator_polynomial(spec)
    rows = np.zeros((spec.k, spec.n), dtype=np.int64)
    for j in range(spec.k):
        rows[j, j:j + len(g)] = g
    return GeneratorMatrix(rows, spec.q)


def membership(spec: CyclicCodeSpec, word) -> bool:
    """Whether ``word`` (length n) is a codeword: c(x) = 0 mod g(x)."""
    return not poly_mod(_trimmed(int(c) for c in word), list(generator_polynomial(spec)), spec.q)


@dataclass(frozen=True)
class CodeFieldIso:
    """A field isomorphism phi from F_{q^k} onto an irreducible cyclic code.

    ``basis_matrix`` row b is phi(x^b) for the polynomial basis of ``source``;
    phi is F_q-linear, so phi(a) = coeffs(a) . basis_matrix.
    """

    spec: CyclicCodeSpec
    idempotent: RingPolynomial
    theta: RingPolynomial
    source: GF
    basis_matrix: np.ndarray

    def apply(self, a: int) -> np.ndarray:
        coeffs = np.array(self.source.to_coeffs(a), dtype=np.int64)
        return coeffs @ self.basis_matrix % self.spec.q

    def __call__(self, a) -> RingPolynomial:
        if isinstance(a, FieldElement):
            a = a.value
        return RingPolynomial(tuple(int(c) for c in self.apply(a)), self.spec.n, self.spec.q)


def code_field_iso(spec: CyclicCodeSpec) -> CodeFieldIso:
    """Isomorphism F_{q^k} -> C for an irreducible cyclic code with nonzeroes C_s.

    The inverse map is evaluation c -> c(alpha^s), a ring homomorphism from
    R_n onto F_q(alpha^s). Its inverse is the trace expansion
    phi(b)_i = n^{-1} Tr(b alpha^{-s i}), with the trace taken down from the
    degree-k subfield. The source field is identified with that subfield by
    sending the canonical primitive element gamma to a root of its minimal
    polynomial.
    """
    if not is_irreducible_code(spec):
        raise ValueError("code is not irreducible")
    n, q, k = spec.n, spec.q, spec.k
    s = spec.nonzeroes[0]
    big, alpha = _root(n, q)
    source = field_create(q, k)
    embed = _subfield_embedding(source, big)
    alpha_s_inv = big.inv(big.pow(alpha.value, s))
    n_inv = pow(n, -1, q)

    def trace(y):
        total, t = 0, y
        for _ in range(k):
            total = big.add(total, t)
            t = big.pow(t, q)
        return total

    rows = np.zeros((k, n), dtype=np.int64)
    for b in range(k):
        y = embed(q ** b)  # image of the basis element x^b
        for i in range(n):
            t = trace(y)
            if t >= q:
                raise AssertionError("trace left the base field")
            rows[b, i] = t * n_inv % q
            y = big.mul(y, alpha_s_inv)

    def phi(a):
        coeffs = np.array(source.to_coeffs(a), dtype=np.int64)
        return RingPolynomial(tuple(int(c) for c in coeffs @ rows % q), n, q)

    e = phi(1)
    if e != primitive_idempotent(spec):
        raise AssertionError("phi(1) differs from the primitive idempotent")
    return CodeFieldIso(spec, e, phi(source.primitive_element().value), source, rows)


def _subfield_embedding(small: GF, big: GF):
    """F_p-linear field embedding small -> big, returned as a function on ints."""
    if small is big:
        return lambda a: a
    if big.m % small.m:
        raise ValueError(f"{small} is not a subfield of {big}")
    # images of the polynomial basis x^b of ``small`` under x -> root of small.modulus
    g = big.primitive_element().value
    delta = big.pow(g, (big.order - 1) // (small.order - 1))
    mod = small.modulus

    def is_root(r):
        acc = 0
        for c in reversed(mod):
            acc = big.add(big.mul(acc, r), c)
        return acc == 0

    root = next(r for r in (big.pow(delta, t) for t in range(small.order - 1)) if is_root(r))
    basis = [big.pow(root, b) for b in range(small.m)]

    def embed(a: int) -> int:
        out = 0
        for c, v in zip(small.to_coeffs(a), basis):
            for _ in range(c):
                out = big.add(out, v)
        return out

    return embed
