"""Recipes for ECCIRs: punctured GRS (MDSIR), concatenation, Piret pairs and cyclic families."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import gcd

import numpy as np
from sympy import isprime

from .code import (
    DistanceConfig,
    GeneratorMatrix,
    LinearCode,
    binary_min_weight,
    carlitz_uchiyama_even_bound,
    field_tables,
    min_distance,
    pack_rows,
    rref,
    span_table,
)
from .cyclic import (
    CyclicCodeSpec,
    code_field_iso,
    coset,
    cosets_union,
    generator_matrix_of,
    is_irreducible_code,
)
from .eccir import Eccir, all_subsets, eccir_validate
from .gf import gf, power_table


# ---------------------------------------------------------------------------
# MDS codes for informed receivers

def grs_evaluation_points(q: int, count: int) -> list[int]:
    """0, 1, g, g^2, ... for the primitive element g of GF(q)."""
    f = gf(q)
    if count > q:
        raise ValueError(f"GF({q}) has fewer than {count} points")
    g = f.primitive_element().value
    pts = [0]
    x = 1
    while len(pts) < count:
        pts.append(x)
        x = f.mul(x, g)
    return pts


def mdsir_from_grs(q: int, n: int, L: int) -> Eccir:
    """Length-n MDSIR code for L scalar messages from a systematic [n+L, L, n+1] RS code.

    The information coordinates are punctured; component l is row l of the
    parity block.
    """
    if q <= n + L:
        raise ValueError(f"need q > n + L, got q={q}, n + L = {n + L}")
    f = gf(q)
    pts = grs_evaluation_points(q, n + L)
    rs = np.array([[f.pow(x, i) if (x or i) else 1 for x in pts] for i in range(L)], dtype=np.int64)
    sys, pivots = rref(rs, q)
    if pivots != list(range(L)):
        raise AssertionError("leading L columns are not an information set")
    G = sys[:, L:]
    comps = tuple(GeneratorMatrix(G[i:i + 1], q) for i in range(L))
    e = Eccir(comps, {"construction": "grs-mdsir", "params": {"q": q, "n": n, "L": L},
                      "evaluation_points": pts})
    eccir_validate(e, strict=True)
    return e


# ---------------------------------------------------------------------------
# concatenation

@dataclass(frozen=True)
class ConcatConfig:
    """Outer ECCIR over GF(2^k) and a binary inner [n_in, k] generator matrix.

    Outer symbols are expanded on the polynomial basis of GF(2^k).
    """

    outer: Eccir
    inner: GeneratorMatrix

    def __post_init__(self):
        q = self.outer.q
        if q & (q - 1) or q < 2:
            raise ValueError("outer code must be over GF(2^k)")
        if self.inner.q != 2:
            raise ValueError("inner code must be binary")
        if self.inner.k != q.bit_length() - 1:
            raise ValueError(f"inner dimension {self.inner.k} != extension degree {q.bit_length() - 1}")


def expand_symbols(word, q: int) -> np.ndarray:
    """Coefficient bits of each GF(2^k) symbol, concatenated symbol by symbol."""
    k = q.bit_length() - 1
    word = np.asarray(word, dtype=np.int64)
    return ((word[..., :, None] >> np.arange(k)) & 1).reshape(*word.shape[:-1], -1)


def concatenate(cfg: ConcatConfig) -> Eccir:
    outer, inner = cfg.outer, cfg.inner
    q = outer.q
    k = inner.k
    t = field_tables(q)
    comps = []
    for comp in outer.components:
        rows = []
        for orow in comp.rows:
            for b in range(k):
                symbols = t.mul[1 << b, orow]  # basis element x^b times the outer row
                bits = expand_symbols(symbols, q).reshape(outer.n, k)
                rows.append((bits @ inner.rows % 2).reshape(-1))
        comps.append(GeneratorMatrix(np.array(rows), 2))
    e = Eccir(tuple(comps), {"construction": "concat",
                             "params": {"outer": outer.provenance, "inner": inner.to_json()}})
    eccir_validate(e, strict=True)
    return e


def concat_lower_bounds(n_out: int, d_in: int, L: int) -> dict[int, int]:
    """d(C_S-bar) >= d_in (n_out - |S-bar| + 1)."""
    return {s: d_in * (n_out - s + 1) for s in range(1, L + 1)}


# ---------------------------------------------------------------------------
# Piret pairs

@dataclass(frozen=True)
class PiretResult:
    inner: CyclicCodeSpec
    beta: int
    distance: int  # d(C_1)
    eccir: Eccir
    maximizers: tuple[int, ...] = ()


def _half_swap(n_in: int) -> list[int]:
    return list(range(n_in, 2 * n_in)) + list(range(n_in))


def piret_pair(inner: CyclicCodeSpec, beta: int, iso=None) -> Eccir:
    """C_1 = {(phi(a), phi(beta a))}, C_2 = {(phi(beta a), phi(a))}."""
    if not is_irreducible_code(inner):
        raise ValueError("inner code must be irreducible")
    iso = iso or code_field_iso(inner)
    src = iso.source
    if beta in (0, 1) or not 0 <= beta < src.order:
        raise ValueError("beta must lie in GF(2^k) minus {0, 1}")
    basis = [inner.q ** b for b in range(src.m)]
    a_rows = np.array([iso.apply(u) for u in basis])
    b_rows = np.array([iso.apply(src.mul(beta, u)) for u in basis])
    c1 = GeneratorMatrix(np.hstack([a_rows, b_rows]), 2)
    c2 = GeneratorMatrix(np.hstack([b_rows, a_rows]), 2)
    prov = {
        "construction": "piret",
        "params": {"inner": inner.to_json(), "beta": int(beta)},
        "product": {"subset": [1, 2], "inner": inner.to_json()},
        "equivalences": [{"source": [2], "target": [1], "permutation": _half_swap(inner.n)}],
    }
    e = Eccir((c1, c2), prov)
    eccir_validate(e, strict=True)
    return e


def piret_weight_by_log(inner: CyclicCodeSpec, iso=None) -> tuple[np.ndarray, np.ndarray]:
    """(W, powers): W[i] = weight of phi(gamma^i), powers[i] = gamma^i, i < 2^k - 1."""
    iso = iso or code_field_iso(inner)
    src = iso.source
    weights = np.bitwise_count(span_table(pack_rows(iso.basis_matrix))).sum(axis=1)
    powers = power_table(src, src.primitive_element().value)
    return weights[powers.astype(np.int64)], powers


def piret_search(inner: CyclicCodeSpec, verify: bool = True, config: DistanceConfig | None = None) -> PiretResult:
    """Best beta for d(C_1) over all beta in GF(2^k) minus {0, 1}.

    With a = gamma^i and beta = gamma^j, d(C_1) = min_i W[i] + W[i + j]. A
    cyclic shift of phi(a) is phi(a * zeta) for an element zeta of order
    n / gcd(n, s), so W is periodic and only j modulo that period matters.
    The winner is re-checked by Gray-code enumeration of C_1 when ``verify``.
    """
    if inner.q != 2 or not is_irreducible_code(inner):
        raise ValueError("inner code must be a binary irreducible cyclic code")
    iso = code_field_iso(inner)
    W, powers = piret_weight_by_log(inner, iso)
    N = W.size
    h = inner.n // gcd(inner.n, inner.nonzeroes[0])
    period = N // h
    Wp = W[:period]
    if not np.array_equal(W.reshape(h, period), np.broadcast_to(Wp, (h, period))):
        raise AssertionError("weight table is not periodic under cyclic shifts")
    by_residue = np.empty(period, dtype=np.int64)
    for r in range(period):
        by_residue[r] = (Wp + np.roll(Wp, -r)).min()
    j = np.arange(1, N)
    d_all = by_residue[j % period]
    best = int(d_all.max())
    maximizers = tuple(sorted(int(b) for b in powers[j[d_all == best]]))
    beta = maximizers[0]
    e = piret_pair(inner, beta, iso)
    if verify:
        d = min_distance(LinearCode(e.components[0]), config).value
        if d != best:
            raise AssertionError(f"weight-table distance {best} != enumerated distance {d}")
    return PiretResult(inner, beta, best, e, maximizers)


def piret_distance_direct(inner: CyclicCodeSpec, beta: int) -> int:
    """d(C_1) for one beta by enumerating its generator matrix."""
    e = piret_pair(inner, beta)
    return binary_min_weight(e.components[0].rows)


# ---------------------------------------------------------------------------
# cyclic families

def _multiplier_equivalences(parts, n) -> list[dict]:
    """mu_a(C_src) = C_tgt whenever a^{-1} T_src = T_tgt, for subsets of equal size."""
    L = len(parts)
    subsets = all_subsets(L)
    union = {s: frozenset().union(*(parts[i - 1] for i in s)) for s in subsets}
    units = [a for a in range(2, n) if gcd(a, n) == 1]
    out = []
    covered = set()
    for size in range(1, L + 1):
        group = [s for s in subsets if len(s) == size]
        for tgt in group:
            if tgt in covered:
                continue
            for src in group:
                if src >= tgt or src in covered:
                    continue
                a = next((a for a in units
                          if frozenset(pow(a, -1, n) * i % n for i in union[src]) == union[tgt]), None)
                if a is not None:
                    out.append({"source": list(src), "target": list(tgt), "multiplier": a})
                    covered.add(tgt)
                    break
    return out


def coset_partition_eccir(n: int, q: int, parts, construction: str = "coset-partition",
                          params: dict | None = None) -> Eccir:
    """Cyclic components with pairwise disjoint nonzero sets ``parts``."""
    specs = [CyclicCodeSpec(n, q, tuple(p)) for p in parts]
    sets = [set(s.nonzeroes) for s in specs]
    for (i, a), (j, b) in combinations(enumerate(sets, 1), 2):
        if a & b:
            raise ValueError(f"nonzero sets of components {i} and {j} intersect")
    if len({s.k for s in specs}) != 1:
        raise ValueError("components must share the same dimension")
    comps = tuple(generator_matrix_of(s) for s in specs)
    prov = {
        "construction": construction,
        "params": params if params is not None else {"n": n, "q": q},
        "nonzeroes": [list(s.nonzeroes) for s in specs],
        "equivalences": _multiplier_equivalences([frozenset(s) for s in sets], n),
    }
    e = Eccir(comps, prov)
    eccir_validate(e, strict=True)
    return e


def example1_triple() -> Eccir:
    """n = 31 triple with nonzeroes C1 u C3, C5 u C15, C7 u C11."""
    parts = [cosets_union(r, 31, 2) for r in ((1, 3), (5, 15), (7, 11))]
    return coset_partition_eccir(31, 2, parts, "example1", {"n": 31, "q": 2, "cosets": [[1, 3], [5, 15], [7, 11]]})


def primitive_pair(m: int) -> Eccir:
    """Irreducible codes with nonzeroes C_1 and C_3 at length 2^m - 1."""
    if m < 3:
        raise ValueError("need m >= 3")
    n = 2 ** m - 1
    c1, c3 = coset(1, n, 2), coset(3, n, 2)
    if len(c1) != m or len(c3) != m:
        raise AssertionError("cosets C_1 and C_3 must both have size m")
    params = {"m": m, "n": n, "simplex_component": 1,
              "mu3_equivalent": gcd(3, n) == 1,
              "sum_lower_bound": carlitz_uchiyama_even_bound(m)}
    return coset_partition_eccir(n, 2, [c1.set, c3.set], "primitive-pair", params)


def quadratic_residue_pair(n: int, verify_distance: bool = False,
                           config: DistanceConfig | None = None) -> Eccir:
    """QR codes with nonzeroes the residues and non-residues mod a prime n = +-1 mod 8."""
    if not isprime(n) or n % 8 not in (1, 7):
        raise ValueError(f"n = {n} must be a prime congruent to +-1 mod 8")
    residues = frozenset(a * a % n for a in range(1, n))
    if 2 not in residues:
        raise AssertionError("2 must be a quadratic residue")
    non = frozenset(range(1, n)) - residues
    e = coset_partition_eccir(n, 2, [residues, non], "qr", {"n": n})
    if verify_distance:
        d1 = min_distance(LinearCode(e.components[0]), config)
        d2 = min_distance(LinearCode(e.components[1]), config)
        if not (d1.is_exact and d1 == d2 and d1.value % 2 == 0 and d1.value ** 2 >= n):
            raise AssertionError(f"QR distance check failed: {d1}, {d2}")
    return e


def cubic_residues(n: int) -> frozenset[int]:
    return frozenset(pow(a, 3, n) for a in range(1, n))


def cubic_residue_triple(n: int) -> Eccir:
    """Components with nonzeroes T1 = cubes, T2 = b^{-1} T1, T3 = b^{-2} T1 (T1 = b T2 = b^2 T3).

    b is the smallest non-cube mod n.
    """
    if not isprime(n) or (n - 1) % 3:
        raise ValueError(f"n = {n} must be a prime with 3 | n - 1")
    t1 = cubic_residues(n)
    if 2 not in t1:
        raise ValueError(f"2 is not a cubic residue mod {n}")
    b = next(a for a in range(2, n) if a not in t1)
    b_inv = pow(b, -1, n)
    t2 = frozenset(b_inv * i % n for i in t1)
    t3 = frozenset(b_inv * i % n for i in t2)
    return coset_partition_eccir(n, 2, [t1, t2, t3], "cr", {"n": n, "b": b})


def cubic_residue_pair(n: int) -> Eccir:
    """The L = 2 sub-collection {C_1, C_2} of the cubic residue triple."""
    return cubic_residue_triple(n).select([1, 2])
