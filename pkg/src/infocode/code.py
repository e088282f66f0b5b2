"""Linear codes over F_q: rank, encoding, permutations and minimum distance.

Matrices hold field elements in the integer encoding of :mod:`infocode.gf`.
Binary codewords are packed into ``uint64`` words for the distance engine.
"""

from __future__ import annotations

import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

import numpy as np

from .gf import gf

DEFAULT_DIM_LIMIT = 28


# ---------------------------------------------------------------------------
# field tables

@dataclass(frozen=True)
class FieldTables:
    q: int
    add: np.ndarray
    mul: np.ndarray
    neg: np.ndarray
    inv: np.ndarray  # inv[0] is unused

    def sub(self, a, b):
        return self.add[a, self.neg[b]]


@lru_cache(maxsize=None)
def field_tables(q: int) -> FieldTables:
    if q > 1 << 12:
        raise ValueError(f"matrix arithmetic over GF({q}) is not supported")
    f = gf(q)
    idx = np.arange(q)
    if f.p == 2:
        add = idx[:, None] ^ idx[None, :]
    elif f.m == 1:
        add = (idx[:, None] + idx[None, :]) % q
    else:
        add = np.array([[f.add(a, b) for b in range(q)] for a in range(q)])
    if f.m == 1:
        mul = (idx[:, None] * idx[None, :]) % q
    else:
        mul = np.array([[f.mul(a, b) for b in range(q)] for a in range(q)])
    neg = np.array([f.neg(a) for a in range(q)])
    inv = np.array([0] + [f.inv(a) for a in range(1, q)])
    for t in (add, mul, neg, inv):
        t.setflags(write=False)
    return FieldTables(q, add, mul, neg, inv)


# ---------------------------------------------------------------------------
# generator matrices

class GeneratorMatrix:
    """A k x n matrix over F_q.

    Full rank is not enforced here (puncturing can drop it); :class:`LinearCode`
    and the ECCIR layer check it.
    """

    __slots__ = ("rows", "q")

    def __init__(self, rows, q: int = 2):
        arr = np.array(rows, dtype=np.int64)
        if arr.ndim == 1:
            arr = arr.reshape(1, -1) if arr.size else arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ValueError("generator matrix must be two-dimensional")
        if arr.size and (arr.min() < 0 or arr.max() >= q):
            raise ValueError(f"entries must lie in [0, {q})")
        field_tables(q)  # validates q
        arr.setflags(write=False)
        self.rows = arr
        self.q = q

    @property
    def k(self) -> int:
        return self.rows.shape[0]

    @property
    def n(self) -> int:
        return self.rows.shape[1]

    def __repr__(self):
        return f"GeneratorMatrix(k={self.k}, n={self.n}, q={self.q})"

    def __eq__(self, other):
        return (isinstance(other, GeneratorMatrix) and self.q == other.q
                and self.rows.shape == other.rows.shape and np.array_equal(self.rows, other.rows))

    def __hash__(self):
        return hash((self.q, self.rows.shape, self.rows.tobytes()))

    def to_json(self) -> dict:
        return {"q": self.q, "rows": self.rows.tolist()}

    @classmethod
    def from_json(cls, obj) -> GeneratorMatrix:
        if isinstance(obj, str):
            obj = json.loads(obj)
        return cls(obj["rows"], int(obj["q"]))


def stack(mats) -> GeneratorMatrix:
    mats = list(mats)
    qs = {m.q for m in mats}
    if len(qs) != 1:
        raise ValueError("matrices over different fields")
    ns = {m.n for m in mats}
    if len(ns) != 1:
        raise ValueError("matrices of different lengths")
    return GeneratorMatrix(np.vstack([m.rows for m in mats]), qs.pop())


def rref(rows: np.ndarray, q: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over F_q and the pivot columns."""
    t = field_tables(q)
    a = np.array(rows, dtype=np.int64)
    nrows, ncols = a.shape
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        piv = r + nz[0]
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        if a[r, c] != 1:
            a[r] = t.mul[t.inv[a[r, c]], a[r]]
        others = np.nonzero(a[:, c])[0]
        for i in others:
            if i != r:
                a[i] = t.sub(a[i], t.mul[a[i, c], a[r]])
        pivots.append(c)
        r += 1
    return a[:r], pivots


def _as_rows(G):
    return (G.rows, G.q) if isinstance(G, GeneratorMatrix) else (np.asarray(G), 2)


def rank(G: GeneratorMatrix) -> int:
    rows, q = _as_rows(G)
    if rows.size == 0:
        return 0
    return len(rref(rows, q)[1])


def row_space_equal(G1: GeneratorMatrix, G2: GeneratorMatrix) -> bool:
    if G1.q != G2.q:
        raise ValueError("matrices over different fields")
    if G1.n != G2.n:
        return False
    r1, r2 = rank(G1), rank(G2)
    return r1 == r2 == rank(stack([G1, G2]))


def encode(G: GeneratorMatrix, w) -> np.ndarray:
    """c = w G over F_q."""
    w = np.asarray(w, dtype=np.int64)
    if w.shape != (G.k,):
        raise ValueError(f"message length {w.size} != k = {G.k}")
    t = field_tables(G.q)
    if G.q == 2:
        return (w @ G.rows) % 2
    c = np.zeros(G.n, dtype=np.int64)
    for wi, row in zip(w, G.rows):
        if wi:
            c = t.add[c, t.mul[wi, row]]
    return c


def linearly_independent(mats) -> bool:
    mats = list(mats)
    if len({(m.n, m.q) for m in mats}) > 1:
        raise ValueError("collection mixes lengths or fields")
    return rank(stack(mats)) == sum(rank(m) for m in mats)


def apply_permutation(G: GeneratorMatrix, perm) -> GeneratorMatrix:
    """Move coordinate i to position perm[i]."""
    perm = np.asarray(perm)
    if sorted(perm.tolist()) != list(range(G.n)):
        raise ValueError("perm is not a bijection on the coordinates")
    out = np.empty_like(G.rows)
    out[:, perm] = G.rows
    return GeneratorMatrix(out, G.q)


def equal_up_to_permutation(G1: GeneratorMatrix, G2: GeneratorMatrix, perm) -> bool:
    if (G1.n, G1.q) != (G2.n, G2.q):
        raise ValueError("codes differ in length or alphabet")
    return row_space_equal(apply_permutation(G1, perm), G2)


def puncture(G: GeneratorMatrix, coords) -> GeneratorMatrix:
    coords = sorted(set(int(c) for c in coords))
    if coords and (coords[0] < 0 or coords[-1] >= G.n):
        raise ValueError("puncture coordinates out of range")
    keep = [i for i in range(G.n) if i not in set(coords)]
    return GeneratorMatrix(G.rows[:, keep], G.q)


def singleton_bound(n: int, k: int) -> int:
    if not 1 <= k <= n:
        raise ValueError("need 1 <= k <= n")
    return n - k + 1


def carlitz_uchiyama_even_bound(m: int) -> int:
    """Smallest even integer >= 2^(m-1) - 2^(m/2)."""
    if m < 3:
        raise ValueError("bound is stated for m >= 3")
    # 2^(m/2) is irrational for odd m; compare squares instead of floats
    base = 2 ** (m - 1)
    if m % 2 == 0:
        lo = base - 2 ** (m // 2)
    else:
        r = math.isqrt(2 ** m)  # floor(2^(m/2)), never exact for odd m
        lo = base - r  # ceil(base - 2^(m/2)) = base - floor(2^(m/2))
    return lo + (lo % 2)


# ---------------------------------------------------------------------------
# codes and distance results

@dataclass(frozen=True)
class DistanceResult:
    kind: str  # "exact" | "bounded"
    lower: int
    upper: int
    method: str

    def __post_init__(self):
        if self.lower > self.upper:
            raise ValueError("lower bound exceeds upper bound")
        if self.kind == "exact" and self.lower != self.upper:
            raise ValueError("exact result must have equal bounds")

    @classmethod
    def exact(cls, value: int, method: str) -> DistanceResult:
        return cls("exact", value, value, method)

    @property
    def is_exact(self) -> bool:
        return self.kind == "exact"

    @property
    def value(self) -> int | None:
        return self.lower if self.is_exact else None

    def __str__(self):
        return str(self.lower) if self.is_exact else f"{self.lower}..{self.upper}"

    def to_json(self) -> dict:
        if self.is_exact:
            return {"kind": "exact", "value": self.lower, "method": self.method}
        return {"kind": "bounded", "lower": self.lower, "upper": self.upper, "method": self.method}


@dataclass(frozen=True)
class KnownDistanceEntry:
    n: int
    k: int
    low: int
    high: int
    source: str

    def __post_init__(self):
        if not self.low <= self.high <= self.n - self.k + 1:
            raise ValueError(f"inconsistent d* entry for [{self.n},{self.k}]")

    def __str__(self):
        return str(self.low) if self.low == self.high else f"{self.low}-{self.high}"


def _known(rows, source):
    out = {}
    for n, k, d in rows:
        lo, hi = (d, d) if isinstance(d, int) else d
        out[(n, k)] = KnownDistanceEntry(n, k, lo, hi, source)
    return out


# best binary [n, k] distances quoted alongside the constructions
KNOWN_DISTANCES: dict[tuple[int, int], KnownDistanceEntry] = {
    **_known([(31, 10, 12), (31, 20, 6), (31, 30, 2)], "example-1"),
    **_known([(21, 3, 12), (21, 6, 8)], "concatenation-example"),
    **_known([(7, 3, 4), (7, 6, 2), (17, 8, 6), (17, 16, 2), (23, 11, 8), (23, 22, 2),
              (31, 15, 8), (41, 20, 10), (41, 40, 2), (47, 23, 12), (47, 46, 2)], "qr-list"),
    **_known([(18, 6, 6), (18, 12, 4), (34, 8, 14), (34, 16, (8, 9)), (42, 6, 20),
              (42, 12, (15, 16)), (78, 12, (32, 33)), (78, 24, (22, 26)), (82, 20, (26, 30)),
              (82, 40, (16, 20)), (110, 20, (40, 44)), (110, 40, (24, 32)),
              (130, 12, (56, 60)), (130, 24, (45, 51))], "table-1"),
    **_known([(15, 4, 8), (15, 8, 4), (31, 5, 16), (63, 6, 32), (63, 12, (24, 26)),
              (127, 7, 64), (127, 14, 56), (255, 8, 128), (255, 16, (112, 120))], "table-2"),
    **_known([(43, 14, 14), (43, 28, (6, 7)), (109, 36, (26, 34)), (109, 72, (12, 16)),
              (127, 42, (32, 40)), (127, 84, (14, 18))], "table-3"),
}


def known_distance(n: int, k: int) -> KnownDistanceEntry | None:
    return KNOWN_DISTANCES.get((n, k))


@dataclass(frozen=True, eq=False)
class LinearCode:
    """A full-rank generator matrix plus optional structural facts.

    ``cyclic``: the cyclic spec whose code equals the row space.
    ``product_inner``: C = {(a, b) : a, b in inner}, halves of length inner.n.
    Both are verified on construction.
    """

    gen: GeneratorMatrix
    cyclic: object = None
    product_inner: LinearCode | None = None
    _rank: int = field(init=False, repr=False, default=0)

    def __post_init__(self):
        r = rank(self.gen)
        if r != self.gen.k:
            raise ValueError(f"generator matrix has rank {r} < k = {self.gen.k}")
        object.__setattr__(self, "_rank", r)
        if self.cyclic is not None:
            from .cyclic import generator_matrix_of

            if not row_space_equal(self.gen, generator_matrix_of(self.cyclic)):
                raise ValueError("row space differs from the stated cyclic code")
        if self.product_inner is not None:
            inner = self.product_inner.gen
            z = np.zeros_like(inner.rows)
            blocks = GeneratorMatrix(np.block([[inner.rows, z], [z, inner.rows]]), inner.q)
            if not row_space_equal(self.gen, blocks):
                raise ValueError("row space differs from the stated product code")

    @property
    def n(self) -> int:
        return self.gen.n

    @property
    def k(self) -> int:
        return self.gen.k

    @property
    def q(self) -> int:
        return self.gen.q

    def __repr__(self):
        return f"LinearCode([{self.n},{self.k}] over GF({self.q}))"


def as_code(c) -> LinearCode:
    return c if isinstance(c, LinearCode) else LinearCode(c)


# ---------------------------------------------------------------------------
# enumeration engine

def default_dim_limit() -> int:
    return int(os.environ.get("ECCIR_DIM_LIMIT", DEFAULT_DIM_LIMIT))


@dataclass(frozen=True)
class DistanceConfig:
    exhaustive_dim_limit: int = field(default_factory=default_dim_limit)
    sample_trials: int = 4096
    seed: int = 0
    threads: int = 1


def pack_rows(rows: np.ndarray) -> np.ndarray:
    """Pack a binary (k, n) array into (k, ceil(n/64)) uint64 words, bit j of word w = column 64w + j."""
    rows = np.asarray(rows, dtype=np.uint8)
    k, n = rows.shape
    words = (n + 63) // 64
    padded = np.zeros((k, words * 64), dtype=np.uint8)
    padded[:, :n] = rows
    return np.packbits(padded.reshape(k, words, 64), axis=2, bitorder="little").view(np.uint64).reshape(k, words)


def unpack_words(packed: np.ndarray, n: int) -> np.ndarray:
    packed = np.ascontiguousarray(packed, dtype=np.uint64)
    bits = np.unpackbits(packed.view(np.uint8).reshape(*packed.shape[:-1], -1), axis=-1, bitorder="little")
    return bits[..., :n]


def span_table(packed_rows: np.ndarray) -> np.ndarray:
    """All 2^k combinations of packed binary rows; entry m is sum of rows whose bit is set in m.

    Built by doubling, so each new entry costs one row addition.
    """
    k, words = packed_rows.shape
    table = np.zeros((1 << k, words), dtype=np.uint64)
    for j in range(k):
        size = 1 << j
        np.bitwise_xor(table[:size], packed_rows[j], out=table[size:2 * size])
    return table


def _weights(packed: np.ndarray) -> np.ndarray:
    return np.bitwise_count(packed).sum(axis=-1, dtype=np.int64)


def gray(i: int) -> int:
    return i ^ (i >> 1)


def _binary_segment(table, high_rows, start, stop):
    """Minimum weight over codewords table ^ offset(g) for Gray indices g in [start, stop)."""
    words = table.shape[1]
    offset = np.zeros(words, dtype=np.uint64)
    g = gray(start)
    for j in range(high_rows.shape[0]):
        if g >> j & 1:
            offset ^= high_rows[j]
    best = None
    buf = np.empty_like(table)
    for i in range(start, stop):
        if i > start:
            j = (i & -i).bit_length() - 1
            offset ^= high_rows[j]
        np.bitwise_xor(table, offset, out=buf)
        w = _weights(buf)
        if i == 0:
            w = w[1:]
        if w.size:
            m = int(w.min())
            best = m if best is None else min(best, m)
    return best


def _segments(total, parts):
    parts = max(1, min(parts, total))
    bounds = [total * p // parts for p in range(parts + 1)]
    return [(a, b) for a, b in zip(bounds, bounds[1:]) if b > a]


def binary_min_weight(rows: np.ndarray, low_bits: int = 20, threads: int = 1) -> int:
    """Exhaustive minimum nonzero weight of the binary row space of ``rows`` (assumed full rank).

    The low part of the message space is tabulated; the high part is walked in
    reflected Gray order so each step adds a single row to the running offset.
    """
    packed = pack_rows(rows)
    k = packed.shape[0]
    kl = min(k, low_bits)
    table = span_table(packed[:kl])
    high = packed[kl:]
    total = 1 << (k - kl)
    segs = _segments(total, threads)
    if len(segs) == 1:
        results = [_binary_segment(table, high, *segs[0])]
    else:
        with ThreadPoolExecutor(len(segs)) as ex:
            results = list(ex.map(lambda s: _binary_segment(table, high, *s), segs))
    return min(r for r in results if r is not None)


def qary_gray_digits(i: int, q: int, width: int) -> list[int]:
    """Digits (least significant first) of the i-th word of the reflected q-ary Gray code."""
    out = []
    for j in range(width):
        d = (i // q ** j) % q
        block = i // q ** (j + 1)
        out.append(q - 1 - d if block % 2 else d)
    return out


def qary_span_table(rows: np.ndarray, q: int) -> np.ndarray:
    """All q^k combinations sum_j m_j row_j, message digit j = (index // q^j) % q."""
    t = field_tables(q)
    table = np.zeros((1, rows.shape[1]), dtype=np.int64)
    for row in rows:
        scaled = t.mul[np.arange(q)[:, None], row[None, :]]  # (q, n)
        table = t.add[scaled[:, None, :], table[None, :, :]].reshape(-1, rows.shape[1])
    return table


def _qary_segment(table, high_rows, q, start, stop):
    t = field_tables(q)
    kh = high_rows.shape[0]
    digits = qary_gray_digits(start, q, kh)
    offset = np.zeros(table.shape[1], dtype=np.int64)
    for d, row in zip(digits, high_rows):
        offset = t.add[offset, t.mul[d, row]]
    best = None
    for i in range(start, stop):
        if i > start:
            j, x = 0, i
            while x % q == 0:
                x //= q
                j += 1
            new = qary_gray_digits(i, q, kh)[j]
            delta = t.sub(new, digits[j])
            offset = t.add[offset, t.mul[delta, high_rows[j]]]
            digits[j] = new
        w = np.count_nonzero(t.add[table, offset[None, :]], axis=1)
        if i == 0:
            w = w[1:]
        if w.size:
            m = int(w.min())
            best = m if best is None else min(best, m)
    return best


def qary_min_weight(rows: np.ndarray, q: int, table_size: int = 1 << 16, threads: int = 1) -> int:
    rows = np.asarray(rows, dtype=np.int64)
    k = rows.shape[0]
    kl = min(k, max(1, int(math.log(table_size, q))))
    table = qary_span_table(rows[:kl], q)
    high = rows[kl:]
    total = q ** (k - kl)
    segs = _segments(total, threads)
    if len(segs) == 1:
        results = [_qary_segment(table, high, q, *segs[0])]
    else:
        with ThreadPoolExecutor(len(segs)) as ex:
            results = list(ex.map(lambda s: _qary_segment(table, high, q, *s), segs))
    return min(r for r in results if r is not None)


def naive_min_weight(G: GeneratorMatrix) -> int:
    """Re-encode every nonzero message independently. Slow; used as an oracle."""
    best = G.n + 1
    for m in range(1, G.q ** G.k):
        w = [(m // G.q ** j) % G.q for j in range(G.k)]
        best = min(best, int(np.count_nonzero(encode(G, w))))
    return best


def _sampled_upper(code: LinearCode, config: DistanceConfig) -> int:
    rows, q = code.gen.rows, code.q
    reduced, _ = rref(rows, q)
    best = int(np.count_nonzero(reduced, axis=1).min())
    rng = np.random.default_rng(config.seed)
    if config.sample_trials:
        msgs = rng.integers(0, q, size=(config.sample_trials, code.k))
        if q == 2:
            words = msgs @ rows % 2
        else:
            t = field_tables(q)
            words = np.zeros((config.sample_trials, code.n), dtype=np.int64)
            for j in range(code.k):
                words = t.add[words, t.mul[msgs[:, j:j + 1], rows[j][None, :]]]
        w = np.count_nonzero(words, axis=1)
        w = w[w > 0]
        if w.size:
            best = min(best, int(w.min()))
    return best


def min_distance(code, config: DistanceConfig | None = None) -> DistanceResult:
    """Minimum Hamming distance, exact when the code is small enough, else an honest interval."""
    code = as_code(code)
    config = config or DistanceConfig()
    n, k, q = code.n, code.k, code.q
    if k == 0:
        raise ValueError("zero-dimensional code has no minimum distance")
    if k * math.log2(q) <= config.exhaustive_dim_limit + 1e-9:
        if q == 2:
            d = binary_min_weight(code.gen.rows, threads=config.threads)
        else:
            d = qary_min_weight(code.gen.rows, q, threads=config.threads)
        return DistanceResult.exact(d, "exhaustive")

    if code.cyclic is not None and q == 2 and tuple(code.cyclic.zeroes) == (0,):
        return DistanceResult.exact(2, "structural-parity")
    if code.product_inner is not None:
        inner = min_distance(code.product_inner, config)
        return DistanceResult(inner.kind, inner.lower, inner.upper, "structural-product")

    lower, method = 1, "sampled"
    if q == 2 and not np.any(code.gen.rows.sum(axis=1) % 2):
        lower = 2
    if code.cyclic is not None:
        from .cyclic import cu_family_degree

        m = cu_family_degree(code.cyclic)
        if m is not None:
            lower, method = max(lower, carlitz_uchiyama_even_bound(m)), "carlitz-uchiyama"
    upper = min(_sampled_upper(code, config), singleton_bound(n, k))
    if upper == lower:
        return DistanceResult.exact(lower, method)
    return DistanceResult("bounded", lower, upper, method)


# ---------------------------------------------------------------------------
# square submatrices

def det(m: np.ndarray, q: int) -> int:
    """Determinant over F_q by elimination."""
    t = field_tables(q)
    a = np.array(m, dtype=np.int64)
    size = a.shape[0]
    d = 1
    for c in range(size):
        nz = np.nonzero(a[c:, c])[0]
        if nz.size == 0:
            return 0
        piv = c + nz[0]
        if piv != c:
            a[[c, piv]] = a[[piv, c]]
            d = int(t.neg[d])
        d = int(t.mul[d, a[c, c]])
        inv = t.inv[a[c, c]]
        for i in range(c + 1, size):
            if a[i, c]:
                a[i] = t.sub(a[i], t.mul[t.mul[a[i, c], inv], a[c]])
    return d


class BudgetExceeded(ValueError):
    pass


def count_square_submatrices(L: int, n: int) -> int:
    return sum(math.comb(L, s) * math.comb(n, s) for s in range(1, min(L, n) + 1))


def verify_all_square_submatrices(G: GeneratorMatrix, budget: int = 2_000_000) -> bool:
    """True iff every square submatrix of G is nonsingular."""
    L, n = G.rows.shape
    if count_square_submatrices(L, n) > budget:
        raise BudgetExceeded(f"{count_square_submatrices(L, n)} determinants exceed budget {budget}")
    for s in range(1, min(L, n) + 1):
        for rs in combinations(range(L), s):
            sub_rows = G.rows[list(rs)]
            for cs in combinations(range(n), s):
                if det(sub_rows[:, list(cs)], G.q) == 0:
                    return False
    return True
