import json

import numpy as np
import pytest

from infocode.code import (
    BudgetExceeded,
    DistanceConfig,
    DistanceResult,
    GeneratorMatrix,
    KnownDistanceEntry,
    LinearCode,
    carlitz_uchiyama_even_bound,
    default_dim_limit,
    det,
    encode,
    equal_up_to_permutation,
    field_tables,
    gray,
    known_distance,
    linearly_independent,
    min_distance,
    naive_min_weight,
    pack_rows,
    puncture,
    qary_gray_digits,
    rank,
    row_space_equal,
    singleton_bound,
    stack,
    unpack_words,
    verify_all_square_submatrices,
)
from infocode.constructions import example1_triple, primitive_pair
from infocode.cyclic import CyclicCodeSpec, generator_matrix_of, multiplier_permutation
from infocode.eccir import subcode
from oracles import leibniz_det


def random_full_rank(rng, k, n, q):
    while True:
        G = GeneratorMatrix(rng.integers(0, q, size=(k, n)), q)
        if rank(G) == k:
            return G


def test_rank_and_row_space():
    I = GeneratorMatrix(np.eye(5, dtype=int), 2)
    assert rank(I) == 5
    assert row_space_equal(I, GeneratorMatrix(np.eye(5, dtype=int)[::-1], 2))
    A = GeneratorMatrix([[1, 1, 0, 1], [0, 1, 1, 1]], 2)
    assert row_space_equal(A, stack([A, A]))
    e = example1_triple()
    assert rank(stack(e.components)) == 30
    with pytest.raises(ValueError):
        row_space_equal(I, GeneratorMatrix(np.eye(5, dtype=int), 3))


def test_encode():
    G = generator_matrix_of(CyclicCodeSpec(31, 2, tuple(range(1, 31))))
    assert not encode(G, np.zeros(30, dtype=int)).any()
    rng = np.random.default_rng(0)
    for _ in range(50):
        assert encode(G, rng.integers(0, 2, 30)).sum() % 2 == 0
    G7 = random_full_rank(rng, 3, 6, 7)
    t = field_tables(7)
    for _ in range(20):
        w1, w2 = rng.integers(0, 7, 3), rng.integers(0, 7, 3)
        assert np.array_equal(t.add[encode(G7, w1), encode(G7, w2)], encode(G7, t.add[w1, w2]))
    with pytest.raises(ValueError):
        encode(G7, [1, 2])


def test_linearly_independent():
    a = generator_matrix_of(CyclicCodeSpec.from_cosets([1], 7))
    assert not linearly_independent([a, a])
    assert linearly_independent(example1_triple().components)
    b = generator_matrix_of(CyclicCodeSpec.from_cosets([1, 3], 31))
    c = generator_matrix_of(CyclicCodeSpec.from_cosets([3, 5], 31))
    assert not linearly_independent([b, c])


def test_gray_sequences():
    for i in range(1, 1024):
        assert bin(gray(i) ^ gray(i - 1)).count("1") == 1
    for q, width in [(3, 4), (4, 3), (5, 2), (7, 2)]:
        seen = set()
        prev = None
        for i in range(q ** width):
            d = tuple(qary_gray_digits(i, q, width))
            seen.add(d)
            if prev is not None:
                assert sum(x != y for x, y in zip(prev, d)) == 1
            prev = d
        assert len(seen) == q ** width


def test_pack_roundtrip():
    rng = np.random.default_rng(3)
    for n in (1, 63, 64, 65, 130):
        rows = rng.integers(0, 2, size=(5, n))
        assert np.array_equal(unpack_words(pack_rows(rows), n), rows)


def test_gray_matches_naive_binary():
    rng = np.random.default_rng(2024)
    for _ in range(50):
        k = int(rng.integers(1, 13))
        n = int(rng.integers(k, 41))
        G = random_full_rank(rng, k, n, 2)
        assert min_distance(G).value == naive_min_weight(G)


def test_gray_low_table_split_matches_naive():
    # forces the Gray walk over the high part with a tiny low table
    from infocode.code import binary_min_weight

    rng = np.random.default_rng(5)
    for _ in range(10):
        G = random_full_rank(rng, 11, 30, 2)
        assert binary_min_weight(G.rows, low_bits=3) == naive_min_weight(G)
        assert binary_min_weight(G.rows, low_bits=3, threads=4) == naive_min_weight(G)


@pytest.mark.parametrize("q", [3, 4, 5, 7, 8])
def test_gray_matches_naive_qary(q):
    from infocode.code import qary_min_weight

    rng = np.random.default_rng(q)
    for _ in range(8):
        k = int(rng.integers(1, 5))
        n = int(rng.integers(k, 12))
        G = random_full_rank(rng, k, n, q)
        want = naive_min_weight(G)
        assert min_distance(G).value == want
        assert qary_min_weight(G.rows, q, table_size=q) == want
        assert qary_min_weight(G.rows, q, table_size=q, threads=3) == want


def test_min_distance_examples():
    e = example1_triple()
    assert min_distance(subcode(e, [1])) == DistanceResult.exact(12, "exhaustive")
    assert min_distance(subcode(e, [2, 3])).value == 6
    for n in (1, 5, 40):
        assert min_distance(GeneratorMatrix(np.ones((1, n), dtype=int))).value == n


def test_threads_are_bit_identical():
    e = example1_triple()
    code = subcode(e, [1, 2])
    one = min_distance(code, DistanceConfig(threads=1))
    many = min_distance(code, DistanceConfig(threads=4))
    assert one == many


def test_bounded_results():
    cfg = DistanceConfig(exhaustive_dim_limit=8)
    e = example1_triple()
    spc = min_distance(subcode(e, [1, 2, 3]), cfg)
    assert spc == DistanceResult.exact(2, "structural-parity")
    pair = min_distance(subcode(primitive_pair(5), [1, 2]), cfg)
    assert pair.method == "carlitz-uchiyama" and pair.lower == 12 and pair.upper >= 12
    rng = np.random.default_rng(1)
    G = random_full_rank(rng, 12, 30, 2)
    r = min_distance(G, cfg)
    assert not r.is_exact or r.method != "exhaustive"
    assert r.lower <= naive_min_weight(G) <= r.upper <= singleton_bound(30, 12)
    with pytest.raises(ValueError):
        DistanceResult("bounded", 5, 3, "sampled")
    with pytest.raises(ValueError):
        DistanceResult("exact", 3, 4, "exhaustive")


def test_product_shortcut():
    inner_spec = CyclicCodeSpec.from_cosets([1], 7)
    inner = LinearCode(generator_matrix_of(inner_spec), cyclic=inner_spec)
    z = np.zeros_like(inner.gen.rows)
    G = GeneratorMatrix(np.block([[inner.gen.rows, inner.gen.rows], [z, inner.gen.rows]]), 2)
    code = LinearCode(G, product_inner=inner)
    r = min_distance(code, DistanceConfig(exhaustive_dim_limit=4))
    assert r == DistanceResult.exact(4, "structural-product")
    assert min_distance(code).value == 4
    with pytest.raises(ValueError):
        LinearCode(GeneratorMatrix(np.hstack([inner.gen.rows, z]), 2), product_inner=inner)


def test_dim_limit_env(monkeypatch):
    monkeypatch.setenv("ECCIR_DIM_LIMIT", "10")
    assert default_dim_limit() == 10
    assert DistanceConfig().exhaustive_dim_limit == 10
    monkeypatch.delenv("ECCIR_DIM_LIMIT")
    assert default_dim_limit() == 28


def test_carlitz_uchiyama_and_singleton():
    assert [carlitz_uchiyama_even_bound(m) for m in range(3, 9)] == [2, 4, 12, 24, 54, 112]
    # independent float check of the definition
    for m in range(3, 30):
        b = carlitz_uchiyama_even_bound(m)
        x = 2 ** (m - 1) - 2 ** (m / 2)
        assert b % 2 == 0 and b >= x and b - 2 < x
    assert singleton_bound(7, 7) == 1
    assert singleton_bound(7, 3) == 5
    assert singleton_bound(31, 30) == 2
    with pytest.raises(ValueError):
        carlitz_uchiyama_even_bound(2)


def test_equal_up_to_permutation():
    e = example1_triple()
    c1, c2, c3 = (subcode(e, [i]).gen for i in (1, 2, 3))
    assert equal_up_to_permutation(c1, c1, np.arange(31))
    assert equal_up_to_permutation(c2, c1, multiplier_permutation(31, 5))
    assert equal_up_to_permutation(c3, c1, multiplier_permutation(31, 7))
    assert not equal_up_to_permutation(c2, c1, np.arange(31))
    with pytest.raises(ValueError):
        equal_up_to_permutation(c1, c2, [0] * 31)


def test_puncture():
    rng = np.random.default_rng(0)
    G = random_full_rank(rng, 3, 8, 5)
    assert puncture(G, []) == G
    A = GeneratorMatrix(np.hstack([np.eye(3, dtype=int), G.rows]), 5)
    assert puncture(A, range(3)) == G
    low = puncture(GeneratorMatrix([[1, 0, 0], [0, 1, 0]], 2), [1])
    assert rank(low) == 1
    with pytest.raises(ValueError):
        puncture(G, [8])


def test_det_matches_leibniz():
    rng = np.random.default_rng(11)
    for q in (2, 3, 4, 5, 7, 8):
        for size in (1, 2, 3, 4):
            for _ in range(10):
                m = rng.integers(0, q, size=(size, size))
                assert det(m, q) == leibniz_det(m.tolist(), q)


def test_square_submatrix_examples():
    assert not verify_all_square_submatrices(GeneratorMatrix([[1, 1], [1, 1]], 2))
    assert not verify_all_square_submatrices(GeneratorMatrix([[1, 2, 0]], 5))
    assert verify_all_square_submatrices(GeneratorMatrix([[1, 1], [1, 2]], 3))
    with pytest.raises(BudgetExceeded):
        verify_all_square_submatrices(GeneratorMatrix(np.ones((10, 40), dtype=int), 2), budget=1000)


def test_generator_matrix_json():
    G = GeneratorMatrix([[1, 2, 3], [0, 4, 1]], 5)
    text = json.dumps(G.to_json())
    assert json.loads(text) == {"q": 5, "rows": [[1, 2, 3], [0, 4, 1]]}
    assert GeneratorMatrix.from_json(text) == G
    with pytest.raises(ValueError):
        GeneratorMatrix([[0, 5]], 5)
    with pytest.raises(ValueError):
        GeneratorMatrix([[0, 1]], 6)
    with pytest.raises(ValueError):
        LinearCode(GeneratorMatrix([[1, 1], [1, 1]], 2))


def test_known_distances():
    assert known_distance(31, 10).low == 12
    e = known_distance(34, 16)
    assert (e.low, e.high) == (8, 9) and str(e) == "8-9"
    assert known_distance(999, 3) is None
    with pytest.raises(ValueError):
        KnownDistanceEntry(10, 5, 7, 7, "bad")
