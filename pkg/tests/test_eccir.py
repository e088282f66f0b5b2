import numpy as np
import pytest

from infocode.code import DistanceConfig, GeneratorMatrix, rank
from infocode.constructions import coset_partition_eccir, cubic_residue_triple, example1_triple, mdsir_from_grs
from infocode.cyclic import cosets_union
from infocode.eccir import (
    Eccir,
    InvalidEccir,
    UndecidableError,
    all_subsets,
    dbt_baseline_split,
    dbt_guaranteed_bounds,
    distance_profile,
    eccir_validate,
    group_messages,
    is_mdsir,
    subcode,
)
from oracles import all_minors_nonzero, weight_oracle


def test_all_subsets_order():
    assert all_subsets(3) == [(1,), (2,), (3,), (1, 2), (1, 3), (2, 3), (1, 2, 3)]
    assert len(all_subsets(5)) == 31


def test_validate_example1_and_duplicates():
    e = example1_triple()
    r = eccir_validate(e)
    assert r.valid and r.independent and r.nonzeroes_disjoint
    dup = Eccir((e.components[0], e.components[0]))
    r = eccir_validate(dup)
    assert not r.valid and r.offending_subset == (1, 2)
    with pytest.raises(InvalidEccir):
        eccir_validate(dup, strict=True)


def test_validate_overlapping_cyclic_pair():
    # C_1 u C_3 and C_3 u C_5 share the coset C_3: the coset test and the rank test agree
    with pytest.raises(ValueError):
        coset_partition_eccir(31, 2, [sorted(cosets_union([1, 3], 31, 2)), sorted(cosets_union([3, 5], 31, 2))])
    from infocode.cyclic import CyclicCodeSpec, generator_matrix_of

    a = CyclicCodeSpec.from_cosets([1, 3], 31)
    b = CyclicCodeSpec.from_cosets([3, 5], 31)
    e = Eccir((generator_matrix_of(a), generator_matrix_of(b)),
              {"nonzeroes": [list(a.nonzeroes), list(b.nonzeroes)]})
    r = eccir_validate(e)
    assert not r.independent and r.nonzeroes_disjoint is False


def test_shape_mismatch():
    with pytest.raises(InvalidEccir):
        Eccir((GeneratorMatrix([[1, 0]], 2), GeneratorMatrix([[1, 0, 1]], 2)))
    with pytest.raises(InvalidEccir):
        Eccir(())


def test_json_roundtrip_is_byte_identical():
    for e in (example1_triple(), mdsir_from_grs(11, 6, 4), cubic_residue_triple(31)):
        text = e.dumps()
        again = Eccir.from_json(text)
        assert again.dumps() == text
        assert all(a == b for a, b in zip(again.components, e.components))
    bad = example1_triple().to_json()
    bad["k"] = 9
    with pytest.raises(InvalidEccir):
        Eccir.from_json(bad)


def test_subcode():
    e = example1_triple()
    assert subcode(e, [1, 2, 3]).k == 30
    assert subcode(e, [2, 3]).k == 20
    assert subcode(e, [2]).gen == e.components[1]
    with pytest.raises(ValueError):
        subcode(e, [])
    with pytest.raises(ValueError):
        subcode(e, [4])


def test_example1_profile():
    p = distance_profile(example1_triple())
    assert [x.distance.value for x in p.entries] == [12, 12, 12, 6, 6, 6, 2]
    assert [x.singleton for x in p.entries] == [22] * 3 + [12] * 3 + [2]
    assert all(x.d_star.low == x.distance.value for x in p.entries)
    assert p.by_size() == {1: (12, 12), 2: (6, 6), 3: (2, 2)}
    assert not is_mdsir(example1_triple(), p)
    csv = p.to_csv().splitlines()
    assert csv[0].startswith("side_info_size") and len(csv) == 8
    assert csv[-1].startswith("0,1 2 3,")


def test_profile_with_equivalences_matches_plain():
    e = example1_triple()
    plain = distance_profile(e)
    fast = distance_profile(e, use_equivalences=True)
    assert [x.distance.value for x in plain.entries] == [x.distance.value for x in fast.entries]
    assert fast[(2,)].reused_from == (1,) and fast[(2, 3)].reused_from is not None


def test_false_equivalence_is_not_reused():
    e = example1_triple()
    prov = dict(e.provenance)
    prov["equivalences"] = [{"source": [1], "target": [2], "multiplier": 1}]
    forged = Eccir(e.components, prov)
    p = distance_profile(forged, use_equivalences=True)
    assert p[(2,)].reused_from is None and p[(2,)].distance.value == 12


def test_profile_monotone_on_chains():
    for e in (example1_triple(), cubic_residue_triple(31), mdsir_from_grs(11, 6, 4)):
        p = distance_profile(e)
        for a in p.entries:
            for b in p.entries:
                if set(a.subset) < set(b.subset):
                    assert b.distance.value <= a.distance.value


def test_profile_threads_identical():
    e = cubic_residue_triple(31)
    a = distance_profile(e, DistanceConfig(threads=1)).to_json()
    b = distance_profile(e, DistanceConfig(threads=4)).to_json()
    assert a == b


def test_mdsir_profile_matches_bruteforce_weights():
    e = mdsir_from_grs(11, 6, 4)
    rows = e.generator().rows.tolist()
    p = distance_profile(e)
    for x in p.entries:
        assert x.distance.value == 6 - len(x.subset) + 1
    for s in [(1,), (2, 4), (1, 2, 3)]:
        assert p[s].distance.value == weight_oracle(rows, 11, s)
    assert is_mdsir(e, p)


def test_is_mdsir_single_component():
    rs = mdsir_from_grs(7, 4, 2)
    one = Eccir((rs.generator(),))
    assert is_mdsir(one)
    assert len(distance_profile(one).entries) == 1


def test_is_mdsir_refuses_bounded_profiles():
    e = cubic_residue_triple(31)
    p = distance_profile(e, DistanceConfig(exhaustive_dim_limit=5))
    with pytest.raises(UndecidableError):
        is_mdsir(e, p)


def test_group_messages():
    e = mdsir_from_grs(11, 6, 4)
    assert group_messages(e, 1).generator() == e.generator()
    whole = group_messages(e, 4)
    assert whole.L == 1 and whole.components[0] == e.generator()
    g = group_messages(e, 2)
    assert (g.L, g.k) == (2, 2)
    p = distance_profile(g)
    assert [x.distance.value for x in p.entries] == [5, 5, 3]
    assert is_mdsir(g, p)
    with pytest.raises(ValueError):
        group_messages(e, 3)


def test_dbt_bounds():
    b = dbt_guaranteed_bounds(12, 10, 3)
    assert b == {1: 2, 2: 0, 3: 0}
    assert dbt_guaranteed_bounds(3, 5, 2) == {1: 0, 2: 0}


def test_dbt_split_with_mds_input():
    # systematic [n+L, L, n+1] MDS code -> bounds are the Singleton values and the split is MDSIR
    n, L, q = 6, 4, 11
    e0 = mdsir_from_grs(q, n, L)
    A = GeneratorMatrix(np.hstack([np.eye(L, dtype=np.int64), e0.generator().rows]), q)
    e, bounds = dbt_baseline_split(A, 1, L)
    assert e.provenance["params"] == {"k": 1, "L": L, "d": n + 1}
    assert bounds == {s: n + 1 - s for s in range(1, L + 1)}
    p = distance_profile(e)
    assert all(x.distance.value == bounds[len(x.subset)] for x in p.entries)
    with pytest.raises(ValueError):
        dbt_baseline_split(GeneratorMatrix(A.rows[:, ::-1], q), 1, L)


def _minor_cases():
    rng = np.random.default_rng(42)
    for q in (2, 3, 4, 5):
        for L in (1, 2, 3):
            for n in range(L, 6):
                for trial in range(12):
                    lo = 1 if trial % 2 else 0  # half the samples avoid zero entries
                    yield q, rng.integers(lo, q, size=(L, n)).tolist()


def test_minor_criterion_matches_bruteforce():
    positives = negatives = 0
    for q, rows in _minor_cases():
        oracle = all_minors_nonzero(rows, q)
        G = GeneratorMatrix(rows, q)
        if rank(G) < len(rows):
            assert not oracle
            negatives += 1
            continue
        e = Eccir(tuple(GeneratorMatrix([r], q) for r in rows))
        assert is_mdsir(e) == oracle
        positives += oracle
        negatives += not oracle
    assert positives > 20 and negatives > 20
