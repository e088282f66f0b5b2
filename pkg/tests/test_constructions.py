import itertools

import numpy as np
import pytest

from infocode.code import GeneratorMatrix, binary_min_weight, equal_up_to_permutation, naive_min_weight, rank
from infocode.constructions import (
    ConcatConfig,
    concat_lower_bounds,
    concatenate,
    coset_partition_eccir,
    cubic_residue_pair,
    cubic_residue_triple,
    cubic_residues,
    example1_triple,
    expand_symbols,
    grs_evaluation_points,
    mdsir_from_grs,
    piret_distance_direct,
    piret_pair,
    piret_search,
    piret_weight_by_log,
    primitive_pair,
    quadratic_residue_pair,
)
from infocode.cyclic import CyclicCodeSpec, code_field_iso, cosets_union, generator_matrix_of, multiplier_permutation
from infocode.eccir import distance_profile, eccir_validate, is_mdsir, subcode


def test_grs_points_distinct():
    pts = grs_evaluation_points(8, 8)
    assert pts[0] == 0 and pts[1] == 1 and sorted(pts) == list(range(8))
    with pytest.raises(ValueError):
        grs_evaluation_points(7, 8)


def test_mdsir_field_size_rule():
    with pytest.raises(ValueError):
        mdsir_from_grs(7, 6, 2)  # q must exceed n + L
    e = mdsir_from_grs(8, 3, 2)
    assert (e.L, e.k, e.n, e.q) == (2, 1, 3, 8)
    assert is_mdsir(e)
    assert e.provenance["construction"] == "grs-mdsir"


def test_concat_example_distances():
    outer = mdsir_from_grs(8, 3, 2)
    inner = generator_matrix_of(CyclicCodeSpec.from_cosets([1], 7))
    e = concatenate(ConcatConfig(outer, inner))
    assert (e.n, e.k, e.q) == (21, 3, 2)
    p = distance_profile(e)
    assert [x.distance.value for x in p.entries] == [12, 12, 8]
    assert concat_lower_bounds(3, 4, 2) == {1: 12, 2: 8}


def test_concat_identity_inner_is_binary_image():
    outer = mdsir_from_grs(8, 3, 2)
    e = concatenate(ConcatConfig(outer, GeneratorMatrix(np.eye(3, dtype=int), 2)))
    assert e.n == 9
    # every binary codeword regroups to an outer codeword over GF(8)
    for bits in itertools.product((0, 1), repeat=3):
        row = (np.array(bits) @ e.components[0].rows) % 2
        sym = [int(sum(b << j for j, b in enumerate(row[3 * i:3 * i + 3]))) for i in range(3)]
        assert np.array_equal(expand_symbols(np.array(sym), 8), row)


@pytest.mark.parametrize("q,n_out,L", [(8, 4, 2), (8, 3, 3), (16, 5, 3)])
def test_concat_bounds_hold(q, n_out, L):
    k = q.bit_length() - 1
    outer = mdsir_from_grs(q, n_out, L)
    inner_spec = CyclicCodeSpec.from_cosets([1], 7) if k == 3 else CyclicCodeSpec.from_cosets([1], 15)
    inner = generator_matrix_of(inner_spec)
    d_in = naive_min_weight(inner)
    e = concatenate(ConcatConfig(outer, inner))
    bounds = concat_lower_bounds(n_out, d_in, L)
    for x in distance_profile(e).entries:
        assert x.distance.value >= bounds[len(x.subset)]


def test_concat_config_errors():
    outer = mdsir_from_grs(11, 3, 2)
    with pytest.raises(ValueError):
        ConcatConfig(outer, GeneratorMatrix(np.eye(3, dtype=int), 2))
    outer8 = mdsir_from_grs(8, 3, 2)
    with pytest.raises(ValueError):
        ConcatConfig(outer8, GeneratorMatrix(np.eye(2, dtype=int), 2))


def test_piret_search_matches_direct_enumeration():
    # [9,6,2] inner: every beta in GF(64) \ {0,1} evaluated by enumerating C_1
    spec = CyclicCodeSpec.from_cosets([1], 9)
    res = piret_search(spec)
    direct = {b: piret_distance_direct(spec, b) for b in range(2, 64)}
    assert res.distance == max(direct.values()) == 6
    assert set(res.maximizers) == {b for b, d in direct.items() if d == 6}
    assert res.beta == min(res.maximizers)


def test_piret_weight_table():
    spec = CyclicCodeSpec.from_cosets([1], 17)
    W, powers = piret_weight_by_log(spec)
    assert W.size == 255 and len(set(powers.tolist())) == 255
    iso = code_field_iso(spec)
    for i in (0, 1, 7, 100):
        assert W[i] == sum(iso(int(powers[i])).coeffs)
    assert W.min() == 6


def test_piret_pair_symmetry():
    spec = CyclicCodeSpec.from_cosets([1], 17)
    e = piret_pair(spec, 5)
    c1, c2 = e.components
    perm = list(range(17, 34)) + list(range(17))
    assert equal_up_to_permutation(c2, c1, perm)
    assert binary_min_weight(c1.rows) == binary_min_weight(c2.rows)
    # sum is the product code inner x inner-repetition: distance equals d(inner) = 6
    assert binary_min_weight(e.generator().rows) == 6
    for bad in (0, 1, 256):
        with pytest.raises(ValueError):
            piret_pair(spec, bad)
    with pytest.raises(ValueError):
        piret_pair(CyclicCodeSpec.from_cosets([1, 3], 31), 5)


def test_piret_search_n17():
    res = piret_search(CyclicCodeSpec.from_cosets([1], 17))
    assert res.distance == 14
    assert piret_distance_direct(res.inner, res.beta) == 14


def test_primitive_pair():
    e = primitive_pair(4)
    assert (e.n, e.k, e.L) == (15, 4, 2)
    p = distance_profile(e)
    assert p[(1,)].distance.value == 8 and p[(2,)].distance.value == 6
    assert e.provenance["params"]["mu3_equivalent"] is False
    assert primitive_pair(5).provenance["params"]["mu3_equivalent"] is True
    with pytest.raises(ValueError):
        primitive_pair(2)


def test_qr_partition():
    e = quadratic_residue_pair(23)
    t1, t2 = (set(x) for x in e.provenance["nonzeroes"])
    assert t1 == {a * a % 23 for a in range(1, 23)}
    assert t1 | t2 == set(range(1, 23)) and not t1 & t2
    assert rank(e.generator()) == 22
    for n in (5, 13, 15, 21):
        with pytest.raises(ValueError):
            quadratic_residue_pair(n)


def test_qr_distance_check():
    assert quadratic_residue_pair(17, verify_distance=True).L == 2


def test_qr_47_enumeration():
    e = quadratic_residue_pair(47, verify_distance=True)
    assert distance_profile(e)[(1,)].distance.value == 12


def test_cubic_residue_triple():
    e = cubic_residue_triple(31)
    b = e.provenance["params"]["b"]
    assert b == 3 and b not in cubic_residues(31)
    parts = [set(x) for x in e.provenance["nonzeroes"]]
    assert parts[0] == cubic_residues(31) and len(parts[0]) == 10
    assert set().union(*parts) == set(range(1, 31))
    perm = multiplier_permutation(31, b)
    c = [subcode(e, [i]).gen for i in (1, 2, 3)]
    assert equal_up_to_permutation(c[0], c[1], perm) and equal_up_to_permutation(c[1], c[2], perm)
    pair = cubic_residue_pair(31)
    assert pair.L == 2 and pair.components == e.components[:2]
    with pytest.raises(ValueError):
        cubic_residue_triple(29)  # 3 does not divide 28
    with pytest.raises(ValueError):
        cubic_residue_triple(7)  # cubes mod 7 are {1, 6}, so 2 is not a cube


def test_coset_partition_rejections():
    with pytest.raises(ValueError):
        coset_partition_eccir(31, 2, [sorted(cosets_union([1], 31, 2)), sorted(cosets_union([1, 3], 31, 2))])
    with pytest.raises(ValueError):
        coset_partition_eccir(31, 2, [sorted(cosets_union([1], 31, 2)), sorted(cosets_union([3, 5], 31, 2))])
    e = example1_triple()
    assert eccir_validate(e).valid
    recorded = e.provenance["equivalences"]
    assert len(recorded) == 4
    for x in recorded:
        src, tgt = subcode(e, x["source"]).gen, subcode(e, x["target"]).gen
        assert equal_up_to_permutation(src, tgt, multiplier_permutation(31, x["multiplier"]))
