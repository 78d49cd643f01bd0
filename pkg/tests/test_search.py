import random
import time

import pytest

from models.certify import BoundMode
from models.cover import character_table, from_rows
from models.residue import ResidueVector, identity_matrix, is_invertible_matrix, mat_mul
from search.canonical import (
    SymmetryLevel,
    canonical_form,
    canonical_key,
    column_automorphisms,
    encode_key,
    invariant_fingerprint,
)
from search.enumerate import SearchSpec, Shard, enumerate_covers, enumerate_sigmas, shards
from search.sampling import (
    brute_force_orbits,
    has_valid_matrix,
    random_cover_matrix,
    random_invertible,
    random_permutation,
)
from search.shards import merge_results, process_shard, run_search, sigma_representatives
from tests.conftest import vec
from utils.errors import SpecOutOfRange, ValidationError


def _spec(modulus, rows, cols_min, cols_max=None, **kwargs):
    return SearchSpec(modulus, rows, cols_min, cols_max or cols_min, **kwargs)


@pytest.mark.parametrize("kwargs", [
    {"modulus": 17, "rows": 1, "cols_min": 4, "cols_max": 4},
    {"modulus": 4, "rows": 5, "cols_min": 4, "cols_max": 4},
    {"modulus": 4, "rows": 1, "cols_min": 3, "cols_max": 4},
    {"modulus": 4, "rows": 1, "cols_min": 6, "cols_max": 5},
    {"modulus": 4, "rows": 1, "cols_min": 4, "cols_max": 17},
    {"modulus": 4, "rows": 1, "cols_min": 4, "cols_max": 4, "workers": 0},
])
def test_spec_out_of_range(kwargs):
    with pytest.raises(SpecOutOfRange) as e:
        SearchSpec(**kwargs).validate()
    assert e.value.code == "SPEC_OUT_OF_RANGE"


def test_shard_names():
    assert Shard(6, (1,)).name == "s06-c1"
    assert Shard(12, (0, 3)).name == "s12-c0-3"
    assert [s.name for s in shards(_spec(2, 2, 4, 5))] == [
        "s04-c0-1", "s04-c1-0", "s04-c1-1", "s05-c0-1", "s05-c1-0", "s05-c1-1",
    ]


def test_canonical_key_examples(cyclic_cover):
    flipped = from_rows(4, [[3, 3, 3, 1, 1, 1]])
    shuffled = from_rows(4, [[1, 3, 1, 3, 1, 3]])
    doubled = from_rows(4, [[2, 2, 2, 2, 2, 2]])
    assert canonical_key(cyclic_cover) == canonical_key(flipped) == canonical_key(shuffled)
    assert canonical_key(cyclic_cover) != canonical_key(doubled)
    assert canonical_key(cyclic_cover).hex() == "040106010101030303"


def test_canonical_form_stabiliser(cyclic_cover):
    form = canonical_form(cyclic_cover)
    assert form.matrix == cyclic_cover
    assert sorted(form.transforms) == [((1,),), ((3,),)]


def test_canonical_key_under_random_transforms():
    rng = random.Random(7)
    for _ in range(25):
        n, m, s = rng.choice([2, 3, 4]), rng.choice([1, 2]), rng.randint(4, 6)
        if not has_valid_matrix(n, m, s):
            continue
        matrix = random_cover_matrix(rng, n, m, s)
        moved = matrix.transform(random_invertible(rng, n, m), random_permutation(rng, s))
        assert canonical_key(matrix) == canonical_key(moved)
        assert invariant_fingerprint(matrix) == invariant_fingerprint(moved)


def test_sampler_rejects_empty_space():
    assert not has_valid_matrix(2, 1, 5)
    assert has_valid_matrix(2, 1, 6)
    assert has_valid_matrix(2, 2, 5)
    assert has_valid_matrix(3, 1, 5)
    with pytest.raises(ValidationError) as e:
        random_cover_matrix(random.Random(0), 2, 1, 5)
    assert e.value.code == "EMPTY_SAMPLE_SPACE"
    assert random_cover_matrix(random.Random(0), 2, 1, 6).entries == (1,) * 6


def test_key_encoding_width():
    assert encode_key(4, 1, 6, [1, 1, 1, 3, 3, 3]).hex() == "040106010101030303"
    assert encode_key(300, 1, 4, [1, 1, 149, 149]).hex() == "012c000100040001000100950095"
    wide = from_rows(300, [[1, 1, 149, 149]])
    assert canonical_key(wide) == canonical_key(from_rows(300, [[149, 1, 149, 1]]))
    assert canonical_key(wide).hex() == "012c000100040001000100950095"


def test_column_automorphisms(cyclic_cover, etale_cover):
    assert column_automorphisms(cyclic_cover) == (((1,),), ((3,),))
    assert column_automorphisms(from_rows(4, [[2, 2, 2, 2]])) == (((1,),),)
    for w in column_automorphisms(etale_cover):
        moved = etale_cover.transform(w)
        assert sorted(moved.columns()) == sorted(etale_cover.columns())


@pytest.mark.parametrize("rows,modulus", [
    ([[1, 1, 1, 3, 3, 3]], 4),
    ([[1, 1, 1, 1], [0, 1, 0, 1]], 2),
    ([[1, 1, 0, 0, 1, 1], [0, 0, 1, 1, 1, 1], [0, 0, 0, 0, 1, 1]], 2),
    ([[1, 2, 3, 0, 0], [0, 0, 1, 2, 3]], 6),
    ([[1, 0, 2, 1], [0, 1, 1, 2]], 4),
    ([[2, 2, 2, 2]], 4),
])
def test_automorphism_pruning_keeps_the_exact_minimum(rows, modulus):
    cover = from_rows(modulus, rows)
    assert canonical_form(cover, use_automorphisms=True) == canonical_form(cover, use_automorphisms=False)


def test_automorphism_pruning_on_random_matrices():
    rng = random.Random(11)
    for _ in range(20):
        n, m, s = rng.choice([2, 3, 4, 6]), rng.choice([1, 2]), rng.randint(4, 6)
        if not has_valid_matrix(n, m, s):
            continue
        cover = random_cover_matrix(rng, n, m, s)
        assert canonical_form(cover, use_automorphisms=True) == canonical_form(cover, use_automorphisms=False)


def test_canonical_form_four_rows_at_modulus_16():
    # e1, e2, e3, e4 and -(e1+e2+e3+e4): every column permutation is realised
    cover = from_rows(16, [
        [1, 0, 0, 0, 15],
        [0, 1, 0, 0, 15],
        [0, 0, 1, 0, 15],
        [0, 0, 0, 1, 15],
    ])
    moved = cover.transform(((1, 1, 0, 0), (0, 1, 0, 0), (0, 0, 1, 3), (0, 0, 0, 1)), [4, 2, 0, 3, 1])

    started = time.perf_counter()
    form = canonical_form(cover)
    other = canonical_form(moved)
    assert time.perf_counter() - started < 60

    assert form.key == other.key
    assert len(form.transforms) == 120
    assert len(column_automorphisms(cover)) == 120
    for u in form.transforms[:5]:
        assert sorted(c.entries for c in cover.transform(u).columns()) == sorted(
            c.entries for c in form.matrix.columns()
        )

def test_invariant_hash_level(cyclic_cover):
    flipped = from_rows(4, [[3, 3, 3, 1, 1, 1]])
    level = SymmetryLevel.INVARIANT_HASH
    assert canonical_key(cyclic_cover, level) == canonical_key(flipped, level)
    assert len(canonical_key(cyclic_cover, level).data) == 32


@pytest.mark.parametrize("modulus,rows,cols,count", [
    (2, 1, 4, 1),
    (3, 1, 4, 1),
    (2, 1, 5, 0),
])
def test_enumerate_counts(modulus, rows, cols, count):
    assert len(list(enumerate_covers(_spec(modulus, rows, cols)))) == count


def test_enumerate_representatives():
    assert [m.entries for m in enumerate_covers(_spec(2, 1, 4))] == [(1, 1, 1, 1)]
    assert [m.entries for m in enumerate_covers(_spec(3, 1, 4))] == [(1, 1, 2, 2)]


def test_enumerate_is_sorted_by_key():
    covers = list(enumerate_covers(_spec(4, 1, 4, 6)))
    keys = [canonical_key(m) for m in covers]
    assert keys == sorted(keys)
    assert len(set(keys)) == len(keys)


def test_enumerate_at_invariant_hash_level():
    covers = list(enumerate_covers(_spec(3, 1, 4, level=SymmetryLevel.INVARIANT_HASH)))
    assert [m.entries for m in covers] == [(1, 1, 2, 2)]


@pytest.mark.parametrize("modulus,rows,cols", [
    (2, 1, 4), (2, 1, 5), (2, 1, 6),
    (3, 1, 4), (3, 1, 5), (3, 1, 6),
    (2, 2, 4), (2, 2, 5), (2, 2, 6),
    (3, 2, 4),
])
def test_enumeration_matches_brute_force_orbits(modulus, rows, cols):
    orbits = brute_force_orbits(modulus, rows, cols)
    representatives = list(enumerate_covers(_spec(modulus, rows, cols)))
    assert len(representatives) == len(orbits)
    for orbit in orbits:
        assert sum(1 for r in representatives if r in orbit) == 1
        assert len({canonical_key(m) for m in orbit}) == 1


def test_enumerate_sigmas(cyclic_data, etale_data):
    assert enumerate_sigmas(cyclic_data) == [vec(4, 2)]
    assert enumerate_sigmas(cyclic_data, strict_etale=True) == []
    assert enumerate_sigmas(character_table(from_rows(7, [[1, 1, 2, 3]]))) == []
    assert len(enumerate_sigmas(etale_data)) == 7
    assert enumerate_sigmas(etale_data, strict_etale=True) == [
        vec(2, 0, 0, 1), vec(2, 0, 1, 1), vec(2, 1, 0, 1), vec(2, 1, 1, 0),
    ]


def test_sigma_representatives():
    sigmas = [vec(2, 0, 1), vec(2, 1, 0), vec(2, 1, 1)]
    stabilizer = [((1, 0), (0, 1)), ((0, 1), (1, 0))]
    assert sigma_representatives(sigmas, stabilizer) == [vec(2, 0, 1), vec(2, 1, 1)]


def test_run_search_contains_worked_instance():
    records = list(run_search(_spec(4, 1, 6)))
    hits = [r for r in records if r.matrix == [1, 1, 1, 3, 3, 3] and r.sigma == [2]]
    assert len(hits) == 1
    assert hits[0].verdict == "NOT_SPECIAL"
    assert hits[0].canonical_key == "040106010101030303"


def test_run_search_small_cases():
    records = list(run_search(_spec(2, 1, 4)))
    assert len(records) == 1
    assert records[0].ramification == "RAMIFIED_OTHER"
    assert records[0].fixed_points == 4
    assert list(run_search(_spec(2, 1, 4, strict_etale=True))) == []
    assert list(run_search(_spec(3, 1, 4, 6))) == []


def test_shards_merge_independently_of_order():
    spec = _spec(4, 1, 4, 6, mode=BoundMode.WITH_SYMPLECTIC)
    results = [process_shard(spec, shard) for shard in shards(spec)]
    forward = merge_results(spec, results)
    backward = merge_results(spec, reversed(results))
    assert forward == backward
    assert forward[0] == len(list(enumerate_covers(spec)))
    assert all(r.mode == "WITH_SYMPLECTIC" for r in forward[1])


def test_invariant_hash_search_keeps_least_matrix():
    spec = _spec(4, 1, 6, level=SymmetryLevel.INVARIANT_HASH)
    total, records = merge_results(spec, [process_shard(spec, s) for s in shards(spec)])
    assert total >= 1
    matrices_per_key = {}
    for r in records:
        matrices_per_key.setdefault(r.canonical_key, set()).add(tuple(r.matrix))
    assert all(len(m) == 1 for m in matrices_per_key.values())


def test_samplers():
    rng = random.Random(1)
    for _ in range(20):
        matrix = random_cover_matrix(rng, 6, 2, 5)
        assert matrix.cols == 5
        u = random_invertible(rng, 6, 2)
        assert is_invertible_matrix(u, 6)
        assert mat_mul(u, identity_matrix(2), 6) == u
    assert sorted(random_permutation(rng, 6)) == list(range(6))
    assert ResidueVector(6, (0, 0)) == ResidueVector.zero(6, 2)


def test_search_id_tracks_everything_a_shard_depends_on():
    base = _spec(4, 1, 4, 6)
    assert base.search_id() == _spec(4, 1, 5, 8, workers=4).search_id()
    changed = [
        _spec(6, 1, 4, 6),
        _spec(4, 2, 4, 6),
        _spec(4, 1, 4, 6, strict_etale=True),
        _spec(4, 1, 4, 6, mode=BoundMode.WITH_SYMPLECTIC),
        _spec(4, 1, 4, 6, level=SymmetryLevel.INVARIANT_HASH),
    ]
    for spec in changed:
        assert spec.search_id() != base.search_id()
    assert base.search_id()["schema_version"] == 1
