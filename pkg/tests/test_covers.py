"""Character-theoretic cover counts against naive enumeration and pinned values."""

from __future__ import annotations

import math
import os
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pillowcount.covers import (
    CharacterCache,
    CoverProfile,
    character,
    class_size,
    connected_counts,
    corner_types,
    cover_profiles,
    cover_ratios,
    dimension,
    frobenius_count,
    genus,
    hook_product,
    naive_enumerate,
    partitions,
    profile_connected_counts,
    sq_count,
)


def test_partitions_counts_and_order():
    assert list(partitions(4)) == [(4,), (3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert len(list(partitions(5))) == 7
    assert len(list(partitions(6))) == 11
    assert list(partitions(3, max_part=2)) == [(2, 1), (1, 1, 1)]
    assert list(partitions(0)) == [()]


def test_class_sizes_partition_the_group():
    for n in range(1, 7):
        assert sum(class_size(cls) for cls in partitions(n)) == math.factorial(n)
    assert class_size((2, 1)) == 3
    assert class_size((3,)) == 2
    assert class_size((1, 1, 1)) == 1


def test_hooks_and_dimensions():
    assert hook_product((1,)) == 1
    assert hook_product((2, 1)) == 3
    assert dimension((2, 1)) == 2
    assert dimension((3, 2)) == 5
    for n in range(1, 8):
        assert sum(dimension(s) ** 2 for s in partitions(n)) == math.factorial(n)


def test_character_pinned_values():
    # trivial representation
    for cls in partitions(4):
        assert character((4,), cls) == 1
    # sign representation at a transposition
    assert character((1, 1, 1), (2, 1)) == -1
    # the standard representation of S_3 at a 3-cycle
    assert character((2, 1), (3,)) == -1
    # identity class gives the dimension
    for n in range(1, 7):
        for shape in partitions(n):
            assert character(shape, (1,) * n) == dimension(shape)


def test_character_size_mismatch():
    with pytest.raises(ValueError):
        character((2, 1), (2, 2))


def test_character_orthogonality_rows():
    # first orthogonality: sum_cls |C| chi_i(C) chi_j(C) = n! delta_ij
    for n in (3, 4, 5):
        shapes = list(partitions(n))
        classes = list(partitions(n))
        for i, si in enumerate(shapes):
            for sj in shapes[i:]:
                total = sum(
                    class_size(c) * character(si, c) * character(sj, c)
                    for c in classes
                )
                assert total == (math.factorial(n) if si == sj else 0)


@settings(max_examples=25, deadline=None)
@given(st.integers(min_value=2, max_value=7), st.data())
def test_character_bounded_by_dimension(n: int, data):
    shapes = list(partitions(n))
    shape = data.draw(st.sampled_from(shapes))
    cls = data.draw(st.sampled_from(shapes))
    assert abs(character(shape, cls)) <= dimension(shape)


def test_frobenius_pinned_examples():
    one = (1,)
    assert frobenius_count([one, one, one, one]) == 1
    assert frobenius_count([(2,), (2,), (1, 1), (1, 1)]) == Fraction(1, 2)
    assert frobenius_count([(3,), (2, 1), (2, 1), (1, 1, 1)]) == 1
    # all four corners regular of degree 2: the unramified torus double cover
    assert frobenius_count([(2,), (2,), (2,), (2,)]) == Fraction(1, 2)
    # parity obstruction: an odd product can never be the identity
    assert frobenius_count([(2,), (1, 1), (1, 1), (1, 1)]) == 0


def test_frobenius_input_validation():
    with pytest.raises(ValueError):
        frobenius_count([(2,)])
    with pytest.raises(ValueError):
        frobenius_count([(2,), (3,), (2,), (2,)])


def test_frobenius_matches_naive_at_degree_4():
    for classes in [
        ((3, 1), (2, 2), (2, 1, 1), (1, 1, 1, 1)),
        ((2, 2), (2, 2), (2, 2), (2, 2)),
        ((3, 1), (3, 1), (2, 1, 1), (2, 1, 1)),
    ]:
        assert frobenius_count(classes) == naive_enumerate(classes)


def test_corner_types_enumeration():
    assert corner_types(3, 1, 3) == [(2, 1), (1, 1, 1), (3,)]
    assert corner_types(3, 0, 3) == [(2, 1), (1, 1, 1)]
    assert corner_types(3, 1, 1) == [(2, 1), (3,)]
    assert corner_types(2, 2, 0) == [(2,)]


def test_cover_profile_validation():
    good = CoverProfile(((3,), (2, 1), (2, 1), (1, 1, 1)))
    assert good.degree == 3
    assert good.zeros == 1
    assert good.poles == 5
    with pytest.raises(ValueError):
        CoverProfile(((3,), (2, 1), (2, 1)))
    with pytest.raises(ValueError):
        CoverProfile(((3,), (2, 1), (2, 1), (1, 1)))
    with pytest.raises(ValueError):
        CoverProfile(((4,), (2, 1, 1), (2, 1, 1), (1, 1, 1, 1)))
    with pytest.raises(ValueError):
        CoverProfile(((1, 2), (2, 1), (2, 1), (1, 1, 1)))


def test_cover_profiles_respect_bounds():
    profiles = list(cover_profiles(3, 1, 5))
    assert profiles
    for p in profiles:
        assert p.zeros <= 1
        assert p.poles <= 5
        assert p.degree == 3


def test_genus_formula():
    assert genus([(3,), (3,), (1, 1, 1), (1, 1, 1)]) == 0
    assert genus([(2,), (2,), (2,), (2,)]) == 1
    assert genus([(2, 1), (2, 1), (2, 1), (2, 1)]) == 0
    with pytest.raises(ValueError):
        genus([(2, 1), (1, 1, 1), (1, 1, 1), (1, 1, 1)])


def test_target_profiles_have_genus_zero():
    """z = K and p = K+4 over the four corners forces genus 0."""
    for n in (3, 4, 5):
        for profile in cover_profiles(n, 2, 6):
            if profile.zeros - profile.poles == -4:
                assert genus(profile.corner_types) == 0


def test_connected_counts_pinned_values():
    counts = connected_counts(1, 3)
    assert counts[(3, 1, 5)] == 12
    assert counts[(1, 0, 4)] == 1
    assert counts[(2, 0, 0)] == Fraction(1, 2)
    assert (1, 1, 5) not in counts
    assert (2, 1, 5) not in counts
    counts2 = connected_counts(2, 3)
    assert counts2[(3, 2, 6)] == 2


def test_feasibility_vanishing():
    """At the target grading, counts vanish whenever 2N - 2K - 2 < 0."""
    for k in (1, 2):
        counts = connected_counts(k, 4)
        for (n, z, p), value in counts.items():
            if z == k and p == k + 4:
                assert 2 * n - 2 * k - 2 >= 0
                assert value > 0


def test_connected_counts_against_naive_per_profile():
    """Profile-resolved inversion equals naive transitive enumeration."""
    connected = profile_connected_counts(4)
    for n in (2, 3, 4):
        for profile in cover_profiles(n, 1, 5):
            classes = profile.corner_types
            expected = naive_enumerate(classes, connected_only=True)
            assert connected.get(classes, Fraction(0)) == expected


def test_disconnected_total_equals_frobenius():
    for n in (2, 3):
        for profile in cover_profiles(n, 1, 5):
            classes = profile.corner_types
            assert frobenius_count(classes) == naive_enumerate(classes)


def test_sq_count_values():
    assert sq_count(1, 2) == 0
    assert sq_count(1, 3) == 360
    # cumulative, hence nondecreasing
    assert sq_count(1, 4) >= sq_count(1, 3)


def test_cover_ratios_normalization():
    ratios = cover_ratios(1, [3])
    expected = float(8 * 360) / (math.pi**4 * 3**4)
    assert ratios[3] == pytest.approx(expected)
    with pytest.raises(ValueError):
        cover_ratios(1, [])
    with pytest.raises(ValueError):
        cover_ratios(1, [0, 3])


def test_naive_enumerate_guards():
    assert naive_enumerate([]) == 0
    with pytest.raises(ValueError):
        naive_enumerate([(6,), (6,), (6,), (6,)])
    with pytest.raises(ValueError):
        naive_enumerate([(2,), (2,), (2,)])
    with pytest.raises(ValueError):
        naive_enumerate([(2,), (3,), (2,), (2,)])


def test_cache_roundtrip(tmp_path):
    path = os.path.join(tmp_path, "chars.txt")
    cache = CharacterCache(path)
    value = character((2, 2, 1), (3, 2), cache)
    cache.flush()
    assert os.path.exists(path)
    fresh = CharacterCache(path)
    assert fresh.get((2, 2, 1), (3, 2)) == value
    # values served from the cache agree with recomputation
    assert character((2, 2, 1), (3, 2), fresh) == value


def test_cache_ignores_corrupted_file(tmp_path):
    path = os.path.join(tmp_path, "chars.txt")
    with open(path, "w", encoding="ascii") as fh:
        fh.write("pillowchar v1\n5|2,2,1|3,2|not-an-integer\n")
    cache = CharacterCache(path)
    assert cache.get((2, 2, 1), (3, 2)) is None
    with open(path, "w", encoding="ascii") as fh:
        fh.write("some other header\n5|2,2,1|3,2|1\n")
    cache = CharacterCache(path)
    assert cache.get((2, 2, 1), (3, 2)) is None
    # a record whose partitions do not sum to the declared degree is discarded
    with open(path, "w", encoding="ascii") as fh:
        fh.write("pillowchar v1\n5|2,2|3,2|1\n")
    cache = CharacterCache(path)
    assert cache.get((2, 2), (3, 2)) is None


def test_cache_env_var_location(tmp_path, monkeypatch):
    monkeypatch.setenv("PILLOW_CACHE_DIR", str(tmp_path))
    cache = CharacterCache()
    assert cache.path == os.path.join(str(tmp_path), "characters.txt")
    character((3, 1), (2, 2), cache)
    cache.flush()
    assert os.path.exists(cache.path)


def test_cold_cache_matches_warm_cache(tmp_path):
    path = os.path.join(tmp_path, "chars.txt")
    cache = CharacterCache(path)
    warm = connected_counts(1, 3, cache)
    cache.flush()
    reloaded = CharacterCache(path)
    assert connected_counts(1, 3, reloaded) == warm
    assert connected_counts(1, 3, None) == warm
