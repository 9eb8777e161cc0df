import pytest

from lindef.enumerate import canonical_signature, count_complexes, enumerate_complexes
from lindef.errors import BadParams
from lindef.simplicial import is_ngon
from oracles import count_down_sets_brute


def test_small_labeled_counts():
    # frozen from the brute-force family oracle (full simplex removed)
    assert count_complexes(2) == 5
    assert count_complexes(4) == 167


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_counts_match_brute_force(n):
    assert count_complexes(n) == count_down_sets_brute(n) - 1


def test_labeled_count_n5():
    assert count_complexes(5) == 7580


def test_symmetry_class_counts():
    # inequivalent monotone Boolean functions, minus the full simplex
    assert [count_complexes(n, up_to_symmetry=True) for n in range(1, 6)] == [2, 4, 9, 29, 209]


def test_n2_listing():
    got = {d.facets for d in enumerate_complexes(2)}
    assert got == {(), (0,), (1,), (2,), (1, 2)}


def test_every_output_is_downward_closed():
    for d in enumerate_complexes(4):
        faces = d.face_set
        for F in faces:
            assert all(F & ~(1 << b) in faces for b in range(4) if F >> b & 1)


def test_representatives_are_canonical():
    reps = list(enumerate_complexes(4, up_to_symmetry=True))
    for d in reps:
        assert canonical_signature(d) == d.facets
    assert sum(is_ngon(d) for d in reps) == 1


def test_out_of_range():
    for n in (0, 6, 7):
        with pytest.raises(BadParams):
            list(enumerate_complexes(n))
    with pytest.raises(BadParams):
        list(enumerate_complexes(7, allow_n6=True))
