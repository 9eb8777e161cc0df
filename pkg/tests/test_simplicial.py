import pytest
from hypothesis import event, given, strategies as st

from lindef.builtins import (boundary, builtin, cyclic_sphere, full_simplex, ngon, parse_builtin,
                             rp2_6, sharp_family, torus_7)
from lindef.errors import (BadParams, EmptyComplex, FullSimplex, NonDisjointJoin, ParseError,
                           VertexOutOfRange)
from lindef.linalg import QQ, FieldSpec
from lindef.simplicial import (SimplicialComplex, boundary_ranks, hochster_betti, indeg, is_ngon,
                               mask_of, reduced_cohomology_dims, vertices_of)
from oracles import alexander_dual_faces, hochster, minimal_nonfaces
from strategies import complexes

F2 = FieldSpec(2)
SQUARE = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4), (1, 4)])


def masks(*vertex_lists):
    return tuple(sorted(mask_of(v) for v in vertex_lists))


def test_from_facets_keeps_antichain():
    d = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
    assert d.facets == masks((1, 2), (2, 3), (3, 4), (1, 4), (1, 3))


def test_from_facets_absorbs_faces():
    d = SimplicialComplex.from_facets(3, [(1, 2, 3), (1, 2)])
    assert d.facets == masks((1, 2, 3))


def test_empty_face_flag_versus_void():
    irr = SimplicialComplex.from_facets(2, [], empty_face=True)
    void = SimplicialComplex.from_facets(2, [])
    assert irr.facets == (0,) and void.facets == ()
    assert irr != void and void.is_void and not irr.is_void


def test_vertex_out_of_range():
    with pytest.raises(VertexOutOfRange):
        SimplicialComplex.from_facets(3, [(1, 4)])


def test_minimal_nonfaces():
    # frozen from the brute-force oracle: minimal_nonfaces(4, square) = {13, 24}
    assert set(SQUARE.minimal_nonfaces) == {mask_of((1, 3)), mask_of((2, 4))}
    assert full_simplex(4).minimal_nonfaces == ()
    assert set(SimplicialComplex.irrelevant(3).minimal_nonfaces) == {1, 2, 4}


def test_alexander_dual_examples():
    assert boundary(4).alexander_dual() == SimplicialComplex.irrelevant(4)
    assert SQUARE.alexander_dual().facets == masks((1, 3), (2, 4))
    assert rp2_6().alexander_dual() == rp2_6()


@given(complexes(allow_void=True))
def test_dual_is_involution(delta):
    assert delta.alexander_dual().alexander_dual() == delta


@given(complexes(max_n=4, allow_void=True))
def test_dual_and_nonfaces_match_oracle(delta):
    facets = delta.facet_lists()
    faces = {frozenset(vertices_of(F)) for F in delta.alexander_dual().faces}
    assert faces == alexander_dual_faces(delta.n, facets)
    mnf = {frozenset(vertices_of(F)) for F in delta.minimal_nonfaces}
    assert mnf == minimal_nonfaces(delta.n, facets)


def test_operators():
    path = SQUARE.induced(mask_of((1, 2, 3)))
    assert path.facets == masks((1, 2), (2, 3))
    assert full_simplex(4).skeleton(0).facets == masks((1,), (2,), (3,), (4,))
    assert SQUARE.link(mask_of((1,))).facets == masks((2,), (4,))
    with pytest.raises(NonDisjointJoin):
        SQUARE.join(SQUARE)


@given(complexes(max_n=4))
def test_cones_are_acyclic(delta):
    base = delta.with_ambient(delta.n + 1)
    cone = base.cone(delta.n + 1)
    assert not any(reduced_cohomology_dims(cone, QQ))


def test_reduced_cohomology_examples():
    for n in range(3, 8):
        dims = reduced_cohomology_dims(ngon(n), QQ)
        assert dims[2] == 1 and sum(dims) == 1
    rp = rp2_6()
    assert reduced_cohomology_dims(rp, F2)[2:4] == [1, 1]
    assert reduced_cohomology_dims(rp, QQ)[2:4] == [0, 0]
    for f in (QQ, F2, FieldSpec(3)):
        assert reduced_cohomology_dims(torus_7(), f)[2:4] == [2, 1]
    assert reduced_cohomology_dims(SimplicialComplex.irrelevant(3), QQ)[0] == 1
    assert not any(reduced_cohomology_dims(SimplicialComplex.void(3), QQ))


@given(complexes(), st.integers(0, 31), st.sampled_from([2, 3]))
def test_field_comparison_when_ranks_agree(delta, F, p):
    sub = delta.induced(F & delta.full_mask)
    rq, rp = boundary_ranks(sub, QQ), boundary_ranks(sub, FieldSpec(p))
    if rq == rp:
        assert reduced_cohomology_dims(sub, QQ) == reduced_cohomology_dims(sub, FieldSpec(p))
    else:
        event("integral torsion changes the ranks")


def test_hochster_examples():
    for n in range(4, 8):
        for d in range(2, n - 1):
            b = hochster_betti(sharp_family(n, d), QQ)
            assert b.beta(n - d, n) == 1
            assert b.beta(n - d - 1, n - 1) == 0
    b = hochster_betti(full_simplex(4), QQ)
    assert all(i == 0 for (i, _), _v in b.items())


def test_hochster_pentagon_oracle_values():
    # frozen from the sympy oracle
    assert hochster_betti(ngon(5), QQ).graded() == {(0, 0): 1, (1, 2): 5, (2, 3): 5, (3, 5): 1}


@given(complexes(max_n=4), st.sampled_from([0, 2]))
def test_hochster_matches_oracle(delta, p):
    table = hochster_betti(delta, FieldSpec(p))
    expect = hochster(delta.n, delta.facet_lists(), p)
    assert {(i, frozenset(vertices_of(F))): v for (i, F), v in table.items()} == expect


@given(complexes(max_n=5), st.permutations(range(1, 6)))
def test_hochster_relabel_symmetry(delta, perm):
    perm = [v for v in perm if v <= delta.n]
    moved = delta.permuted(perm)
    a = hochster_betti(delta, QQ)
    b = hochster_betti(moved, QQ)
    relabel = {F: mask_of(perm[v - 1] for v in vertices_of(F)) for F in range(1 << delta.n)}
    assert {(i, relabel[F]): v for (i, F), v in a.items()} == b.entries


@given(complexes(max_n=5))
def test_betti_vanishing_shape(delta):
    for (i, F), _ in hochster_betti(delta, QQ).items():
        assert i <= bin(F).count("1")


def test_indeg():
    for n in range(4, 8):
        assert indeg(ngon(n)) == 2
    assert indeg(SimplicialComplex.irrelevant(3)) == 1
    assert indeg(sharp_family(7, 4)) == 4
    with pytest.raises(FullSimplex):
        indeg(full_simplex(3))
    with pytest.raises(EmptyComplex):
        indeg(SimplicialComplex.void(3))


def test_is_ngon():
    assert is_ngon(SQUARE)
    two = SimplicialComplex.from_facets(6, [(1, 2), (2, 3), (1, 3), (4, 5), (5, 6), (4, 6)])
    assert not is_ngon(two)
    assert not is_ngon(SQUARE.with_ambient(5))


def test_builtins():
    assert cyclic_sphere(4, 2) == SQUARE
    for n in range(4, 9):
        assert sharp_family(n, 2) == ngon(n)
    assert boundary(3).facets == masks((1, 2), (1, 3), (2, 3))
    assert len(rp2_6().facets) == 10 and len(torus_7().facets) == 14
    for m, d in [(5, 2), (6, 3), (7, 4), (7, 3), (8, 5)]:
        s = cyclic_sphere(m, d)
        dims = reduced_cohomology_dims(s, QQ)
        assert dims[d] == 1 and sum(dims) == 1


def test_builtin_params():
    assert parse_builtin("sharp_family:6,3") == sharp_family(6, 3)
    assert builtin("ngon", 5) == ngon(5)
    for bad in [("ngon", 2), ("cyclic_sphere", 3, 3), ("sharp_family", 5, 4)]:
        with pytest.raises(BadParams):
            builtin(*bad)
    with pytest.raises(ParseError):
        parse_builtin("nope")
    with pytest.raises(ParseError):
        parse_builtin("ngon:x")
