import json

import pytest

from lindef.builtins import boundary, full_simplex, ngon, rp2_6, sharp_family, torus_7
from lindef.enumerate import enumerate_complexes
from lindef.errors import (BadParams, EmptyComplex, FullSimplex, PreconditionFailed, ZeroModule)
from lindef.invariants import (cone_invariance_check, hochster_strand_map_check, is_cohen_macaulay,
                               is_sequentially_CM, ld_delta, ld_irr, ld_lin_delta, ld_via_ext,
                               ld_via_lin, ngon_theorem_scan, top_strand_check,
                               topological_invariance_probe, verify_bounds)
from lindef.linalg import QQ, FieldSpec
from lindef.simplicial import SimplicialComplex, indeg
from lindef.sqmod import (canonical_module, polynomial_ring, residue_field,
                          stanley_reisner_module, zero_module)

F2 = FieldSpec(2)


def corpus(max_n=5):
    for n in range(1, max_n + 1):
        for d in enumerate_complexes(n, up_to_symmetry=True):
            if not d.is_void:
                yield d


def sr(d, f=QQ):
    return stanley_reisner_module(d, f)


def test_ld_via_lin_examples():
    assert ld_via_lin(residue_field(4)) == 0
    for n in (3, 4, 5):
        assert ld_via_lin(sr(boundary(n))) == 1
    for n in range(4, 8):
        assert ld_via_lin(sr(ngon(n))) == n - 2
    with pytest.raises(ZeroModule):
        ld_via_lin(zero_module(3))


def test_ld_via_ext_examples():
    assert ld_via_ext(polynomial_ring(4)) == 0
    for n, d in [(5, 3), (6, 3), (6, 4), (7, 5)]:
        assert ld_via_ext(sr(sharp_family(n, d))) == n - d
    with pytest.raises(ZeroModule):
        ld_via_ext(zero_module(2))


def test_ld_delta_examples():
    for f in (QQ, F2, FieldSpec(3)):
        assert ld_delta(ngon(6), f).ld == 4
        r = ld_delta(torus_7().alexander_dual(), f)
        assert (r.indeg, r.ld) == (4, 3)
    assert ld_delta(rp2_6(), F2).ld == 3
    assert ld_delta(rp2_6(), QQ).ld == 1
    assert ld_delta(full_simplex(3)).ld == 0
    with pytest.raises(EmptyComplex):
        ld_delta(SimplicialComplex.void(3))


def test_report_json():
    r = ld_delta(ngon(5), QQ)
    data = json.loads(json.dumps(r.to_json()))
    assert data["routes"] == {"lin": 3, "ext": 3}
    assert data["per_strand"]["2"] == 3 and data["per_strand"]["4"] is None
    assert data["flags"]["is_ngon"] and data["ld_E"] == 3
    assert set(data) >= {"complex", "char", "indeg", "ld", "per_strand", "depth_profile",
                         "flags", "routes"}
    lite = ld_delta(ngon(5), QQ, oracle=False).to_json()
    assert lite["routes"]["ext"] is None and lite["ld"] == 3


def test_ld_irr_examples():
    assert ld_irr(sr(rp2_6(), QQ)) == 0
    assert ld_irr(sr(rp2_6(), F2)) == 2
    assert ld_irr(canonical_module(4)) == 0
    with pytest.raises(ZeroModule):
        ld_irr(zero_module(2))


def test_cohen_macaulay_examples():
    s = sr(full_simplex(4))
    assert is_cohen_macaulay(s) and is_sequentially_CM(s)
    for n in range(4, 8):
        m = sr(ngon(n))
        assert is_cohen_macaulay(m) and is_sequentially_CM(m)
    assert not is_sequentially_CM(sr(ngon(4).alexander_dual()))
    assert is_sequentially_CM(zero_module(3))
    with pytest.raises(ZeroModule):
        is_cohen_macaulay(zero_module(3))


def test_rp2_depends_on_characteristic():
    assert is_cohen_macaulay(sr(rp2_6(), QQ))
    assert not is_cohen_macaulay(sr(rp2_6(), F2))


def test_top_strand_examples():
    r = top_strand_check(ngon(5))
    assert (r.ld_top, r.h_lin2_top, r.h_Q_pos, r.ngon_equiv_ok) == (True, True, True, True)
    tri = SimplicialComplex.from_facets(5, [(1, 2), (2, 3), (1, 3), (1, 4), (1, 5)])
    r = top_strand_check(tri)
    assert (r.ld_top, r.h_lin2_top, r.h_Q_pos) == (False, False, False)
    r = top_strand_check(full_simplex(5).skeleton(2))
    assert (r.ld_top, r.h_lin2_top, r.h_Q_pos) == (False, False, False)
    with pytest.raises(PreconditionFailed):
        top_strand_check(ngon(3))
    with pytest.raises(PreconditionFailed):
        top_strand_check(ngon(4).with_ambient(5))


def test_strand_map_examples():
    r = hochster_strand_map_check(ngon(5))
    assert r.ok and not r.injective and not r.short_cycle and r.rank_resolution == 0
    chord = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4), (1, 4), (1, 3)])
    r = hochster_strand_map_check(chord)
    assert r.short_cycle and r.injective and r.ok
    path = SimplicialComplex.from_facets(4, [(1, 2), (2, 3), (3, 4)])
    r = hochster_strand_map_check(path)
    assert r.ok and r.rank_cohomology == 0
    with pytest.raises(PreconditionFailed):
        hochster_strand_map_check(full_simplex(4).skeleton(2))


def test_bounds_examples():
    for n in range(4, 8):
        for d in range(2, n - 1):
            b = verify_bounds(sharp_family(n, d))
            assert b.all_ok and b.ld == n - b.indeg
    for n in range(4, 8):
        b = verify_bounds(ngon(n))
        assert b.all_ok and b.ld == n - 2
    with pytest.raises(FullSimplex):
        verify_bounds(full_simplex(3))


def test_cone_examples():
    r = cone_invariance_check(SimplicialComplex.irrelevant(1))
    assert r.ok and r.ld_base == 0
    r = cone_invariance_check(ngon(4).with_ambient(5))
    assert r.ok and r.ld_cone == 2 and r.apex == 5 and r.ambient == 5
    with pytest.raises(PreconditionFailed):
        cone_invariance_check(SimplicialComplex.void(2))


def test_cone_on_small_corpus():
    for d in corpus(4):
        assert cone_invariance_check(d).ok


@pytest.mark.parametrize("p", [0, 2])
def test_topological_probe(p):
    r = topological_invariance_probe(FieldSpec(p))
    assert r.ok
    # frozen from both routes: every member has ld 1
    assert {v for fam in r.values.values() for v in fam.values()} == {1}


def test_ngon_scan():
    s4 = ngon_theorem_scan(4)
    assert s4.ok and max(s4.ld_histogram) == 2
    assert s4.extremal == [ngon(4).permuted([1, 2, 4, 3]).facet_lists()] or len(s4.extremal) == 1
    with pytest.raises(BadParams):
        ngon_theorem_scan(3)


def test_ld_positive_iff_not_simplex():
    for d in corpus():
        simplex = len(d.facets) == 1
        assert (ld_lin_delta(d) >= 1) == (not simplex), d


def test_ld_irr_zero_iff_sequentially_cm():
    for d in corpus(4):
        M = sr(d)
        assert (ld_irr(M) == 0) == is_sequentially_CM(M), d


@pytest.mark.parametrize("delta,f", [(rp2_6(), F2), (torus_7(), QQ), (torus_7(), F2)])
def test_buchsbaum_duals_attain_bound(delta, f):
    dual = delta.alexander_dual()
    assert ld_lin_delta(dual, f) == dual.n - indeg(dual)
