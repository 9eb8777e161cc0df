"""Linearity defect by two independent routes, Cohen-Macaulay tests, and
checks of the structural bounds and extremal characterisations.

Route "lin" reads ld off the homology of the linear strands of a minimal
free resolution.  Route "ext" never looks at linear strands: it dualises
with the Alexander functor and reads off depths of Ext modules.
"""
from __future__ import annotations

import math
from dataclasses import asdict, dataclass, field
from functools import lru_cache

from .errors import (EmptyComplex, FullSimplex, PreconditionFailed, RouteMismatch,
                     ZeroModule)
from .linalg import QQ, FieldSpec, Span, rank_rows, solve_in_basis
from .resolution import (FreeComplex, depth, ext_module, low_strands,
                         minimal_free_resolution, strand_homology_positions)
from .simplicial import (SimplicialComplex, coboundary_matrix, has_cycle,
                         indeg, is_ngon, popcount)
from .sqmod import (SquarefreeModule, alexander_functor, ideal_module,
                    stanley_reisner_module)

INFINITY = math.inf


def _finite(x):
    return None if x in (INFINITY, -INFINITY) else x


# --- the two routes --------------------------------------------------------------

def lin_profile(P: FreeComplex) -> dict[int, int | None]:
    """l -> max homology position of the l-th linear strand (None if exact)."""
    out = {}
    for l in range(P.n + 1):
        pos = strand_homology_positions(P, l)
        out[l] = max(pos) if pos else None
    return out


def ld_via_lin(M: SquarefreeModule | FreeComplex) -> int:
    P = M if isinstance(M, FreeComplex) else _nonzero_resolution(M)
    if P.is_zero():
        raise ZeroModule("ld is undefined for the zero module")
    return max(v for v in lin_profile(P).values() if v is not None)


@dataclass
class ExtRoute:
    ld: int
    per_strand: dict[int, int | None]      # l -> n - l - depth Ext^l(A(M), S)
    depth_profile: dict[int, float]        # i -> depth Ext^{n-i}(A(M), S)


def ext_route(M: SquarefreeModule) -> ExtRoute:
    if M.is_zero():
        raise ZeroModule("ld is undefined for the zero module")
    n = M.n
    PA = minimal_free_resolution(alexander_functor(M))
    per_strand: dict[int, int | None] = {}
    profile: dict[int, float] = {}
    for l in range(n + 1):
        E = ext_module(PA, l)
        d = depth(E)
        profile[n - l] = d
        per_strand[l] = None if d == INFINITY else n - l - d
    ld = max(v for v in per_strand.values() if v is not None)
    return ExtRoute(ld, per_strand, profile)


def ld_via_ext(M: SquarefreeModule) -> int:
    return ext_route(M).ld


def ld_irr(N: SquarefreeModule) -> int:
    """Linearity defect of the minimal irreducible resolution of N."""
    if N.is_zero():
        raise ZeroModule("ld.irr is undefined for the zero module")
    return ld_via_ext(alexander_functor(N))


def _nonzero_resolution(M: SquarefreeModule):
    if M.is_zero():
        raise ZeroModule("ld is undefined for the zero module")
    return minimal_free_resolution(M)


# --- Cohen-Macaulay conditions -----------------------------------------------------

def is_cohen_macaulay(M: SquarefreeModule) -> bool:
    if M.is_zero():
        raise ZeroModule("Cohen-Macaulayness of the zero module is not defined here")
    return depth(M) == M.krull_dim()


def is_sequentially_CM(M: SquarefreeModule) -> bool:
    """Every Ext^{n-i}(M, omega) is zero or Cohen-Macaulay of dimension i."""
    if M.is_zero():
        return True
    n = M.n
    P = minimal_free_resolution(M)
    for i in range(n + 1):
        E = ext_module(P, n - i)
        if E.is_zero():
            continue
        if E.krull_dim() != i or depth(E) != i:
            return False
    return True


# --- per-complex report -------------------------------------------------------------

@dataclass
class InvariantReport:
    complex: dict
    char: int
    indeg: int | None
    ld: int
    ld_route_lin: int
    ld_route_ext: int | None
    per_strand: dict[int, int | None]
    depth_profile: dict[int, float] | None
    flags: dict[str, bool | None] = field(default_factory=dict)

    @property
    def ld_E(self) -> int:
        # the exterior face ring has the same linearity defect
        return self.ld

    def to_json(self) -> dict:
        prof = None
        if self.depth_profile is not None:
            prof = {str(i): _finite(d) for i, d in sorted(self.depth_profile.items())}
        return {
            "complex": self.complex,
            "char": self.char,
            "indeg": self.indeg,
            "ld": self.ld,
            "ld_E": self.ld_E,
            "per_strand": {str(l): v for l, v in sorted(self.per_strand.items())},
            "depth_profile": prof,
            "flags": dict(self.flags),
            "routes": {"lin": self.ld_route_lin, "ext": self.ld_route_ext},
        }


@lru_cache(maxsize=4096)
def _sr_resolution(delta: SimplicialComplex, f: FieldSpec):
    return minimal_free_resolution(stanley_reisner_module(delta, f))


@lru_cache(maxsize=4096)
def ld_lin_delta(delta: SimplicialComplex, f: FieldSpec = QQ) -> int:
    """ld(K[delta]) by the strand route alone (cached)."""
    if delta.is_void:
        raise EmptyComplex("ld of the void complex is undefined")
    if delta.is_full_simplex:
        return 0
    return ld_via_lin(_sr_resolution(delta, f))


@lru_cache(maxsize=4096)
def ld_ideal(delta: SimplicialComplex, f: FieldSpec = QQ) -> int:
    """ld(I_delta) by the strand route."""
    return ld_via_lin(ideal_module(delta, f))


def ld_delta(delta: SimplicialComplex, f: FieldSpec = QQ, oracle: bool = True) -> InvariantReport:
    """Full report for K[delta]; with ``oracle`` both routes must agree."""
    from .io import complex_to_json
    if delta.is_void:
        raise EmptyComplex("ld of the void complex is undefined")
    n = delta.n
    if delta.is_full_simplex:
        return InvariantReport(complex_to_json(delta), f.p, None, 0, 0, 0 if oracle else None,
                               {l: 0 if l == 0 else None for l in range(n + 1)},
                               {i: n if i == n else INFINITY for i in range(n + 1)} if oracle else None,
                               {"is_ngon": False, "is_CM": True, "is_seq_CM": True,
                                "bound_ideal_indeg_ok": None, "bound_indeg_ok": None,
                                "bound_n_minus_2_ok": None})
    M = stanley_reisner_module(delta, f)
    P = _sr_resolution(delta, f)
    prof = lin_profile(P)
    ld = max(v for v in prof.values() if v is not None)
    ext_ld = None
    depth_prof = None
    if oracle:
        er = ext_route(M)
        ext_ld, depth_prof = er.ld, er.depth_profile
        if er.ld != ld or er.per_strand != prof:
            raise RouteMismatch(f"{delta!r} over {f}: lin {prof} vs ext {er.per_strand}")
    t = indeg(delta)
    b = _bounds(delta, f, ld, t)
    flags = {
        "is_ngon": is_ngon(delta),
        "is_CM": depth(P) == M.krull_dim(),
        "is_seq_CM": is_sequentially_CM(M),
        "bound_ideal_indeg_ok": b.ideal_indeg,
        "bound_indeg_ok": b.indeg_bound,
        "bound_n_minus_2_ok": b.n_minus_2 and b.indeg_one,
    }
    return InvariantReport(complex_to_json(delta), f.p, t, ld, ld, ext_ld, prof, depth_prof, flags)


# --- bounds ----------------------------------------------------------------------------

@dataclass
class BoundsReport:
    ld: int
    ld_ideal: int
    indeg: int
    ideal_indeg: bool   # ld(I) <= max(0, n - indeg - 1)
    indeg_bound: bool   # ld <= max(1, n - indeg)
    n_minus_2: bool     # ld <= max(1, n - 2)
    indeg_one: bool     # ld <= max(1, n - 3) when indeg = 1
    squarefree: bool    # ld <= n - 1
    ideal_shift: bool   # ld = ld(I) + 1 whenever ld >= 1

    @property
    def all_ok(self) -> bool:
        return all((self.ideal_indeg, self.indeg_bound, self.n_minus_2, self.indeg_one,
                    self.squarefree, self.ideal_shift))


def _bounds(delta, f, ld, t) -> BoundsReport:
    n = delta.n
    li = ld_ideal(delta, f)
    return BoundsReport(
        ld=ld, ld_ideal=li, indeg=t,
        ideal_indeg=li <= max(0, n - t - 1),
        indeg_bound=ld <= max(1, n - t),
        n_minus_2=ld <= max(1, n - 2),
        indeg_one=t != 1 or ld <= max(1, n - 3),
        squarefree=ld <= n - 1,
        ideal_shift=ld == 0 or ld == li + 1,
    )


def verify_bounds(delta: SimplicialComplex, f: FieldSpec = QQ) -> BoundsReport:
    if delta.is_full_simplex:
        raise FullSimplex("the bounds are stated for complexes other than 2^[n]")
    t = indeg(delta)
    return _bounds(delta, f, ld_lin_delta(delta, f), t)


# --- the top strand -----------------------------------------------------------------------

@dataclass
class TopStrandCheck:
    ld_top: bool          # ld = n - 2
    h_lin2_top: bool      # H_{n-2}(lin_2) != 0
    h_Q_pos: bool         # H_{n-3}(Q) != 0
    is_ngon: bool

    @property
    def ngon_equiv_ok(self) -> bool:
        return self.ld_top == self.h_lin2_top == self.h_Q_pos

    def to_json(self):
        return {**asdict(self), "ngon_equiv_ok": self.ngon_equiv_ok}


def _require_top_setting(delta: SimplicialComplex):
    if delta.n < 4:
        raise PreconditionFailed("needs n >= 4")
    if delta.is_void or delta.is_full_simplex or indeg(delta) < 2:
        raise PreconditionFailed("needs indeg >= 2")


def top_strand_check(delta: SimplicialComplex, f: FieldSpec = QQ) -> TopStrandCheck:
    _require_top_setting(delta)
    n = delta.n
    P = _sr_resolution(delta, f)
    Q = low_strands(P, 1)
    return TopStrandCheck(
        ld_top=ld_lin_delta(delta, f) == n - 2,
        h_lin2_top=(n - 2) in strand_homology_positions(P, 2),
        h_Q_pos=(n - 3) in Q.homology_positions(),
        is_ngon=is_ngon(delta),
    )


@dataclass
class StrandMapCheck:
    rank_resolution: int
    rank_cohomology: int
    dims_agree: bool
    short_cycle: bool
    injective: bool

    @property
    def ranks_agree(self) -> bool:
        return self.rank_resolution == self.rank_cohomology

    @property
    def ok(self) -> bool:
        return self.ranks_agree and self.dims_agree and (self.injective or not self.short_cycle)


def _h1_data(delta: SimplicialComplex, f: FieldSpec):
    """Edges, and a basis of H^1 = C^1 / im(d^0) as vectors in C^1."""
    verts = delta.faces_by_size.get(1, [])
    edges = delta.faces_by_size.get(2, [])
    d0 = coboundary_matrix(verts, edges, f)
    span = Span(len(edges), f)
    image = []
    for v in d0.columns():
        if span.add(v):
            image.append(v)
    comp = []
    for k in range(len(edges)):
        e = [1 if a == k else 0 for a in range(len(edges))]
        if span.add(e):
            comp.append(e)
    return edges, image, comp


def hochster_strand_map_check(delta: SimplicialComplex, f: FieldSpec = QQ) -> StrandMapCheck:
    """Top differential of lin_2 from the resolution versus restriction in H^1.

    Through the Hochster isomorphisms the lin_2 map from degree [n] to the
    degrees [n] - {i} is the sum over i of restriction H^1(delta) ->
    H^1(delta minus i) times x_i, up to one sign per i.  Ranks are compared.
    """
    _require_top_setting(delta)
    if delta.dim != 1:
        raise PreconditionFailed("needs a 1-dimensional complex")
    n = delta.n
    full = delta.full_mask
    P = _sr_resolution(delta, f)
    top = n - 2
    src = [g for g, F in enumerate(P.degrees[top]) if F == full] if top < len(P.degrees) else []
    tgt = [h for h, F in enumerate(P.degrees[top - 1]) if popcount(F) == n - 1]
    rows = [[P.diffs[top][g].get(h, 0) for h in tgt] for g in src]
    rank_res = rank_rows(rows, len(tgt), f) if src and tgt else 0

    _, _, h1 = _h1_data(delta, f)
    dims_ok = len(src) == len(h1)
    for i in range(n):
        rest = full & ~(1 << i)
        expected = len(_h1_data(delta.induced(rest), f)[2])
        dims_ok &= sum(1 for h in tgt if P.degrees[top - 1][h] == rest) == expected
    rank_coh = _rank_of_stacked(h1, delta, f) if h1 else 0
    short = has_cycle(delta) and not is_ngon(delta)
    return StrandMapCheck(rank_res, rank_coh, dims_ok, short, rank_coh == len(h1))


def _rank_of_stacked(h1, delta, f) -> int:
    """Rank of z -> (restriction of z to delta minus i)_i on H^1."""
    n = delta.n
    full = delta.full_mask
    edges = delta.faces_by_size.get(2, [])
    images = [[] for _ in h1]
    for i in range(n):
        sub = delta.induced(full & ~(1 << i))
        sub_edges, sub_image, sub_h1 = _h1_data(sub, f)
        if not sub_h1:
            continue
        pos = {e: k for k, e in enumerate(sub_edges)}
        targets = []
        for z in h1:
            w = [0] * len(sub_edges)
            for k, e in enumerate(edges):
                if e in pos:
                    w[pos[e]] = z[k]
            targets.append(w)
        coords = solve_in_basis(sub_image + sub_h1, targets, len(sub_edges), f)
        nb = len(sub_image)
        for t, c in enumerate(coords):
            images[t].extend(c[nb:])
    width = len(images[0]) if images else 0
    return rank_rows(images, width, f) if width else 0


# --- cones, topology, the n-gon scan ---------------------------------------------------

@dataclass
class ConeCheck:
    ld_base: int
    ld_cone: int
    apex: int
    ambient: int

    @property
    def ok(self) -> bool:
        return self.ld_base == self.ld_cone


def cone_invariance_check(delta: SimplicialComplex, f: FieldSpec = QQ) -> ConeCheck:
    """Compare ld(delta) with ld of its cone over an unused vertex.

    When every vertex of [n] is used the apex is a new vertex n + 1.
    """
    if delta.is_void:
        raise PreconditionFailed("the void complex has no cone")
    unused = [v for v in range(1, delta.n + 1) if not delta.vertex_mask >> (v - 1) & 1]
    base = delta
    if unused:
        apex = unused[0]
    else:
        base = delta.with_ambient(delta.n + 1)
        apex = delta.n + 1
    cone = base.cone(apex)
    return ConeCheck(ld_lin_delta(delta, f), ld_lin_delta(cone, f), apex, cone.n)


def _probe_families():
    from .builtins import cyclic_sphere, ngon
    circles = [ngon(m).alexander_dual().renamed(f"dual of ngon:{m}") for m in (4, 5, 6)]
    spheres = [cyclic_sphere(m, 3).alexander_dual().renamed(f"dual of cyclic_sphere:{m},3")
               for m in (5, 6)]
    return {"circle": circles, "2-sphere": spheres}


@dataclass
class ProbeReport:
    char: int
    values: dict[str, dict[str, int]]

    @property
    def ok(self) -> bool:
        return all(len(set(v.values())) == 1 for v in self.values.values())


def topological_invariance_probe(f: FieldSpec = QQ) -> ProbeReport:
    """Within each family the Alexander duals triangulate the same space."""
    values = {}
    for fam, members in _probe_families().items():
        vals = {}
        for delta in members:
            rep = ld_delta(delta, f, oracle=True)
            vals[delta.name] = rep.ld
        values[fam] = vals
    return ProbeReport(f.p, values)


@dataclass
class NgonScan:
    n: int
    char: int
    classes: int
    extremal: list[list[list[int]]]
    extremal_are_ngons: bool
    ngon_count: int
    bound_violations: int
    ld_histogram: dict[int, int]

    @property
    def ok(self) -> bool:
        return (self.extremal_are_ngons and len(self.extremal) == self.ngon_count == 1
                and self.bound_violations == 0)

    def to_json(self):
        return {**asdict(self), "ok": self.ok}


def ngon_theorem_scan(n: int, f: FieldSpec = QQ, allow_n6: bool = False,
                      oracle: bool = False) -> NgonScan:
    """ld = n - 2 exactly for the n-gon, over all symmetry classes on [n]."""
    from .enumerate import enumerate_complexes
    from .errors import BadParams
    if n < 4:
        raise BadParams("the n-gon scan needs n >= 4")
    classes = 0
    extremal, ngons, violations, hist = [], 0, 0, {}
    all_ngon = True
    for delta in enumerate_complexes(n, up_to_symmetry=True, allow_n6=allow_n6):
        if delta.is_void:
            continue
        classes += 1
        ld = ld_delta(delta, f).ld if oracle else ld_lin_delta(delta, f)
        hist[ld] = hist.get(ld, 0) + 1
        ng = is_ngon(delta)
        ngons += ng
        if ld == n - 2:
            extremal.append(delta.facet_lists())
            all_ngon &= ng
        elif ng:
            all_ngon = False
        if ld > max(1, n - 2):
            violations += 1
    return NgonScan(n, f.p, classes, extremal, all_ngon, ngons, violations, dict(sorted(hist.items())))
