"""Named families of simplicial complexes, validated at construction."""
from __future__ import annotations

from itertools import combinations

from .errors import BadParams, BuiltinValidationFailed, ParseError
from .linalg import QQ, FieldSpec
from .simplicial import SimplicialComplex, popcount, reduced_cohomology_dims

# Six-vertex real projective plane: the antipodal quotient of the icosahedron.
RP2_6_FACETS = (
    (1, 2, 3), (1, 3, 4), (1, 4, 5), (1, 5, 6), (1, 2, 6),
    (2, 3, 5), (2, 4, 5), (2, 4, 6), (3, 4, 6), (3, 5, 6),
)

# Moebius' seven-vertex torus: triangles {i, i+1, i+3} and {i, i+2, i+3} mod 7.
TORUS_7_FACETS = tuple(
    tuple(sorted((i + a) % 7 + 1 for a in shape))
    for i in range(7) for shape in ((0, 1, 3), (0, 2, 3))
)


def _h(delta: SimplicialComplex, k: int, f: FieldSpec) -> int:
    return reduced_cohomology_dims(delta, f)[k + 1]


def _require(cond: bool, what: str):
    if not cond:
        raise BuiltinValidationFailed(what)


def ngon(n: int) -> SimplicialComplex:
    if n < 3:
        raise BadParams("ngon needs n >= 3")
    edges = [(i, i + 1) for i in range(1, n)] + [(1, n)]
    return SimplicialComplex.from_facets(n, edges, name=f"ngon:{n}")


def full_simplex(n: int) -> SimplicialComplex:
    if n < 0:
        raise BadParams("full_simplex needs n >= 0")
    return SimplicialComplex(n, ((1 << n) - 1,), name=f"full_simplex:{n}")


def boundary(n: int) -> SimplicialComplex:
    """2^[n] minus the top face [n]."""
    if n < 1:
        raise BadParams("boundary needs n >= 1")
    full = (1 << n) - 1
    return SimplicialComplex.from_masks(n, (full & ~(1 << b) for b in range(n)),
                                        name=f"boundary:{n}")


def gale_evenness(subset: tuple[int, ...], m: int) -> bool:
    """Every maximal run of consecutive elements avoiding 1 and m is even."""
    s = set(subset)
    v = 1
    while v <= m:
        if v in s:
            start = v
            while v + 1 in s:
                v += 1
            if start != 1 and v != m and (v - start + 1) % 2:
                return False
        v += 1
    return True


def cyclic_sphere(m: int, d: int) -> SimplicialComplex:
    """Boundary of the cyclic polytope C(m, d), a (d-1)-sphere on m vertices."""
    if not (d >= 2 and m > d):
        raise BadParams("cyclic_sphere needs m > d >= 2")
    facets = [c for c in combinations(range(1, m + 1), d) if gale_evenness(c, m)]
    delta = SimplicialComplex.from_facets(m, facets, name=f"cyclic_sphere:{m},{d}")
    _require(all(popcount(f) == d for f in delta.facets),
             f"cyclic_sphere({m},{d}) is not pure of dimension {d - 1}")
    dims = reduced_cohomology_dims(delta, QQ)
    expected = [0] * (m + 1)
    expected[d] = 1
    _require(dims == expected, f"cyclic_sphere({m},{d}) has homology {dims}")
    return delta


def sharp_family(n: int, d: int) -> SimplicialComplex:
    """A (d-1)-sphere on all of [n] together with the (d-2)-skeleton of 2^[n]."""
    if not (2 <= d < n - 1):
        raise BadParams("sharp_family needs 2 <= d < n - 1")
    sphere = cyclic_sphere(n, d)
    skel = full_simplex(n).skeleton(d - 2)
    return SimplicialComplex.from_masks(n, sphere.facets + skel.facets,
                                        name=f"sharp_family:{n},{d}")


def rp2_6() -> SimplicialComplex:
    delta = SimplicialComplex.from_facets(6, RP2_6_FACETS, name="rp2_6")
    _require(delta.vertex_mask == 0b111111 and len(delta.facets) == 10,
             "rp2_6 must have 6 vertices and 10 triangles")
    _require(_h(delta, 1, FieldSpec(2)) == 1 and _h(delta, 2, FieldSpec(2)) == 1,
             "rp2_6 must have H~^1 = H~^2 = 1 over GF(2)")
    _require(_h(delta, 1, QQ) == 0 and _h(delta, 2, QQ) == 0,
             "rp2_6 must be Q-acyclic")
    _require(delta.alexander_dual() == delta, "rp2_6 must be self-dual")
    return delta


def torus_7() -> SimplicialComplex:
    delta = SimplicialComplex.from_facets(7, TORUS_7_FACETS, name="torus_7")
    _require(delta.vertex_mask == 0b1111111 and len(delta.facets) == 14,
             "torus_7 must have 7 vertices and 14 triangles")
    _require(reduced_cohomology_dims(delta, QQ) == [0, 0, 2, 1, 0, 0, 0, 0],
             "torus_7 must have H~^1 = 2, H~^2 = 1")
    return delta


BUILTINS = {
    "ngon": (ngon, 1),
    "full_simplex": (full_simplex, 1),
    "boundary": (boundary, 1),
    "cyclic_sphere": (cyclic_sphere, 2),
    "sharp_family": (sharp_family, 2),
    "rp2_6": (rp2_6, 0),
    "torus_7": (torus_7, 0),
}


def builtin(name: str, *params: int) -> SimplicialComplex:
    try:
        ctor, arity = BUILTINS[name]
    except KeyError:
        raise ParseError(f"unknown builtin {name!r}; known: {sorted(BUILTINS)}") from None
    if len(params) != arity:
        raise ParseError(f"{name} takes {arity} parameter(s), got {len(params)}")
    return ctor(*params)


def parse_builtin(label: str) -> SimplicialComplex:
    """Parse ``name[:p1,p2,...]``, e.g. ``sharp_family:6,3``."""
    name, _, rest = label.partition(":")
    try:
        params = [int(x) for x in rest.split(",")] if rest else []
    except ValueError:
        raise ParseError(f"bad parameters in {label!r}") from None
    return builtin(name.strip(), *params)
