"""Simplicial complexes on [n] stored as antichains of facet bit masks.

Vertex ``v`` (1-based, as in all I/O) is bit ``v - 1``.  The void complex
(no faces) has ``facets == ()``; the irrelevant complex {emptyset} has
``facets == (0,)``.  The two are different values and only the latter has a
Stanley-Reisner ring.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator

from .errors import EmptyComplex, FullSimplex, NonDisjointJoin, VertexOutOfRange
from .linalg import QQ, FieldSpec, Matrix, rank_rows

MAX_VERTICES = 20


def popcount(x: int) -> int:
    return x.bit_count()


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << (v - 1)
    return m


def vertices_of(mask: int) -> list[int]:
    out = []
    v = 1
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return out


def bits_of(mask: int) -> list[int]:
    """0-based indices of the set bits of mask, ascending."""
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def submasks(mask: int) -> Iterator[int]:
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


def format_mask(mask: int) -> str:
    return "{" + ",".join(map(str, vertices_of(mask))) + "}"


def _maximal(masks: Iterable[int]) -> tuple[int, ...]:
    ms = sorted(set(masks), key=lambda m: (-popcount(m), m))
    keep: list[int] = []
    for m in ms:
        if not any(m & k == m for k in keep):
            keep.append(m)
    return tuple(sorted(keep))


@dataclass(frozen=True)
class SimplicialComplex:
    n: int
    facets: tuple[int, ...]
    name: str | None = field(default=None, compare=False)

    def __post_init__(self):
        if not 0 <= self.n <= MAX_VERTICES:
            raise VertexOutOfRange(f"n={self.n} outside 0..{MAX_VERTICES}")
        full = (1 << self.n) - 1
        for f in self.facets:
            if f & ~full:
                raise VertexOutOfRange(
                    f"facet {format_mask(f)} not contained in [{self.n}]")

    # construction ----------------------------------------------------------
    @classmethod
    def from_masks(cls, n: int, masks: Iterable[int], name=None) -> "SimplicialComplex":
        return cls(n, _maximal(masks), name)

    @classmethod
    def from_facets(cls, n: int, facets: Iterable[Iterable[int]],
                    empty_face: bool = False, name=None) -> "SimplicialComplex":
        """Build from 1-based vertex lists; redundant faces are absorbed.

        ``from_facets(n, [], empty_face=True)`` is the complex {emptyset};
        ``from_facets(n, [])`` is the void complex.
        """
        masks = []
        for f in facets:
            f = list(f)
            for v in f:
                if not 1 <= v <= n:
                    raise VertexOutOfRange(f"vertex {v} not in [1, {n}]")
            masks.append(mask_of(f))
        if empty_face:
            masks.append(0)
        return cls.from_masks(n, masks, name)

    @classmethod
    def void(cls, n: int) -> "SimplicialComplex":
        return cls(n, ())

    @classmethod
    def irrelevant(cls, n: int) -> "SimplicialComplex":
        return cls(n, (0,))

    def renamed(self, name: str) -> "SimplicialComplex":
        return SimplicialComplex(self.n, self.facets, name)

    def __repr__(self):
        body = ", ".join(format_mask(f) for f in self.facets)
        tag = f" {self.name!r}" if self.name else ""
        return f"SimplicialComplex(n={self.n}, facets=[{body}]{tag})"

    def facet_lists(self) -> list[list[int]]:
        return [vertices_of(f) for f in self.facets]

    # basic queries -----------------------------------------------------------
    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    @property
    def is_void(self) -> bool:
        return not self.facets

    @property
    def is_full_simplex(self) -> bool:
        return self.facets == (self.full_mask,)

    def is_simplex(self) -> bool:
        """True iff the complex is 2^T for some T (including {emptyset})."""
        return len(self.facets) == 1

    @cached_property
    def faces(self) -> tuple[int, ...]:
        seen: set[int] = set()
        for f in self.facets:
            if f in seen:
                continue
            seen.update(submasks(f))
        return tuple(sorted(seen, key=lambda m: (popcount(m), m)))

    @cached_property
    def face_set(self) -> frozenset[int]:
        return frozenset(self.faces)

    def __contains__(self, mask: int) -> bool:
        return mask in self.face_set

    @cached_property
    def faces_by_size(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = defaultdict(list)
        for f in self.faces:
            out[popcount(f)].append(f)
        return dict(out)

    @property
    def dim(self) -> int:
        """dim of the complex; -1 for {emptyset}, None for the void complex."""
        if self.is_void:
            return None
        return max(popcount(f) for f in self.facets) - 1

    @cached_property
    def vertex_mask(self) -> int:
        m = 0
        for f in self.facets:
            m |= f
        return m

    def ver(self) -> list[int]:
        return vertices_of(self.vertex_mask)

    def f_vector(self) -> list[int]:
        return [len(self.faces_by_size.get(k, ())) for k in range(self.n + 1)]

    def is_pure(self) -> bool:
        return len({popcount(f) for f in self.facets}) <= 1

    # operators ---------------------------------------------------------------
    @cached_property
    def minimal_nonfaces(self) -> tuple[int, ...]:
        if self.is_void:
            return (0,)
        fs = self.face_set
        out = set()
        for g in self.faces:
            for b in bits_of(self.full_mask & ~g):
                cand = g | (1 << b)
                if cand in fs or cand in out:
                    continue
                if all((cand & ~(1 << c)) in fs for c in bits_of(cand)):
                    out.add(cand)
        return tuple(sorted(out, key=lambda m: (popcount(m), m)))

    def alexander_dual(self) -> "SimplicialComplex":
        full = self.full_mask
        name = f"dual({self.name})" if self.name else None
        return SimplicialComplex.from_masks(
            self.n, (full & ~m for m in self.minimal_nonfaces), name)

    def induced(self, mask: int) -> "SimplicialComplex":
        if mask & ~self.full_mask:
            raise VertexOutOfRange(f"{format_mask(mask)} not in [{self.n}]")
        return SimplicialComplex.from_masks(self.n, (f & mask for f in self.facets))

    def link(self, mask: int) -> "SimplicialComplex":
        if mask & ~self.full_mask:
            raise VertexOutOfRange(f"{format_mask(mask)} not in [{self.n}]")
        return SimplicialComplex.from_masks(
            self.n, (f & ~mask for f in self.facets if f & mask == mask))

    def skeleton(self, i: int) -> "SimplicialComplex":
        if self.is_void:
            return self
        return SimplicialComplex.from_masks(
            self.n, (f for f in self.faces if popcount(f) <= i + 1))

    def join(self, other: "SimplicialComplex") -> "SimplicialComplex":
        if other.n != self.n:
            raise NonDisjointJoin("join needs a common ambient vertex set")
        if self.vertex_mask & other.vertex_mask:
            raise NonDisjointJoin("join needs disjoint vertex supports")
        return SimplicialComplex.from_masks(
            self.n, (f | g for f in self.facets for g in other.facets))

    def cone(self, v: int) -> "SimplicialComplex":
        if not 1 <= v <= self.n:
            raise VertexOutOfRange(f"vertex {v} not in [1, {self.n}]")
        return self.join(SimplicialComplex(self.n, (1 << (v - 1),)))

    def with_ambient(self, n: int) -> "SimplicialComplex":
        """The same faces regarded as a complex on [n] (n >= self.n)."""
        if n < self.n:
            raise VertexOutOfRange("ambient vertex set can only grow")
        return SimplicialComplex(n, self.facets, self.name)

    def permuted(self, perm: Iterable[int]) -> "SimplicialComplex":
        """Relabel vertex v as perm[v-1] (perm is a 1-based permutation list)."""
        perm = list(perm)
        return SimplicialComplex.from_masks(
            self.n, (mask_of(perm[v - 1] for v in vertices_of(f)) for f in self.facets))


# --- homology ---------------------------------------------------------------

def _boundary_rows(lower: list[int], upper: list[int], f: FieldSpec) -> list[list]:
    """Rows indexed by ``lower`` (size k), columns by ``upper`` (size k+1)."""
    index = {g: i for i, g in enumerate(lower)}
    rows = [[0] * len(upper) for _ in lower]
    neg = f.sign(1)
    for j, h in enumerate(upper):
        for pos, b in enumerate(bits_of(h)):
            rows[index[h & ~(1 << b)]][j] = neg if pos % 2 else 1
    return rows


def coboundary_matrix(faces_lo: list[int], faces_hi: list[int], f: FieldSpec) -> Matrix:
    """Coboundary C^{k} -> C^{k+1}: rows indexed by faces_hi, columns by faces_lo."""
    rows = _boundary_rows(faces_lo, faces_hi, f)
    return Matrix(len(faces_lo), len(faces_hi), rows).transpose()


def boundary_matrix(faces_lo: list[int], faces_hi: list[int], f: FieldSpec) -> Matrix:
    return Matrix(len(faces_lo), len(faces_hi), _boundary_rows(faces_lo, faces_hi, f))


def _reduced_dims_from_groups(groups: dict[int, list[int]], n: int,
                              f: FieldSpec) -> list[int]:
    # ranks[k] = rank of the boundary from size-(k+1) faces to size-k faces
    ranks = [0] * (n + 2)
    for k in range(n + 1):
        lo, hi = groups.get(k, []), groups.get(k + 1, [])
        if lo and hi:
            ranks[k] = rank_rows(_boundary_rows(lo, hi, f), len(hi), f)
    out = []
    for k in range(n + 1):
        c = len(groups.get(k, ()))
        out.append(c - ranks[k] - (ranks[k - 1] if k else 0))
    return out


def reduced_cohomology_dims(delta: SimplicialComplex, f: FieldSpec = QQ) -> list[int]:
    """``out[k + 1] = dim H~^k(delta; f)`` for k = -1, ..., n-1."""
    if delta.is_void:
        return [0] * (delta.n + 1)
    return _reduced_dims_from_groups(delta.faces_by_size, delta.n, f)


def boundary_ranks(delta: SimplicialComplex, f: FieldSpec) -> list[int]:
    groups = delta.faces_by_size
    out = []
    for k in range(delta.n + 1):
        lo, hi = groups.get(k, []), groups.get(k + 1, [])
        out.append(rank_rows(_boundary_rows(lo, hi, f), len(hi), f) if lo and hi else 0)
    return out


# --- Betti tables -----------------------------------------------------------

class BettiTable:
    """Multigraded Betti numbers beta_{i,F}; only nonzero entries are stored."""

    def __init__(self, n: int, entries: dict[tuple[int, int], int] | None = None):
        self.n = n
        self.entries = {k: v for k, v in (entries or {}).items() if v}
        for (i, F) in self.entries:
            if i > popcount(F) or F >> n:
                raise ValueError(f"beta_{{{i},{format_mask(F)}}} is out of range")

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def __eq__(self, other):
        if not isinstance(other, BettiTable):
            return NotImplemented
        return self.n == other.n and self.entries == other.entries

    def __repr__(self):
        return f"BettiTable(n={self.n}, {self.graded()})"

    def items(self):
        return sorted(self.entries.items(), key=lambda kv: (kv[0][0], popcount(kv[0][1]), kv[0][1]))

    def graded(self) -> dict[tuple[int, int], int]:
        """Z-graded aggregation beta_{i,j} = sum over |F| = j."""
        out: dict[tuple[int, int], int] = defaultdict(int)
        for (i, F), v in self.entries.items():
            out[(i, popcount(F))] += v
        return dict(sorted(out.items()))

    def beta(self, i: int, j: int) -> int:
        return sum(v for (a, F), v in self.entries.items() if a == i and popcount(F) == j)

    def total(self, i: int) -> int:
        return sum(v for (a, _), v in self.entries.items() if a == i)

    @property
    def proj_dim(self):
        if not self.entries:
            return float("-inf")
        return max(i for i, _ in self.entries)

    def to_json(self) -> list[dict]:
        return [{"i": i, "F": vertices_of(F), "mult": v} for (i, F), v in self.items()]


def hochster_betti(delta: SimplicialComplex, f: FieldSpec = QQ) -> BettiTable:
    """beta_{i,F}(K[delta]) = dim H~^{|F|-i-1}(delta_F) for all F in 2^[n]."""
    if delta.is_void:
        raise EmptyComplex("the void complex has no Stanley-Reisner ring")
    n = delta.n
    faces = delta.faces
    entries = {}
    for F in range(1 << n):
        groups: dict[int, list[int]] = defaultdict(list)
        for g in faces:
            if g & ~F == 0:
                groups[popcount(g)].append(g)
        dims = _reduced_dims_from_groups(groups, n, f)
        size = popcount(F)
        for k1, d in enumerate(dims):
            i = size - k1  # k1 = k + 1 with k the cohomological degree
            if d and i >= 0:
                entries[(i, F)] = d
    return BettiTable(n, entries)


def indeg(delta: SimplicialComplex) -> int:
    """Minimum cardinality of a nonface."""
    if delta.is_void:
        raise EmptyComplex("the void complex has no Stanley-Reisner ideal")
    if delta.is_full_simplex:
        raise FullSimplex("2^[n] has no nonfaces")
    return min(popcount(m) for m in delta.minimal_nonfaces)


def edge_graph(delta: SimplicialComplex) -> dict[int, set[int]]:
    """Adjacency (0-based vertex bits) of the 1-skeleton."""
    adj: dict[int, set[int]] = {b: set() for b in bits_of(delta.vertex_mask)}
    for e in delta.faces_by_size.get(2, ()):
        a, b = bits_of(e)
        adj[a].add(b)
        adj[b].add(a)
    return adj


def _connected(adj: dict[int, set[int]]) -> bool:
    if not adj:
        return True
    start = next(iter(adj))
    seen = {start}
    stack = [start]
    while stack:
        v = stack.pop()
        for w in adj[v]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) == len(adj)


def is_ngon(delta: SimplicialComplex) -> bool:
    n = delta.n
    if n < 3 or len(delta.facets) != n:
        return False
    if any(popcount(f) != 2 for f in delta.facets):
        return False
    if delta.vertex_mask != delta.full_mask:
        return False
    adj = edge_graph(delta)
    return all(len(nb) == 2 for nb in adj.values()) and _connected(adj)


def has_cycle(delta: SimplicialComplex) -> bool:
    """Whether the 1-skeleton contains a cycle (edges > vertices - components)."""
    adj = edge_graph(delta)
    seen: set[int] = set()
    components = 0
    for v in adj:
        if v in seen:
            continue
        components += 1
        stack = [v]
        seen.add(v)
        while stack:
            u = stack.pop()
            for w in adj[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
    edges = len(delta.faces_by_size.get(2, ()))
    return edges > len(adj) - components
