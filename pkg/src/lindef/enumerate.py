"""Exhaustive enumeration of simplicial complexes on [n].

A complex is a down-set of the Boolean lattice, encoded as a bitset over the
2^n masks.  Down-sets on [n] are exactly pairs A <= B of down-sets on [n-1]
(B = faces avoiding n, A = faces through n with n removed), which gives a
simple recursive generator.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from typing import Iterator

from .errors import BadParams
from .simplicial import SimplicialComplex, bits_of

MAX_DEFAULT = 5
MAX_OPT_IN = 6


@lru_cache(maxsize=None)
def down_sets(n: int) -> tuple[int, ...]:
    """All down-sets of 2^[n] as bitsets (bit F set iff F is a face)."""
    if n == 0:
        return (0, 1)            # void, and {emptyset}
    prev = down_sets(n - 1)
    shift = 1 << (n - 1)
    out = []
    for B in prev:
        for A in prev:
            if A & ~B == 0:
                out.append(B | (A << shift))
    return tuple(out)


def _facets_of(bitset: int, n: int) -> tuple[int, ...]:
    faces = [F for F in range(1 << n) if bitset >> F & 1]
    return tuple(F for F in faces
                 if not any(bitset >> (F | (1 << b)) & 1 for b in bits_of(((1 << n) - 1) & ~F)))


@lru_cache(maxsize=None)
def _perm_tables(n: int) -> tuple[tuple[int, ...], ...]:
    tables = []
    for perm in permutations(range(n)):
        row = []
        for F in range(1 << n):
            G = 0
            for b in bits_of(F):
                G |= 1 << perm[b]
            row.append(G)
        tables.append(tuple(row))
    return tuple(tables)


def canonical_signature(delta: SimplicialComplex) -> tuple[int, ...]:
    """Lexicographically least sorted facet tuple over all relabelings."""
    return min(tuple(sorted(t[F] for F in delta.facets)) for t in _perm_tables(delta.n))


def _check_range(n: int, allow_n6: bool):
    top = MAX_OPT_IN if allow_n6 else MAX_DEFAULT
    if not 1 <= n <= top:
        hint = "" if allow_n6 or n != MAX_OPT_IN else " (n = 6 needs allow_n6=True)"
        raise BadParams(f"enumeration supports 1 <= n <= {top}{hint}")


def enumerate_complexes(n: int, up_to_symmetry: bool = False,
                        allow_n6: bool = False) -> Iterator[SimplicialComplex]:
    """Every complex on [n] except 2^[n], the void complex included.

    With ``up_to_symmetry`` one canonical representative per orbit of the
    symmetric group is produced, in increasing signature order.
    """
    _check_range(n, allow_n6)
    full_bitset = (1 << (1 << n)) - 1
    if not up_to_symmetry:
        for D in down_sets(n):
            if D != full_bitset:
                yield SimplicialComplex(n, _facets_of(D, n))
        return
    seen: set[tuple[int, ...]] = set()
    for D in down_sets(n):
        if D == full_bitset:
            continue
        sig = canonical_signature(SimplicialComplex(n, _facets_of(D, n)))
        seen.add(sig)
    for sig in sorted(seen):
        yield SimplicialComplex(n, sig)


def count_complexes(n: int, up_to_symmetry: bool = False, allow_n6: bool = False) -> int:
    return sum(1 for _ in enumerate_complexes(n, up_to_symmetry, allow_n6))
