"""Squarefree S-modules as representations of the Boolean lattice 2^[n].

A module stores one vector space per squarefree degree F (its dimension) and,
for every cover F < F + {i}, the matrix of multiplication by x_i.  Maps
between non-adjacent degrees are composites, well defined because the two
paths around every square agree.
"""
from __future__ import annotations

import json
from collections import deque
from fractions import Fraction
from typing import Callable

from .errors import AmbientMismatch, EmptyComplex, FieldMismatch
from .linalg import QQ, FieldSpec, Matrix, matmul
from .simplicial import SimplicialComplex, bits_of, popcount, vertices_of, mask_of

MINUS_INFINITY = float("-inf")


def _elem_json(x):
    if isinstance(x, Fraction):
        return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"
    return x


class SquarefreeModule:
    """Finite representation of a squarefree module over ``K[x_1..x_n]``."""

    def __init__(self, n: int, field: FieldSpec, dims, covers=None, check: bool = __debug__):
        dims = tuple(int(d) for d in dims)
        if len(dims) != 1 << n:
            raise AmbientMismatch(f"expected {1 << n} graded pieces, got {len(dims)}")
        self.n = n
        self.field = field
        self.dims = dims
        self.covers: dict[tuple[int, int], Matrix] = {}
        for (F, i), m in (covers or {}).items():
            if F >> i & 1:
                raise ValueError(f"cover ({F}, {i}) leaves the lattice")
            G = F | (1 << i)
            if not isinstance(m, Matrix):
                m = Matrix(dims[G], dims[F], [list(r) for r in m])
            if m.shape != (dims[G], dims[F]):
                raise ValueError(f"cover ({F},{i}) has shape {m.shape}, "
                                 f"expected {(dims[G], dims[F])}")
            if dims[F] and dims[G]:
                self.covers[(F, i)] = m
        if check:
            self.check_commutativity()

    # queries ---------------------------------------------------------------
    def cover(self, F: int, i: int) -> Matrix:
        m = self.covers.get((F, i))
        if m is None:
            return Matrix.zeros(self.dims[F | (1 << i)], self.dims[F])
        return m

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def is_zero(self) -> bool:
        return not any(self.dims)

    def dims_total(self) -> int:
        return sum(self.dims)

    def support(self) -> list[int]:
        return [F for F, d in enumerate(self.dims) if d]

    def krull_dim(self):
        """max |F| over nonzero pieces; MINUS_INFINITY for the zero module."""
        sup = self.support()
        if not sup:
            return MINUS_INFINITY
        return max(popcount(F) for F in sup)

    def is_thin(self) -> bool:
        return all(d <= 1 for d in self.dims)

    def phi(self, G: int, F: int) -> Matrix:
        """The structure map M_F -> M_G for F a subset of G."""
        if F & ~G:
            raise ValueError("phi(G, F) needs F contained in G")
        out = Matrix.identity(self.dims[F])
        cur = F
        for b in bits_of(G & ~F):
            out = matmul(self.cover(cur, b), out, self.field)
            cur |= 1 << b
        return out

    def check_commutativity(self):
        f = self.field
        for F in range(1 << self.n):
            if not self.dims[F]:
                continue
            free = bits_of(self.full_mask & ~F)
            for a, i in enumerate(free):
                for j in free[a + 1:]:
                    top = F | (1 << i) | (1 << j)
                    if not self.dims[top]:
                        continue
                    left = matmul(self.cover(F | (1 << i), j), self.cover(F, i), f)
                    right = matmul(self.cover(F | (1 << j), i), self.cover(F, j), f)
                    if left != right:
                        raise ValueError(
                            f"square at F={vertices_of(F)}, x{i + 1}, x{j + 1} does not commute")

    def __eq__(self, other):
        if not isinstance(other, SquarefreeModule):
            return NotImplemented
        if (self.n, self.field, self.dims) != (other.n, other.field, other.dims):
            return False
        keys = set(self.covers) | set(other.covers)
        return all(self.cover(*k) == other.cover(*k) for k in keys)

    def __repr__(self):
        return (f"SquarefreeModule(n={self.n}, {self.field}, "
                f"total_dim={self.dims_total()}, support={len(self.support())})")

    # serialisation -----------------------------------------------------------
    def to_json(self) -> dict:
        dims = {json.dumps(vertices_of(F), separators=(",", ":")): d
                for F, d in enumerate(self.dims) if d}
        covers = {}
        for (F, i), m in sorted(self.covers.items()):
            key = json.dumps(vertices_of(F), separators=(",", ":")) + f",{i + 1}"
            covers[key] = [[_elem_json(x) for x in r] for r in m.entries]
        return {"n": self.n, "char": self.field.p, "dims": dims, "covers": covers}

    @classmethod
    def from_json(cls, data: dict, field: FieldSpec | None = None) -> "SquarefreeModule":
        n = data["n"]
        f = field or FieldSpec(data.get("char", 0))
        dims = [0] * (1 << n)
        for key, d in data["dims"].items():
            dims[mask_of(json.loads(key))] = d
        covers = {}
        for key, rows in data["covers"].items():
            head, _, i = key.rpartition(",")
            F = mask_of(json.loads(head))
            covers[(F, int(i) - 1)] = [[f(x) for x in r] for r in rows]
        return cls(n, f, dims, covers)


def _thin(n: int, f: FieldSpec, inside: Callable[[int], bool]) -> SquarefreeModule:
    dims = [1 if inside(F) else 0 for F in range(1 << n)]
    covers = {}
    for F in range(1 << n):
        if dims[F]:
            for i in bits_of(((1 << n) - 1) & ~F):
                if dims[F | (1 << i)]:
                    covers[(F, i)] = Matrix(1, 1, [[1]])
    return SquarefreeModule(n, f, dims, covers, check=False)


def stanley_reisner_module(delta: SimplicialComplex, f: FieldSpec = QQ) -> SquarefreeModule:
    """K[delta]: one-dimensional exactly on the faces."""
    if delta.is_void:
        raise EmptyComplex("the void complex has no Stanley-Reisner ring")
    fs = delta.face_set
    return _thin(delta.n, f, fs.__contains__)


def ideal_module(delta: SimplicialComplex, f: FieldSpec = QQ) -> SquarefreeModule:
    """I_delta: one-dimensional exactly on the nonfaces."""
    fs = delta.face_set
    return _thin(delta.n, f, lambda F: F not in fs)


def free_module(n: int, F: int, f: FieldSpec = QQ) -> SquarefreeModule:
    """S(-F), with F a bit mask."""
    return _thin(n, f, lambda G: G & F == F)


def polynomial_ring(n: int, f: FieldSpec = QQ) -> SquarefreeModule:
    return free_module(n, 0, f)


def canonical_module(n: int, f: FieldSpec = QQ) -> SquarefreeModule:
    """omega_S = S(-[n])."""
    return free_module(n, (1 << n) - 1, f)


def residue_field(n: int, f: FieldSpec = QQ) -> SquarefreeModule:
    return _thin(n, f, lambda G: G == 0)


def face_module(n: int, F: int, f: FieldSpec = QQ) -> SquarefreeModule:
    """K[F] = S / (x_i : i not in F)."""
    return _thin(n, f, lambda G: G & ~F == 0)


def zero_module(n: int, f: FieldSpec = QQ) -> SquarefreeModule:
    return SquarefreeModule(n, f, [0] * (1 << n), {}, check=False)


def direct_sum(M: SquarefreeModule, N: SquarefreeModule) -> SquarefreeModule:
    if M.field != N.field:
        raise FieldMismatch(f"{M.field} vs {N.field}")
    if M.n != N.n:
        raise AmbientMismatch(f"n={M.n} vs n={N.n}")
    dims = [a + b for a, b in zip(M.dims, N.dims)]
    covers = {}
    for F in range(1 << M.n):
        for i in bits_of(M.full_mask & ~F):
            G = F | (1 << i)
            if not (dims[F] and dims[G]):
                continue
            a, b = M.cover(F, i), N.cover(F, i)
            rows = [r + [0] * b.cols for r in a.entries]
            rows += [[0] * a.cols + r for r in b.entries]
            covers[(F, i)] = Matrix(dims[G], dims[F], rows)
    return SquarefreeModule(M.n, M.field, dims, covers, check=False)


SignRule = Callable[[int, int], int]


def alexander_functor(M: SquarefreeModule, sign: SignRule | None = None) -> SquarefreeModule:
    """The exact contravariant duality A with A(M)_F = (M_{[n] - F})^*.

    The cover A(M)_F -> A(M)_{F+i} is the transpose of multiplication
    M_{F^c - i} -> M_{F^c}, times (-1)**sign(i, F).  The default sign is
    identically 0, which already satisfies commutativity.
    """
    n, full, f = M.n, M.full_mask, M.field
    dims = [M.dims[full & ~F] for F in range(1 << n)]
    covers = {}
    for (H, i), m in M.covers.items():
        # M cover H -> H + i dualises to A-cover F -> F + i with F = [n] - (H + i)
        F = full & ~(H | (1 << i))
        t = m.transpose()
        if sign is not None and sign(i, F) % 2:
            t = t.scaled(f.sign(1), f)
        covers[(F, i)] = t
    return SquarefreeModule(n, f, dims, covers, check=__debug__ and sign is not None)


def double_dual_iso(M: SquarefreeModule, sign: SignRule | None = None) -> dict[int, int] | None:
    """Scalars lam_F with lam_F * Id : M_F -> A(A(M))_F a natural isomorphism.

    Returns None when no such sign pattern is consistent.
    """
    if sign is None:
        return {F: 1 for F in range(1 << M.n)}
    full = M.full_mask
    f = M.field
    lam = {0: 1}
    queue = deque([0])
    while queue:
        F = queue.popleft()
        for i in bits_of(full & ~F):
            G = F | (1 << i)
            twist = sign(i, F) + sign(i, full & ~G)
            val = f.mul(lam[F], f.sign(twist))
            if G in lam:
                if lam[G] != val:
                    return None
            else:
                lam[G] = val
                queue.append(G)
    AA = alexander_functor(alexander_functor(M, sign), sign)
    for (F, i) in set(M.covers) | set(AA.covers):
        G = F | (1 << i)
        lhs = AA.cover(F, i).scaled(lam[F], f)
        rhs = M.cover(F, i).scaled(lam[G], f)
        if lhs != rhs:
            return None
    return lam


def thin_isomorphism(M: SquarefreeModule, N: SquarefreeModule) -> dict[int, object] | None:
    """Explicit isomorphism between modules with all pieces of dimension <= 1.

    Returns nonzero scalars c_F with N_cover * c_F = c_{F+i} * M_cover, or None.
    """
    if (M.n, M.field, M.dims) != (N.n, N.field, N.dims) or not M.is_thin():
        return None
    f = M.field
    full = M.full_mask
    scal: dict[int, object] = {}

    def entry(mod, F, i):
        m = mod.cover(F, i).entries
        return m[0][0] if m else 0

    for start in M.support():
        if start in scal:
            continue
        scal[start] = 1
        queue = deque([start])
        while queue:
            F = queue.popleft()
            for i in bits_of(full):
                G = F ^ (1 << i)
                if not M.dims[G]:
                    continue
                lo = F & G
                a, b = entry(M, lo, i), entry(N, lo, i)
                if (a == 0) != (b == 0):
                    return None
                if a == 0:
                    continue
                # relation b * c_lo = a * c_hi
                if G > F:
                    val = f.mul(f.mul(b, scal[F]), f.inv(a))
                else:
                    val = f.mul(f.mul(a, scal[F]), f.inv(b))
                if G in scal:
                    if scal[G] != val:
                        return None
                else:
                    scal[G] = val
                    queue.append(G)
    return scal


def is_isomorphic(M: SquarefreeModule, N: SquarefreeModule) -> bool:
    """Decides isomorphism for equal modules and for thin modules."""
    if M == N:
        return True
    if M.is_thin() and N.is_thin():
        return thin_isomorphism(M, N) is not None
    raise NotImplementedError("isomorphism test only implemented for thin modules")
