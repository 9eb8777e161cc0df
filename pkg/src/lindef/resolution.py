"""Minimal free resolutions of squarefree modules and what they compute.

A complex of free squarefree modules is stored as generator degrees (bit
masks) per homological position plus scalar differentials: generator g of
term i maps to ``sum_h c(g, h) * x^(F_g - F_h) * e_h``.  Evaluated at a
squarefree degree G such a complex is the complex of vector spaces spanned by
the generators with ``F_g`` contained in G, and every multiplication map
becomes a coordinate inclusion.  All homology below is computed this way,
degree by degree; this is legitimate because homology of a complex of
squarefree modules is again squarefree and so is detected on squarefree
degrees.
"""
from __future__ import annotations

import math

from .errors import IndexOutOfRange, NotMinimal, ZeroModule
from .linalg import FieldSpec, Span, kernel_vectors, matmul, rank_rows, solve_in_basis
from .simplicial import BettiTable, bits_of, popcount
from .sqmod import MINUS_INFINITY, SquarefreeModule, alexander_functor

INFINITY = math.inf


def _degree_order(n: int) -> list[int]:
    # |F| ascending, colex (= numeric order of masks) within a size
    return sorted(range(1 << n), key=lambda F: (popcount(F), F))


class FreeComplex:
    """``P_0 <- P_1 <- ... <- P_L`` with squarefree generator degrees."""

    def __init__(self, n: int, field: FieldSpec, degrees: list[list[int]],
                 diffs: list[list[dict[int, object]]]):
        while len(degrees) > 1 and not degrees[-1]:
            degrees = degrees[:-1]
        self.n = n
        self.field = field
        self.degrees = [list(d) for d in degrees]
        self.diffs = [[]] + [list(d) for d in diffs[1:len(degrees)]]
        for i in range(1, len(self.degrees)):
            if len(self.diffs[i]) != len(self.degrees[i]):
                raise ValueError(f"term {i}: {len(self.degrees[i])} generators, "
                                 f"{len(self.diffs[i])} differential columns")

    @property
    def length(self) -> int:
        return len(self.degrees) - 1 if any(self.degrees) else -1

    def is_zero(self) -> bool:
        return not any(self.degrees)

    def betti(self) -> BettiTable:
        entries: dict[tuple[int, int], int] = {}
        for i, ds in enumerate(self.degrees):
            for F in ds:
                entries[(i, F)] = entries.get((i, F), 0) + 1
        return BettiTable(self.n, entries)

    @property
    def proj_dim(self):
        top = [i for i, ds in enumerate(self.degrees) if ds]
        return max(top) if top else MINUS_INFINITY

    # degreewise evaluation ---------------------------------------------------
    def indices_at(self, G: int) -> list[list[int]]:
        return [[g for g, F in enumerate(ds) if F & ~G == 0] for ds in self.degrees]

    def ranks_at(self, G: int, idx: list[list[int]] | None = None) -> list[int]:
        """``ranks[i]`` = rank of d_i evaluated at G (``ranks[0] = 0``)."""
        f = self.field
        idx = idx or self.indices_at(G)
        ranks = [0]
        for i in range(1, len(self.degrees)):
            src, tgt = idx[i], idx[i - 1]
            if not src or not tgt:
                ranks.append(0)
                continue
            col = self.diffs[i]
            rows = [[col[g].get(h, 0) for h in tgt] for g in src]
            ranks.append(rank_rows(rows, len(tgt), f))
        return ranks

    def homology_dims_at(self, G: int) -> list[int]:
        idx = self.indices_at(G)
        ranks = self.ranks_at(G, idx) + [0]
        return [len(idx[i]) - ranks[i] - ranks[i + 1] for i in range(len(self.degrees))]

    def homology_positions(self) -> set[int]:
        """Homological positions i with H_i != 0 (as a module)."""
        out: set[int] = set()
        if self.is_zero():
            return out
        for G in range(1 << self.n):
            for i, h in enumerate(self.homology_dims_at(G)):
                if h:
                    out.add(i)
        return out

    def matrix_at(self, G: int, i: int):
        """Rows: term i-1 generators in G; columns: term i generators in G."""
        idx = self.indices_at(G)
        src, tgt = idx[i], idx[i - 1]
        col = self.diffs[i]
        return [[col[g].get(h, 0) for g in src] for h in tgt], src, tgt

    # structure checks ----------------------------------------------------------
    def check_d_squared(self) -> bool:
        f = self.field
        for i in range(2, len(self.degrees)):
            for g, col in enumerate(self.diffs[i]):
                acc: dict[int, object] = {}
                for m, c in col.items():
                    for h, c2 in self.diffs[i - 1][m].items():
                        acc[h] = f.add(acc.get(h, 0), f.mul(c, c2))
                if any(acc.values()):
                    return False
        return True

    def check_degrees(self) -> bool:
        for i in range(1, len(self.degrees)):
            for g, col in enumerate(self.diffs[i]):
                Fg = self.degrees[i][g]
                for h, c in col.items():
                    if c and self.degrees[i - 1][h] & ~Fg:
                        return False
        return True

    def is_minimal(self) -> bool:
        for i in range(1, len(self.degrees)):
            for g, col in enumerate(self.diffs[i]):
                Fg = self.degrees[i][g]
                if any(c and self.degrees[i - 1][h] == Fg for h, c in col.items()):
                    return False
        return True

    def subcomplex(self, keep, keep_entry=None) -> "FreeComplex":
        """Generators with ``keep(i, F)``; entries filtered by ``keep_entry(Fg, Fh)``."""
        new_index = []
        degrees = []
        for i, ds in enumerate(self.degrees):
            m = {}
            out = []
            for g, F in enumerate(ds):
                if keep(i, F):
                    m[g] = len(out)
                    out.append(F)
            new_index.append(m)
            degrees.append(out)
        diffs = [[]]
        for i in range(1, len(self.degrees)):
            cols = []
            for g, col in enumerate(self.diffs[i]):
                if g not in new_index[i]:
                    continue
                Fg = self.degrees[i][g]
                cols.append({new_index[i - 1][h]: c for h, c in col.items()
                             if h in new_index[i - 1]
                             and (keep_entry is None or keep_entry(Fg, self.degrees[i - 1][h]))})
            diffs.append(cols)
        return FreeComplex(self.n, self.field, degrees, diffs)

    def to_json(self) -> dict:
        from .sqmod import _elem_json
        from .simplicial import vertices_of
        terms = [[vertices_of(F) for F in ds] for ds in self.degrees]
        diffs = []
        for i in range(1, len(self.degrees)):
            entries = [[g, h, _elem_json(c)] for g, col in enumerate(self.diffs[i])
                       for h, c in sorted(col.items()) if c]
            diffs.append({"i": i, "entries": entries})
        return {"n": self.n, "char": self.field.p, "terms": terms, "differentials": diffs}


class FreeResolution(FreeComplex):
    """A minimal free resolution together with its augmentation onto M."""

    def __init__(self, module: SquarefreeModule, degrees, diffs, augmentation):
        super().__init__(module.n, module.field, degrees, diffs)
        self.module = module
        # augmentation[g] = image of generator g of P_0, a vector in M_{F_g}
        self.augmentation = augmentation

    def verify(self) -> bool:
        """Degreewise exactness of P -> M -> 0, d^2 = 0 and minimality."""
        if not (self.check_d_squared() and self.check_degrees() and self.is_minimal()):
            return False
        M = self.module
        f = self.field
        for G in range(1 << self.n):
            hom = self.homology_dims_at(G)
            if hom[0] != M.dims[G] or any(hom[1:]):
                return False
            idx = self.indices_at(G)[0]
            images = [matmul(M.phi(G, self.degrees[0][g]),
                             _column(self.augmentation[g]), f).column(0) for g in idx]
            if M.dims[G] and rank_rows(images, M.dims[G], f) != M.dims[G]:
                return False
            if len(self.degrees) > 1:
                for g1 in self.indices_at(G)[1]:
                    acc = [0] * M.dims[G]
                    for h, c in self.diffs[1][g1].items():
                        v = images[idx.index(h)]
                        acc = [f.add(a, f.mul(c, x)) for a, x in zip(acc, v)]
                    if any(acc):
                        return False
        return True


def _column(v):
    from .linalg import Matrix
    return Matrix(len(v), 1, [[x] for x in v])


def _next_term(f: FieldSpec, order: list[int], columns_at) -> tuple[list[int], list[dict[int, object]]]:
    """Minimal generators of the kernel of the map whose evaluation at G is
    given by ``columns_at(G) -> (source indices, row count, columns)``.

    Generators are found degree by degree in increasing order, so the part of
    the kernel generated from lower degrees is spanned by earlier choices.
    """
    degrees: list[int] = []
    vectors: list[dict[int, object]] = []
    for G in order:
        src, nrows, cols = columns_at(G)
        if not src:
            continue
        k = len(src)
        if nrows:
            rows = [[c[r] for c in cols] for r in range(nrows)]
            ker = kernel_vectors(rows, k, f)
        else:
            ker = [[1 if a == b else 0 for a in range(k)] for b in range(k)]
        if not ker:
            continue
        pos = {g: a for a, g in enumerate(src)}
        W = Span(k, f)
        for F, vec in zip(degrees, vectors):
            if F & ~G == 0:
                local = [0] * k
                for g, c in vec.items():
                    local[pos[g]] = c
                W.add(local)
        if len(W) == len(ker):
            continue
        for v in ker:
            if W.add(v):
                degrees.append(G)
                vectors.append({src[a]: c for a, c in enumerate(v) if c})
    return degrees, vectors


def minimal_free_resolution(M: SquarefreeModule) -> FreeResolution:
    """Iterated minimal covers, each kernel computed degree by degree."""
    n, f = M.n, M.field
    order = _degree_order(n)

    # term 0: minimal generators of M and their images in every degree
    gens0: list[int] = []
    aug: list[list] = []
    images: dict[int, dict[int, list]] = {}
    for G in order:
        d = M.dims[G]
        img: dict[int, list] = {}
        if d:
            for g, F in enumerate(gens0):
                if F & ~G == 0:
                    b = (G & ~F) & -(G & ~F)
                    j = b.bit_length() - 1
                    below = images[G & ~b].get(g)
                    if below is None:
                        continue
                    m = M.cover(G & ~b, j)
                    img[g] = [sum(x * y for x, y in zip(r, below)) % f.p if f.p
                              else sum(x * y for x, y in zip(r, below)) for r in m.entries]
            W = Span(d, f, img.values())
            for k in range(d):
                e = [1 if a == k else 0 for a in range(d)]
                if W.add(e):
                    img[len(gens0)] = e
                    gens0.append(G)
                    aug.append(e)
        else:
            for g, F in enumerate(gens0):
                if F & ~G == 0:
                    img[g] = []
        images[G] = img

    degrees = [gens0]
    diffs: list[list[dict[int, object]]] = [[]]

    def cols0(G):
        src = [g for g, F in enumerate(gens0) if F & ~G == 0]
        return src, M.dims[G], [images[G][g] for g in src]

    columns_at = cols0
    while degrees[-1] and len(degrees) <= n + 1:
        new_deg, new_vec = _next_term(f, order, columns_at)
        if not new_deg:
            break
        degrees.append(new_deg)
        diffs.append(new_vec)

        def columns_at(G, prev=degrees[-2], cur=new_deg, vec=new_vec):
            src = [g for g, F in enumerate(cur) if F & ~G == 0]
            tgt = [h for h, F in enumerate(prev) if F & ~G == 0]
            return src, len(tgt), [[vec[g].get(h, 0) for h in tgt] for g in src]

    return FreeResolution(M, degrees, diffs, aug)


# --- Koszul Betti numbers -----------------------------------------------------

def koszul_homology_at(M: SquarefreeModule, F: int) -> list[int]:
    """dim H_i of the degree-F Koszul complex of M, i = 0..|F|."""
    f = M.field
    size = popcount(F)
    # chambers M_G (x) wedge^{F-G}, homological degree |F - G|
    by_deg: dict[int, list[int]] = {k: [] for k in range(size + 1)}
    for G in range(1 << M.n):
        if G & ~F == 0 and M.dims[G]:
            by_deg[size - popcount(G)].append(G)
    offsets: dict[int, dict[int, int]] = {}
    dims = []
    for k in range(size + 1):
        off = {}
        tot = 0
        for G in by_deg[k]:
            off[G] = tot
            tot += M.dims[G]
        offsets[k] = off
        dims.append(tot)
    ranks = [0] * (size + 2)
    for k in range(1, size + 1):
        if not dims[k] or not dims[k - 1]:
            continue
        cols = []
        for G in by_deg[k]:
            rest = F & ~G
            for b in range(M.dims[G]):
                v = [0] * dims[k - 1]
                for j in bits_of(rest):
                    H = G | (1 << j)
                    if H not in offsets[k - 1]:
                        continue
                    sgn = f.sign(popcount(rest & ((1 << j) - 1)))
                    m = M.cover(G, j).entries
                    base = offsets[k - 1][H]
                    for r, row in enumerate(m):
                        x = row[b]
                        if x:
                            v[base + r] = f.mul(sgn, x)
                cols.append(v)
        ranks[k] = rank_rows(cols, dims[k - 1], f)
    return [dims[k] - ranks[k] - ranks[k + 1] for k in range(size + 1)]


def betti_koszul(M: SquarefreeModule) -> BettiTable:
    entries = {}
    for F in range(1 << M.n):
        for i, h in enumerate(koszul_homology_at(M, F)):
            if h:
                entries[(i, F)] = h
    return BettiTable(M.n, entries)


# --- linear part and strands ----------------------------------------------------

def _require_minimal(P: FreeComplex):
    if not P.is_minimal():
        raise NotMinimal("resolution has a unit entry")


def linear_part(P: FreeComplex) -> FreeComplex:
    """Erase every differential entry of degree >= 2."""
    _require_minimal(P)
    return P.subcomplex(lambda i, F: True,
                        lambda Fg, Fh: popcount(Fg) == popcount(Fh) + 1)


def strand(P: FreeComplex, l: int) -> FreeComplex:
    """The l-linear strand: generators of term i in degrees with |F| = l + i."""
    _require_minimal(P)
    return P.subcomplex(lambda i, F: popcount(F) == l + i)


def strand_homology_positions(P: FreeComplex, l: int) -> set[int]:
    return strand(P, l).homology_positions()


def low_strands(P: FreeComplex, top: int = 1) -> FreeComplex:
    """Subcomplex of generators with |F| <= i + top (full differential)."""
    return P.subcomplex(lambda i, F: popcount(F) <= i + top)


# --- Ext, depth, irreducible numbers ----------------------------------------------

def _dual_indices(P: FreeComplex, j: int, G: int) -> list[int]:
    if j < 0 or j >= len(P.degrees):
        return []
    full = (1 << P.n) - 1
    comp = full & ~G
    return [g for g, F in enumerate(P.degrees[j]) if comp & ~F == 0]


def _dual_rank(P: FreeComplex, j: int, G: int, src: list[int], tgt: list[int]) -> int:
    """Rank of the dual differential from term j to term j+1 at G."""
    if not src or not tgt:
        return 0
    rows = [[P.diffs[j + 1][h].get(g, 0) for g in src] for h in tgt]
    return rank_rows(rows, len(src), P.field)


def ext_dims(P: FreeComplex, j: int) -> list[int]:
    """dim [Ext^j(M, omega)]_G for every G, from the resolution P of M."""
    out = []
    for G in range(1 << P.n):
        cur = _dual_indices(P, j, G)
        if not cur:
            out.append(0)
            continue
        nxt = _dual_indices(P, j + 1, G)
        prv = _dual_indices(P, j - 1, G)
        z = len(cur) - _dual_rank(P, j, G, cur, nxt)
        b = _dual_rank(P, j - 1, G, prv, cur)
        out.append(z - b)
    return out


def _resolution_of(M) -> FreeComplex:
    return M if isinstance(M, FreeComplex) else minimal_free_resolution(M)


def ext_module(M, j: int) -> SquarefreeModule:
    """Ext^j_S(M, omega_S) as a squarefree module (M or its resolution)."""
    P = _resolution_of(M)
    n, f = P.n, P.field
    if not 0 <= j <= n:
        raise IndexOutOfRange(f"Ext index {j} outside 0..{n}")
    dims = [0] * (1 << n)
    bases: dict[int, tuple[list[int], list[list], list[list]]] = {}
    for G in range(1 << n):
        cur = _dual_indices(P, j, G)
        if not cur:
            continue
        nxt = _dual_indices(P, j + 1, G)
        prv = _dual_indices(P, j - 1, G)
        k = len(cur)
        if nxt:
            rows = [[P.diffs[j + 1][h].get(g, 0) for g in cur] for h in nxt]
            Z = kernel_vectors(rows, k, f)
        else:
            Z = [[1 if a == b else 0 for a in range(k)] for b in range(k)]
        span = Span(k, f)
        bbasis = []
        for gp in prv:
            v = [P.diffs[j][g].get(gp, 0) for g in cur]
            if span.add(v):
                bbasis.append(v)
        comp = [z for z in Z if span.add(z)]
        if comp:
            dims[G] = len(comp)
            bases[G] = (cur, bbasis, comp)
    covers = {}
    for G, (cur, bbasis, comp) in bases.items():
        for i in bits_of(((1 << n) - 1) & ~G):
            H = G | (1 << i)
            if H not in bases:
                continue
            hcur, hb, hc = bases[H]
            pos = {g: a for a, g in enumerate(hcur)}
            targets = []
            for v in comp:
                w = [0] * len(hcur)
                for a, g in enumerate(cur):
                    w[pos[g]] = v[a]
                targets.append(w)
            coords = solve_in_basis(hb + hc, targets, len(hcur), f)
            nb = len(hb)
            # columns: images of the basis of Ext_G in the basis of Ext_H
            covers[(G, i)] = [[coords[t][nb + r] for t in range(len(comp))]
                              for r in range(len(hc))]
    return SquarefreeModule(n, f, dims, covers)


def proj_dim(M):
    return _resolution_of(M).proj_dim


def depth(M):
    """depth via Ext vanishing and via Auslander-Buchsbaum; they must agree."""
    P = _resolution_of(M)
    n = P.n
    via_ab = n - P.proj_dim if not P.is_zero() else INFINITY
    via_ext = INFINITY
    if not P.is_zero():
        for j in range(n + 1):
            if any(ext_dims(P, n - j)):
                via_ext = j
                break
    if via_ab != via_ext:
        raise AssertionError(f"depth routes disagree: {via_ext} (Ext) vs {via_ab} (pd)")
    return via_ext


def irr_numbers(M: SquarefreeModule) -> dict[tuple[int, int], int]:
    """nu_i(F, M) = beta_{i, F^c}(A(M)), cross-checked against Ext dimensions."""
    n = M.n
    full = M.full_mask
    table = minimal_free_resolution(alexander_functor(M)).betti()
    nu = {(i, full & ~F): v for (i, F), v in table.entries.items()}
    P = minimal_free_resolution(M)
    for j in range(n + 1):
        dims = ext_dims(P, j)
        for G, d in enumerate(dims):
            i = n - j - popcount(G)
            if nu.get((i, G), 0) != d and (d or i >= 0):
                raise AssertionError(f"nu/Ext mismatch at Ext^{j}, degree {bits_of(G)}")
    return nu


def require_nonzero(M: SquarefreeModule):
    if M.is_zero():
        raise ZeroModule("the zero module has no linearity defect")
