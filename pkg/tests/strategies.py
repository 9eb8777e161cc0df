"""Hypothesis strategies for complexes, matrices and squarefree modules."""
from hypothesis import strategies as st

from lindef.linalg import FieldSpec, Matrix, inverse, matmul
from lindef.simplicial import SimplicialComplex
from lindef.sqmod import (SquarefreeModule, direct_sum, face_module, free_module,
                          ideal_module, stanley_reisner_module)

FIELDS = [FieldSpec(0), FieldSpec(2), FieldSpec(3)]
fields = st.sampled_from(FIELDS)


@st.composite
def complexes(draw, min_n=1, max_n=5, allow_void=False):
    n = draw(st.integers(min_n, max_n))
    masks = draw(st.lists(st.integers(0, (1 << n) - 1), max_size=6))
    if not masks and not allow_void:
        masks = [0]
    return SimplicialComplex.from_masks(n, masks)


@st.composite
def int_matrices(draw, max_rows=6, max_cols=6, lo=-4, hi=4):
    r = draw(st.integers(0, max_rows))
    c = draw(st.integers(0, max_cols))
    rows = [[draw(st.integers(lo, hi)) for _ in range(c)] for _ in range(r)]
    return Matrix(r, c, rows)


def _unit_triangular(draw, k, f, lower):
    rows = []
    for a in range(k):
        row = []
        for b in range(k):
            if a == b:
                row.append(1)
            elif (a > b) == lower:
                row.append(f(draw(st.integers(-3, 3))))
            else:
                row.append(0)
        rows.append(row)
    return Matrix(k, k, rows)


@st.composite
def invertible(draw, k, f):
    return matmul(_unit_triangular(draw, k, f, True), _unit_triangular(draw, k, f, False), f)


def change_basis(M: SquarefreeModule, mats: dict) -> SquarefreeModule:
    f = M.field
    inv = {F: inverse(T, f) for F, T in mats.items()}
    covers = {}
    for (F, i), c in M.covers.items():
        G = F | (1 << i)
        covers[(F, i)] = matmul(matmul(mats[G], c, f), inv[F], f)
    return SquarefreeModule(M.n, f, M.dims, covers)


@st.composite
def modules(draw, max_n=4, field=None, max_summands=3):
    """Direct sums of standard thin modules, conjugated by random bases."""
    f = field or draw(fields)
    n = draw(st.integers(1, max_n))
    k = draw(st.integers(1, max_summands))
    M = None
    for _ in range(k):
        kind = draw(st.sampled_from(["sr", "ideal", "face", "free"]))
        if kind in ("sr", "ideal"):
            delta = draw(complexes(min_n=n, max_n=n))
            N = stanley_reisner_module(delta, f) if kind == "sr" else ideal_module(delta, f)
        else:
            F = draw(st.integers(0, (1 << n) - 1))
            N = face_module(n, F, f) if kind == "face" else free_module(n, F, f)
        M = N if M is None else direct_sum(M, N)
    mats = {F: draw(invertible(M.dims[F], f)) for F in range(1 << n)}
    return change_basis(M, mats)
