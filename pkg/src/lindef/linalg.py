"""Exact dense linear algebra over the rationals and prime fields.

Elements of QQ are Python ints or :class:`fractions.Fraction`; elements of
GF(p) are ints in ``range(p)``.  Nothing here ever touches floating point.

Elimination always pivots on the leftmost nonzero column and, within it, the
topmost nonzero row, so every result (echelon forms, kernel bases) is a
deterministic function of the input.  Over QQ the forward sweep runs
fraction-free on integer rows with content removal, which keeps entries small
for the 0/+-1 matrices that dominate this package.
"""
from __future__ import annotations

from bisect import insort
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import CompositionNonzero, FieldMismatch, ShapeMismatch

__all__ = [
    "FieldSpec", "QQ", "Matrix", "Span",
    "rank", "rref", "kernel_basis", "kernel_vectors", "matmul", "inverse",
    "solve_in_basis", "complex_homology_dims", "rank_rows",
]

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_prime(p: int) -> bool:
    # deterministic Miller-Rabin for p < 3.3e24
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


@dataclass(frozen=True)
class FieldSpec:
    """An exact coefficient field: QQ for characteristic 0, else GF(p)."""

    characteristic: int = 0

    def __post_init__(self):
        p = self.characteristic
        if not isinstance(p, int) or isinstance(p, bool):
            raise ValueError(f"characteristic must be an int, got {p!r}")
        if p != 0:
            if p >= 2**63:
                raise ValueError("characteristic must fit in a machine word")
            if not _is_prime(p):
                raise ValueError(f"characteristic {p} is neither 0 nor prime")

    @classmethod
    def parse(cls, text: str | int) -> "FieldSpec":
        if isinstance(text, int):
            return cls(text)
        t = text.strip().upper()
        if t in ("Q", "QQ"):
            return cls(0)
        if t.startswith("GF(") and t.endswith(")"):
            t = t[3:-1]
        return cls(int(t))

    @property
    def p(self) -> int:
        return self.characteristic

    def __str__(self):
        return "QQ" if self.characteristic == 0 else f"GF({self.characteristic})"

    def __call__(self, x) -> int | Fraction:
        """Coerce an int, Fraction, or ``"a/b"`` string into this field."""
        if isinstance(x, str):
            x = Fraction(x)
        p = self.characteristic
        if p == 0:
            if isinstance(x, Fraction):
                return x.numerator if x.denominator == 1 else x
            return int(x)
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({p})")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def neg(self, a):
        return (-a) % self.p if self.p else -a

    def add(self, a, b):
        return (a + b) % self.p if self.p else a + b

    def mul(self, a, b):
        return a * b % self.p if self.p else a * b

    def inv(self, a):
        if a == 0:
            raise ZeroDivisionError("zero has no inverse")
        if self.p:
            return pow(a, -1, self.p)
        return Fraction(1) / a

    def sign(self, exponent: int):
        """(-1)**exponent as a field element."""
        if exponent % 2 == 0:
            return 1
        return self.p - 1 if self.p else -1


QQ = FieldSpec(0)


class Matrix:
    """Dense row-major matrix with explicit shape (so 0 x k matrices keep k)."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries: list[list] | None = None):
        if entries is None:
            entries = [[0] * cols for _ in range(rows)]
        if len(entries) != rows or any(len(r) != cols for r in entries):
            raise ShapeMismatch(f"entries do not form a {rows}x{cols} matrix")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence], f: FieldSpec | None = None,
                  cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            if not rows:
                raise ShapeMismatch("column count is ambiguous for a 0-row matrix")
            cols = len(rows[0])
        if f is not None:
            rows = [[f(x) for x in r] for r in rows]
        return cls(len(rows), cols, rows)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: int) -> "Matrix":
        entries = [[c[i] for c in columns] for i in range(nrows)]
        return cls(nrows, len(columns), entries)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.entries == other.entries

    def __repr__(self):
        return f"Matrix({self.rows}, {self.cols}, {self.entries!r})"

    def column(self, j: int) -> list:
        return [r[j] for r in self.entries]

    def columns(self) -> list[list]:
        return [self.column(j) for j in range(self.cols)]

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows,
                      [list(c) for c in zip(*self.entries)] if self.rows
                      else [[] for _ in range(self.cols)])

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.entries)

    def scaled(self, c, f: FieldSpec) -> "Matrix":
        return Matrix(self.rows, self.cols,
                      [[f.mul(c, x) for x in r] for r in self.entries])

    def tolist(self) -> list[list]:
        return [list(r) for r in self.entries]


def matmul(a: Matrix, b: Matrix, f: FieldSpec) -> Matrix:
    if a.cols != b.rows:
        raise ShapeMismatch(f"cannot multiply {a.shape} by {b.shape}")
    bt = list(zip(*b.entries)) if b.rows else [()] * b.cols
    p = f.p
    out = []
    for r in a.entries:
        if p:
            out.append([sum(x * y for x, y in zip(r, c)) % p for c in bt])
        else:
            out.append([sum(x * y for x, y in zip(r, c)) for c in bt])
    return Matrix(a.rows, b.cols, out)


# --- row-level elimination kernels -------------------------------------------

def _int_row(row) -> list[int]:
    den = 1
    for x in row:
        if type(x) is not int:
            den = lcm(den, x.denominator)
    if den == 1:
        return [int(x) for x in row]
    return [int(x * den) for x in row]


def _primitive(row: list[int]) -> list[int]:
    g = gcd(*row)
    if g > 1:
        return [x // g for x in row]
    return row


def _echelon_q(rows, ncols):
    rows = [r for r in map(_int_row, rows) if any(r)]
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        k = r
        while k < m and rows[k][c] == 0:
            k += 1
        if k == m:
            continue
        if k != r:
            rows[r], rows[k] = rows[k], rows[r]
        pr = rows[r]
        a = pr[c]
        for k in range(r + 1, m):
            rk = rows[k]
            b = rk[c]
            if b:
                g = gcd(a, b)
                aa, bb = a // g, b // g
                rows[k] = _primitive([aa * x - bb * y for x, y in zip(rk, pr)])
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _echelon_p(rows, ncols, p):
    rows = [r for r in ([x % p for x in row] for row in rows) if any(r)]
    m = len(rows)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == m:
            break
        k = r
        while k < m and rows[k][c] == 0:
            k += 1
        if k == m:
            continue
        if k != r:
            rows[r], rows[k] = rows[k], rows[r]
        pr = rows[r]
        a = pr[c]
        if a != 1:
            ia = pow(a, -1, p)
            pr = rows[r] = [x * ia % p for x in pr]
        for k in range(r + 1, m):
            rk = rows[k]
            b = rk[c]
            if b:
                rows[k] = [(x - b * y) % p for x, y in zip(rk, pr)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def _echelon(rows, ncols, p):
    if p:
        return _echelon_p(rows, ncols, p)
    return _echelon_q(rows, ncols)


def rank_rows(rows: Sequence[Sequence], ncols: int, f: FieldSpec) -> int:
    """Rank of the matrix given by a list of rows."""
    if not rows or not ncols:
        return 0
    return len(_echelon(rows, ncols, f.p)[1])


def _to_q(x: int, a: int):
    if x % a == 0:
        return x // a
    return Fraction(x, a)


def rref_rows(rows: Sequence[Sequence], ncols: int, f: FieldSpec):
    """Reduced row echelon form: (nonzero rows, pivot columns)."""
    p = f.p
    ech, pivots = _echelon(rows, ncols, p)
    r = len(ech)
    for i in range(r - 1, -1, -1):
        c = pivots[i]
        pi = ech[i]
        a = pi[c]
        for j in range(i):
            rj = ech[j]
            b = rj[c]
            if b:
                if p:
                    ech[j] = [(x - b * y) % p for x, y in zip(rj, pi)]
                else:
                    g = gcd(a, b)
                    aa, bb = a // g, b // g
                    ech[j] = _primitive([aa * x - bb * y for x, y in zip(rj, pi)])
    if not p:
        ech = [[_to_q(x, row[c]) for x in row] for row, c in zip(ech, pivots)]
    return ech, pivots


def kernel_vectors(rows: Sequence[Sequence], ncols: int, f: FieldSpec) -> list[list]:
    """Reduced-echelon basis of the null space, one vector per free column."""
    if not rows:
        return [[1 if j == k else 0 for j in range(ncols)] for k in range(ncols)]
    red, pivots = rref_rows(rows, ncols, f)
    pivset = set(pivots)
    p = f.p
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [0] * ncols
        v[free] = 1
        for row, c in zip(red, pivots):
            x = row[free]
            if x:
                v[c] = (-x) % p if p else -x
        basis.append(v)
    return basis


# --- Matrix-level API --------------------------------------------------------

def rank(m: Matrix, f: FieldSpec) -> int:
    return rank_rows(m.entries, m.cols, f)


def rref(m: Matrix, f: FieldSpec) -> tuple[Matrix, list[int]]:
    red, pivots = rref_rows(m.entries, m.cols, f)
    red = red + [[0] * m.cols for _ in range(m.rows - len(red))]
    return Matrix(m.rows, m.cols, red), pivots


def kernel_basis(m: Matrix, f: FieldSpec) -> Matrix:
    """Columns form the reduced-echelon basis of ``{v : m v = 0}``."""
    vecs = kernel_vectors(m.entries, m.cols, f)
    return Matrix.from_columns(vecs, m.cols)


def inverse(m: Matrix, f: FieldSpec) -> Matrix:
    if m.rows != m.cols:
        raise ShapeMismatch("only square matrices are invertible")
    n = m.rows
    aug = [list(r) + [1 if i == j else 0 for j in range(n)]
           for i, r in enumerate(m.entries)]
    red, pivots = rref_rows(aug, 2 * n, f)
    if pivots[:n] != list(range(n)) or len(red) < n:
        raise ZeroDivisionError("matrix is singular")
    return Matrix(n, n, [row[n:] for row in red[:n]])


def solve_in_basis(basis: Sequence[Sequence], targets: Sequence[Sequence],
                   dim: int, f: FieldSpec) -> list[list]:
    """Coordinates of each target vector with respect to independent ``basis``.

    Raises ValueError if the basis is dependent or a target is outside its span.
    """
    k = len(basis)
    if not targets:
        return []
    if k == 0:
        for t in targets:
            if any(t):
                raise ValueError("target outside the span of the empty basis")
        return [[] for _ in targets]
    cols = list(basis) + list(targets)
    rows = [[c[i] for c in cols] for i in range(dim)]
    red, pivots = rref_rows(rows, len(cols), f)
    if pivots[:k] != list(range(k)):
        raise ValueError("basis vectors are linearly dependent")
    if len(pivots) > k:
        raise ValueError("target outside the span of the basis")
    return [[red[r][k + t] for r in range(k)] for t in range(len(targets))]


class Span:
    """Incrementally grown subspace of K^ncols (echelon rows keyed by pivot)."""

    def __init__(self, ncols: int, f: FieldSpec, vectors: Iterable = ()):
        self.ncols = ncols
        self.f = f
        self._rows: dict[int, list] = {}
        self._pivots: list[int] = []
        for v in vectors:
            self.add(v)

    def __len__(self):
        return len(self._pivots)

    def reduce(self, v: Sequence) -> list:
        """A vector congruent to a nonzero multiple of v modulo the span."""
        p = self.f.p
        if p:
            v = [x % p for x in v]
            for c in self._pivots:
                b = v[c]
                if b:
                    row = self._rows[c]
                    v = [(x - b * y) % p for x, y in zip(v, row)]
        else:
            v = _int_row(v)
            for c in self._pivots:
                b = v[c]
                if b:
                    row = self._rows[c]
                    a = row[c]
                    g = gcd(a, b)
                    aa, bb = a // g, b // g
                    v = _primitive([aa * x - bb * y for x, y in zip(v, row)])
        return v

    def contains(self, v: Sequence) -> bool:
        return not any(self.reduce(v))

    def add(self, v: Sequence) -> bool:
        """Add v; return True iff it was independent of the current span."""
        w = self.reduce(v)
        for c, x in enumerate(w):
            if x:
                break
        else:
            return False
        if self.f.p and x != 1:
            ix = pow(x, -1, self.f.p)
            w = [y * ix % self.f.p for y in w]
        self._rows[c] = w
        insort(self._pivots, c)
        return True


def complex_homology_dims(maps: Sequence[Matrix], f: FieldSpec,
                          check: bool = True) -> list[int]:
    """Homology dimensions of ``C_0 <-d_1- C_1 <-d_2- ... <-d_k- C_k``.

    ``maps[i-1]`` is d_i with shape (dim C_{i-1}, dim C_i).  Returns
    ``[dim H_0, ..., dim H_k]``.
    """
    if not maps:
        return []
    for a, b in zip(maps, maps[1:]):
        if a.cols != b.rows:
            raise ShapeMismatch(f"maps of shapes {a.shape} and {b.shape} do not chain")
        if check and a.rows and b.cols and not matmul(a, b, f).is_zero():
            raise CompositionNonzero("consecutive maps compose to a nonzero map")
    ranks = [0] + [rank(m, f) for m in maps] + [0]
    dims = [maps[0].rows] + [m.cols for m in maps]
    return [dims[i] - ranks[i] - ranks[i + 1] for i in range(len(dims))]


def check_same_field(*fields: FieldSpec) -> FieldSpec:
    first = fields[0]
    for g in fields[1:]:
        if g != first:
            raise FieldMismatch(f"{first} vs {g}")
    return first
