"""Exact dense linear algebra over the rationals.

Everything downstream (path algebras, module categories, Ext computations,
bocs structure constants) reduces to row operations on matrices of
`fractions.Fraction`.  Values are immutable; all operations return fresh
objects.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce ints, strings like '2/3', and Fractions to a Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


def rref_rows(rows: Sequence[Sequence[Fraction]], ncols: int):
    """Reduced row echelon form of a list of row vectors.

    Returns (reduced nonzero rows, pivot column list).  Row order follows
    pivot order; ties are never an issue because elimination is deterministic.
    """
    work = [list(r) for r in rows]
    pivots: list[int] = []
    nrows = len(work)
    r = 0
    for col in range(ncols):
        piv = None
        for i in range(r, nrows):
            if work[i][col] != 0:
                piv = i
                break
        if piv is None:
            continue
        work[r], work[piv] = work[piv], work[r]
        inv = work[r][col]
        if inv != 1:
            work[r] = [v / inv for v in work[r]]
        for i in range(nrows):
            if i != r and work[i][col] != 0:
                c = work[i][col]
                wi = work[i]
                wr = work[r]
                work[i] = [a - c * b for a, b in zip(wi, wr)]
        pivots.append(col)
        r += 1
        if r == nrows:
            break
    return work[:r], pivots


def reduce_against(vec: Sequence[Fraction], rows: Sequence[Sequence[Fraction]],
                   pivots: Sequence[int]) -> list[Fraction]:
    """Normal form of vec modulo the span of RREF rows."""
    v = list(vec)
    for row, p in zip(rows, pivots):
        c = v[p]
        if c != 0:
            v = [a - c * b for a, b in zip(v, row)]
    return v


def in_span(vec, rows, pivots) -> bool:
    return all(c == 0 for c in reduce_against(vec, rows, pivots))


def span_dim(vectors: Sequence[Sequence[Fraction]], ncols: int) -> int:
    rows, _ = rref_rows(vectors, ncols)
    return len(rows)


def complement_pivots(pivots: Sequence[int], ncols: int) -> list[int]:
    pset = set(pivots)
    return [j for j in range(ncols) if j not in pset]


class Matrix:
    """Immutable dense matrix over Fraction, row-major."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, rows: int, cols: int, data: Iterable[Iterable]):
        self.rows = rows
        self.cols = cols
        self.data = tuple(tuple(frac(x) for x in r) for r in data)
        if len(self.data) != rows or any(len(r) != cols for r in self.data):
            raise ValueError("entry grid does not match declared shape")

    @classmethod
    def zero(cls, rows: int, cols: int) -> "Matrix":
        return cls(rows, cols, [[ZERO] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, [[ONE if i == j else ZERO for j in range(n)]
                          for i in range(n)])

    @classmethod
    def from_rows(cls, data: Sequence[Sequence]) -> "Matrix":
        rows = len(data)
        cols = len(data[0]) if rows else 0
        return cls(rows, cols, data)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence]) -> "Matrix":
        cols = len(columns)
        rows = len(columns[0]) if cols else 0
        return cls(rows, cols, [[columns[j][i] for j in range(cols)]
                                for i in range(rows)])

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.rows == other.rows
                and self.cols == other.cols and self.data == other.data)

    def __hash__(self):
        return hash((self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def __add__(self, other: "Matrix") -> "Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in addition")
        return Matrix(self.rows, self.cols,
                      [[a + b for a, b in zip(r1, r2)]
                       for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        return Matrix(self.rows, self.cols,
                      [[-a for a in r] for r in self.data])

    def scale(self, c) -> "Matrix":
        c = frac(c)
        return Matrix(self.rows, self.cols,
                      [[c * a for a in r] for r in self.data])

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in product")
        ot = list(zip(*other.data)) if other.rows else [()] * other.cols
        out = []
        for r in self.data:
            row = []
            for c in range(other.cols):
                col = ot[c]
                row.append(sum((a * b for a, b in zip(r, col)), ZERO))
            out.append(row)
        return Matrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[Fraction]) -> tuple[Fraction, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * b for a, b in zip(r, vec)), ZERO)
                     for r in self.data)

    def transpose(self) -> "Matrix":
        return Matrix(self.cols, self.rows, list(zip(*self.data)) or
                      [[] for _ in range(self.cols)])

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple[Fraction, ...]]:
        return [self.column(j) for j in range(self.cols)]

    def trace(self) -> Fraction:
        return sum((self.data[i][i] for i in range(min(self.rows, self.cols))),
                   ZERO)

    def rref(self):
        """Return (rref matrix, rank, pivot column tuple).

        Zero rows are kept so the result has the same shape as self.
        """
        reduced, pivots = rref_rows(self.data, self.cols)
        rank = len(reduced)
        full = reduced + [[ZERO] * self.cols for _ in range(self.rows - rank)]
        return Matrix(self.rows, self.cols, full), rank, tuple(pivots)

    def rank(self) -> int:
        return self.rref()[1]

    def kernel_basis(self) -> list[tuple[Fraction, ...]]:
        """Basis of the right null space, one column vector per free column."""
        reduced, pivots = rref_rows(self.data, self.cols)
        free = complement_pivots(pivots, self.cols)
        basis = []
        for f in free:
            v = [ZERO] * self.cols
            v[f] = ONE
            for row, p in zip(reduced, pivots):
                v[p] = -row[f]
            basis.append(tuple(v))
        return basis

    def solve(self, rhs: Sequence[Fraction]) -> Optional[tuple[Fraction, ...]]:
        """Some solution of self @ v = rhs, or None when inconsistent."""
        if len(rhs) != self.rows:
            raise ValueError("rhs length mismatch")
        aug = [list(r) + [frac(b)] for r, b in zip(self.data, rhs)]
        reduced, pivots = rref_rows(aug, self.cols + 1)
        if self.cols in pivots:
            return None
        v = [ZERO] * self.cols
        for row, p in zip(reduced, pivots):
            v[p] = row[self.cols]
        return tuple(v)

    def column_space_basis(self) -> list[tuple[Fraction, ...]]:
        _, col_pivots = rref_rows(self.data, self.cols)
        return [self.column(j) for j in col_pivots]

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix(self.rows, self.cols + other.cols,
                      [list(a) + list(b) for a, b in zip(self.data, other.data)])

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Matrix(self.rows + other.rows, self.cols,
                      list(self.data) + list(other.data))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    rows = sum(b.rows for b in blocks)
    cols = sum(b.cols for b in blocks)
    out = [[ZERO] * cols for _ in range(rows)]
    ro = co = 0
    for b in blocks:
        for i in range(b.rows):
            for j in range(b.cols):
                out[ro + i][co + j] = b.data[i][j]
        ro += b.rows
        co += b.cols
    return Matrix(rows, cols, out)


def vec_add(u: Sequence[Fraction], v: Sequence[Fraction]) -> tuple:
    return tuple(a + b for a, b in zip(u, v))


def vec_scale(c, u: Sequence[Fraction]) -> tuple:
    c = frac(c)
    return tuple(c * a for a in u)


def vec_is_zero(u: Sequence[Fraction]) -> bool:
    return all(a == 0 for a in u)
