"""Immutable dense matrices over Z, Q or F_p, stored row-major.

All module elements in this package are ROW vectors; a map is applied as
``v -> v @ M``, so the matrix of ``g after f`` is ``f.mat @ g.mat``.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .coeff import Coeff


class Mat:
    """A rows x cols matrix with entries in a fixed coefficient ring.

    >>> m = Mat.from_rows(Coeff.Z(), [[1, 2], [3, 4]])
    >>> (m @ Mat.identity(Coeff.Z(), 2)) == m
    True
    """

    __slots__ = ("coeff", "nrows", "ncols", "rows")

    def __init__(self, coeff: Coeff, nrows: int, ncols: int, rows):
        object.__setattr__(self, "coeff", coeff)
        object.__setattr__(self, "nrows", nrows)
        object.__setattr__(self, "ncols", ncols)
        object.__setattr__(self, "rows", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @classmethod
    def from_rows(cls, coeff: Coeff, rows: Iterable[Sequence]) -> "Mat":
        norm = coeff.normalize
        data = tuple(tuple(norm(x) for x in row) for row in rows)
        nrows = len(data)
        ncols = len(data[0]) if nrows else 0
        if any(len(r) != ncols for r in data):
            raise ValueError("ragged rows")
        return cls(coeff, nrows, ncols, data)

    @classmethod
    def zero(cls, coeff: Coeff, nrows: int, ncols: int) -> "Mat":
        z = coeff.zero()
        row = (z,) * ncols
        return cls(coeff, nrows, ncols, (row,) * nrows)

    @classmethod
    def identity(cls, coeff: Coeff, n: int) -> "Mat":
        z, o = coeff.zero(), coeff.one()
        rows = tuple(
            tuple(o if i == j else z for j in range(n)) for i in range(n)
        )
        return cls(coeff, n, n, rows)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def row(self, i: int) -> tuple:
        return self.rows[i]

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.coeff == other.coeff
            and self.shape == other.shape
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.coeff, self.rows))

    def __repr__(self):
        return f"Mat({self.coeff.code}, {self.nrows}x{self.ncols}, {list(map(list, self.rows))})"

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        norm = self.coeff.normalize
        rows = tuple(
            tuple(norm(a + b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        )
        return Mat(self.coeff, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        norm = self.coeff.normalize
        rows = tuple(
            tuple(norm(a - b) for a, b in zip(ra, rb))
            for ra, rb in zip(self.rows, other.rows)
        )
        return Mat(self.coeff, self.nrows, self.ncols, rows)

    def scale(self, c) -> "Mat":
        norm = self.coeff.normalize
        c = norm(c)
        rows = tuple(tuple(norm(c * x) for x in row) for row in self.rows)
        return Mat(self.coeff, self.nrows, self.ncols, rows)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.coeff != other.coeff:
            raise ValueError("coefficient mismatch")
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Mat(
            self.coeff,
            self.nrows,
            other.ncols,
            tuple(
                mul_row_mat(self.coeff, row, other.rows, other.ncols)
                for row in self.rows
            ),
        )

    def transpose(self) -> "Mat":
        rows = tuple(zip(*self.rows)) if self.nrows else ()
        return Mat(self.coeff, self.ncols, self.nrows, rows)

    def stack(self, other: "Mat") -> "Mat":
        """Rows of self followed by rows of other (same width)."""
        if self.coeff != other.coeff or self.ncols != other.ncols:
            if other.nrows == 0:
                return self
            raise ValueError("stack mismatch")
        return Mat(
            self.coeff, self.nrows + other.nrows, self.ncols,
            self.rows + other.rows,
        )

    def hjoin(self, other: "Mat") -> "Mat":
        """Columns of self followed by columns of other (same height)."""
        if self.coeff != other.coeff or self.nrows != other.nrows:
            raise ValueError("hjoin mismatch")
        rows = tuple(ra + rb for ra, rb in zip(self.rows, other.rows))
        return Mat(self.coeff, self.nrows, self.ncols + other.ncols, rows)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Mat":
        rows = tuple(
            tuple(self.rows[i][j] for j in col_idx) for i in row_idx
        )
        return Mat(self.coeff, len(row_idx), len(col_idx), rows)

    def block_diag(self, other: "Mat") -> "Mat":
        if self.coeff != other.coeff:
            raise ValueError("coefficient mismatch")
        z = self.coeff.zero()
        left = tuple(row + (z,) * other.ncols for row in self.rows)
        right = tuple((z,) * self.ncols + row for row in other.rows)
        return Mat(
            self.coeff, self.nrows + other.nrows, self.ncols + other.ncols,
            left + right,
        )

    def kron(self, other: "Mat") -> "Mat":
        """Kronecker product; basis of the product is (i, j) lexicographic."""
        if self.coeff != other.coeff:
            raise ValueError("coefficient mismatch")
        norm = self.coeff.normalize
        rows = []
        for ra in self.rows:
            for rb in other.rows:
                rows.append(tuple(norm(a * b) for a in ra for b in rb))
        return Mat(
            self.coeff, self.nrows * other.nrows, self.ncols * other.ncols,
            tuple(rows),
        )

    def diagonal(self) -> list:
        return [self.rows[i][i] for i in range(min(self.nrows, self.ncols))]

    def _check_same_shape(self, other: "Mat"):
        if self.coeff != other.coeff or self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def to_json(self) -> list[list[str]]:
        s = self.coeff.scalar_str
        return [[s(x) for x in row] for row in self.rows]

    @classmethod
    def from_json(cls, coeff: Coeff, data, ncols: int | None = None) -> "Mat":
        rows = tuple(
            tuple(coeff.parse_scalar(x) for x in row) for row in data
        )
        nrows = len(rows)
        if nrows == 0:
            if ncols is None:
                ncols = 0
            return cls(coeff, 0, ncols, ())
        width = len(rows[0])
        if ncols is not None and width != ncols:
            raise ValueError(f"expected {ncols} columns, got {width}")
        return cls(coeff, nrows, width, rows)


def mul_row_mat(coeff: Coeff, row: Sequence, mat_rows, ncols: int) -> tuple:
    """row-vector times matrix, skipping zero entries of the row."""
    acc = [coeff.zero()] * ncols
    for a, mrow in zip(row, mat_rows):
        if not a:
            continue
        for j, b in enumerate(mrow):
            if b:
                acc[j] += a * b
    if coeff.kind == Coeff.PRIME_FIELD:
        p = coeff.p
        return tuple(x % p for x in acc)
    return tuple(acc)


def det(m: Mat):
    """Exact determinant by fraction-free (Bareiss) elimination.

    >>> det(Mat.from_rows(Coeff.Z(), [[2, 4], [6, 8]]))
    -8
    """
    if m.nrows != m.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = m.nrows
    if n == 0:
        return m.coeff.one()
    if m.coeff.kind == Coeff.INTEGERS:
        a = [list(row) for row in m.rows]
        sign = 1
        prev = 1
        for k in range(n - 1):
            if a[k][k] == 0:
                for i in range(k + 1, n):
                    if a[i][k] != 0:
                        a[k], a[i] = a[i], a[k]
                        sign = -sign
                        break
                else:
                    return 0
            for i in range(k + 1, n):
                for j in range(k + 1, n):
                    a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
                a[i][k] = 0
            prev = a[k][k]
        return sign * a[n - 1][n - 1]
    a = [[Fraction(x) if m.coeff.kind == Coeff.RATIONALS else x for x in row]
         for row in m.rows]
    coeff = m.coeff
    result = coeff.one()
    for k in range(n):
        pivot_row = None
        for i in range(k, n):
            if a[i][k] % coeff.p if coeff.kind == Coeff.PRIME_FIELD else a[i][k]:
                pivot_row = i
                break
        if pivot_row is None:
            return coeff.zero()
        if pivot_row != k:
            a[k], a[pivot_row] = a[pivot_row], a[k]
            result = coeff.normalize(-result)
        pivot = a[k][k]
        result = coeff.normalize(result * pivot)
        inv = coeff.invert(pivot)
        for i in range(k + 1, n):
            factor = coeff.normalize(a[i][k] * inv)
            if factor == coeff.zero():
                continue
            for j in range(k, n):
                a[i][j] = coeff.normalize(a[i][j] - factor * a[k][j])
    return result
