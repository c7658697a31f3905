"""Dense exact matrices and deterministic decompositions.

All bases are the canonical reduced-row-echelon choice, so repeated calls
produce bit-identical output.  Matrices are immutable after construction;
every operation returns a fresh value and is safe to call concurrently.
Empty matrices (zero rows or columns) are legal throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import FieldMismatch, ShapeError
from .fields import Field, check_same_field


class Matrix:
    """An immutable rows x cols matrix over a single exact field."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data: Sequence[Sequence]):
        if rows < 0 or cols < 0:
            raise ShapeError("negative dimensions")
        data = tuple(tuple(row) for row in data)
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ShapeError(f"data does not match shape {rows}x{cols}")
        for row in data:
            for x in row:
                if not field.is_element(x):
                    raise FieldMismatch(f"{x!r} is not an element of {field!r}")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: Field, rows: int, cols: int) -> "Matrix":
        z = field.zero()
        return Matrix(field, rows, cols, [[z] * cols for _ in range(rows)])

    @staticmethod
    def identity(field: Field, n: int) -> "Matrix":
        z, o = field.zero(), field.one()
        return Matrix(field, n, n, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def from_rows(field: Field, rows: Sequence[Sequence]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        return Matrix(field, len(rows), ncols, rows)

    @staticmethod
    def column(field: Field, entries: Sequence) -> "Matrix":
        return Matrix(field, len(entries), 1, [[x] for x in entries])

    @staticmethod
    def from_ints(field: Field, rows: Sequence[Sequence[int]]) -> "Matrix":
        return Matrix.from_rows(field, [[field.from_int(x) for x in r] for r in rows])

    # -- basic algebra -----------------------------------------------------

    def __getitem__(self, rc):
        r, c = rc
        return self.data[r][c]

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.data))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format_scalar(x) for x in row) for row in self.data)
        return f"Matrix({self.rows}x{self.cols} over {self.field!r}: [{body}])"

    def is_zero(self) -> bool:
        z = self.field.zero()
        return all(x == z for row in self.data for x in row)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            self.cols,
            self.rows,
            [[self.data[r][c] for r in range(self.rows)] for c in range(self.cols)],
        )

    def add(self, other: "Matrix") -> "Matrix":
        check_same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("addition shape mismatch")
        f = self.field
        return Matrix(
            self.field,
            self.rows,
            self.cols,
            [
                [f.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
        )

    def neg(self) -> "Matrix":
        f = self.field
        return Matrix(self.field, self.rows, self.cols, [[f.neg(x) for x in row] for row in self.data])

    def sub(self, other: "Matrix") -> "Matrix":
        return self.add(other.neg())

    def scale(self, c) -> "Matrix":
        f = self.field
        return Matrix(self.field, self.rows, self.cols, [[f.mul(c, x) for x in row] for row in self.data])

    def mul(self, other: "Matrix") -> "Matrix":
        check_same_field(self.field, other.field)
        if self.cols != other.rows:
            raise ShapeError(f"product shape mismatch {self.rows}x{self.cols} . {other.rows}x{other.cols}")
        f = self.field
        z = f.zero()
        out = []
        for i in range(self.rows):
            row = []
            for j in range(other.cols):
                acc = z
                for k in range(self.cols):
                    a = self.data[i][k]
                    if a != z:
                        acc = f.add(acc, f.mul(a, other.data[k][j]))
                row.append(acc)
            out.append(row)
        return Matrix(self.field, self.rows, other.cols, out)

    def hstack(self, other: "Matrix") -> "Matrix":
        check_same_field(self.field, other.field)
        if self.rows != other.rows:
            raise ShapeError("hstack row mismatch")
        return Matrix(
            self.field,
            self.rows,
            self.cols + other.cols,
            [r1 + r2 for r1, r2 in zip(self.data, other.data)],
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        check_same_field(self.field, other.field)
        if self.cols != other.cols:
            raise ShapeError("vstack column mismatch")
        return Matrix(self.field, self.rows + other.rows, self.cols, self.data + other.data)

    def submatrix(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> "Matrix":
        return Matrix(
            self.field,
            len(row_idx),
            len(col_idx),
            [[self.data[r][c] for c in col_idx] for r in row_idx],
        )

    def column_vector(self, j: int) -> tuple:
        return tuple(self.data[r][j] for r in range(self.rows))

    # -- echelon machinery -------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form together with the pivot column indices."""
        f = self.field
        z = f.zero()
        m = [list(row) for row in self.data]
        pivots = []
        pr = 0
        for pc in range(self.cols):
            pivot_row = None
            for r in range(pr, self.rows):
                if m[r][pc] != z:
                    pivot_row = r
                    break
            if pivot_row is None:
                continue
            m[pr], m[pivot_row] = m[pivot_row], m[pr]
            inv = f.inv(m[pr][pc])
            m[pr] = [f.mul(inv, x) for x in m[pr]]
            for r in range(self.rows):
                if r != pr and m[r][pc] != z:
                    c0 = m[r][pc]
                    m[r] = [f.sub(x, f.mul(c0, y)) for x, y in zip(m[r], m[pr])]
            pivots.append(pc)
            pr += 1
            if pr == self.rows:
                break
        return Matrix(self.field, self.rows, self.cols, m), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def kernel_basis(self) -> "Matrix":
        """Columns form the canonical RREF basis of {x : Ax = 0}."""
        f = self.field
        z, o = f.zero(), f.one()
        R, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        cols = []
        for fc in free:
            v = [z] * self.cols
            v[fc] = o
            for r, pc in enumerate(pivots):
                v[pc] = f.neg(R.data[r][fc])
            cols.append(v)
        return Matrix(
            self.field,
            self.cols,
            len(cols),
            [[cols[j][i] for j in range(len(cols))] for i in range(self.cols)],
        )

    def image_basis(self) -> "Matrix":
        """Columns form the canonical basis of the column space."""
        R, pivots = self.transpose().rref()
        rows = [R.data[i] for i in range(len(pivots))]
        return Matrix(self.field, len(pivots), self.rows, rows).transpose()

    def cokernel_projection(self) -> "Matrix":
        """A (rows - rank) x rows matrix whose kernel is exactly the column space."""
        return self.transpose().kernel_basis().transpose()

    def solve(self, rhs: "Matrix") -> Optional["Matrix"]:
        """Canonical solution X of self . X = rhs, or None when inconsistent.

        Free variables are set to zero, so the answer is the particular
        solution read off the reduced echelon form.
        """
        check_same_field(self.field, rhs.field)
        if rhs.rows != self.rows:
            raise ShapeError("right-hand side row mismatch")
        f = self.field
        z = f.zero()
        aug = self.hstack(rhs)
        R, pivots = aug.rref()
        for pc in pivots:
            if pc >= self.cols:
                return None
        out = [[z] * rhs.cols for _ in range(self.cols)]
        for r, pc in enumerate(pivots):
            for j in range(rhs.cols):
                out[pc][j] = R.data[r][self.cols + j]
        return Matrix(self.field, self.cols, rhs.cols, out)

    def right_inverse(self) -> "Matrix":
        """Canonical X with self . X = identity (requires full row rank)."""
        x = self.solve(Matrix.identity(self.field, self.rows))
        if x is None:
            raise ShapeError("matrix has no right inverse")
        return x

    # -- serialization -----------------------------------------------------

    def to_json(self) -> list:
        return [[self.field.format_scalar(x) for x in row] for row in self.data]

    @staticmethod
    def from_json(field: Field, data: list, rows: int, cols: int) -> "Matrix":
        parsed = [[field.parse_scalar(x) for x in row] for row in data]
        return Matrix(field, rows, cols, parsed)


@dataclass(frozen=True)
class MatrixDecomposition:
    rank: int
    kernel_basis: Matrix
    image_basis: Matrix
    cokernel_projection: Matrix


def mat_decompose(a: Matrix) -> MatrixDecomposition:
    """Rank, kernel, image and cokernel data of a matrix, all canonical."""
    return MatrixDecomposition(
        rank=a.rank(),
        kernel_basis=a.kernel_basis(),
        image_basis=a.image_basis(),
        cokernel_projection=a.cokernel_projection(),
    )


def solve_linear(a: Matrix, b: Matrix) -> Optional[Matrix]:
    """Canonical x with Ax = b, or None when the system is inconsistent."""
    return a.solve(b)


def hstack_all(field: Field, rows: int, mats: Sequence[Matrix]) -> Matrix:
    out = Matrix.zero(field, rows, 0)
    for m in mats:
        out = out.hstack(m)
    return out


def vstack_all(field: Field, cols: int, mats: Sequence[Matrix]) -> Matrix:
    out = Matrix.zero(field, 0, cols)
    for m in mats:
        out = out.vstack(m)
    return out


def column_span_basis(m: Matrix) -> Matrix:
    """Canonical column-space basis, kept as a convenience alias."""
    return m.image_basis()


def spans_subspace(big: Matrix, small: Matrix) -> bool:
    """Whether every column of ``small`` lies in the column span of ``big``."""
    return big.hstack(small).rank() == big.rank()
