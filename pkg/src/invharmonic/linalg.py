"""Dense exact linear algebra over Q(i).

Matrices here are tiny (at most C(6,3) = 20 columns for 2m = 6), so plain
Gauss-Jordan elimination on immutable row tuples is all we need.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .scalars import ONE, ZERO, Scalar, as_scalar

__all__ = ["Matrix", "vstack", "hstack", "span_rank", "in_span", "same_span"]


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, rows: Iterable[Sequence], ncols: int | None = None):
        rows = tuple(tuple(as_scalar(x) for x in r) for r in rows)
        if ncols is None:
            if not rows:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(rows[0])
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
        self.nrows = len(rows)
        self.ncols = ncols
        self.rows = rows

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls([[ZERO] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], n)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int) -> "Matrix":
        return cls([[c[i] for c in cols] for i in range(nrows)], len(cols))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j: int) -> list[Scalar]:
        return [r[j] for r in self.rows]

    def columns(self) -> list[list[Scalar]]:
        return [self.column(j) for j in range(self.ncols)]

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = other.columns()
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            row = []
            for c in cols:
                s = ZERO
                for k, a in nz:
                    b = c[k]
                    if b:
                        s = s + a * b
                row.append(s)
            out.append(row)
        return Matrix(out, other.ncols)

    def apply(self, vec: Sequence) -> list[Scalar]:
        if len(vec) != self.ncols:
            raise ValueError("vector length mismatch")
        out = []
        for r in self.rows:
            s = ZERO
            for a, b in zip(r, vec):
                if a and b:
                    s = s + a * b
            out.append(s)
        return out

    def _same(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        return Matrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.rows, other.rows)], self.ncols)

    def __neg__(self) -> "Matrix":
        return Matrix([[-a for a in r] for r in self.rows], self.ncols)

    def scale(self, s) -> "Matrix":
        s = as_scalar(s)
        return Matrix([[a * s for a in r] for r in self.rows], self.ncols)

    @property
    def T(self) -> "Matrix":
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.nrows)

    @property
    def H(self) -> "Matrix":
        """Conjugate transpose."""
        return Matrix(
            [[self.rows[i][j].conjugate() for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def conjugate(self) -> "Matrix":
        return Matrix([[a.conjugate() for a in r] for r in self.rows], self.ncols)

    def is_zero(self) -> bool:
        return not any(a for r in self.rows for a in r)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, self.rows))

    def __repr__(self):
        body = "; ".join(" ".join(str(a) for a in r) for r in self.rows)
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"

    # elimination ----------------------------------------------------------

    def rref(self) -> tuple["Matrix", tuple[int, ...]]:
        """Reduced row echelon form and pivot columns.

        Pivots are taken left to right, so with columns indexed by the sorted
        monomial basis the lowest mask is preferred.
        """
        m = [list(r) for r in self.rows]
        pivots = []
        row = 0
        for col in range(self.ncols):
            if row >= self.nrows:
                break
            p = next((i for i in range(row, self.nrows) if m[i][col]), None)
            if p is None:
                continue
            m[row], m[p] = m[p], m[row]
            inv = ONE / m[row][col]
            m[row] = [a * inv for a in m[row]]
            for i in range(self.nrows):
                if i != row and m[i][col]:
                    f = m[i][col]
                    m[i] = [a - f * b for a, b in zip(m[i], m[row])]
            pivots.append(col)
            row += 1
        return Matrix(m, self.ncols), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list[Scalar]]:
        """Basis of the right kernel, one vector per free column."""
        r, pivots = self.rref()
        pivset = set(pivots)
        basis = []
        for free in range(self.ncols):
            if free in pivset:
                continue
            v = [ZERO] * self.ncols
            v[free] = ONE
            for i, pc in enumerate(pivots):
                v[pc] = -r.rows[i][free]
            basis.append(v)
        return basis

    def solve(self, rhs: Sequence) -> list[Scalar] | None:
        """One solution of ``self @ x = rhs`` (free variables set to 0), or
        None when the system is inconsistent."""
        if len(rhs) != self.nrows:
            raise ValueError("right-hand side length mismatch")
        aug = Matrix([list(r) + [as_scalar(b)] for r, b in zip(self.rows, rhs)], self.ncols + 1)
        r, pivots = aug.rref()
        if self.ncols in pivots:
            return None
        x = [ZERO] * self.ncols
        for i, pc in enumerate(pivots):
            x[pc] = r.rows[i][self.ncols]
        return x

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise ValueError("only square matrices are invertible")
        n = self.nrows
        aug = hstack([self, Matrix.identity(n)])
        r, pivots = aug.rref()
        if tuple(pivots[:n]) != tuple(range(n)):
            raise ZeroDivisionError("matrix is singular")
        return Matrix([row[n:] for row in r.rows], n)


def vstack(mats: Sequence[Matrix], ncols: int | None = None) -> Matrix:
    if not mats:
        if ncols is None:
            raise ValueError("ncols is required to stack nothing")
        return Matrix([], ncols)
    n = mats[0].ncols
    for m in mats:
        if m.ncols != n:
            raise ValueError("column count mismatch in vstack")
    return Matrix([r for m in mats for r in m.rows], n)


def hstack(mats: Sequence[Matrix]) -> Matrix:
    n = mats[0].nrows
    for m in mats:
        if m.nrows != n:
            raise ValueError("row count mismatch in hstack")
    return Matrix([sum((list(m.rows[i]) for m in mats), []) for i in range(n)], sum(m.ncols for m in mats))


def span_rank(vectors: Sequence[Sequence], length: int) -> int:
    if not vectors:
        return 0
    return Matrix(vectors, length).rank()


def in_span(vectors: Sequence[Sequence], v: Sequence, length: int) -> bool:
    return span_rank(list(vectors) + [v], length) == span_rank(vectors, length)


def same_span(a: Sequence[Sequence], b: Sequence[Sequence], length: int) -> bool:
    ra, rb = span_rank(a, length), span_rank(b, length)
    return ra == rb == span_rank(list(a) + list(b), length)
