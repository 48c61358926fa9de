"""Dense exact matrices over a finite field."""

from __future__ import annotations

from collections.abc import Iterable, Sequence
from typing import Any

import numpy as np

from gmpkit.field import GF, FieldElem, FieldError, FieldMismatchError


class ShapeError(ValueError):
    pass


class Matrix:
    """Immutable ``rows x cols`` matrix of field elements.

    Entries are kept as a read-only int64 array of element codes (see
    :mod:`gmpkit.field`).  Column selections taking user indices are
    1-based; everything else is plain numpy indexing.
    """

    __slots__ = ("field", "data")

    def __init__(self, field: GF, data: Any) -> None:
        arr = np.array(data, dtype=np.int64)
        if arr.ndim == 1 and arr.size == 0:
            arr = arr.reshape(0, 0)
        if arr.ndim != 2:
            raise ShapeError(f"matrix data must be 2-dimensional, got shape {arr.shape}")
        if arr.size and (arr.min() < 0 or arr.max() >= field.q):
            raise FieldError(f"entry codes out of range for {field}")
        arr.setflags(write=False)
        self.field = field
        self.data = arr

    # -- constructors ----------------------------------------------------

    @classmethod
    def from_entries(cls, field: GF, rows: Sequence[Sequence[Any]]) -> Matrix:
        """Build from nested entries (ints, element strings, tuples or FieldElems)."""
        rows = list(rows)
        width = len(rows[0]) if rows else 0
        if any(len(r) != width for r in rows):
            raise ShapeError("ragged matrix rows")
        codes = [[field.code(x) for x in r] for r in rows]
        return cls(field, np.array(codes, dtype=np.int64).reshape(len(rows), width))

    @classmethod
    def parse(cls, field: GF, text: str) -> Matrix:
        """Parse a literal such as ``"0,1,1;1,0,a^2"``.

        Rows are split on ``;`` and entries on ``,`` outside brackets so
        coefficient tuples like ``[1,2]`` survive.
        """
        text = text.strip()
        if not text:
            raise ShapeError("empty matrix literal")
        rows = []
        for row in text.split(";"):
            entries, depth, cur = [], 0, ""
            for ch in row:
                if ch == "[":
                    depth += 1
                elif ch == "]":
                    depth -= 1
                if ch == "," and depth == 0:
                    entries.append(cur)
                    cur = ""
                else:
                    cur += ch
            entries.append(cur)
            rows.append([e.strip() for e in entries])
        return cls.from_entries(field, rows)

    @classmethod
    def zeros(cls, field: GF, rows: int, cols: int) -> Matrix:
        return cls(field, np.zeros((rows, cols), dtype=np.int64))

    @classmethod
    def identity(cls, field: GF, n: int) -> Matrix:
        return cls(field, np.eye(n, dtype=np.int64))

    # -- basic protocol --------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return self.data.shape

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    def __getitem__(self, idx: tuple[int, int]) -> FieldElem:
        i, j = idx
        return FieldElem(self.field, int(self.data[i, j]))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Matrix):
            return NotImplemented
        return (
            self.field == other.field
            and self.shape == other.shape
            and bool(np.array_equal(self.data, other.data))
        )

    def __hash__(self) -> int:
        return hash((self.field, self.shape, self.data.tobytes()))

    def __repr__(self) -> str:
        return f"Matrix({self.rows}x{self.cols} over {self.field}: {self.to_literal()!r})"

    def to_literal(self) -> str:
        fmt = self.field.format
        return ";".join(",".join(fmt(c) for c in row) for row in self.data)

    def tolist(self) -> list[list[int]]:
        return self.data.tolist()

    def is_zero(self) -> bool:
        return not self.data.any()

    def _check(self, other: Matrix) -> None:
        if self.field != other.field:
            raise FieldMismatchError(f"{self.field} vs {other.field}")

    # -- arithmetic ------------------------------------------------------

    def __add__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.field, self.field.add(self.data, other.data))

    def __neg__(self) -> Matrix:
        return Matrix(self.field, self.field.neg(self.data))

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-other)

    def __matmul__(self, other: Matrix) -> Matrix:
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        if self.cols == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        return Matrix(self.field, self.field.matmul(self.data, other.data))

    def scale(self, c: FieldElem | int) -> Matrix:
        return Matrix(self.field, self.field.mul(self.data, self.field.code(c)))

    def __pow__(self, e: int) -> Matrix:
        if self.rows != self.cols:
            raise ShapeError("only square matrices have powers")
        if e < 0:
            raise ValueError("negative matrix power")
        result, base = Matrix.identity(self.field, self.rows), self
        while e:
            if e & 1:
                result = result @ base
            base = base @ base
            e >>= 1
        return result

    @property
    def T(self) -> Matrix:
        return Matrix(self.field, self.data.T)

    def transpose(self) -> Matrix:
        return self.T

    def kron(self, other: Matrix) -> Matrix:
        """Kronecker product; block (i, j) is ``self[i, j] * other``."""
        self._check(other)
        r1, c1 = self.shape
        r2, c2 = other.shape
        prod = self.field.mul(self.data[:, None, :, None], other.data[None, :, None, :])
        return Matrix(self.field, prod.reshape(r1 * r2, c1 * c2))

    # -- structure -------------------------------------------------------

    def take_rows(self, t: int) -> Matrix:
        """The first t rows; t = 0 gives an empty ``0 x cols`` matrix."""
        if not 0 <= t <= self.rows:
            raise IndexError(f"cannot take {t} rows from {self.rows}")
        return Matrix(self.field, self.data[:t])

    def take_cols(self, js: Iterable[int]) -> Matrix:
        """Columns at the strictly ascending 1-based positions ``js``."""
        js = list(js)
        if any(b <= a for a, b in zip(js, js[1:])):
            raise IndexError(f"column indices {js} are not strictly ascending")
        if js and (js[0] < 1 or js[-1] > self.cols):
            raise IndexError(f"column indices {js} out of range 1..{self.cols}")
        return Matrix(self.field, self.data[:, [j - 1 for j in js]].reshape(self.rows, len(js)))

    def vec(self) -> Matrix:
        """Column-major flattening into a single row."""
        return Matrix(self.field, self.data.T.reshape(1, -1))

    @classmethod
    def unvec(cls, v: Matrix, rows: int) -> Matrix:
        """Inverse of :meth:`vec` for a ``1 x rows*cols`` row vector."""
        if v.rows != 1 or v.cols % rows:
            raise ShapeError(f"cannot reshape {v.shape} into {rows} rows")
        return cls(v.field, v.data.reshape(-1, rows).T)

    def rref(self) -> tuple[Matrix, int, list[int]]:
        """Reduced row echelon form, rank and 0-based pivot columns.

        Pivots are the first nonzero entry found scanning columns left to
        right, so the result is deterministic.
        """
        f = self.field
        a = self.data.copy()
        nrows, ncols = a.shape
        pivots: list[int] = []
        r = 0
        for c in range(ncols):
            if r == nrows:
                break
            nz = np.nonzero(a[r:, c])[0]
            if nz.size == 0:
                continue
            i = r + int(nz[0])
            if i != r:
                a[[r, i]] = a[[i, r]]
            a[r] = f.mul(a[r], f.inv(a[r, c]))
            others = np.nonzero(a[:, c])[0]
            others = others[others != r]
            if others.size:
                factors = f.neg(a[others, c])
                a[others] = f.add(a[others], f.mul(factors[:, None], a[r][None, :]))
            pivots.append(c)
            r += 1
        return Matrix(f, a), r, pivots

    @property
    def rank(self) -> int:
        return self.rref()[1]

    def row_space_basis(self) -> Matrix:
        """Nonzero rows of the RREF."""
        red, rank, _ = self.rref()
        return red.take_rows(rank)


def vstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise ShapeError("nothing to stack")
    field = mats[0].field
    for m in mats:
        if m.field != field:
            raise FieldMismatchError(f"{field} vs {m.field}")
    cols = {m.cols for m in mats}
    if len(cols) != 1:
        raise ShapeError(f"column counts differ: {sorted(cols)}")
    return Matrix(field, np.vstack([m.data for m in mats]).reshape(-1, cols.pop()))


def hstack(mats: Sequence[Matrix]) -> Matrix:
    if not mats:
        raise ShapeError("nothing to stack")
    field = mats[0].field
    for m in mats:
        if m.field != field:
            raise FieldMismatchError(f"{field} vs {m.field}")
    rows = {m.rows for m in mats}
    if len(rows) != 1:
        raise ShapeError(f"row counts differ: {sorted(rows)}")
    return Matrix(field, np.hstack([m.data for m in mats]).reshape(rows.pop(), -1))


def block_diag(blocks: Sequence[Matrix]) -> Matrix:
    if not blocks:
        raise ShapeError("no blocks")
    field = blocks[0].field
    for b in blocks:
        if b.field != field:
            raise FieldMismatchError(f"{field} vs {b.field}")
    out = np.zeros((sum(b.rows for b in blocks), sum(b.cols for b in blocks)), dtype=np.int64)
    r = c = 0
    for b in blocks:
        out[r : r + b.rows, c : c + b.cols] = b.data
        r += b.rows
        c += b.cols
    return Matrix(field, out)
