"""Hankel and Jacobi-Trudi matrices over a finite field, with exact rank.

A Hankel view of a tuple x = (x_0, ..., x_N) with shape (rdeg, cdeg) is the
(rdeg+1) x (cdeg+1) matrix whose (i, j) entry is x_{i+j}; rdeg or cdeg may
be -1, giving a legal empty matrix of rank 0.  Rank, determinant and left
kernel dimension are computed by exact Gaussian elimination with partial
pivoting on the first nonzero entry.

Internally rows are lists of integer element codes (see gf); the
elimination kernels specialize on prime fields, table-backed small
extension fields, and a generic fallback.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Sequence

from hankelcensus.gf import FieldElement, FieldSpec

__all__ = [
    "SeqTuple",
    "HankelShape",
    "DenseMatrix",
    "RowVector",
    "materialize_hankel",
    "rank_gauss",
    "det",
    "left_kernel_dim",
    "prefix",
    "jt_matrix",
    "jt_to_hankel",
    "row_reversal_sign",
    "vec_mat_mul",
    "iter_seq_tuples",
]


@dataclass(frozen=True)
class SeqTuple:
    """A tuple (x_0, ..., x_N) of field elements."""

    field: FieldSpec
    entries: tuple[FieldElement, ...]

    def __post_init__(self):
        for e in self.entries:
            if e.spec != self.field:
                raise ValueError(f"entry {e!r} does not belong to {self.field}")

    @classmethod
    def from_codes(cls, field: FieldSpec, codes: Sequence[int]) -> "SeqTuple":
        return cls(field, tuple(field.element(c) for c in codes))

    @cached_property
    def codes(self) -> tuple[int, ...]:
        return tuple(e.code for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i) -> FieldElement:
        return self.entries[i]

    def __iter__(self):
        return iter(self.entries)

    def __str__(self):
        return "(" + ",".join(str(e) for e in self.entries) + ")"


@dataclass(frozen=True)
class HankelShape:
    """Hankel degrees (rdeg, cdeg); the matrix is (rdeg+1) x (cdeg+1)."""

    rdeg: int
    cdeg: int

    def __post_init__(self):
        if self.rdeg < -1 or self.cdeg < -1:
            raise ValueError(f"Hankel degrees must be >= -1, got {self}")

    @property
    def rows(self) -> int:
        return self.rdeg + 1

    @property
    def cols(self) -> int:
        return self.cdeg + 1


@dataclass(frozen=True)
class DenseMatrix:
    """Row-major dense matrix with entries in a fixed field."""

    field: FieldSpec
    rows: int
    cols: int
    data: tuple[FieldElement, ...]

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.data) != self.rows * self.cols:
            raise ValueError(
                f"data length {len(self.data)} != {self.rows} x {self.cols}"
            )
        for e in self.data:
            if e.spec != self.field:
                raise ValueError(f"entry {e!r} does not belong to {self.field}")

    @classmethod
    def from_rows(
        cls,
        field: FieldSpec,
        rows: Sequence[Sequence[FieldElement]],
        *,
        cols: int | None = None,
    ) -> "DenseMatrix":
        nrows = len(rows)
        if nrows == 0:
            if cols is None:
                cols = 0
            return cls(field, 0, cols, ())
        ncols = len(rows[0])
        if cols is not None and cols != ncols:
            raise ValueError("cols does not match row length")
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        data = tuple(e for r in rows for e in r)
        return cls(field, nrows, ncols, data)

    @classmethod
    def zeros(cls, field: FieldSpec, rows: int, cols: int) -> "DenseMatrix":
        return cls(field, rows, cols, (field.zero,) * (rows * cols))

    @classmethod
    def identity(cls, field: FieldSpec, n: int) -> "DenseMatrix":
        one, zero = field.one, field.zero
        data = tuple(one if i == j else zero for i in range(n) for j in range(n))
        return cls(field, n, n, data)

    def entry(self, i: int, j: int) -> FieldElement:
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i},{j}) out of range")
        return self.data[i * self.cols + j]

    def row(self, i: int) -> tuple[FieldElement, ...]:
        return self.data[i * self.cols : (i + 1) * self.cols]

    def code_rows(self) -> list[list[int]]:
        """Fresh mutable integer-code rows (safe to hand to the kernels)."""
        c = self.cols
        codes = [e.code for e in self.data]
        return [codes[i * c : (i + 1) * c] for i in range(self.rows)]

    def transpose(self) -> "DenseMatrix":
        data = tuple(
            self.data[i * self.cols + j]
            for j in range(self.cols)
            for i in range(self.rows)
        )
        return DenseMatrix(self.field, self.cols, self.rows, data)

    def reverse_rows(self) -> "DenseMatrix":
        data = tuple(
            e for i in reversed(range(self.rows)) for e in self.row(i)
        )
        return DenseMatrix(self.field, self.rows, self.cols, data)

    def __str__(self):
        return "\n".join(
            "[" + " ".join(str(e) for e in self.row(i)) + "]" for i in range(self.rows)
        )


@dataclass(frozen=True)
class RowVector:
    """A row vector v = (v_0, ..., v_m) over a fixed field."""

    field: FieldSpec
    entries: tuple[FieldElement, ...]

    def __post_init__(self):
        for e in self.entries:
            if e.spec != self.field:
                raise ValueError(f"entry {e!r} does not belong to {self.field}")

    @classmethod
    def from_codes(cls, field: FieldSpec, codes: Sequence[int]) -> "RowVector":
        return cls(field, tuple(field.element(c) for c in codes))

    @cached_property
    def codes(self) -> tuple[int, ...]:
        return tuple(e.code for e in self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __getitem__(self, i) -> FieldElement:
        return self.entries[i]

    def __bool__(self) -> bool:
        return any(self.entries)

    def __str__(self):
        return "(" + ",".join(str(e) for e in self.entries) + ")"


# ----------------------------------------------------------------------
# Elimination kernels on integer-code rows.  All of them mutate `rows`.
# `limit` stops the pivot hunt early: the return value is exact when it is
# <= limit, and limit+1 means "rank exceeds limit".
# ----------------------------------------------------------------------


def _rank_rows_modp(rows: list[list[int]], p: int, limit: int) -> int:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    top = 0
    for col in range(ncols):
        piv = -1
        for i in range(top, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        rank += 1
        if rank > limit:
            return rank
        rows[top], rows[piv] = rows[piv], rows[top]
        prow = rows[top]
        pinv = pow(prow[col], p - 2, p)
        for i in range(top + 1, nrows):
            f = rows[i][col]
            if f:
                f = f * pinv % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], prow)]
        top += 1
        if top == nrows:
            break
    return rank


def _rank_rows_table(rows: list[list[int]], tab, limit: int) -> int:
    mul, sub, inv = tab.mul, tab.sub, tab.inv
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    top = 0
    for col in range(ncols):
        piv = -1
        for i in range(top, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        rank += 1
        if rank > limit:
            return rank
        rows[top], rows[piv] = rows[piv], rows[top]
        prow = rows[top]
        pinv = inv[prow[col]]
        for i in range(top + 1, nrows):
            f = rows[i][col]
            if f:
                mf = mul[mul[f][pinv]]
                rows[i] = [sub[x][mf[y]] for x, y in zip(rows[i], prow)]
        top += 1
        if top == nrows:
            break
    return rank


def _rank_rows_generic(rows: list[list[int]], spec: FieldSpec, limit: int) -> int:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    rank = 0
    top = 0
    for col in range(ncols):
        piv = -1
        for i in range(top, nrows):
            if rows[i][col]:
                piv = i
                break
        if piv < 0:
            continue
        rank += 1
        if rank > limit:
            return rank
        rows[top], rows[piv] = rows[piv], rows[top]
        prow = rows[top]
        pinv = spec.inv_code(prow[col])
        for i in range(top + 1, nrows):
            f = rows[i][col]
            if f:
                f = spec.mul_code(f, pinv)
                rows[i] = [
                    spec.sub_code(x, spec.mul_code(f, y))
                    for x, y in zip(rows[i], prow)
                ]
        top += 1
        if top == nrows:
            break
    return rank


def _rank_codes(spec: FieldSpec, rows: list[list[int]], limit: int | None = None) -> int:
    nrows = len(rows)
    ncols = len(rows[0]) if nrows else 0
    cap = min(nrows, ncols)
    if limit is None or limit > cap:
        limit = cap
    if spec.d == 1:
        return _rank_rows_modp(rows, spec.p, limit)
    tab = spec.tables
    if tab is not None:
        return _rank_rows_table(rows, tab, limit)
    return _rank_rows_generic(rows, spec, limit)


def _rank_kernel(spec: FieldSpec):
    """Bind the fastest rank kernel for this field once, for hot loops.

    The returned function takes (rows, limit) and mutates rows.
    """
    if spec.d == 1:
        p = spec.p

        def kern(rows: list[list[int]], limit: int, _p: int = p) -> int:
            return _rank_rows_modp(rows, _p, limit)

        return kern
    tab = spec.tables
    if tab is not None:

        def kern(rows: list[list[int]], limit: int, _tab=tab) -> int:
            return _rank_rows_table(rows, _tab, limit)

        return kern

    def kern(rows: list[list[int]], limit: int, _spec: FieldSpec = spec) -> int:
        return _rank_rows_generic(rows, _spec, limit)

    return kern


def _det_codes(spec: FieldSpec, rows: list[list[int]]) -> int:
    """Determinant code of a square code matrix; mutates rows."""
    n = len(rows)
    det_code = 1  # code of the field's one
    negate = False
    for col in range(n):
        piv = -1
        for i in range(col, n):
            if rows[i][col]:
                piv = i
                break
        if piv < 0:
            return 0
        if piv != col:
            rows[col], rows[piv] = rows[piv], rows[col]
            negate = not negate
        prow = rows[col]
        det_code = spec.mul_code(det_code, prow[col])
        pinv = spec.inv_code(prow[col])
        for i in range(col + 1, n):
            f = rows[i][col]
            if f:
                f = spec.mul_code(f, pinv)
                rows[i] = [
                    spec.sub_code(x, spec.mul_code(f, y))
                    for x, y in zip(rows[i], prow)
                ]
    if negate:
        det_code = spec.neg_code(det_code)
    return det_code


def _hankel_code_rows(codes: Sequence[int], rdeg: int, cdeg: int) -> list[list[int]]:
    """Mutable code rows of the (rdeg+1) x (cdeg+1) Hankel view of codes."""
    ncols = cdeg + 1
    return [list(codes[i : i + ncols]) for i in range(rdeg + 1)]


# ----------------------------------------------------------------------
# Public operations
# ----------------------------------------------------------------------


def materialize_hankel(x: SeqTuple, shape: HankelShape) -> DenseMatrix:
    """The (rdeg+1) x (cdeg+1) matrix with entry (i, j) = x_{i+j}."""
    n = len(x) - 1
    if shape.rdeg + shape.cdeg > n:
        raise ValueError(
            f"shape ({shape.rdeg},{shape.cdeg}) needs rdeg+cdeg <= {n} "
            f"for a tuple of length {len(x)}"
        )
    nrows, ncols = shape.rows, shape.cols
    data = tuple(x.entries[i + j] for i in range(nrows) for j in range(ncols))
    return DenseMatrix(x.field, nrows, ncols, data)


def rank_gauss(M: DenseMatrix) -> int:
    """Exact rank over the field; an empty matrix has rank 0."""
    return _rank_codes(M.field, M.code_rows())


def det(M: DenseMatrix) -> FieldElement:
    """Determinant by elimination, tracking pivot products and swap sign."""
    if M.rows != M.cols:
        raise ValueError(f"determinant needs a square matrix, got {M.rows}x{M.cols}")
    return M.field.element(_det_codes(M.field, M.code_rows()))


def left_kernel_dim(M: DenseMatrix) -> int:
    """Dimension of the left kernel: rows - rank."""
    return M.rows - rank_gauss(M)


def prefix(x: SeqTuple, k: int) -> SeqTuple:
    """The k-tuple of the first k entries of x."""
    if not 0 <= k <= len(x):
        raise ValueError(f"prefix length {k} out of range for tuple of length {len(x)}")
    return SeqTuple(x.field, x.entries[:k])


def _jt_entry(y: SeqTuple, idx: int) -> FieldElement:
    # index 0 means the constant one; negative indices mean zero
    if idx < 0:
        return y.field.zero
    if idx == 0:
        return y.field.one
    return y.entries[idx - 1]


def jt_matrix(y: SeqTuple, u: int, v: int) -> DenseMatrix:
    """The v x v matrix with entry (i, j) = y_{u-i+j} (1-indexed i, j).

    The tuple y supplies y_1 .. y_{u+v-1}; index 0 is read as 1 and
    negative indices as 0.
    """
    if u < 0 or v < 0 or u + v < 1:
        raise ValueError(f"need u, v >= 0 with u+v >= 1, got u={u}, v={v}")
    if len(y) != u + v - 1:
        raise ValueError(f"y must have {u + v - 1} entries, got {len(y)}")
    data = tuple(
        _jt_entry(y, u - i + j) for i in range(1, v + 1) for j in range(1, v + 1)
    )
    return DenseMatrix(y.field, v, v, data)


def jt_to_hankel(y: SeqTuple, u: int, v: int) -> SeqTuple:
    """The (2v-1)-tuple x with x_t = y_{u-v+1+t} (same 0/1 index conventions).

    Its (v-1, v-1) Hankel view is jt_matrix(y, u, v) with row order
    reversed, so determinants agree up to the row-reversal sign and ranks
    agree exactly.
    """
    if u < 1 or v < 1:
        raise ValueError(f"the flip needs u >= 1 and v >= 1, got u={u}, v={v}")
    if len(y) != u + v - 1:
        raise ValueError(f"y must have {u + v - 1} entries, got {len(y)}")
    entries = tuple(_jt_entry(y, u - v + 1 + t) for t in range(2 * v - 1))
    return SeqTuple(y.field, entries)


def row_reversal_sign(field: FieldSpec, nrows: int) -> FieldElement:
    """Sign (-1)^floor(nrows/2) of the permutation reversing nrows rows."""
    one = field.one
    return one if (nrows // 2) % 2 == 0 else -one


def vec_mat_mul(v: RowVector, M: DenseMatrix) -> RowVector:
    """Row vector times matrix; v must have one entry per matrix row."""
    if len(v) != M.rows:
        raise ValueError(f"vector length {len(v)} != matrix rows {M.rows}")
    if v.field != M.field:
        raise ValueError("vector and matrix live in different fields")
    spec = M.field
    vcodes = v.codes
    out = []
    for j in range(M.cols):
        acc = 0
        for i in range(M.rows):
            acc = spec.add_code(acc, spec.mul_code(vcodes[i], M.data[i * M.cols + j].code))
        out.append(acc)
    return RowVector.from_codes(spec, out)


def iter_seq_tuples(
    field: FieldSpec, length: int, fixed_prefix: SeqTuple | None = None
) -> Iterator[SeqTuple]:
    """All tuples of the given length, optionally with a fixed prefix.

    Enumeration is the canonical odometer over element codes.
    """
    head: tuple[FieldElement, ...] = ()
    if fixed_prefix is not None:
        if fixed_prefix.field != field:
            raise ValueError("prefix belongs to a different field")
        if len(fixed_prefix) > length:
            raise ValueError("prefix longer than requested tuple")
        head = fixed_prefix.entries
    free = length - len(head)
    if free == 0:  # do not touch the element table of a huge field
        yield SeqTuple(field, head)
        return
    for tail in itertools.product(field.elements(), repeat=free):
        yield SeqTuple(field, head + tail)
