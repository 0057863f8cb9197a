"""Sparsity-pattern builder and block compressed-row matrices.

MatrixIndexSet keeps each row as a sorted unique container: a plain sorted
array while the row holds at most `flat_threshold` entries, an ordered set
above that (the migration is one-way).  Because rows are always sorted,
exporting into a BcrsMatrix can skip the re-sorting that a generic pattern
source would need; `BcrsMatrix.set_indices_no_sort` is that fast path.
"""

from itertools import chain

import numpy as np
from sortedcontainers import SortedSet

from . import _kernels
from .errors import BoundsError, ContractError, ShapeMismatchError

FLAT_THRESHOLD = 64

INT = _kernels.INT


class MatrixIndexSet:
    """Builder for the nonzero pattern of a (block) matrix."""

    def __init__(self, rows, cols, flat_threshold=FLAT_THRESHOLD):
        if rows < 0 or cols < 0:
            raise ShapeMismatchError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        self.flat_threshold = flat_threshold
        self._rows = [[] for _ in range(rows)]

    def add(self, i, j):
        """Insert column `j` into row `i`; duplicates are ignored."""
        if not 0 <= i < self.rows:
            raise BoundsError(f"row {i} out of range (rows {self.rows})")
        if not 0 <= j < self.cols:
            raise BoundsError(f"column {j} out of range (cols {self.cols})")
        row = self._rows[i]
        if isinstance(row, SortedSet):
            row.add(j)
            return
        # flat path: binary search + shift keeps the array sorted unique
        lo, hi = 0, len(row)
        while lo < hi:
            mid = (lo + hi) // 2
            if row[mid] < j:
                lo = mid + 1
            else:
                hi = mid
        if lo < len(row) and row[lo] == j:
            return
        row.insert(lo, j)
        if len(row) > self.flat_threshold:
            self._rows[i] = SortedSet(row)

    def row_size(self, i):
        self._check_row(i)
        return len(self._rows[i])

    def column_indices(self, i):
        """Ascending traversal of row `i`'s columns (no materialization)."""
        self._check_row(i)
        return iter(self._rows[i])

    @property
    def total_entries(self):
        return sum(len(r) for r in self._rows)

    def export(self, matrix=None):
        """Build a BcrsMatrix with this pattern via the no-sort path."""
        if matrix is None:
            matrix = BcrsMatrix(self.rows, self.cols)
        if (matrix.rows, matrix.cols) != (self.rows, self.cols):
            raise ShapeMismatchError(
                f"matrix is {matrix.rows}x{matrix.cols} blocks, "
                f"pattern is {self.rows}x{self.cols}"
            )
        lengths = np.fromiter((len(r) for r in self._rows), dtype=INT, count=self.rows)
        flat = np.fromiter(chain.from_iterable(self._rows), dtype=INT, count=int(lengths.sum()))
        matrix._set_structure_flat(lengths, flat, presorted=True)
        return matrix

    def _check_row(self, i):
        if not 0 <= i < self.rows:
            raise BoundsError(f"row {i} out of range (rows {self.rows})")


class BcrsMatrix:
    """Block compressed-row matrix.

    `block` selects the entry type: None for scalar entries, an (m, k)
    tuple for dense blocks, or "sparse" for nested BcrsMatrix blocks.
    Nesting is homogeneous: every block of one matrix has the same shape.
    Structure is built once via `set_indices` / `set_indices_no_sort` and
    is immutable afterwards.
    """

    def __init__(self, rows, cols, block=None):
        if rows < 0 or cols < 0:
            raise ShapeMismatchError("negative matrix dimensions")
        self.rows = rows
        self.cols = cols
        if block is None:
            self.block_kind = "scalar"
            self.block_shape = None
        elif block == "sparse":
            self.block_kind = "sparse"
            self.block_shape = None
        else:
            bm, bk = block
            if bm <= 0 or bk <= 0:
                raise ShapeMismatchError("dense block shape must be positive")
            self.block_kind = "dense"
            self.block_shape = (int(bm), int(bk))
        self.row_offsets = None
        self.col_indices = None
        self.values = None
        self._block_template = None

    # -- structure ----------------------------------------------------------

    @property
    def has_structure(self):
        return self.row_offsets is not None

    @property
    def nnz(self):
        """Number of stored blocks."""
        return 0 if self.row_offsets is None else int(self.row_offsets[-1])

    def set_indices(self, rows):
        """Build the structure from arbitrary per-row index sequences.

        Rows are sorted and deduplicated; the result is identical to the
        no-sort path fed with the cleaned-up pattern.
        """
        parts = [sorted(r) for r in rows]
        self._require_rows(len(parts))
        lengths = np.fromiter((len(r) for r in parts), dtype=INT, count=self.rows)
        flat = np.fromiter(chain.from_iterable(parts), dtype=INT, count=int(lengths.sum()))
        offsets = np.zeros(self.rows + 1, dtype=INT)
        np.cumsum(lengths, out=offsets[1:])
        offsets, flat = _kernels.dedupe_rows(offsets, flat)
        self._finish_structure(offsets, flat)
        return self

    def set_indices_no_sort(self, rows):
        """Build the structure from rows that are already strictly increasing.

        The precondition is only verified in debug mode (``python -O``
        skips it); a violating row raises ContractError naming the row.
        """
        parts = [list(r) for r in rows]
        self._require_rows(len(parts))
        lengths = np.fromiter((len(r) for r in parts), dtype=INT, count=self.rows)
        flat = np.fromiter(chain.from_iterable(parts), dtype=INT, count=int(lengths.sum()))
        self._set_structure_flat(lengths, flat, presorted=True)
        return self

    def _set_structure_flat(self, lengths, flat, presorted):
        offsets = np.zeros(self.rows + 1, dtype=INT)
        np.cumsum(lengths, out=offsets[1:])
        if presorted and __debug__:
            bad = _kernels.check_sorted_rows(offsets, flat)
            if bad >= 0:
                raise ContractError(f"row {bad} is not strictly increasing")
        self._finish_structure(offsets, flat)

    def _finish_structure(self, offsets, flat):
        if flat.shape[0] and (flat.min() < 0 or flat.max() >= self.cols):
            raise BoundsError(f"column index out of range (cols {self.cols})")
        self.row_offsets = offsets
        self.col_indices = flat
        nnz = int(offsets[-1])
        if self.block_kind == "scalar":
            self.values = np.zeros(nnz)
        elif self.block_kind == "dense":
            self.values = np.zeros((nnz,) + self.block_shape)
        else:
            self.values = [None] * nnz

    def _require_rows(self, n):
        if n != self.rows:
            raise ShapeMismatchError(f"{n} rows supplied for a matrix with {self.rows} rows")

    def _require_structure(self):
        if not self.has_structure:
            raise ContractError("matrix structure has not been built")

    # -- entry access ---------------------------------------------------------

    def _find(self, i, j):
        self._require_structure()
        if not 0 <= i < self.rows:
            raise BoundsError(f"row {i} out of range (rows {self.rows})")
        lo, hi = int(self.row_offsets[i]), int(self.row_offsets[i + 1])
        pos = lo + int(np.searchsorted(self.col_indices[lo:hi], j))
        if pos == hi or self.col_indices[pos] != j:
            raise BoundsError(f"entry ({i}, {j}) is not part of the pattern")
        return pos

    def entry(self, i, j):
        return self.values[self._find(i, j)]

    def set_entry(self, i, j, value):
        pos = self._find(i, j)
        if self.block_kind == "sparse":
            self._check_block(value)
        self.values[pos] = value

    def _check_block(self, block):
        template = (block.rows, block.cols, block.block_kind)
        if self._block_template is None:
            self._block_template = template
        elif template != self._block_template:
            raise ShapeMismatchError(
                f"inhomogeneous nesting: block {template} among {self._block_template}"
            )

    def write_entries(self, i_idx, j_idx, values):
        """Set values at existing scalar entries in bulk."""
        self._require_structure()
        if self.block_kind != "scalar":
            raise ContractError("bulk writes are defined for scalar matrices")
        _kernels.write_values(
            self.row_offsets,
            self.col_indices,
            self.cols,
            np.asarray(i_idx, dtype=INT),
            np.asarray(j_idx, dtype=INT),
            np.asarray(values, dtype=float),
            self.values,
        )

    def sparse_row(self, i):
        """Yield (block value, column index) pairs of row `i`, ascending."""
        self._require_structure()
        if not 0 <= i < self.rows:
            raise BoundsError(f"row {i} out of range (rows {self.rows})")
        for pos in range(int(self.row_offsets[i]), int(self.row_offsets[i + 1])):
            yield self.values[pos], int(self.col_indices[pos])

    def scalar_nnz(self):
        """Total number of scalar-level stored entries, through all nesting."""
        self._require_structure()
        if self.block_kind == "scalar":
            return self.nnz
        if self.block_kind == "dense":
            return self.nnz * self.block_shape[0] * self.block_shape[1]
        return sum(b.scalar_nnz() for b in self.values if b is not None)

    def matvec(self, x):
        """y = A @ x for scalar matrices, via sparse-row traversal."""
        if self.block_kind != "scalar":
            raise ContractError("matvec is defined for scalar matrices")
        x = np.asarray(x, dtype=float)
        y = np.zeros(self.rows)
        for i in range(self.rows):
            for a_ij, j in self.sparse_row(i):
                y[i] += a_ij * x[j]
        return y

    def pattern_equals(self, other):
        return (
            self.rows == other.rows
            and self.cols == other.cols
            and np.array_equal(self.row_offsets, other.row_offsets)
            and np.array_equal(self.col_indices, other.col_indices)
        )

    def __repr__(self):
        return (
            f"BcrsMatrix({self.rows}x{self.cols} blocks, {self.block_kind}, "
            f"nnz={self.nnz if self.has_structure else 'unset'})"
        )


def sparse_row(matrix, i):
    """(value, column) traversal of row `i`, for sparse and dense matrices."""
    if isinstance(matrix, BcrsMatrix):
        return matrix.sparse_row(i)
    dense = np.asarray(matrix)
    if dense.ndim != 2:
        raise ShapeMismatchError("dense adapter expects a 2-d array")
    if not 0 <= i < dense.shape[0]:
        raise BoundsError(f"row {i} out of range (rows {dense.shape[0]})")
    return ((dense[i, j], j) for j in range(dense.shape[1]))
