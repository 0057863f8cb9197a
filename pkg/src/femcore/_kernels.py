"""Hot kernels of the sparse-pattern pipeline.

Each kernel exists twice: a numba-jitted scalar loop and a vectorized
pure-numpy fallback.  The active backend is chosen at import time from the
``FEMCORE_BACKEND`` environment variable ("numba", the default, or
"numpy"); when numba is not importable the numpy path is used silently.
Both implementations are kept importable so they can be compared
directly (see benchmarks/compare_backends.py).
"""

import os

import numpy as np

INT = np.int64


# -- numpy implementations ---------------------------------------------------


def _row_ids(offsets):
    n = offsets.shape[0] - 1
    return np.repeat(np.arange(n, dtype=INT), np.diff(offsets))


def check_sorted_rows_numpy(offsets, cols):
    """Index of the first row that is not strictly increasing, else -1."""
    if cols.shape[0] < 2:
        return -1
    bad = np.nonzero(np.diff(cols) <= 0)[0]
    if bad.shape[0] == 0:
        return -1
    boundary = np.zeros(cols.shape[0], dtype=bool)
    boundary[offsets[1:-1]] = True
    bad = bad[~boundary[bad + 1]]
    if bad.shape[0] == 0:
        return -1
    return int(np.searchsorted(offsets, bad[0], side="right") - 1)


def sort_rows_numpy(offsets, cols):
    """Copy of `cols` with every row segment sorted ascending."""
    order = np.lexsort((cols, _row_ids(offsets)))
    return cols[order]


def dedupe_rows_numpy(offsets, cols):
    """Drop repeated columns from sorted rows; returns (new_offsets, new_cols)."""
    n = offsets.shape[0] - 1
    if cols.shape[0] == 0:
        return offsets.copy(), cols.copy()
    keep = np.ones(cols.shape[0], dtype=bool)
    keep[1:] = cols[1:] != cols[:-1]
    keep[offsets[1:-1]] = True
    new_cols = cols[keep]
    lengths = np.bincount(_row_ids(offsets)[keep], minlength=n)
    new_offsets = np.zeros(n + 1, dtype=INT)
    np.cumsum(lengths, out=new_offsets[1:])
    return new_offsets, new_cols


def write_values_numpy(offsets, cols, ncols, i_idx, j_idx, vals, out):
    """Store vals at the existing entries (i_idx[k], j_idx[k])."""
    stored = _row_ids(offsets) * ncols + cols
    pos = np.searchsorted(stored, i_idx.astype(INT) * ncols + j_idx)
    out[pos] = vals


_NUMPY_IMPL = {
    "check_sorted_rows": check_sorted_rows_numpy,
    "sort_rows": sort_rows_numpy,
    "dedupe_rows": dedupe_rows_numpy,
    "write_values": write_values_numpy,
}


# -- numba implementations ---------------------------------------------------

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised on minimal installs
    numba = None
    HAVE_NUMBA = False


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _check_sorted_rows_jit(offsets, cols):
        for i in range(offsets.shape[0] - 1):
            for k in range(offsets[i] + 1, offsets[i + 1]):
                if cols[k] <= cols[k - 1]:
                    return i
        return -1

    def check_sorted_rows_numba(offsets, cols):
        return int(_check_sorted_rows_jit(offsets, cols))

    @numba.njit(cache=True)
    def sort_rows_numba(offsets, cols):
        out = cols.copy()
        for i in range(offsets.shape[0] - 1):
            lo = offsets[i]
            hi = offsets[i + 1]
            for k in range(lo + 1, hi):
                v = out[k]
                p = k - 1
                while p >= lo and out[p] > v:
                    out[p + 1] = out[p]
                    p -= 1
                out[p + 1] = v
        return out

    @numba.njit(cache=True)
    def dedupe_rows_numba(offsets, cols):
        n = offsets.shape[0] - 1
        new_offsets = np.zeros(n + 1, dtype=INT)
        new_cols = np.empty(cols.shape[0], dtype=cols.dtype)
        m = 0
        for i in range(n):
            for k in range(offsets[i], offsets[i + 1]):
                if k == offsets[i] or cols[k] != cols[k - 1]:
                    new_cols[m] = cols[k]
                    m += 1
            new_offsets[i + 1] = m
        return new_offsets, new_cols[:m]

    @numba.njit(cache=True)
    def write_values_numba(offsets, cols, ncols, i_idx, j_idx, vals, out):
        for k in range(i_idx.shape[0]):
            lo = offsets[i_idx[k]]
            hi = offsets[i_idx[k] + 1]
            j = j_idx[k]
            while lo < hi:
                mid = (lo + hi) // 2
                if cols[mid] < j:
                    lo = mid + 1
                else:
                    hi = mid
            out[lo] = vals[k]

    _NUMBA_IMPL = {
        "check_sorted_rows": check_sorted_rows_numba,
        "sort_rows": sort_rows_numba,
        "dedupe_rows": dedupe_rows_numba,
        "write_values": write_values_numba,
    }
else:
    _NUMBA_IMPL = None


IMPLEMENTATIONS = {"numpy": _NUMPY_IMPL}
if _NUMBA_IMPL is not None:
    IMPLEMENTATIONS["numba"] = _NUMBA_IMPL


def _select_backend():
    requested = os.environ.get("FEMCORE_BACKEND", "numba").lower()
    if requested not in ("numba", "numpy"):
        raise ValueError(f"FEMCORE_BACKEND={requested!r} (expected 'numba' or 'numpy')")
    if requested == "numba" and not HAVE_NUMBA:
        return "numpy"
    return requested


BACKEND = _select_backend()
_ACTIVE = IMPLEMENTATIONS[BACKEND]

check_sorted_rows = _ACTIVE["check_sorted_rows"]
sort_rows = _ACTIVE["sort_rows"]
dedupe_rows = _ACTIVE["dedupe_rows"]
write_values = _ACTIVE["write_values"]
