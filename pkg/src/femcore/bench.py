"""Three-stage assembly benchmark on a five-point-stencil pattern.

The stages mirror a typical sparse-assembly pipeline: (1) all add(i, j)
calls into the MatrixIndexSet, (2) creation of the matrix structure, and
(3) writing values into the existing entries.  Stage 2 is where the two
modes differ: `baseline-resort` builds the structure from a shuffled copy
of the rows and therefore re-sorts every row, `nosort` exports the index
set's already-sorted rows directly.  Absolute times are machine-specific;
only the relative comparison is meaningful.
"""

import random
import statistics
import time
import zlib
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .sparse import BcrsMatrix, MatrixIndexSet

STAGES = ("assemble-pattern", "setup-matrix", "assemble-matrix")
MODE_NOSORT = "nosort"
MODE_RESORT = "baseline-resort"
_SHUFFLE_SEED = 20240904


@dataclass
class BenchReport:
    """Per-stage wall-clock seconds of one benchmark configuration."""

    n: int
    mode: str
    backend: str
    checksum: int
    seconds: dict = field(default_factory=dict)


def five_point_pairs(n):
    """(i, j) pairs of the 5-point stencil on an n x n grid, assembly order."""
    pairs = []
    for r in range(n):
        for c in range(n):
            i = r * n + c
            pairs.append((i, i))
            if r > 0:
                pairs.append((i, i - n))
            if r < n - 1:
                pairs.append((i, i + n))
            if c > 0:
                pairs.append((i, i - 1))
            if c < n - 1:
                pairs.append((i, i + 1))
    return pairs


def pattern_checksum(matrix):
    """CRC of the offsets and column arrays; identical for equal patterns."""
    return zlib.crc32(matrix.col_indices.tobytes(), zlib.crc32(matrix.row_offsets.tobytes()))


def _run_once(n, mode):
    size = n * n
    pairs = five_point_pairs(n)
    timings = {}

    start = time.perf_counter()
    index_set = MatrixIndexSet(size, size)
    add = index_set.add
    for i, j in pairs:
        add(i, j)
    timings[STAGES[0]] = time.perf_counter() - start

    if mode == MODE_NOSORT:
        start = time.perf_counter()
        matrix = index_set.export()
        timings[STAGES[1]] = time.perf_counter() - start
    else:
        # The baseline models a pattern source without the sortedness
        # guarantee: rows arrive in arbitrary order and the matrix must
        # sort (and deduplicate) them itself.  The shuffling is input
        # preparation and stays untimed.
        rng = random.Random(_SHUFFLE_SEED)
        shuffled = []
        for i in range(size):
            row = list(index_set.column_indices(i))
            rng.shuffle(row)
            shuffled.append(row)
        start = time.perf_counter()
        matrix = BcrsMatrix(size, size).set_indices(shuffled)
        timings[STAGES[1]] = time.perf_counter() - start

    i_idx = np.fromiter((p[0] for p in pairs), dtype=np.int64, count=len(pairs))
    j_idx = np.fromiter((p[1] for p in pairs), dtype=np.int64, count=len(pairs))
    values = np.arange(1.0, len(pairs) + 1.0)
    start = time.perf_counter()
    matrix.write_entries(i_idx, j_idx, values)
    timings[STAGES[2]] = time.perf_counter() - start

    return timings, matrix


def run_bench(n, mode, reps=5):
    """Median per-stage seconds over `reps` runs, after one warm-up run."""
    if n < 2:
        raise ValueError("grid side must be at least 2")
    if mode not in (MODE_NOSORT, MODE_RESORT):
        raise ValueError(f"unknown mode {mode!r}")
    _run_once(n, mode)  # untimed warm-up (JIT compilation, allocator)
    samples = {stage: [] for stage in STAGES}
    matrix = None
    for _ in range(reps):
        timings, matrix = _run_once(n, mode)
        for stage in STAGES:
            samples[stage].append(timings[stage])
    report = BenchReport(
        n=n,
        mode=mode,
        backend=_kernels.BACKEND,
        checksum=pattern_checksum(matrix),
        seconds={stage: statistics.median(samples[stage]) for stage in STAGES},
    )
    return report
