"""Reader for the MatrixMarket coordinate format.

Only `matrix coordinate real general` with 1-based indices is accepted.
Duplicate entries are folded (pattern-wise deduplicated, values summed).
Parse errors carry the offending line number; I/O errors propagate as
OSError.
"""

from .errors import MatrixMarketError
from .sparse import BcrsMatrix, MatrixIndexSet

_HEADER = ("%%matrixmarket", "matrix", "coordinate", "real", "general")


def read_matrix_market(path):
    """Parse `path` into a scalar BcrsMatrix with values filled in."""
    with open(path, "r", encoding="utf-8") as handle:
        lines = handle.readlines()

    if not lines:
        raise MatrixMarketError("empty file", line=1)
    header = lines[0].split()
    if len(header) != 5 or tuple(t.lower() for t in header) != _HEADER:
        raise MatrixMarketError(
            "expected header '%%MatrixMarket matrix coordinate real general'", line=1
        )

    size_line = None
    entries = {}
    declared = None
    rows = cols = 0
    for lineno, raw in enumerate(lines[1:], start=2):
        text = raw.strip()
        if not text or text.startswith("%"):
            continue
        fields = text.split()
        if size_line is None:
            if len(fields) != 3:
                raise MatrixMarketError("expected 'rows cols entries'", line=lineno)
            try:
                rows, cols, declared = (int(f) for f in fields)
            except ValueError:
                raise MatrixMarketError("size line must hold three integers", line=lineno)
            if rows < 0 or cols < 0 or declared < 0:
                raise MatrixMarketError("negative size", line=lineno)
            size_line = lineno
            continue
        if len(fields) != 3:
            raise MatrixMarketError("expected 'i j value'", line=lineno)
        try:
            i, j = int(fields[0]), int(fields[1])
            value = float(fields[2])
        except ValueError:
            raise MatrixMarketError("entry must be two integers and a real", line=lineno)
        if not (1 <= i <= rows and 1 <= j <= cols):
            raise MatrixMarketError(f"entry ({i}, {j}) outside {rows}x{cols}", line=lineno)
        key = (i - 1, j - 1)
        entries[key] = entries.get(key, 0.0) + value

    if size_line is None:
        raise MatrixMarketError("missing size line", line=len(lines))
    total_listed = sum(
        1
        for raw in lines[size_line:]
        if raw.strip() and not raw.strip().startswith("%")
    )
    if total_listed != declared:
        raise MatrixMarketError(
            f"declared {declared} entries but found {total_listed}", line=len(lines)
        )

    pattern = MatrixIndexSet(rows, cols)
    for i, j in entries:
        pattern.add(i, j)
    matrix = pattern.export(BcrsMatrix(rows, cols))
    for (i, j), value in entries.items():
        matrix.set_entry(i, j, value)
    return matrix
