"""SVG rendering of (possibly nested) sparse-matrix patterns.

One rectangle is emitted per scalar-level nonzero; stored dense blocks
count every cell.  The document is sized as

    W = total_scalar_cols * cell + 2 * padding * depth

(and H analogously), where `depth` is the nesting depth below the top
matrix (0 for a plain scalar matrix); the padding accumulates as an outer
margin per nesting level.  Cell fill colors cycle through the style's
color list by depth.  Output is deterministic for identical inputs.
"""

from dataclasses import dataclass

from .errors import ContractError, ShapeMismatchError
from .sparse import BcrsMatrix


@dataclass(frozen=True)
class SpyStyle:
    cell_size: float = 10.0
    padding: float = 4.0
    level_colors: tuple = ("#00337f", "#7f1a00", "#1a6600")
    background: str = "#ffffff"

    def __post_init__(self):
        if self.cell_size <= 0:
            raise ShapeMismatchError("cell size must be positive")
        if self.padding < 0:
            raise ShapeMismatchError("padding must be non-negative")
        if not self.level_colors:
            raise ShapeMismatchError("need at least one level color")


def _first_block(matrix):
    for block in matrix.values:
        if block is not None:
            return block
    raise ContractError("nested matrix has no blocks to size the layout from")


def nesting_depth(matrix):
    """Number of containment levels below the top matrix (scalar entries: 0)."""
    if matrix.block_kind == "scalar":
        return 0
    if matrix.block_kind == "dense":
        return 1
    return 1 + nesting_depth(_first_block(matrix))


def scalar_shape(matrix):
    """(rows, cols) counted in scalar entries through all nesting levels."""
    if matrix.block_kind == "scalar":
        return matrix.rows, matrix.cols
    if matrix.block_kind == "dense":
        bm, bk = matrix.block_shape
        return matrix.rows * bm, matrix.cols * bk
    br, bc = scalar_shape(_first_block(matrix))
    return matrix.rows * br, matrix.cols * bc


def _cells(matrix, row0, col0):
    """Yield global (scalar row, scalar col) of every scalar nonzero."""
    if matrix.block_kind == "scalar":
        for i in range(matrix.rows):
            for _, j in matrix.sparse_row(i):
                yield row0 + i, col0 + j
        return
    if matrix.block_kind == "dense":
        bm, bk = matrix.block_shape
        for i in range(matrix.rows):
            for _, j in matrix.sparse_row(i):
                for a in range(bm):
                    for b in range(bk):
                        yield row0 + i * bm + a, col0 + j * bk + b
        return
    br, bc = scalar_shape(_first_block(matrix))
    for i in range(matrix.rows):
        for block, j in matrix.sparse_row(i):
            if block is not None:
                yield from _cells(block, row0 + i * br, col0 + j * bc)


def _fmt(x):
    return f"{x:.10g}"


def write_svg(matrix, style=None):
    """Render the pattern of `matrix` as an SVG 1.1 document string."""
    if not isinstance(matrix, BcrsMatrix):
        raise ShapeMismatchError("write_svg expects a BcrsMatrix")
    matrix._require_structure()
    style = style or SpyStyle()
    depth = nesting_depth(matrix)
    rows_s, cols_s = scalar_shape(matrix)
    cell = style.cell_size
    margin = style.padding * depth
    width = cols_s * cell + 2.0 * margin
    height = rows_s * cell + 2.0 * margin
    fill = style.level_colors[depth % len(style.level_colors)]

    lines = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        (
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'viewBox="0 0 {_fmt(width)} {_fmt(height)}" '
            f'width="{_fmt(width)}" height="{_fmt(height)}" '
            f'style="background-color:{style.background}">'
        ),
    ]
    for r, c in _cells(matrix, 0, 0):
        lines.append(
            f'<rect x="{_fmt(margin + c * cell)}" y="{_fmt(margin + r * cell)}" '
            f'width="{_fmt(cell)}" height="{_fmt(cell)}" fill="{fill}"/>'
        )
    lines.append("</svg>")
    return "\n".join(lines) + "\n"


def write_svg_file(matrix, path, style=None):
    document = write_svg(matrix, style)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(document)
    return document
