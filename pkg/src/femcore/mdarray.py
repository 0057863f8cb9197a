"""Rank-generic extents, layout mappings, and multidimensional containers.

MdArray owns a flat float64 buffer; MdView wraps one it does not own.  Both
address elements through a LayoutMapping that turns a multi-index into a
flat offset.  Layouts are row-major, column-major, or explicitly strided;
a layout must be injective on the index domain of its extents.
"""

from dataclasses import dataclass

import numpy as np

from .errors import BoundsError, CapabilityError, ShapeMismatchError

MAX_RANK = 8

ROW_MAJOR = "row_major"
COLUMN_MAJOR = "column_major"
STRIDED = "strided"


@dataclass(frozen=True)
class MdExtents:
    """Per-dimension sizes of a multidimensional index domain."""

    sizes: tuple

    def __post_init__(self):
        sizes = tuple(int(s) for s in self.sizes)
        if len(sizes) > MAX_RANK:
            raise CapabilityError(f"rank {len(sizes)} exceeds the supported maximum {MAX_RANK}")
        if any(s < 0 for s in sizes):
            raise ShapeMismatchError(f"extents must be non-negative, got {sizes}")
        object.__setattr__(self, "sizes", sizes)

    @property
    def rank(self):
        return len(self.sizes)

    @property
    def count(self):
        """Total number of addressable elements (empty product is 1)."""
        n = 1
        for s in self.sizes:
            n *= s
        return n


def row_major_strides(extents):
    """Strides of the canonical row-major layout (last dimension stride 1)."""
    strides = [1] * extents.rank
    for k in range(extents.rank - 2, -1, -1):
        strides[k] = strides[k + 1] * extents.sizes[k + 1]
    return tuple(strides)


def column_major_strides(extents):
    """Strides of the canonical column-major layout (first dimension stride 1)."""
    strides = [1] * extents.rank
    for k in range(1, extents.rank):
        strides[k] = strides[k - 1] * extents.sizes[k - 1]
    return tuple(strides)


@dataclass(frozen=True)
class LayoutMapping:
    """Injective map from a multi-index within `extents` to a flat offset."""

    extents: MdExtents
    kind: str
    strides: tuple

    @classmethod
    def row_major(cls, extents):
        extents = extents if isinstance(extents, MdExtents) else MdExtents(tuple(extents))
        return cls(extents, ROW_MAJOR, row_major_strides(extents))

    @classmethod
    def column_major(cls, extents):
        extents = extents if isinstance(extents, MdExtents) else MdExtents(tuple(extents))
        return cls(extents, COLUMN_MAJOR, column_major_strides(extents))

    @classmethod
    def strided(cls, extents, strides):
        extents = extents if isinstance(extents, MdExtents) else MdExtents(tuple(extents))
        strides = tuple(int(s) for s in strides)
        if len(strides) != extents.rank:
            raise ShapeMismatchError(
                f"{len(strides)} strides for rank {extents.rank} extents"
            )
        for dim, (stride, size) in enumerate(zip(strides, extents.sizes)):
            if stride < 0:
                raise ShapeMismatchError(f"negative stride {stride} in dimension {dim}")
            if stride == 0 and size > 1:
                raise ShapeMismatchError(f"zero stride in dimension {dim} is not injective")
        return cls(extents, STRIDED, strides)

    @property
    def required_span(self):
        """Smallest storage length that holds every addressable offset."""
        if self.extents.count == 0:
            return 0
        span = 1
        for stride, size in zip(self.strides, self.extents.sizes):
            span += stride * (size - 1)
        return span

    def offset(self, index):
        """Flat offset of `index`, bounds-checked per dimension."""
        index = tuple(index)
        if len(index) != self.extents.rank:
            raise BoundsError(
                f"index of rank {len(index)} against extents of rank {self.extents.rank}"
            )
        off = 0
        for dim, (i, size, stride) in enumerate(zip(index, self.extents.sizes, self.strides)):
            i = int(i)
            if i < 0 or i >= size:
                raise BoundsError(f"index {i} out of bounds for dimension {dim} of extent {size}")
            off += i * stride
        return off

    def is_injective(self):
        """Exhaustively verify injectivity (intended for tests; O(count))."""
        seen = set()
        for idx in np.ndindex(*self.extents.sizes):
            off = self.offset(idx)
            if off in seen:
                return False
            seen.add(off)
        return True


def layout_offset(extents, layout, index):
    """Offset of `index` under `layout`; extents must match the layout's."""
    if layout.extents != extents:
        raise ShapeMismatchError("layout was built for different extents")
    return layout.offset(index)


class MdView:
    """Non-owning multidimensional view over a flat float64 buffer.

    The caller keeps the storage alive for the lifetime of the view.
    """

    _owns = False

    def __init__(self, data, layout):
        data = np.asarray(data, dtype=np.float64)
        if data.ndim != 1:
            raise ShapeMismatchError("storage must be a flat buffer")
        if data.shape[0] < layout.required_span:
            raise ShapeMismatchError(
                f"storage of length {data.shape[0]} is smaller than the "
                f"required span {layout.required_span}"
            )
        self._data = data
        self.layout = layout

    @property
    def extents(self):
        return self.layout.extents

    @property
    def data(self):
        return self._data

    def get(self, *index):
        return float(self._data[self.layout.offset(index)])

    def set(self, *index_and_value):
        *index, value = index_and_value
        self._data[self.layout.offset(index)] = value

    def __getitem__(self, index):
        if not isinstance(index, tuple):
            index = (index,)
        return self.get(*index)

    def __setitem__(self, index, value):
        if not isinstance(index, tuple):
            index = (index,)
        self.set(*index, value)


class MdArray(MdView):
    """Owning multidimensional container with a configurable layout."""

    _owns = True

    def __init__(self, extents, fill=0.0, layout=None):
        extents = extents if isinstance(extents, MdExtents) else MdExtents(tuple(extents))
        if layout is None:
            layout = LayoutMapping.row_major(extents)
        elif layout.extents != extents:
            raise ShapeMismatchError("layout was built for different extents")
        data = np.full(layout.required_span, float(fill), dtype=np.float64)
        super().__init__(data, layout)

    def view(self):
        """Non-owning view of this array's storage."""
        return MdView(self._data, self.layout)
