"""Reference elements: corner conventions, subentity lattice, measures.

Conventions (all tests depend on them):

* d-simplex corners: origin followed by the unit coordinate vectors.
* d-cube corners: binary counting over {0,1}^d with coordinate 0 as the
  least significant bit.
* prism: triangle x [0,1]; the three triangle corners at z=0, then at z=1.
* pyramid: base square (0,0,0),(1,0,0),(0,1,0),(1,1,0) and apex (0,0,1).
* Subentities of one codimension are ordered by their sorted corner
  tuples; vertices appear in corner order.
"""

from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

import numpy as np

from .errors import BoundsError, CapabilityError

VERTEX = "vertex"
SIMPLEX = "simplex"
CUBE = "cube"
PRISM = "prism"
PYRAMID = "pyramid"

_LEGAL_DIMS = {
    VERTEX: (0,),
    SIMPLEX: (1, 2, 3),
    CUBE: (1, 2, 3),
    PRISM: (3,),
    PYRAMID: (3,),
}


@dataclass(frozen=True)
class GeometryKind:
    """A legal (shape, dimension) pair."""

    shape: str
    dim: int

    def __post_init__(self):
        if self.shape not in _LEGAL_DIMS:
            raise CapabilityError(f"unknown shape {self.shape!r}")
        if self.dim not in _LEGAL_DIMS[self.shape]:
            raise CapabilityError(
                f"illegal dimension {self.dim} for shape {self.shape!r} "
                f"(legal: {_LEGAL_DIMS[self.shape]})"
            )

    def __str__(self):
        return f"{self.shape}{self.dim}"


def vertex():
    return GeometryKind(VERTEX, 0)


def simplex(dim):
    return GeometryKind(SIMPLEX, dim)


def cube(dim):
    return GeometryKind(CUBE, dim)


def prism():
    return GeometryKind(PRISM, 3)


def pyramid():
    return GeometryKind(PYRAMID, 3)


def _corner_table(kind):
    d = kind.dim
    if kind.shape == VERTEX:
        return np.zeros((1, 0))
    if kind.shape == SIMPLEX:
        return np.vstack([np.zeros(d), np.eye(d)])
    if kind.shape == CUBE:
        return np.array([[(i >> j) & 1 for j in range(d)] for i in range(2**d)], dtype=float)
    if kind.shape == PRISM:
        tri = [(0.0, 0.0), (1.0, 0.0), (0.0, 1.0)]
        return np.array([(x, y, z) for z in (0.0, 1.0) for x, y in tri])
    if kind.shape == PYRAMID:
        return np.array(
            [(0.0, 0.0, 0.0), (1.0, 0.0, 0.0), (0.0, 1.0, 0.0), (1.0, 1.0, 0.0), (0.0, 0.0, 1.0)]
        )
    raise AssertionError(kind)


def _simplex_faces(num_corners, face_dim):
    return [tuple(c) for c in combinations(range(num_corners), face_dim + 1)]


def _cube_faces(d, face_dim):
    faces = []
    for free in combinations(range(d), face_dim):
        fixed_axes = [a for a in range(d) if a not in free]
        for fixed_vals in product((0, 1), repeat=len(fixed_axes)):
            corners = []
            for bits in product((0, 1), repeat=face_dim):
                idx = 0
                for axis, bit in zip(free, bits):
                    idx |= bit << axis
                for axis, bit in zip(fixed_axes, fixed_vals):
                    idx |= bit << axis
                corners.append(idx)
            faces.append(tuple(sorted(corners)))
    return sorted(faces)


def _product_faces(left, right, offset, face_dim):
    """Faces of a (left x right) product element, as sorted corner tuples.

    `left` and `right` map face dimension to corner-tuple lists; a corner
    (i, j) of the product has index i + offset * j.
    """
    faces = []
    for a, subs_a in left.items():
        b = face_dim - a
        if b not in right:
            continue
        for ca in subs_a:
            for cb in right[b]:
                faces.append(tuple(sorted(i + offset * j for i in ca for j in cb)))
    return sorted(faces)


def _face_table(kind):
    """List of corner tuples for each face dimension 0..dim."""
    d = kind.dim
    if kind.shape == VERTEX:
        return {0: [(0,)]}
    if kind.shape == SIMPLEX:
        return {k: _simplex_faces(d + 1, k) for k in range(d + 1)}
    if kind.shape == CUBE:
        return {k: _cube_faces(d, k) for k in range(d + 1)}
    if kind.shape == PRISM:
        tri = {k: _simplex_faces(3, k) for k in range(3)}
        interval = {0: [(0,), (1,)], 1: [(0, 1)]}
        return {k: _product_faces(tri, interval, 3, k) for k in range(4)}
    if kind.shape == PYRAMID:
        return {
            0: [(i,) for i in range(5)],
            1: sorted([(0, 1), (0, 2), (1, 3), (2, 3), (0, 4), (1, 4), (2, 4), (3, 4)]),
            2: sorted([(0, 1, 2, 3), (0, 1, 4), (0, 2, 4), (1, 3, 4), (2, 3, 4)]),
            3: [(0, 1, 2, 3, 4)],
        }
    raise AssertionError(kind)


_VOLUMES = {VERTEX: 1.0, CUBE: 1.0, PRISM: 0.5, PYRAMID: 1.0 / 3.0}


class ReferenceElement:
    """Immutable description of one reference cell.

    Instances are created once per kind through `reference_element` and
    shared; treat all attributes as read-only.
    """

    def __init__(self, kind):
        self.kind = kind
        self.dim = kind.dim
        self.corners = _corner_table(kind)
        self.corners.setflags(write=False)
        faces = _face_table(kind)
        # indexed by codim: list of sorted corner tuples
        self._subentities = [faces[kind.dim - c] for c in range(kind.dim + 1)]
        if kind.shape == SIMPLEX:
            fact = 1
            for k in range(2, kind.dim + 1):
                fact *= k
            self.volume = 1.0 / fact
        else:
            self.volume = _VOLUMES[kind.shape]
        self._facet_normals = self._compute_facet_normals() if kind.dim >= 1 else None

    # -- lattice queries ---------------------------------------------------

    def size(self, codim):
        """Number of subentities of the given codimension."""
        self._check_codim(codim)
        return len(self._subentities[codim])

    def subentity_corners(self, i, codim):
        """Corner indices of subentity (i, codim), ascending."""
        self._check_codim(codim)
        subs = self._subentities[codim]
        if not 0 <= i < len(subs):
            raise BoundsError(f"subentity {i} out of range for codim {codim} (size {len(subs)})")
        return subs[i]

    def position(self, i, codim):
        """Barycenter of subentity (i, codim)."""
        ids = self.subentity_corners(i, codim)
        return self.corners[list(ids)].mean(axis=0)

    def subentity_kind(self, i, codim):
        """GeometryKind of subentity (i, codim)."""
        face_dim = self.dim - codim
        if face_dim == 0:
            return vertex()
        if face_dim == self.dim:
            return self.kind
        n = len(self.subentity_corners(i, codim))
        if n == face_dim + 1:
            return GeometryKind(SIMPLEX, face_dim)
        if n == 2**face_dim:
            return GeometryKind(CUBE, face_dim)
        raise AssertionError(f"unclassifiable face with {n} corners of dim {face_dim}")

    @property
    def num_corners(self):
        return self.corners.shape[0]

    @property
    def num_facets(self):
        return self.size(1) if self.dim >= 1 else 0

    @property
    def barycenter(self):
        return self.corners.mean(axis=0)

    # -- facet geometry ----------------------------------------------------

    def _compute_facet_normals(self):
        center = self.barycenter
        normals = []
        for f in range(len(self._subentities[1])):
            pts = self.corners[list(self.subentity_corners(f, 1))]
            if self.dim == 1:
                n = np.array([1.0])
            elif self.dim == 2:
                t = pts[1] - pts[0]
                n = np.array([t[1], -t[0]])
            else:
                n = np.cross(pts[1] - pts[0], pts[2] - pts[0])
            n = n / np.linalg.norm(n)
            if n @ (pts.mean(axis=0) - center) < 0:
                n = -n
            normals.append(n)
        return np.array(normals)

    def facet_normal(self, i):
        """Outward unit normal of facet i (facets are planar by convention)."""
        if self.dim < 1:
            raise BoundsError("a vertex has no facets")
        if not 0 <= i < self.num_facets:
            raise BoundsError(f"facet {i} out of range (size {self.num_facets})")
        return self._facet_normals[i]

    # -- membership ---------------------------------------------------------

    def check_inside(self, xi, tol=1e-12):
        """True iff `xi` lies in the closed reference domain inflated by `tol`."""
        xi = np.asarray(xi, dtype=float)
        if xi.shape != (self.dim,):
            raise BoundsError(f"point of shape {xi.shape} for dimension {self.dim}")
        s = self.kind.shape
        if s == VERTEX:
            return True
        if s == SIMPLEX:
            return bool(np.all(xi >= -tol) and xi.sum() <= 1.0 + tol)
        if s == CUBE:
            return bool(np.all(xi >= -tol) and np.all(xi <= 1.0 + tol))
        if s == PRISM:
            x, y, z = xi
            return (
                x >= -tol and y >= -tol and x + y <= 1.0 + tol and -tol <= z <= 1.0 + tol
            )
        if s == PYRAMID:
            x, y, z = xi
            return (
                -tol <= z <= 1.0 + tol
                and x >= -tol
                and y >= -tol
                and x <= 1.0 - z + tol
                and y <= 1.0 - z + tol
            )
        raise AssertionError(s)

    def _check_codim(self, codim):
        if not 0 <= codim <= self.dim:
            raise BoundsError(f"codim {codim} out of range for dimension {self.dim}")

    def __repr__(self):
        return f"ReferenceElement({self.kind})"


@lru_cache(maxsize=None)
def _reference_element_cached(shape, dim):
    return ReferenceElement(GeometryKind(shape, dim))


def reference_element(kind):
    """The shared reference element for `kind` (constructed once, cached)."""
    return _reference_element_cached(kind.shape, kind.dim)
