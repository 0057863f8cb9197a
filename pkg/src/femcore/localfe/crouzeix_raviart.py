"""Nonconforming first-order simplex element with facet-midpoint nodes.

Shape function i is 1 - d * lambda_opp(i), where opp(i) is the vertex
opposite facet i; the value is 1 at facet i's barycenter and 0 at the
other facet barycenters.  Local keys attach to the facets (codimension 1).
"""

import numpy as np

from ..errors import CapabilityError
from ..refelem import reference_element, simplex
from .common import LocalFiniteElement, LocalKey, NodalInterpolation, ScalarBasis
from .lagrange import _barycentric


class CrouzeixRaviartBasis(ScalarBasis):
    degree = 1

    def __init__(self, dim):
        self.dim = dim
        self.size = dim + 1
        ref = reference_element(simplex(dim))
        all_vertices = set(range(dim + 1))
        self._opposite = [
            (all_vertices - set(ref.subentity_corners(f, 1))).pop() for f in range(self.size)
        ]

    def _values(self, xi):
        lam, _ = _barycentric(self.dim, xi)
        return np.array([1.0 - self.dim * lam[v] for v in self._opposite])

    def _gradients(self, xi):
        _, dlam = _barycentric(self.dim, xi)
        return np.array([-self.dim * dlam[v] for v in self._opposite])


def crouzeix_raviart(dim):
    """Facet-attached nonconforming P1 element, dim 2 or 3."""
    if not 2 <= dim <= 3:
        raise CapabilityError(f"dim={dim} unsupported (supported range 2..3)")
    kind = simplex(dim)
    ref = reference_element(kind)
    basis = CrouzeixRaviartBasis(dim)
    nodes = [ref.position(f, 1) for f in range(basis.size)]
    keys = [LocalKey(f, 1, 0) for f in range(basis.size)]
    return LocalFiniteElement(kind, basis, keys, NodalInterpolation(nodes))
