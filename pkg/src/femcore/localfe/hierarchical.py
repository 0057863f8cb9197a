"""Hierarchical Lagrange simplex elements enriched by an interior bubble.

The bubble is (d+1)^(d+1) times the product of all barycentric
coordinates, so it vanishes on the whole boundary and equals 1 at the
barycenter.  Vertex functions are the plain hats; the second-order
variant adds the edge functions 4*lambda_a*lambda_b.
"""

import numpy as np

from ..errors import CapabilityError
from ..refelem import reference_element, simplex
from .common import CollocationInterpolation, LocalFiniteElement, LocalKey, ScalarBasis
from .lagrange import _barycentric


class HierarchicalBubbleBasis(ScalarBasis):
    def __init__(self, dim, with_edges):
        self.dim = dim
        self.with_edges = with_edges
        ref = reference_element(simplex(dim))
        self._edges = (
            [ref.subentity_corners(e, dim - 1) for e in range(ref.size(dim - 1))]
            if with_edges
            else []
        )
        self.size = dim + 1 + len(self._edges) + 1
        self.degree = dim + 1  # the bubble's degree dominates
        self._bubble_scale = float((dim + 1) ** (dim + 1))

    def _values(self, xi):
        lam, _ = _barycentric(self.dim, xi)
        parts = [lam]
        if self.with_edges:
            parts.append(np.array([4.0 * lam[a] * lam[b] for a, b in self._edges]))
        parts.append(np.array([self._bubble_scale * np.prod(lam)]))
        return np.concatenate(parts)

    def _gradients(self, xi):
        lam, dlam = _barycentric(self.dim, xi)
        parts = [dlam]
        if self.with_edges:
            parts.append(
                np.array([4.0 * (lam[b] * dlam[a] + lam[a] * dlam[b]) for a, b in self._edges])
            )
        bubble = np.zeros(self.dim)
        for i in range(self.dim + 1):
            rest = np.prod([lam[j] for j in range(self.dim + 1) if j != i])
            bubble += rest * dlam[i]
        parts.append(self._bubble_scale * bubble.reshape(1, self.dim))
        return np.vstack(parts)


def _bubble_element(dim, with_edges):
    kind = simplex(dim)
    ref = reference_element(kind)
    basis = HierarchicalBubbleBasis(dim, with_edges)
    nodes = [ref.corners[i] for i in range(ref.num_corners)]
    keys = [LocalKey(i, dim, 0) for i in range(ref.num_corners)]
    if with_edges:
        for e in range(ref.size(dim - 1)):
            nodes.append(ref.position(e, dim - 1))
            keys.append(LocalKey(e, dim - 1, 0))
    nodes.append(ref.barycenter)
    keys.append(LocalKey(0, 0, 0))
    return LocalFiniteElement(kind, basis, keys, CollocationInterpolation(nodes, basis))


def hierarchical_p1_bubble(dim):
    """First-order hats plus interior bubble (the velocity half of the MINI pair)."""
    if not 1 <= dim <= 3:
        raise CapabilityError(f"dim={dim} unsupported (supported range 1..3)")
    return _bubble_element(dim, with_edges=False)


def hierarchical_p2_bubble(dim):
    """Hierarchical second-order element plus interior bubble.

    Only dim 2 and 3: in one dimension the edge function and the bubble
    coincide, so the enriched space degenerates.
    """
    if not 2 <= dim <= 3:
        raise CapabilityError(f"dim={dim} unsupported (supported range 2..3)")
    return _bubble_element(dim, with_edges=True)
