"""Lagrange bases on the once red-refined reference simplex.

The interval splits at its midpoint; the triangle splits into three
corner children plus the middle child (whose natural corner order
reverses orientation).  Order 0 gives the child indicator functions,
order 1 the continuous piecewise-linear hats at the second-order node
positions (vertices and edge midpoints).
"""

import numpy as np

from ..errors import CapabilityError
from ..refelem import reference_element, simplex
from .common import LocalFiniteElement, LocalKey, NodalInterpolation, ScalarBasis


def _refinement(dim):
    """(nodes, children): node coordinates and per-child node-index tuples."""
    ref = reference_element(simplex(dim))
    nodes = [ref.corners[i] for i in range(ref.num_corners)]
    if dim == 1:
        nodes.append(np.array([0.5]))
        children = [(0, 2), (2, 1)]
    else:
        # midpoints in reference-edge order: (0,1), (0,2), (1,2)
        for e in range(ref.size(dim - 1)):
            nodes.append(ref.position(e, dim - 1))
        children = [(0, 3, 4), (1, 3, 5), (2, 4, 5), (3, 4, 5)]
    return np.array(nodes), children


class RefinedSimplexBasis(ScalarBasis):
    """Piecewise polynomial basis over the red refinement."""

    def __init__(self, dim, degree):
        self.dim = dim
        self.degree = degree
        self.nodes, self.children = _refinement(dim)
        self.size = len(self.children) if degree == 0 else len(self.nodes)
        # per child: affine inverse mapping point -> barycentric coordinates
        self._chart = []
        for child in self.children:
            corners = self.nodes[list(child)]
            mat = np.column_stack([corners[i] - corners[0] for i in range(1, dim + 1)])
            self._chart.append((corners[0], np.linalg.inv(mat)))

    def child_barycenter(self, t):
        return self.nodes[list(self.children[t])].mean(axis=0)

    def _barycentric_in(self, t, xi):
        origin, inv = self._chart[t]
        local = inv @ (xi - origin)
        return np.concatenate([[1.0 - local.sum()], local])

    def locate(self, xi, tol=1e-12):
        """Index of the child containing `xi` (closest child if outside)."""
        best, best_min = 0, -np.inf
        for t in range(len(self.children)):
            lam = self._barycentric_in(t, xi)
            worst = lam.min()
            if worst >= -tol:
                return t
            if worst > best_min:
                best, best_min = t, worst
        return best

    def _values(self, xi):
        t = self.locate(xi)
        if self.degree == 0:
            vals = np.zeros(self.size)
            vals[t] = 1.0
            return vals
        vals = np.zeros(self.size)
        lam = self._barycentric_in(t, xi)
        for pos, node in enumerate(self.children[t]):
            vals[node] = lam[pos]
        return vals

    def _gradients(self, xi):
        grads = np.zeros((self.size, self.dim))
        if self.degree == 0:
            return grads
        t = self.locate(xi)
        origin, inv = self._chart[t]
        # gradient of barycentric coordinate `pos` within child t
        dlam = np.vstack([-inv.sum(axis=0), inv])
        for pos, node in enumerate(self.children[t]):
            grads[node] = dlam[pos]
        return grads


def refined_lagrange(dim, degree):
    """Piecewise Lagrange element on the red-refined simplex (orders 0, 1)."""
    if not 1 <= dim <= 2:
        raise CapabilityError(f"dim={dim} unsupported (supported range 1..2)")
    if not 0 <= degree <= 1:
        raise CapabilityError(f"degree={degree} unsupported (supported range 0..1)")
    kind = simplex(dim)
    basis = RefinedSimplexBasis(dim, degree)
    if degree == 0:
        nodes = [basis.child_barycenter(t) for t in range(basis.size)]
        keys = [LocalKey(0, 0, t) for t in range(basis.size)]
    else:
        nodes = list(basis.nodes)
        keys = [LocalKey(i, dim, 0) for i in range(dim + 1)]
        if dim == 1:
            keys.append(LocalKey(0, 0, 0))
        else:
            keys.extend(LocalKey(e, dim - 1, 0) for e in range(len(nodes) - (dim + 1)))
    return LocalFiniteElement(kind, basis, keys, NodalInterpolation(nodes))
