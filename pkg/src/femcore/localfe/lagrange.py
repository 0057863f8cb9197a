"""Nodal Lagrange elements on simplices and cubes, orders 0 to 2."""

import numpy as np

from ..errors import CapabilityError
from ..refelem import cube, reference_element, simplex
from .common import LocalFiniteElement, LocalKey, NodalInterpolation, ScalarBasis


def _barycentric(dim, xi):
    lam = np.empty(dim + 1)
    lam[0] = 1.0 - xi.sum()
    lam[1:] = xi
    grads = np.vstack([-np.ones(dim), np.eye(dim)])
    return lam, grads


class ConstantBasis(ScalarBasis):
    """The single element-attached function of an order-0 element."""

    degree = 0
    size = 1

    def __init__(self, dim):
        self.dim = dim

    def _values(self, xi):
        return np.ones(1)

    def _gradients(self, xi):
        return np.zeros((1, self.dim))


class SimplexLagrangeBasis(ScalarBasis):
    """P1 or P2 basis on the reference simplex."""

    def __init__(self, dim, degree):
        self.dim = dim
        self.degree = degree
        ref = reference_element(simplex(dim))
        self._edges = [ref.subentity_corners(e, dim - 1) for e in range(ref.size(dim - 1))]
        self.size = dim + 1 if degree == 1 else dim + 1 + len(self._edges)

    def _values(self, xi):
        lam, _ = _barycentric(self.dim, xi)
        if self.degree == 1:
            return lam
        vertex = lam * (2.0 * lam - 1.0)
        edge = np.array([4.0 * lam[a] * lam[b] for a, b in self._edges])
        return np.concatenate([vertex, edge])

    def _gradients(self, xi):
        lam, dlam = _barycentric(self.dim, xi)
        if self.degree == 1:
            return dlam
        vertex = (4.0 * lam - 1.0)[:, None] * dlam
        edge = np.array([4.0 * (lam[b] * dlam[a] + lam[a] * dlam[b]) for a, b in self._edges])
        return np.vstack([vertex, edge])


class CubeLagrangeBasis(ScalarBasis):
    """Q1 or Q2 tensor-product basis on the reference cube.

    Functions are ordered by counting node digits with coordinate 0 as the
    least significant digit, matching the cube corner convention.
    """

    _NODES_1D = {1: (0.0, 1.0), 2: (0.0, 0.5, 1.0)}

    def __init__(self, dim, degree):
        self.dim = dim
        self.degree = degree
        self.size = (degree + 1) ** dim
        self._digits = [
            tuple((i // (degree + 1) ** j) % (degree + 1) for j in range(dim))
            for i in range(self.size)
        ]

    def node_coordinates(self):
        coords = self._NODES_1D[self.degree]
        return np.array([[coords[t] for t in digs] for digs in self._digits])

    @staticmethod
    def _shape_1d(degree, t):
        if degree == 1:
            return np.array([1.0 - t, t]), np.array([-1.0, 1.0])
        values = np.array([2.0 * t * t - 3.0 * t + 1.0, 4.0 * t * (1.0 - t), 2.0 * t * t - t])
        derivs = np.array([4.0 * t - 3.0, 4.0 - 8.0 * t, 4.0 * t - 1.0])
        return values, derivs

    def _tables(self, xi):
        return [self._shape_1d(self.degree, xi[j]) for j in range(self.dim)]

    def _values(self, xi):
        tables = self._tables(xi)
        return np.array(
            [np.prod([tables[j][0][t] for j, t in enumerate(digs)]) for digs in self._digits]
        )

    def _gradients(self, xi):
        tables = self._tables(xi)
        grads = np.empty((self.size, self.dim))
        for i, digs in enumerate(self._digits):
            for k in range(self.dim):
                g = tables[k][1][digs[k]]
                for j, t in enumerate(digs):
                    if j != k:
                        g *= tables[j][0][t]
                grads[i, k] = g
        return grads


def _key_for_position(ref, point):
    """LocalKey of the subentity whose barycenter is `point`."""
    for codim in range(ref.dim + 1):
        for i in range(ref.size(codim)):
            if np.allclose(ref.position(i, codim), point, atol=1e-12):
                return LocalKey(i, codim, 0)
    raise AssertionError(f"no subentity barycenter at {point}")


def _check_range(name, value, lo, hi):
    if not lo <= value <= hi:
        raise CapabilityError(f"{name}={value} unsupported (supported range {lo}..{hi})")


def lagrange_simplex(dim, degree):
    """Nodal Lagrange element on the dim-simplex, degree 0..2."""
    _check_range("dim", dim, 1, 3)
    _check_range("degree", degree, 0, 2)
    kind = simplex(dim)
    ref = reference_element(kind)
    if degree == 0:
        basis = ConstantBasis(dim)
        return LocalFiniteElement(
            kind, basis, [LocalKey(0, 0, 0)], NodalInterpolation([ref.barycenter])
        )
    basis = SimplexLagrangeBasis(dim, degree)
    nodes = [ref.corners[i] for i in range(ref.num_corners)]
    keys = [LocalKey(i, dim, 0) for i in range(ref.num_corners)]
    if degree == 2:
        for e in range(ref.size(dim - 1)):
            nodes.append(ref.position(e, dim - 1))
            keys.append(LocalKey(e, dim - 1, 0))
    return LocalFiniteElement(kind, basis, keys, NodalInterpolation(nodes))


def lagrange_cube(dim, degree):
    """Nodal Lagrange element on the dim-cube, degree 0..2."""
    _check_range("dim", dim, 1, 3)
    _check_range("degree", degree, 0, 2)
    kind = cube(dim)
    ref = reference_element(kind)
    if degree == 0:
        basis = ConstantBasis(dim)
        return LocalFiniteElement(
            kind, basis, [LocalKey(0, 0, 0)], NodalInterpolation([ref.barycenter])
        )
    basis = CubeLagrangeBasis(dim, degree)
    nodes = basis.node_coordinates()
    keys = [_key_for_position(ref, p) for p in nodes]
    return LocalFiniteElement(kind, basis, keys, NodalInterpolation(nodes))
