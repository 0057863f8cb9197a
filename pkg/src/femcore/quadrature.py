"""Quadrature rules on the reference elements.

Construction is uniform rather than table-driven: 1-d rules are
Gauss-Legendre mapped to [0,1], cubes take tensor products, simplices use
the conical product of Gauss-Jacobi rules, the prism is triangle x
interval, and the pyramid is a conical product over its square base with
the (1-z)^2 metric factor absorbed into the z-rule's weight.  Points are
ordered lexicographically in the underlying tensor indices, so output is
reproducible.
"""

from functools import lru_cache
from itertools import product

import numpy as np
from scipy.special import roots_jacobi

from .errors import CapabilityError
from .refelem import CUBE, PRISM, PYRAMID, SIMPLEX, VERTEX, GeometryKind, reference_element

MAX_ORDER = 10
MAX_ORDER_PYRAMID = 5


def gauss_jacobi_01(n, alpha):
    """n-point Gauss-Jacobi rule on [0,1] with weight (1-t)^alpha.

    alpha = 0 recovers Gauss-Legendre.
    """
    x, w = roots_jacobi(n, alpha, 0.0)
    order = np.argsort(x)
    t = (x[order] + 1.0) / 2.0
    return t, w[order] / 2.0 ** (alpha + 1)


def _npoints(order):
    return order // 2 + 1


def _simplex_rule(dim, order):
    n = _npoints(order)
    axes = [gauss_jacobi_01(n, dim - 1 - j) for j in range(dim)]
    points = []
    weights = []
    for combo in product(*(range(n) for _ in range(dim))):
        xi = np.empty(dim)
        w = 1.0
        shrink = 1.0
        for j, i in enumerate(combo):
            t, wt = axes[j][0][i], axes[j][1][i]
            xi[j] = t * shrink
            shrink *= 1.0 - t
            w *= wt
        points.append(xi)
        weights.append(w)
    return np.array(points), np.array(weights)


def _cube_rule(dim, order):
    t, wt = gauss_jacobi_01(_npoints(order), 0.0)
    points = np.array(list(product(t, repeat=dim)))
    weights = np.array([np.prod(c) for c in product(wt, repeat=dim)])
    return points, weights


def _prism_rule(order):
    tp, tw = _simplex_rule(2, order)
    z, wz = gauss_jacobi_01(_npoints(order), 0.0)
    points = []
    weights = []
    for (xy, wxy) in zip(tp, tw):
        for (zi, wzi) in zip(z, wz):
            points.append((xy[0], xy[1], zi))
            weights.append(wxy * wzi)
    return np.array(points), np.array(weights)


def _pyramid_rule(order):
    n = _npoints(order)
    t, wt = gauss_jacobi_01(n, 0.0)
    z, wz = gauss_jacobi_01(n, 2.0)  # absorbs the (1-z)^2 factor
    points = []
    weights = []
    for (u, wu) in zip(t, wt):
        for (v, wv) in zip(t, wt):
            for (zi, wzi) in zip(z, wz):
                s = 1.0 - zi
                points.append((u * s, v * s, zi))
                weights.append(wu * wv * wzi)
    return np.array(points), np.array(weights)


class QuadratureRule:
    """Positions and weights, iterable as (position, weight) pairs."""

    def __init__(self, kind, order, points, weights):
        self.kind = kind
        self.order = order
        self.points = np.asarray(points, dtype=float)
        self.weights = np.asarray(weights, dtype=float)
        self.points.setflags(write=False)
        self.weights.setflags(write=False)

    def __len__(self):
        return self.weights.shape[0]

    def __iter__(self):
        return zip(self.points, self.weights)

    def __repr__(self):
        return f"QuadratureRule({self.kind}, order={self.order}, n={len(self)})"


@lru_cache(maxsize=None)
def _rule_cached(shape, dim, order):
    kind = GeometryKind(shape, dim)
    if shape == VERTEX:
        return QuadratureRule(kind, order, np.zeros((1, 0)), np.ones(1))
    if shape == SIMPLEX:
        return QuadratureRule(kind, order, *_simplex_rule(dim, order))
    if shape == CUBE:
        return QuadratureRule(kind, order, *_cube_rule(dim, order))
    if shape == PRISM:
        return QuadratureRule(kind, order, *_prism_rule(order))
    if shape == PYRAMID:
        return QuadratureRule(kind, order, *_pyramid_rule(order))
    raise AssertionError(shape)


def quadrature_rule(kind, order):
    """Quadrature rule on `kind` exact for polynomials of total degree <= order."""
    cap = MAX_ORDER_PYRAMID if kind.shape == PYRAMID else MAX_ORDER
    if not 0 <= order <= cap:
        raise CapabilityError(
            f"order {order} unsupported for {kind} (maximum supported is {cap})"
        )
    return _rule_cached(kind.shape, kind.dim, order)


def integrate(rule, f):
    """Sum of weight * f(position) over the rule."""
    return sum(w * f(x) for x, w in rule)


def reference_volume(kind):
    """Measure of the reference element of `kind`."""
    return reference_element(kind).volume
