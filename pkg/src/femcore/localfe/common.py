"""Shared structure of local finite elements: keys, bases, interpolation."""

from dataclasses import dataclass

import numpy as np

from ..errors import ShapeMismatchError
from ..refelem import reference_element


@dataclass(frozen=True)
class LocalKey:
    """Attachment point of one shape function.

    `sub_entity` indexes within the codimension, `codim` is the
    codimension of the subentity the function attaches to, and `index`
    numbers the functions sharing that subentity.
    """

    sub_entity: int
    codim: int
    index: int


class LocalBasis:
    """Shape-function basis on one reference element.

    Attributes: `size` (function count), `range_dim` (1 for scalar
    elements, d for vector-valued ones), `dim`, and `degree` (largest
    polynomial degree in the span, piecewise for refined bases).
    `evaluate` returns (size, range_dim); `jacobian` returns
    (size, range_dim, dim).
    """

    size = None
    range_dim = None
    dim = None
    degree = None

    def evaluate(self, xi):
        raise NotImplementedError

    def jacobian(self, xi):
        raise NotImplementedError


class ScalarBasis(LocalBasis):
    """Scalar-valued basis: subclasses provide flat values and gradients."""

    range_dim = 1

    def _values(self, xi):
        raise NotImplementedError

    def _gradients(self, xi):
        raise NotImplementedError

    def evaluate(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self._values(xi).reshape(self.size, 1)

    def jacobian(self, xi):
        xi = np.asarray(xi, dtype=float)
        return self._gradients(xi).reshape(self.size, 1, self.dim)


def _call_range(f, xi, range_dim):
    out = np.atleast_1d(np.asarray(f(xi), dtype=float))
    if out.shape != (range_dim,):
        raise ShapeMismatchError(
            f"interpolated function returned shape {out.shape}, expected ({range_dim},)"
        )
    return out


class NodalInterpolation:
    """Point evaluation at the element's nodes (nodal bases)."""

    def __init__(self, nodes):
        self.nodes = np.asarray(nodes, dtype=float)

    def interpolate(self, f):
        return np.array([_call_range(f, x, 1)[0] for x in self.nodes])


class CollocationInterpolation:
    """Interpolation by collocation at a unisolvent node set.

    Used by hierarchical bases, where the coefficient of a shape function
    is not simply the value at its node; solves the small Vandermonde
    system once per call.
    """

    def __init__(self, nodes, basis):
        self.nodes = np.asarray(nodes, dtype=float)
        self._vandermonde = np.array([basis.evaluate(x)[:, 0] for x in self.nodes])

    def interpolate(self, f):
        values = np.array([_call_range(f, x, 1)[0] for x in self.nodes])
        return np.linalg.solve(self._vandermonde, values)


class FluxInterpolation:
    """Signed facet-flux functionals of H(div) elements.

    Functional i integrates f . n_i over facet i with the stored
    quadrature and multiplies by the facet's orientation sign.
    """

    def __init__(self, facet_rules, signs):
        self.facet_rules = facet_rules  # list of (points, weights, normal)
        self.signs = signs

    def interpolate(self, f):
        coeffs = np.empty(len(self.facet_rules))
        for i, (points, weights, normal) in enumerate(self.facet_rules):
            flux = sum(
                w * (_call_range(f, x, normal.shape[0]) @ normal)
                for x, w in zip(points, weights)
            )
            coeffs[i] = self.signs[i] * flux
        return coeffs


class LocalFiniteElement:
    """Bundle of basis, local keys, and interpolation for one element kind."""

    def __init__(self, kind, basis, keys, interpolation):
        keys = tuple(keys)
        if len(keys) != basis.size:
            raise ShapeMismatchError(f"{len(keys)} keys for a basis of size {basis.size}")
        if len(set(keys)) != len(keys):
            raise ShapeMismatchError("local keys must be pairwise distinct")
        ref = reference_element(kind)
        for key in keys:
            if not 0 <= key.codim <= kind.dim or key.sub_entity >= ref.size(key.codim):
                raise ShapeMismatchError(f"{key} does not reference a subentity of {kind}")
        self.kind = kind
        self.basis = basis
        self.keys = keys
        self.interpolation = interpolation

    @property
    def size(self):
        return self.basis.size

    def interpolate(self, f):
        """Coefficient vector of `f` in this element's basis."""
        return self.interpolation.interpolate(f)

    def __repr__(self):
        return f"LocalFiniteElement({self.kind}, size={self.size})"
