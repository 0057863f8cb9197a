"""Lowest-order H(div) elements on the prism and the pyramid.

Shape functions carry one degree of freedom per facet and are normalized
by the defining flux property: the integral of phi_j . n_i over facet i
equals sign_i * delta_ij, with n_i the outward unit normal and the sign
taken from the face-orientation bitset.  The functions are assembled from
a five-dimensional raw field space by solving the facet-flux system at
construction; the pyramid fields are rational with denominator (1 - z).
"""

import numpy as np

from ..errors import ContractError, ShapeMismatchError
from ..geometry import facet_quadrature
from ..refelem import prism, pyramid, reference_element
from .common import FluxInterpolation, LocalBasis, LocalFiniteElement, LocalKey

FACET_QUAD_ORDER = 3


class FaceOrientation:
    """One sign flag per facet: a set bit flips that facet's normal trace."""

    def __init__(self, bits, count):
        bits = int(bits)
        if bits < 0 or bits >= (1 << count):
            raise ShapeMismatchError(
                f"orientation 0b{bits:b} does not fit {count} facet bits"
            )
        self.bits = bits
        self.count = count

    @classmethod
    def coerce(cls, value, count):
        if isinstance(value, cls):
            if value.count != count:
                raise ShapeMismatchError(
                    f"orientation with {value.count} bits where {count} are required"
                )
            return value
        if isinstance(value, (list, tuple)):
            if len(value) != count:
                raise ShapeMismatchError(f"{len(value)} orientation flags, expected {count}")
            bits = 0
            for i, flag in enumerate(value):
                bits |= bool(flag) << i
            return cls(bits, count)
        return cls(value, count)

    @property
    def signs(self):
        return np.array([-1.0 if (self.bits >> i) & 1 else 1.0 for i in range(self.count)])


def _prism_raw_fields():
    def const(c):
        c = np.asarray(c, dtype=float)
        return lambda xi: (c, np.zeros((3, 3)))

    def radial(xi):
        jac = np.zeros((3, 3))
        jac[0, 0] = jac[1, 1] = 1.0
        return np.array([xi[0], xi[1], 0.0]), jac

    def axial(xi):
        jac = np.zeros((3, 3))
        jac[2, 2] = 1.0
        return np.array([0.0, 0.0, xi[2]]), jac

    return [const([1, 0, 0]), const([0, 1, 0]), const([0, 0, 1]), radial, axial]


def _pyramid_raw_fields():
    def const(c):
        c = np.asarray(c, dtype=float)
        return lambda xi: (c, np.zeros((3, 3)))

    def scaled(sign_y):
        def field(xi):
            x, y, z = xi
            s = 1.0 - z
            jac = np.zeros((3, 3))
            jac[0, 0] = 1.0 / s
            jac[0, 2] = x / (s * s)
            jac[1, 1] = sign_y / s
            jac[1, 2] = sign_y * y / (s * s)
            return np.array([x / s, sign_y * y / s, 0.0]), jac

        return field

    return [const([1, 0, 0]), const([0, 1, 0]), const([0, 0, 1]), scaled(1.0), scaled(-1.0)]


class RaviartThomasBasis(LocalBasis):
    """Facet-flux-normalized combination of the raw field space."""

    range_dim = 3
    dim = 3
    degree = 1

    def __init__(self, raw_fields, coefficients):
        self._raw = raw_fields
        self._coeff = coefficients  # (n_raw, size): column j builds phi_j
        self.size = coefficients.shape[1]

    def evaluate(self, xi):
        xi = np.asarray(xi, dtype=float)
        raw_vals = np.array([f(xi)[0] for f in self._raw])
        return self._coeff.T @ raw_vals

    def jacobian(self, xi):
        xi = np.asarray(xi, dtype=float)
        raw_jacs = np.array([f(xi)[1] for f in self._raw])
        return np.einsum("kj,kab->jab", self._coeff, raw_jacs)


def _build_rt0(kind, raw_fields, orientation):
    ref = reference_element(kind)
    nf = ref.num_facets
    orientation = FaceOrientation.coerce(orientation, nf)
    rules = [facet_quadrature(ref, i, FACET_QUAD_ORDER) for i in range(nf)]

    flux = np.empty((nf, len(raw_fields)))
    for i, (points, weights, normal) in enumerate(rules):
        for k, field in enumerate(raw_fields):
            flux[i, k] = sum(w * (field(x)[0] @ normal) for x, w in zip(points, weights))

    signs = orientation.signs
    coeff = np.linalg.solve(flux, np.eye(nf)) * signs[None, :]
    basis = RaviartThomasBasis(raw_fields, coeff)

    if __debug__:
        check = np.empty((nf, nf))
        for i, (points, weights, normal) in enumerate(rules):
            vals = [basis.evaluate(x) @ normal for x in points]
            check[i] = sum(w * v for w, v in zip(weights, vals))
        if not np.allclose(check, np.diag(signs), atol=1e-10):
            raise ContractError(f"flux matrix validation failed for {kind}")

    keys = [LocalKey(i, 1, 0) for i in range(nf)]
    return LocalFiniteElement(kind, basis, keys, FluxInterpolation(rules, signs))


def rt0_prism(face_orientation=0):
    """Lowest-order facet element on the prism (5 shape functions)."""
    return _build_rt0(prism(), _prism_raw_fields(), face_orientation)


def rt0_pyramid(face_orientation=0):
    """Lowest-order facet element on the pyramid (5 shape functions)."""
    return _build_rt0(pyramid(), _pyramid_raw_fields(), face_orientation)
