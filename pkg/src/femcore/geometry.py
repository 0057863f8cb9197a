"""Geometry maps from reference coordinates into world space.

Four implementations share one contract: AffineGeometry, MultiLinearGeometry,
MappedGeometry (a differentiable chart composed with a base geometry), and
LocalFeGeometry (a map expanded in a scalar finite-element basis).  The
world dimension w may exceed the local dimension d, in which case Jacobian
inversion means the appropriate pseudo-inverse and `to_local` performs a
Gauss-Newton iteration.
"""

import numpy as np

from .errors import BoundsError, ConvergenceError, ShapeMismatchError, SingularityError
from .linalg import as_matrix, as_vector, left_pseudo_inverse, matmul, right_pseudo_inverse, transposed_view
from .quadrature import quadrature_rule
from .refelem import CUBE, PRISM, PYRAMID, SIMPLEX, VERTEX, reference_element

NEWTON_TOL = 1e-12
NEWTON_MAX_ITER = 30


def _geo_basis(kind, xi):
    """First-order geometric interpolation basis of `kind` at `xi`.

    Returns (values, gradients) of shape (n,) and (n, d).  These are the
    corner-interpolation functions of the multilinear map; for the pyramid
    they are rational with denominator (1 - z).
    """
    d = kind.dim
    xi = np.asarray(xi, dtype=float)
    if kind.shape == VERTEX:
        return np.ones(1), np.zeros((1, 0))
    if kind.shape == SIMPLEX:
        vals = np.empty(d + 1)
        vals[0] = 1.0 - xi.sum()
        vals[1:] = xi
        grads = np.vstack([-np.ones(d), np.eye(d)])
        return vals, grads
    if kind.shape == CUBE:
        n = 2**d
        vals = np.ones(n)
        grads = np.zeros((n, d))
        for i in range(n):
            factors = [xi[j] if (i >> j) & 1 else 1.0 - xi[j] for j in range(d)]
            vals[i] = np.prod(factors)
            for k in range(d):
                rest = 1.0
                for j in range(d):
                    if j != k:
                        rest *= factors[j]
                grads[i, k] = rest if (i >> k) & 1 else -rest
        return vals, grads
    if kind.shape == PRISM:
        x, y, z = xi
        hat = np.array([1.0 - x - y, x, y])
        dhat = np.array([[-1.0, -1.0], [1.0, 0.0], [0.0, 1.0]])
        vals = np.concatenate([hat * (1.0 - z), hat * z])
        grads = np.zeros((6, 3))
        grads[:3, :2] = dhat * (1.0 - z)
        grads[3:, :2] = dhat * z
        grads[:3, 2] = -hat
        grads[3:, 2] = hat
        return vals, grads
    if kind.shape == PYRAMID:
        x, y, z = xi
        s = 1.0 - z
        if abs(s) < 1e-14:
            # removable singularity at the apex: xy/(1-z) -> 0 on the element
            r, rx, ry, rz = 0.0, 0.0, 0.0, 0.0
        else:
            r = x * y / s
            rx = y / s
            ry = x / s
            rz = x * y / (s * s)
        vals = np.array([1.0 - x - y - z + r, x - r, y - r, r, z])
        grads = np.array(
            [
                [-1.0 + rx, -1.0 + ry, -1.0 + rz],
                [1.0 - rx, -ry, -rz],
                [-rx, 1.0 - ry, -rz],
                [rx, ry, rz],
                [0.0, 0.0, 1.0],
            ]
        )
        return vals, grads
    raise AssertionError(kind)


class Geometry:
    """Shared contract of all geometry implementations.

    Subclasses provide `to_global` and `jacobian_transposed`; everything
    else (Jacobian, pseudo-inverses, measures, Newton inversion) derives
    from those two.  Instances are immutable after construction.
    """

    kind = None
    world_dim = None

    @property
    def reference_element(self):
        return reference_element(self.kind)

    @property
    def local_dim(self):
        return self.kind.dim

    @property
    def num_corners(self):
        return self.reference_element.num_corners

    @property
    def is_affine(self):
        return False

    def to_global(self, xi):
        """World coordinates of the reference point `xi`."""
        raise NotImplementedError

    def jacobian_transposed(self, xi):
        """Transposed derivative of the map, shape (d, w)."""
        raise NotImplementedError

    def jacobian(self, xi):
        """Derivative of the map, shape (w, d); a view of the transposed form."""
        return transposed_view(self.jacobian_transposed(xi))

    def jacobian_inverse(self, xi):
        """Left pseudo-inverse of the Jacobian, shape (d, w)."""
        try:
            return left_pseudo_inverse(self.jacobian(xi))
        except SingularityError as exc:
            raise SingularityError(f"rank-deficient Jacobian at xi={np.asarray(xi)}") from exc

    def jacobian_inverse_transposed(self, xi):
        """Right pseudo-inverse of the transposed Jacobian, shape (w, d)."""
        try:
            return right_pseudo_inverse(self.jacobian_transposed(xi))
        except SingularityError as exc:
            raise SingularityError(f"rank-deficient Jacobian at xi={np.asarray(xi)}") from exc

    def integration_element(self, xi):
        """Measure factor sqrt(det(J^T J)); equals |det J| when d == w."""
        jt = self.jacobian_transposed(xi)
        return float(np.sqrt(max(np.linalg.det(jt @ jt.T), 0.0)))

    def to_local(self, x, tol=NEWTON_TOL, max_iter=NEWTON_MAX_ITER):
        """Reference coordinates of the world point `x` by Newton iteration.

        Starts at the reference barycenter and iterates
        ``xi += jacobian_inverse(xi) @ (x - to_global(xi))`` until the
        residual drops below ``tol * (1 + |x|)``.  For surface geometries
        (w > d) an off-surface `x` converges to the closest-point parameter;
        that stationary point is returned best-effort, with the residual
        left to the caller.
        """
        x = as_vector(x)
        if x.shape[0] != self.world_dim:
            raise ShapeMismatchError(f"point of length {x.shape[0]} in world dimension {self.world_dim}")
        scale = 1.0 + float(np.linalg.norm(x))
        xi = self.reference_element.barycenter.astype(float).copy()
        for _ in range(max_iter):
            residual = x - self.to_global(xi)
            if np.linalg.norm(residual) <= tol * scale:
                return xi
            xi = xi + self.jacobian_inverse(xi) @ residual
        residual = x - self.to_global(xi)
        rnorm = float(np.linalg.norm(residual))
        if rnorm <= tol * scale:
            return xi
        if self.world_dim > self.local_dim:
            # Gauss-Newton stationarity: closest point reached, x off the surface.
            if np.linalg.norm(self.jacobian_transposed(xi) @ residual) <= 1e-10 * scale:
                return xi
        raise ConvergenceError(
            f"inversion did not converge within {max_iter} iterations "
            f"(residual {rnorm:.3e})",
            residual=rnorm,
        )

    def volume(self, order=4):
        """Measure of the image, by quadrature of the given order."""
        rule = quadrature_rule(self.kind, order)
        return float(sum(w * self.integration_element(x) for x, w in rule))

    def center(self):
        """Image of the reference barycenter."""
        return self.to_global(self.reference_element.barycenter)

    def corner(self, i):
        """Image of reference corner `i`."""
        ref = self.reference_element
        if not 0 <= i < ref.num_corners:
            raise BoundsError(f"corner {i} out of range (count {ref.num_corners})")
        return self.to_global(ref.corners[i])


class AffineGeometry(Geometry):
    """x0 + A @ xi with a constant Jacobian A of shape (w, d)."""

    def __init__(self, kind, origin, matrix):
        self.kind = kind
        self.origin = as_vector(origin)
        self.matrix = as_matrix(matrix)
        if self.matrix.shape[1] != kind.dim:
            raise ShapeMismatchError(
                f"matrix with {self.matrix.shape[1]} columns for local dimension {kind.dim}"
            )
        if self.matrix.shape[0] != self.origin.shape[0]:
            raise ShapeMismatchError("origin length and matrix row count differ")
        self.world_dim = self.matrix.shape[0]
        self._jt = np.ascontiguousarray(self.matrix.T)

    @classmethod
    def identity(cls, kind):
        return cls(kind, np.zeros(kind.dim), np.eye(kind.dim))

    @property
    def is_affine(self):
        return True

    def to_global(self, xi):
        return self.origin + self.matrix @ np.asarray(xi, dtype=float)

    def jacobian_transposed(self, xi):
        return self._jt


class MultiLinearGeometry(Geometry):
    """Corner interpolation: the restriction to every reference edge is affine."""

    def __init__(self, kind, corners):
        self.kind = kind
        self.corners_array = as_matrix(corners)
        ref = reference_element(kind)
        if self.corners_array.shape[0] != ref.num_corners:
            raise ShapeMismatchError(
                f"{self.corners_array.shape[0]} corners for {kind} "
                f"(expected {ref.num_corners})"
            )
        self.world_dim = self.corners_array.shape[1]
        self._affine = self._detect_affine()

    def _detect_affine(self):
        c = self.corners_array
        shape = self.kind.shape
        d = self.kind.dim
        if shape in (VERTEX, SIMPLEX):
            return True
        if shape == CUBE:
            for i in range(2**d):
                predicted = c[0] + sum(((i >> j) & 1) * (c[1 << j] - c[0]) for j in range(d))
                if not np.array_equal(predicted, c[i]):
                    return False
            return True
        if shape == PRISM:
            shift = c[3] - c[0]
            return np.array_equal(c[4] - c[1], shift) and np.array_equal(c[5] - c[2], shift)
        if shape == PYRAMID:
            return bool(np.all(c[0] - c[1] - c[2] + c[3] == 0.0))
        raise AssertionError(shape)

    @property
    def is_affine(self):
        return self._affine

    def to_global(self, xi):
        vals, _ = _geo_basis(self.kind, xi)
        return vals @ self.corners_array

    def jacobian_transposed(self, xi):
        _, grads = _geo_basis(self.kind, xi)
        return grads.T @ self.corners_array


class DifferentiableMap:
    """A coordinate transformation with a user-supplied derivative.

    `value(x)` maps an intermediate point to world coordinates and
    `derivative(x)` returns the (w x wb) derivative matrix at x.  The
    derivative is trusted, never replaced by finite differences.
    """

    def __init__(self, value, derivative):
        self._value = value
        self._derivative = derivative

    def __call__(self, x):
        return np.asarray(self._value(np.asarray(x, dtype=float)), dtype=float)

    def derivative(self, x):
        return as_matrix(self._derivative(np.asarray(x, dtype=float)))


def sine_surface():
    """Graph surface (x0, x1, sin(x0 * x1)) over the plane, with derivative."""

    def value(x):
        return np.array([x[0], x[1], np.sin(x[0] * x[1])])

    def derivative(x):
        c = np.cos(x[0] * x[1])
        return np.array([[1.0, 0.0], [0.0, 1.0], [x[1] * c, x[0] * c]])

    return DifferentiableMap(value, derivative)


class MappedGeometry(Geometry):
    """A chart applied on top of a base geometry.

    The composed Jacobian is evaluated by the chain rule at the base
    image; the chart must provide its own derivative.
    """

    def __init__(self, chart, base):
        self.chart = chart
        self.base = base
        self.kind = base.kind
        self.world_dim = np.asarray(chart(base.center())).shape[0]

    def to_global(self, xi):
        return self.chart(self.base.to_global(xi))

    def jacobian_transposed(self, xi):
        base_jt = self.base.jacobian_transposed(xi)
        chart_jac = self.chart.derivative(self.base.to_global(xi))
        return matmul(base_jt, transposed_view(chart_jac))


class LocalFeGeometry(Geometry):
    """Map expanded in a scalar local finite-element basis.

    global(xi) = sum_i coefficients[i] * basis_i(xi); the Jacobian comes
    from the basis gradients, never from differencing.
    """

    def __init__(self, element, coefficients):
        self.element = element
        self.kind = element.kind
        self.coefficients = as_matrix(coefficients)
        if self.coefficients.shape[0] != element.size:
            raise ShapeMismatchError(
                f"{self.coefficients.shape[0]} coefficient rows for a basis of size {element.size}"
            )
        self.world_dim = self.coefficients.shape[1]

    @classmethod
    def from_map(cls, element, f):
        """Interpolate the world map `f` componentwise into the element."""
        probe = np.asarray(f(reference_element(element.kind).barycenter), dtype=float)
        cols = [
            element.interpolate(lambda xi, c=c: float(np.asarray(f(xi))[c]))
            for c in range(probe.shape[0])
        ]
        return cls(element, np.column_stack(cols))

    @property
    def is_affine(self):
        return self.kind.shape == SIMPLEX and getattr(self.element.basis, "degree", None) == 1

    def to_global(self, xi):
        vals = self.element.basis.evaluate(xi)[:, 0]
        return vals @ self.coefficients

    def jacobian_transposed(self, xi):
        grads = self.element.basis.jacobian(xi)[:, 0, :]
        return grads.T @ self.coefficients


def facet_quadrature(ref, facet, order):
    """Quadrature on facet `facet` of reference element `ref`.

    Returns (points, weights, normal): points in element coordinates,
    weights scaled by the facet measure, and the constant outward unit
    normal.  Facets of the supported shapes are planar, so the normal is
    exact.
    """
    fkind = ref.subentity_kind(facet, 1)
    corners = ref.corners[list(ref.subentity_corners(facet, 1))]
    embed = MultiLinearGeometry(fkind, corners)
    rule = quadrature_rule(fkind, order)
    points = np.array([embed.to_global(x) for x, _ in rule])
    weights = np.array([w * embed.integration_element(x) for x, w in rule])
    return points, weights, ref.facet_normal(facet)
