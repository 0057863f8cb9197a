"""Small dense linear algebra: products, transposition, pseudo-inverses.

Matrices are 2-d float64 numpy arrays and vectors are 1-d.  Everything here
is sized for geometry Jacobians (a handful of rows and columns), so the
pseudo-inverses go through an explicit Cholesky factorization of the Gram
matrix with a pivot tolerance instead of a general-purpose SVD.
"""

import numpy as np

from .errors import ShapeMismatchError, SingularityError

# Relative pivot tolerance for the Gram-matrix Cholesky factorization.
GRAM_PIVOT_RTOL = 1e-13


def as_matrix(a):
    """Coerce `a` to a 2-d float64 array."""
    m = np.asarray(a, dtype=np.float64)
    if m.ndim != 2:
        raise ShapeMismatchError(f"expected a matrix, got ndim={m.ndim}")
    return m


def as_vector(x):
    """Coerce `x` to a 1-d float64 array."""
    v = np.asarray(x, dtype=np.float64)
    if v.ndim != 1:
        raise ShapeMismatchError(f"expected a vector, got ndim={v.ndim}")
    return v


def matmul(a, b):
    """Matrix product with an explicit conformance check."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise ShapeMismatchError(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def matvec(a, x):
    """Matrix-vector product with an explicit conformance check."""
    a = as_matrix(a)
    x = as_vector(x)
    if a.shape[1] != x.shape[0]:
        raise ShapeMismatchError(f"cannot apply {a.shape} to vector of length {x.shape[0]}")
    return a @ x


def transposed_view(a):
    """Zero-copy transposed view of `a`.

    The view shares storage with `a`, so products like ``matmul(a,
    transposed_view(b))`` evaluate without materializing the transpose.
    """
    return as_matrix(a).T


def transpose(a):
    """Materialized (contiguous) transpose of `a`."""
    return np.ascontiguousarray(as_matrix(a).T)


def cholesky_spd(gram, pivot_rtol=GRAM_PIVOT_RTOL):
    """Lower Cholesky factor of a symmetric positive definite matrix.

    Raises SingularityError when a pivot drops below
    ``pivot_rtol * max|gram|``, i.e. the matrix is numerically rank
    deficient at the configured tolerance.
    """
    g = as_matrix(gram)
    n = g.shape[0]
    if g.shape[1] != n:
        raise ShapeMismatchError(f"Cholesky needs a square matrix, got {g.shape}")
    tol = pivot_rtol * max(np.max(np.abs(g)), 1.0e-300)
    lower = np.zeros_like(g)
    for k in range(n):
        pivot = g[k, k] - lower[k, :k] @ lower[k, :k]
        if not pivot > tol:
            raise SingularityError(
                f"Gram matrix is numerically singular (pivot {pivot:.3e} at row {k}, tol {tol:.3e})"
            )
        lower[k, k] = np.sqrt(pivot)
        if k + 1 < n:
            lower[k + 1:, k] = (g[k + 1:, k] - lower[k + 1:, :k] @ lower[k, :k]) / lower[k, k]
    return lower


def _solve_spd(gram, rhs):
    """Solve gram @ x = rhs via Cholesky plus one refinement step."""
    lower = cholesky_spd(gram)

    def solve(b):
        y = np.linalg.solve(lower, b)
        return np.linalg.solve(lower.T, y)

    x = solve(rhs)
    # One step of iterative refinement keeps the residual near machine
    # precision even when the Gram matrix squares the condition number.
    x -= solve(gram @ x - rhs)
    return x


def left_pseudo_inverse(a):
    """Left pseudo-inverse (AtA)^-1 At of a tall full-column-rank matrix.

    The result L satisfies L @ a == identity up to rounding.  A rank
    deficient Gram matrix raises SingularityError.
    """
    a = as_matrix(a)
    return _solve_spd(a.T @ a, a.T)


def right_pseudo_inverse(a):
    """Right pseudo-inverse At(AAt)^-1 of a wide full-row-rank matrix.

    The result R satisfies a @ R == identity up to rounding.
    """
    a = as_matrix(a)
    return _solve_spd(a @ a.T, a).T
