"""Local finite elements: bases, local keys, and interpolation."""

from .common import (
    CollocationInterpolation,
    FluxInterpolation,
    LocalBasis,
    LocalFiniteElement,
    LocalKey,
    NodalInterpolation,
)
from .crouzeix_raviart import crouzeix_raviart
from .hierarchical import hierarchical_p1_bubble, hierarchical_p2_bubble
from .lagrange import lagrange_cube, lagrange_simplex
from .raviart_thomas import FaceOrientation, rt0_prism, rt0_pyramid
from .refined import refined_lagrange


def interpolate(element, f):
    """Coefficients of `f` under `element`'s interpolation functionals."""
    return element.interpolate(f)


__all__ = [
    "CollocationInterpolation",
    "FaceOrientation",
    "FluxInterpolation",
    "LocalBasis",
    "LocalFiniteElement",
    "LocalKey",
    "NodalInterpolation",
    "crouzeix_raviart",
    "hierarchical_p1_bubble",
    "hierarchical_p2_bubble",
    "interpolate",
    "lagrange_cube",
    "lagrange_simplex",
    "refined_lagrange",
    "rt0_prism",
    "rt0_pyramid",
]
