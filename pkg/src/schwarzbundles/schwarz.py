"""The Schwarz function S of an analytic curve: S(z) = conj(z) on the curve.

For a curve phi(unit circle), S extends analytically to the validated annulus
through the reflection S(z) = conj(phi(1/conj(zeta))) with zeta = phi^{-1}(z).
The inverse map is found by Newton iteration seeded from boundary samples.
conj(S(z)) is the anti-conformal reflection across the curve.

Polygons have an edge-wise affine Schwarz function S(z) = alpha*z + beta.
"""

from __future__ import annotations

from functools import lru_cache

import numpy as np

from .curve import TWO_PI, ConformalMapCurve, PolygonCurve
from .errors import (
    DegenerateEdgeError,
    NewtonDivergedError,
    NotConformalMapCurveError,
    OutsideAnnulusError,
)

NEWTON_MAX_ITER = 50
NEWTON_TOL = 1e-13
_N_SEEDS = 256


@lru_cache(maxsize=64)
def _seed_table(curve):
    th = TWO_PI * np.arange(_N_SEEDS) / _N_SEEDS
    zeta = np.exp(1j * th)
    return zeta, curve.phi(zeta)


def invert_conformal_map(curve, z):
    """zeta with phi(zeta) = z, for z in the validated annular image."""
    if not isinstance(curve, ConformalMapCurve):
        raise NotConformalMapCurveError("Schwarz evaluation needs a conformal-map curve")
    z = complex(z)
    seeds, vals = _seed_table(curve)
    zeta = seeds[int(np.argmin(np.abs(vals - z)))]
    scale = 1.0 + abs(z)
    for _ in range(NEWTON_MAX_ITER):
        f = curve.phi(zeta) - z
        if abs(f) <= NEWTON_TOL * scale:
            break
        zeta = zeta - f / curve.dphi(zeta)
        if abs(zeta) > 4.0 / curve.rho:
            raise OutsideAnnulusError(f"inverse of {z} escaped the validation region")
    else:
        raise NewtonDivergedError(f"no convergence inverting the map at z = {z}")
    r = abs(zeta)
    if not curve.rho * (1.0 - 1e-10) <= r <= (1.0 + 1e-10) / curve.rho:
        raise OutsideAnnulusError(
            f"preimage |zeta| = {r:.6g} outside [{curve.rho}, {1 / curve.rho:.6g}]")
    return zeta


def schwarz_boundary(curve, t):
    """S on the curve itself: conj(z(t))."""
    if not isinstance(curve, ConformalMapCurve):
        raise NotConformalMapCurveError("polygons carry edge-wise Schwarz data")
    return np.conjugate(curve.point(t))


def schwarz_near(curve, z):
    """S(z) for z in the validated annulus around the curve."""
    zeta = invert_conformal_map(curve, z)
    return complex(curve.phi_reflected(zeta))


def schwarz_prime(curve, z):
    """S'(z), by the chain rule through the map and its reflection."""
    zeta = invert_conformal_map(curve, z)
    return complex(-curve.dphi_reflected(zeta) / (zeta * zeta * curve.dphi(zeta)))


def schwarz_reflect(curve, z):
    """Anti-conformal reflection across the curve, conj(S(z)); an involution."""
    return schwarz_near(curve, z).conjugate()


def polygon_schwarz(polygon, edge_index):
    """Affine Schwarz data (alpha, beta) with S(z) = alpha*z + beta on an edge.

    alpha = conj(T)/T for the edge tangent T, and beta is fixed by
    S(vertex) = conj(vertex) at the edge start.
    """
    if not isinstance(polygon, PolygonCurve):
        raise NotConformalMapCurveError("edge Schwarz data needs a polygon")
    a, b = polygon.edge(int(edge_index))
    e = b - a
    if abs(e) < 1e-14 * (1.0 + abs(a) + abs(b)):
        raise DegenerateEdgeError(f"edge {edge_index} has zero length")
    tangent = e / abs(e)
    alpha = tangent.conjugate() / tangent
    beta = a.conjugate() - alpha * a
    return alpha, beta
