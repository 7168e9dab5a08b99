"""Harmonic moments, single and double Cauchy transforms, and the
exponential transform of the domain bounded by an analytic curve.

Everything is computed from boundary integrals on a contour grid. The double
transform C(z, w) is assembled quadrant by quadrant: the base Cauchy integral
of a boundary log density plus a closed correction when an argument is
interior. Its exponential E = exp(C) carries the four analytic pieces
F, G, G*, H depending on which side of the curve each argument lies.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from .curve import Location, locate
from .errors import (
    BranchUnresolvedError,
    CoincidentInteriorPointsError,
    NearBoundaryError,
    OriginNotInteriorError,
    WrongQuadrantError,
)

PHASE_STEP_LIMIT = np.pi / 2


def unwrap_log(values, step_limit=PHASE_STEP_LIMIT):
    """Continuous logarithm of a cyclic sequence of nonzero complex values.

    The branch is anchored at the principal logarithm of the first value.
    Returns (log values, winding). Raises BranchUnresolvedError when any
    adjacent phase step reaches `step_limit` (refine the grid) or when a
    value is numerically zero.
    """
    v = np.asarray(values, dtype=complex)
    mags = np.abs(v)
    if mags.min() <= 1e-12:
        raise BranchUnresolvedError("values pass through zero; no branch exists")
    steps = np.angle(np.roll(v, -1) / v)
    if np.abs(steps).max() >= step_limit:
        raise BranchUnresolvedError(
            f"phase step {np.abs(steps).max():.3f} >= {step_limit:.3f} "
            "between adjacent nodes; refine the grid")
    phases = np.angle(v[0]) + np.concatenate(([0.0], np.cumsum(steps[:-1])))
    winding = float(steps.sum() / (2.0 * np.pi))
    return np.log(mags) + 1j * phases, winding


def cauchy_integral(grid, density, z):
    """(1/2 pi i) * contour integral of density(zeta) dzeta / (zeta - z)."""
    return complex((grid.weight / (2j * np.pi))
                   * np.sum(np.asarray(density) * grid.dz / (grid.z - z)))


def _require_off_band(grid, *points):
    sides = []
    for p in points:
        side = locate(grid, p)
        if side is Location.NEAR_BOUNDARY:
            raise NearBoundaryError(
                f"{p} is within the exclusion band ({grid.exclusion_band:.3g})")
        sides.append(side)
    return sides


def cauchy_transform(grid, z):
    """Cauchy transform of the domain at exterior z, or the renormalized
    exterior transform (boundary integral of conj(zeta)/(zeta - z)) inside."""
    z = complex(z)
    (side,) = _require_off_band(grid, z)
    base = cauchy_integral(grid, np.conjugate(grid.z), z)
    return -base if side is Location.EXTERIOR else base


@dataclass(frozen=True)
class MomentTable:
    """Harmonic moments M_k = (1/2 pi i) * integral of z^k conj(z) dz."""

    k_min: int
    k_max: int
    values: dict

    def __getitem__(self, k):
        return self.values[k]

    def items(self):
        return sorted(self.values.items())


def harmonic_moments(grid, k_min, k_max):
    """Moment table for k in [k_min, k_max]; needs 0 inside the curve."""
    k_min, k_max = int(k_min), int(k_max)
    if not k_min <= 0 <= k_max:
        raise ValueError("moment range must contain k = 0")
    side = locate(grid, 0.0)
    if side is Location.NEAR_BOUNDARY:
        raise NearBoundaryError("origin is inside the exclusion band; refine")
    if side is not Location.INTERIOR:
        raise OriginNotInteriorError("harmonic moments assume the origin is interior")
    pref = grid.weight / (2j * np.pi)
    zbar_dz = np.conjugate(grid.z) * grid.dz
    values = {k: complex(pref * np.sum(grid.z ** k * zbar_dz))
              for k in range(k_min, k_max + 1)}
    return MomentTable(k_min, k_max, values)


def moment_expansion_check(grid, k_max, n_fft=256):
    """Consistency of the Schwarz-function moment expansion.

    Extracts Laurent coefficients at infinity of the logarithm of the
    exterior exp-Schwarz section (log f2 = -sum_k M_k / z^{k+1}) by Fourier
    analysis on a circle enclosing the curve, and returns
    max_k |coeff_k + M_k| over 0 <= k <= k_max.
    """
    k_max = int(k_max)
    n_fft = max(int(n_fft), 4 * (k_max + 2))
    radius = 2.0 * np.abs(grid.z).max()
    angles = 2.0 * np.pi * np.arange(n_fft) / n_fft
    ring = radius * np.exp(1j * angles)
    if np.abs(ring[:, None] - grid.z[None, :]).min() < grid.exclusion_band:
        raise NearBoundaryError("sampling circle intersects the exclusion band")
    dens = np.conjugate(grid.z)
    vals = np.array([cauchy_integral(grid, dens, p) for p in ring])
    coeff = np.fft.ifft(vals)  # coeff[m] * radius^{-m} = Laurent coefficient m
    moments = harmonic_moments(grid, 0, k_max)
    residual = 0.0
    for k in range(k_max + 1):
        c = coeff[k + 1] * radius ** (k + 1)
        residual = max(residual, abs(c + moments[k]))
    return residual


@dataclass(frozen=True)
class TransformValue:
    """Double Cauchy transform C and exponential transform E = exp(C) at a
    point pair, tagged with the side of the curve each argument lies on."""

    z: complex
    w: complex
    quadrant: tuple
    C: complex
    E: complex


def _log_density_for(grid, w, w_side):
    if w_side is Location.EXTERIOR:
        dens, _ = unwrap_log(np.conjugate(grid.z) - np.conjugate(w))
        return dens
    return np.log(np.abs(grid.z - w) ** 2)


def double_cauchy(grid, z, w):
    """Double Cauchy transform C(z, w), quadrant-wise.

    Base integral I = -(1/2 pi i) * integral of L_w(zeta) dzeta/(zeta - z)
    with L_w the unwrapped log(conj(zeta) - conj(w)) for exterior w and the
    real log|zeta - w|^2 for interior w; interior arguments add the closed
    corrections log(conj z - conj w) resp. log|z - w|^2. The branch in the
    mixed quadrant (z interior, w exterior) is pinned by hermitian symmetry,
    evaluating the conjugate-swapped real-density route.
    """
    z, w = complex(z), complex(w)
    z_side, w_side = _require_off_band(grid, z, w)
    if z_side is Location.INTERIOR and w_side is Location.INTERIOR \
            and abs(z - w) <= 1e-12 * (1.0 + abs(z)):
        raise CoincidentInteriorPointsError(
            "interior exponential transform is singular at coincident points")

    if z_side is Location.INTERIOR and w_side is Location.EXTERIOR:
        dens = np.log(np.abs(grid.z - z) ** 2)
        c = np.conjugate(-cauchy_integral(grid, dens, w))
    else:
        dens = _log_density_for(grid, w, w_side)
        c = -cauchy_integral(grid, dens, z)
        if z_side is Location.INTERIOR:  # both interior here
            c = c + math.log(abs(z - w) ** 2)
    return TransformValue(z=z, w=w, quadrant=(z_side, w_side), C=c, E=cmath.exp(c))


def exponential_transform(grid, z, w):
    """E(z, w) = exp C(z, w)."""
    return double_cauchy(grid, z, w)


def _demand_quadrant(tv, z_side, w_side, name):
    if tv.quadrant != (z_side, w_side):
        got = tuple(s.value for s in tv.quadrant)
        want = (z_side.value, w_side.value)
        raise WrongQuadrantError(f"piece {name} needs quadrant {want}, got {got}")


def piece_f(grid, z, w):
    """F(z, w) = E(z, w) for both arguments exterior; F(inf, w) = 1."""
    tv = double_cauchy(grid, z, w)
    _demand_quadrant(tv, Location.EXTERIOR, Location.EXTERIOR, "F")
    return tv.E


def piece_g(grid, z, w):
    """G(z, w) = E(z, w)/(conj z - conj w) for z interior, w exterior."""
    tv = double_cauchy(grid, z, w)
    _demand_quadrant(tv, Location.INTERIOR, Location.EXTERIOR, "G")
    return tv.E / (np.conjugate(tv.z) - np.conjugate(tv.w))


def piece_gstar(grid, z, w):
    """G*(z, w) = conj(G(w, z)) for z exterior, w interior."""
    z, w = complex(z), complex(w)
    z_side, w_side = _require_off_band(grid, z, w)
    if (z_side, w_side) != (Location.EXTERIOR, Location.INTERIOR):
        raise WrongQuadrantError(
            f"piece G* needs (exterior, interior), got "
            f"({z_side.value}, {w_side.value})")
    return np.conjugate(piece_g(grid, w, z))


def piece_h(grid, z, w):
    """Interior exponential transform H(z, w) = E(z, w)/|z - w|^2."""
    tv = double_cauchy(grid, z, w)
    _demand_quadrant(tv, Location.INTERIOR, Location.INTERIOR, "H")
    return tv.E / abs(tv.z - tv.w) ** 2


# serialization of sampled transform values

CSV_HEADER = "re_z,im_z,re_w,im_w,quadrant,re_C,im_C,re_E,im_E"


def _quadrant_tag(quadrant):
    short = {Location.INTERIOR: "int", Location.EXTERIOR: "ext"}
    return f"{short[quadrant[0]]}:{short[quadrant[1]]}"


def transform_values_to_csv(values):
    lines = [CSV_HEADER]
    for tv in values:
        lines.append(",".join([
            f"{tv.z.real:.17g}", f"{tv.z.imag:.17g}",
            f"{tv.w.real:.17g}", f"{tv.w.imag:.17g}",
            _quadrant_tag(tv.quadrant),
            f"{tv.C.real:.17g}", f"{tv.C.imag:.17g}",
            f"{tv.E.real:.17g}", f"{tv.E.imag:.17g}",
        ]))
    return "\n".join(lines) + "\n"


def transform_values_to_json(values):
    return [{
        "z": [tv.z.real, tv.z.imag],
        "w": [tv.w.real, tv.w.imag],
        "quadrant": _quadrant_tag(tv.quadrant),
        "C": [tv.C.real, tv.C.imag],
        "E": [tv.E.real, tv.E.imag],
    } for tv in values]
