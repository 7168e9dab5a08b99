import cmath

import numpy as np
import pytest

import schwarzbundles as sb
from schwarzbundles.errors import (
    CoincidentInteriorPointsError,
    NearBoundaryError,
    OriginNotInteriorError,
    WrongQuadrantError,
)

from oracles import double_cauchy_area_oracle

LOG_5_6 = cmath.log(5.0 / 6.0)


def test_cauchy_transform_disk_values(disk_grid):
    # residue of (1/zeta)/(zeta - 2) at 0 is -1/2, so the exterior value is 1/2
    assert sb.cauchy_transform(disk_grid, 2.0) == pytest.approx(0.5, abs=1e-12)
    # double pole at 0 leaves no residue
    assert sb.cauchy_transform(disk_grid, 0.0) == pytest.approx(0.0, abs=1e-12)


def test_cauchy_transform_shifted_circle_interior():
    c = sb.build_circle(0.3 + 0.1j, 1.0)
    g = sb.sample(c, 512)
    # conj(zeta) = conj(a) + r^2/(zeta - a) on the circle; interior value is conj(a)
    assert sb.cauchy_transform(g, 0.3 + 0.1j) == pytest.approx(0.3 - 0.1j, abs=1e-12)


def test_cauchy_transform_near_boundary(disk_grid):
    with pytest.raises(NearBoundaryError):
        sb.cauchy_transform(disk_grid, 1.0 + 1e-9)


def test_moments_unit_disk(disk_grid):
    table = sb.harmonic_moments(disk_grid, -3, 3)
    for k, m in table.items():
        expect = 1.0 if k == 0 else 0.0
        assert abs(m - expect) < 1e-12


def test_moments_scaled_circle():
    c = sb.build_circle(0, 1.5)
    g = sb.sample(c, 512)
    table = sb.harmonic_moments(g, -2, 2)
    assert table[0] == pytest.approx(1.5 ** 2, abs=1e-12)
    for k in (-2, -1, 1, 2):
        assert abs(table[k]) < 1e-12


def test_moments_cardioid_area(cardioid_grid):
    # area/pi for zeta + 0.3 zeta^2 is 1 + 2*0.09
    assert sb.harmonic_moments(cardioid_grid, 0, 0)[0] == pytest.approx(1.18, abs=1e-12)


def test_moments_shifted_circle_frozen():
    # M_k = a^k for k >= 0 and M_{-1} = conj(a), on |z - a| = 1
    a = 0.2
    g = sb.sample(sb.build_circle(a, 1.0), 512)
    table = sb.harmonic_moments(g, -2, 4)
    for k in range(0, 5):
        assert table[k] == pytest.approx(a ** k, abs=1e-12)
    assert table[-1] == pytest.approx(a, abs=1e-12)
    assert abs(table[-2]) < 1e-12


def test_moments_need_interior_origin():
    g = sb.sample(sb.build_circle(5.0, 1.0), 256)
    with pytest.raises(OriginNotInteriorError):
        sb.harmonic_moments(g, -1, 1)


def test_moment_expansion_disk(disk_grid):
    assert sb.moment_expansion_check(disk_grid, 4) < 1e-10


def test_moment_expansion_shifted_circle():
    g = sb.sample(sb.build_circle(0.2, 1.0), 512)
    assert sb.moment_expansion_check(g, 4) < 1e-8


def test_double_cauchy_disk_values(disk_grid):
    assert sb.double_cauchy(disk_grid, 2, 3).C == pytest.approx(LOG_5_6, abs=1e-12)
    assert sb.double_cauchy(disk_grid, 0.5, 3).C == pytest.approx(LOG_5_6, abs=1e-12)
    assert sb.double_cauchy(disk_grid, 0, 0.5).C == pytest.approx(
        cmath.log(0.25), abs=1e-12)


def test_exponential_disk_values(disk_grid):
    assert sb.exponential_transform(disk_grid, 2, 3).E == pytest.approx(
        5.0 / 6.0, abs=1e-12)


def test_exponential_normalized_at_infinity(disk_grid):
    tv = sb.exponential_transform(disk_grid, 1e6, 1e6)
    assert abs(tv.E - 1.0) < 1e-5


def test_hermitian_symmetry_spot(disk_grid):
    a = sb.exponential_transform(disk_grid, 2.0, 3j)
    b = sb.exponential_transform(disk_grid, 3j, 2.0)
    assert abs(a.E - np.conjugate(b.E)) < 1e-12


def test_pieces_disk(disk_grid):
    assert sb.piece_f(disk_grid, 2, 3) == pytest.approx(1 - 1 / 6, abs=1e-12)
    assert sb.piece_g(disk_grid, 0.5, 3) == pytest.approx(-1 / 3, abs=1e-12)
    assert sb.piece_h(disk_grid, 0, 0.5) == pytest.approx(1.0, abs=1e-12)
    assert sb.piece_gstar(disk_grid, 2, 0.5) == pytest.approx(-0.5, abs=1e-12)


def test_piece_quadrant_enforcement(disk_grid):
    with pytest.raises(WrongQuadrantError):
        sb.piece_f(disk_grid, 0.5, 3)
    with pytest.raises(WrongQuadrantError):
        sb.piece_g(disk_grid, 2, 3)
    with pytest.raises(WrongQuadrantError):
        sb.piece_h(disk_grid, 0, 3)
    with pytest.raises(WrongQuadrantError):
        sb.piece_gstar(disk_grid, 0.2, 0.5)


def test_coincident_interior_points(disk_grid):
    with pytest.raises(CoincidentInteriorPointsError):
        sb.double_cauchy(disk_grid, 0.5, 0.5)


def test_exponential_is_exactly_exp_of_c(disk_grid):
    tv = sb.double_cauchy(disk_grid, 2.0 + 1j, -3.0)
    assert tv.E == cmath.exp(tv.C)


def test_unwrap_log_guards_and_winding():
    from schwarzbundles.errors import BranchUnresolvedError
    th = 2 * np.pi * np.arange(64) / 64
    logs, winding = sb.unwrap_log(np.exp(2j * th))
    assert winding == pytest.approx(2.0, abs=1e-12)
    assert np.allclose(logs.real, 0.0, atol=1e-12)
    with pytest.raises(BranchUnresolvedError):
        sb.unwrap_log(np.exp(1j * np.array([0.0, 0.3, 2.0, 0.6])))  # step 1.7
    with pytest.raises(BranchUnresolvedError):
        sb.unwrap_log(np.array([1.0, 0.0, 1.0, 1.0]))  # passes through zero


def test_moment_expansion_propagates_band_refusal(disk):
    g16 = sb.sample(disk, 16)  # band 1.95 reaches the sampling circle
    with pytest.raises(NearBoundaryError):
        sb.moment_expansion_check(g16, 2)


def _disk_exact_exponential(z, w):
    # closed forms from the reflection S(z) = 1/z: the exterior piece is
    # 1 - 1/(z conj w); interior arguments trade a factor for conj z / conj w
    # (hermitian symmetry) resp. |z - w|^2 / (1 - z conj w) for both inside
    zi, wi = abs(z) < 1, abs(w) < 1
    if not zi and not wi:
        return 1 - 1 / (z * np.conjugate(w))
    if zi and not wi:
        return 1 - np.conjugate(z) / np.conjugate(w)
    if not zi and wi:
        return 1 - w / z
    return abs(z - w) ** 2 / (1 - z * np.conjugate(w))


def test_exponential_quadrant_sweep_disk(disk_grid):
    interior = [0.3, -0.5j, 0.5 + 0.1j, -0.2 - 0.4j]
    exterior = [2.0, 3j, -1.8 + 1.1j, 1.4 - 1.6j]
    for z in interior + exterior:
        for w in interior + exterior:
            if z == w and abs(z) < 1:
                continue
            got = sb.exponential_transform(disk_grid, z, w).E
            assert abs(got - _disk_exact_exponential(z, w)) < 1e-10


def test_double_cauchy_matches_area_oracle(disk, disk_grid, cardioid, cardioid_grid):
    cases = [(disk, disk_grid, 2.0, 3.0), (disk, disk_grid, 2.0 + 1j, -2.5),
             (cardioid, cardioid_grid, 2.5, 3.0 + 0.5j)]
    for curve, grid, z, w in cases:
        ours = sb.double_cauchy(grid, z, w).C
        oracle = double_cauchy_area_oracle(curve, z, w, n=400)
        assert abs(ours - oracle) < 1e-5


def test_decay_bound(cardioid_grid):
    radius = np.abs(cardioid_grid.z).max()
    area_over_pi = sb.harmonic_moments(cardioid_grid, 0, 0)[0].real
    for z, w in ((4.0, 5j), (-6.0, 3 - 4j), (10.0, 10.0)):
        bound = area_over_pi / ((abs(z) - radius) * (abs(w) - radius))
        assert abs(sb.double_cauchy(cardioid_grid, z, w).C) <= bound * (1 + 1e-8)


def test_gram_positivity(disk_grid):
    pts = 2.2 * np.exp(2j * np.pi * (np.arange(6) + 0.15) / 6) + 0.1
    cmat = np.empty((6, 6), dtype=complex)
    emat = np.empty((6, 6), dtype=complex)
    for i, zi in enumerate(pts):
        for j, zj in enumerate(pts):
            tv = sb.double_cauchy(disk_grid, zi, zj)
            cmat[i, j] = -tv.C
            emat[i, j] = 1.0 / tv.E
    for mat in (cmat, emat):
        sym = 0.5 * (mat + mat.conj().T)
        assert np.linalg.eigvalsh(sym).min() >= -1e-8


def test_transform_value_serialization(disk_grid):
    tvs = [sb.exponential_transform(disk_grid, 2, 3),
           sb.exponential_transform(disk_grid, 0.5, 3)]
    csv = sb.transform_values_to_csv(tvs)
    lines = csv.strip().split("\n")
    assert lines[0].startswith("re_z,")
    assert len(lines) == 3
    assert "ext:ext" in lines[1] and "int:ext" in lines[2]
    blob = sb.transform_values_to_json(tvs)
    assert blob[0]["quadrant"] == "ext:ext"
    assert blob[0]["E"][0] == pytest.approx(5 / 6)
