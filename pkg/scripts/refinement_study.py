"""Convergence study: error of contour quadrature under node doubling for a
boundary-analytic integrand, showing the expected geometric decay.

Usage: python scripts/refinement_study.py
"""

import numpy as np

import schwarzbundles as sb


def functional(grid):
    # infinite Fourier spectrum, analytic near the curve
    return (grid.weight / (2j * np.pi)) * np.sum(
        np.exp(grid.z) * np.conjugate(grid.z) * grid.dz)


def main():
    curve = sb.build_polynomial_curve([0, 1, 0.3], 0.7)
    reference = functional(sb.sample(curve, 4096))
    print("n      error          ratio")
    prev = None
    for n in (16, 32, 64, 128, 256, 512):
        err = abs(functional(sb.sample(curve, n)) - reference)
        ratio = "" if prev is None or prev == 0 else f"{err / prev:8.2e}"
        print(f"{n:<6d} {err:12.4e}   {ratio}")
        prev = err

    grid = sb.adaptive_refine(curve, functional, 1e-12)
    print(f"\nadaptive refinement settles at n = {grid.n}")


if __name__ == "__main__":
    main()
