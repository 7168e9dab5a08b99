"""Rational-structure study: fit F(z, w) = Q(z, conj w)/(P(z) conj(P(w))) for
a family of polynomial-map domains and report residuals, boundary defects and
the quadrature-domain classification at several degrees.

Usage: python scripts/rational_fit_study.py
"""

import numpy as np

import schwarzbundles as sb


CASES = [
    ("unit disk", [0, 1], 0.5),
    ("zeta + 0.3 zeta^2", [0, 1, 0.3], 0.7),
    ("zeta + 0.1 zeta^2 + 0.1 zeta^3", [0, 1, 0.1, 0.1], 0.7),
]


def main():
    for label, coeffs, rho in CASES:
        curve = sb.build_polynomial_curve(coeffs, rho)
        grid = sb.sample(curve, 1024)
        samples = sb.default_exterior_samples(grid, 12)
        print(f"\n{label}  (degree {curve.degree})")
        for deg in range(1, curve.degree + 1):
            fit = sb.fit_rational_structure(grid, deg, deg, samples)
            boundary = sb.verify_algebraic_boundary(fit.q_coeffs, grid)
            print(f"  deg {deg}: residual {fit.residual:.2e}   "
                  f"|Q(z, conj z)| on curve {boundary:.2e}   "
                  f"-> {fit.classification}")
        best = sb.fit_rational_structure(grid, curve.degree, curve.degree, samples)
        print("  P(z) =", np.round(best.p_coeffs, 10))


if __name__ == "__main__":
    main()
