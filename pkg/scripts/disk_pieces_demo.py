"""Print the four analytic pieces of the exponential transform on the unit
disk against their closed forms, plus Chern classes and transition residuals.

Usage: python scripts/disk_pieces_demo.py [node_count]
"""

import sys

import schwarzbundles as sb


def main():
    n = int(sys.argv[1]) if len(sys.argv) > 1 else 512
    disk = sb.build_circle(0, 1)
    grid = sb.sample(disk, n)

    print(f"unit disk, {n} nodes\n")
    print("piece values vs closed forms:")
    rows = [
        ("F(2, 3)", sb.piece_f(grid, 2, 3), 1 - 1 / 6),
        ("G(0.5, 3)", sb.piece_g(grid, 0.5, 3), -1 / 3),
        ("H(0, 0.5)", sb.piece_h(grid, 0, 0.5), 1.0),
        ("G*(2, 0.5)", sb.piece_gstar(grid, 2, 0.5), -0.5),
    ]
    for name, got, expect in rows:
        print(f"  {name:12s} = {got:+.15f}   exact {expect:+.15f}   "
              f"err {abs(got - expect):.2e}")

    print("\nChern classes and transition residuals:")
    pts = sb.annulus_verification_points(grid, 32)
    for label, bundle in [
        ("exp-schwarz", sb.exp_schwarz_bundle(disk)),
        ("pole w=3   ", sb.schwarz_pole_bundle(disk, 3)),
        ("pole w=0   ", sb.schwarz_pole_bundle(disk, 0)),
        ("pole w=.4+.2i", sb.schwarz_pole_bundle(disk, 0.4 + 0.2j)),
    ]:
        c = sb.chern_class(bundle, grid)
        section = sb.canonical_section(bundle, grid)
        resid = sb.verify_transition(section, bundle, pts)
        print(f"  {label:14s} chern {c:+d}   residual {resid:.2e}")
    kappa = sb.tangent_power_bundle(disk, 2)
    print(f"  tangent^-2     chern {sb.chern_class(kappa, grid):+d}   "
          "(no holomorphic sections)")


if __name__ == "__main__":
    main()
