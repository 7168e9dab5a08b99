"""Command-line surface: validate curves, evaluate transforms and moments,
build and verify bundle sections, run quadrature identities, fit the rational
structure, and dump plot data.

Numeric output uses 17 significant digits so values round-trip exactly.
Configuration comes from flags, with SCHWARZ_TOL / SCHWARZ_N environment
fallbacks; flags win. Exit codes: 0 ok, 1 validation or computation failure,
2 parse error, 3 near-boundary refusal, 4 unresolved branch, 5 incompatible
geometry.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass

import numpy as np

from . import bundles, quaddom, transforms
from .curve import (
    ConformalMapCurve,
    PolygonCurve,
    adaptive_refine,
    curve_from_json,
    locate,
    sample,
)
from .errors import (
    BranchUnresolvedError,
    CoincidentInteriorPointsError,
    NearBoundaryError,
    NotConformalMapCurveError,
    ParseError,
    SchwarzBundleError,
    TangentNotMeromorphicError,
)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_PARSE = 2
EXIT_NEAR_BOUNDARY = 3
EXIT_BRANCH = 4
EXIT_GEOMETRY = 5


@dataclass
class RunConfig:
    tolerance: float = 1e-10
    n: int = None          # pinned node count; adaptive when None
    n_start: int = 256
    n_max: int = 2 ** 16
    fmt: str = "json"


def fmt17(x):
    return f"{float(x):.17g}"


def parse_complex(text):
    """Accept '1+2j', '2', or 're,im'."""
    text = text.strip()
    try:
        return complex(text.replace("i", "j"))
    except ValueError:
        pass
    parts = text.split(",")
    if len(parts) == 2:
        try:
            return complex(float(parts[0]), float(parts[1]))
        except ValueError:
            pass
    raise ParseError(f"cannot parse complex number from {text!r}")


def parse_coeff_list(text):
    """Semicolon-separated list of complex coefficients, low to high."""
    return [parse_complex(part) for part in text.split(";") if part.strip()]


def _load_curve(path):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            data = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}") from exc
    return curve_from_json(data)


def _config_from(args):
    cfg = RunConfig()
    try:
        env_tol = os.environ.get("SCHWARZ_TOL")
        if env_tol is not None:
            cfg.tolerance = float(env_tol)
        env_n = os.environ.get("SCHWARZ_N")
        if env_n is not None:
            cfg.n = int(env_n)
    except ValueError as exc:
        raise ParseError(f"bad environment configuration: {exc}") from exc
    if getattr(args, "tol", None) is not None:
        cfg.tolerance = args.tol
    if getattr(args, "n", None) is not None:
        cfg.n = args.n
    if getattr(args, "format", None):
        cfg.fmt = args.format
    if not cfg.tolerance > 0.0:
        raise ParseError(f"tolerance must be positive, got {cfg.tolerance}")
    return cfg


def _grid_for(curve, cfg, functional=None):
    if cfg.n is not None:
        return sample(curve, cfg.n)
    if functional is None:
        return sample(curve, 512)
    return adaptive_refine(curve, functional, cfg.tolerance,
                           n_start=cfg.n_start, n_max=cfg.n_max)


def _emit(payload, cfg):
    if cfg.fmt == "json":
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        _emit_csv(payload)


def _flatten(prefix, value, rows):
    if isinstance(value, dict):
        for key, sub in sorted(value.items()):
            _flatten(f"{prefix}{key}.", sub, rows)
    elif isinstance(value, (list, tuple)):
        rows.append((prefix.rstrip("."),
                     ";".join(fmt17(v) if isinstance(v, float) else str(v)
                              for v in value)))
    elif isinstance(value, float):
        rows.append((prefix.rstrip("."), fmt17(value)))
    else:
        rows.append((prefix.rstrip("."), str(value)))


def _emit_csv(payload):
    rows = []
    _flatten("", payload, rows)
    for key, val in rows:
        print(f"{key},{val}")


def cmd_validate(args):
    cfg = _config_from(args)
    curve = _load_curve(args.curve_file)
    if isinstance(curve, ConformalMapCurve):
        grid = sample(curve, cfg.n or 512)
        area_over_pi = complex(
            (grid.weight / (2j * np.pi)) * np.sum(np.conjugate(grid.z) * grid.dz))
        payload = {
            "valid": True,
            "kind": "conformal",
            "degree": curve.degree,
            "annulus": [curve.rho, 1.0 / curve.rho],
            "area_over_pi": area_over_pi.real,
        }
    else:
        payload = {
            "valid": True,
            "kind": "polygon",
            "n_vertices": curve.n_vertices,
            "area_over_pi": curve.signed_area() / np.pi,
        }
    _emit(payload, cfg)
    return EXIT_OK


def cmd_transform(args):
    cfg = _config_from(args)
    curve = _load_curve(args.curve_file)
    z = parse_complex(args.z)
    if args.w is None:
        grid = _grid_for(curve, cfg,
                         functional=lambda g: transforms.cauchy_transform(g, z))
        value = transforms.cauchy_transform(grid, z)
        side = locate(grid, z).value
        payload = {"z": [z.real, z.imag], "side": side,
                   "cauchy_transform": [value.real, value.imag],
                   "n": grid.n}
        _emit(payload, cfg)
        return EXIT_OK
    w = parse_complex(args.w)
    grid = _grid_for(curve, cfg,
                     functional=lambda g: transforms.double_cauchy(g, z, w).C)
    tv = transforms.double_cauchy(grid, z, w)
    piece_name = {("ext", "ext"): "F", ("int", "ext"): "G",
                  ("ext", "int"): "G*", ("int", "int"): "H"}
    tag = tuple(s.value[:3] for s in tv.quadrant)
    name = piece_name[tag]
    piece = {"F": transforms.piece_f, "G": transforms.piece_g,
             "G*": transforms.piece_gstar, "H": transforms.piece_h}[name](grid, z, w)
    payload = {
        "z": [z.real, z.imag], "w": [w.real, w.imag],
        "quadrant": f"{tag[0]}:{tag[1]}",
        "C": [tv.C.real, tv.C.imag],
        "E": [tv.E.real, tv.E.imag],
        "piece": {"name": name, "value": [piece.real, piece.imag]},
        "n": grid.n,
    }
    _emit(payload, cfg)
    return EXIT_OK


def cmd_moments(args):
    cfg = _config_from(args)
    curve = _load_curve(args.curve_file)
    k_min, k_max = args.kmin, args.kmax

    def functional(g):
        table = transforms.harmonic_moments(g, k_min, k_max)
        return sum(m / (1.0 + abs(k)) for k, m in table.items())

    grid = _grid_for(curve, cfg, functional=functional)
    table = transforms.harmonic_moments(grid, k_min, k_max)
    if cfg.fmt == "csv":
        print("k,re_M,im_M")
        for k, m in table.items():
            print(f"{k},{fmt17(m.real)},{fmt17(m.imag)}")
    else:
        payload = {"n": grid.n,
                   "moments": [{"k": k, "value": [m.real, m.imag]}
                               for k, m in table.items()]}
        print(json.dumps(payload, indent=2, sort_keys=True))
    return EXIT_OK


def _build_bundle(curve, args):
    kind = args.bundle
    if kind == "exp-schwarz":
        return bundles.exp_schwarz_bundle(curve)
    if kind == "schwarz-pole":
        if args.pole is None:
            raise ParseError("schwarz-pole needs --pole")
        return bundles.schwarz_pole_bundle(curve, parse_complex(args.pole))
    if kind == "tangent-power":
        if args.power is None:
            raise ParseError("tangent-power needs --power")
        return bundles.tangent_power_bundle(curve, args.power)
    raise ParseError(f"unknown bundle kind {kind!r}")


def cmd_section(args):
    cfg = _config_from(args)
    curve = _load_curve(args.curve_file)
    if not isinstance(curve, ConformalMapCurve):
        raise NotConformalMapCurveError("bundle sections need a conformal-map curve")
    grid = sample(curve, cfg.n or 512)
    bundle = _build_bundle(curve, args)
    chern = bundles.chern_class(bundle, grid)
    payload = {"bundle": args.bundle, "chern": chern, "n": grid.n}
    section = None
    if chern >= 0:
        adjust = parse_complex(args.adjust) if args.adjust else None
        section = bundles.canonical_section(bundle, grid, a=adjust)
        payload["normalization"] = section.normalization
        if args.verify:
            pts = bundles.annulus_verification_points(grid, 32)
            payload["transition_residual"] = bundles.verify_transition(
                section, bundle, pts)
    else:
        payload["normalization"] = None
        payload["note"] = "negative Chern class; no holomorphic sections"
        if args.verify:
            payload["transition_residual"] = None
    _emit(payload, cfg)
    if args.dump and section is not None:
        with open(args.dump, "w", encoding="utf-8") as fh:
            json.dump(bundles.section_to_json(section), fh, indent=1)
    return EXIT_OK


def cmd_quadrature(args):
    cfg = _config_from(args)
    curve = _load_curve(args.curve_file)
    f_coeffs = parse_coeff_list(args.f) if args.f else [1.0 + 0j]
    tol = getattr(args, "tol", None)
    if tol is None:
        tol = 1e-9
    kind = args.kind
    weights = None
    if kind == "corner":
        if not isinstance(curve, PolygonCurve):
            print("corner quadrature requires a polygon", file=sys.stderr)
            return EXIT_GEOMETRY
        weights = quaddom.polygon_quadrature(curve)
        residue_value = quaddom.apply_polygon_quadrature(weights, f_coeffs)
        oracle_value = quaddom.area_mean_polygon(
            curve, quaddom.poly_derivative(f_coeffs, 2))
    else:
        grid = sample(curve, cfg.n or 512) if isinstance(curve, ConformalMapCurve) \
            else None
        if kind == "classical":
            residue_value = quaddom.classical_quadrature(curve, f_coeffs)
            oracle_value = quaddom.boundary_classical(grid, f_coeffs)
        elif kind == "abelian":
            residue_value = quaddom.abelian_quadrature(curve, f_coeffs)
            oracle_value = quaddom.boundary_abelian(grid, f_coeffs)
        elif kind == "arc-length":
            residue_value = quaddom.arclength_quadrature(curve, f_coeffs, grid)
            oracle_value = quaddom.boundary_arclength(grid, f_coeffs)
        else:
            raise ParseError(f"unknown quadrature kind {kind!r}")
    report = quaddom.quadrature_report(kind, residue_value, oracle_value, weights)
    _emit(report, cfg)
    return EXIT_OK if report["discrepancy"] < tol else EXIT_FAILURE


def cmd_rational_fit(args):
    cfg = _config_from(args)
    curve = _load_curve(args.curve_file)
    if not isinstance(curve, ConformalMapCurve):
        raise NotConformalMapCurveError("rational fit needs a conformal-map curve")
    grid = sample(curve, cfg.n or 512)
    samples = quaddom.default_exterior_samples(grid, args.samples)
    fit = quaddom.fit_rational_structure(grid, args.deg_q, args.deg_p, samples)
    payload = {
        "deg_q": args.deg_q,
        "deg_p": args.deg_p,
        "residual": fit.residual,
        "classification": fit.classification,
        "boundary_residual": quaddom.verify_algebraic_boundary(fit.q_coeffs, grid),
        "q": [[[c.real, c.imag] for c in row] for row in fit.q_coeffs],
        "p": [[c.real, c.imag] for c in fit.p_coeffs],
    }
    _emit(payload, cfg)
    return EXIT_OK


def _parse_grid_spec(text):
    try:
        xpart, ypart = text.split(",")
        x0, x1, nx = xpart.split(":")
        y0, y1, ny = ypart.split(":")
        return float(x0), float(x1), int(nx), float(y0), float(y1), int(ny)
    except ValueError as exc:
        raise ParseError(f"bad grid spec {text!r}; "
                         "expected xmin:xmax:nx,ymin:ymax:ny") from exc


def cmd_plotdata(args):
    cfg = _config_from(args)
    curve = _load_curve(args.curve_file)
    grid = sample(curve, cfg.n or 256)
    if args.quantity == "exp-transform-abs":
        if args.w is None:
            raise ParseError("exp-transform-abs needs --w")
        w = parse_complex(args.w)
        x0, x1, nx, y0, y1, ny = _parse_grid_spec(args.grid)
        print("x,y,abs_E")
        for y in np.linspace(y0, y1, ny):
            for x in np.linspace(x0, x1, nx):
                try:
                    tv = transforms.exponential_transform(grid, complex(x, y), w)
                    print(f"{fmt17(x)},{fmt17(y)},{fmt17(abs(tv.E))}")
                except (NearBoundaryError, CoincidentInteriorPointsError):
                    print(f"{fmt17(x)},{fmt17(y)},")
        return EXIT_OK
    if args.quantity == "moments":
        table = transforms.harmonic_moments(grid, args.kmin, args.kmax)
        print("k,re_M,im_M")
        for k, m in table.items():
            print(f"{k},{fmt17(m.real)},{fmt17(m.imag)}")
        return EXIT_OK
    if args.quantity == "section-density":
        bundle = _build_bundle(curve, args)
        section = bundles.canonical_section(
            bundle, grid, a=parse_complex(args.adjust) if args.adjust else None)
        print("t,re_density,im_density")
        for t, d in zip(section.grid.t, section.density):
            print(f"{fmt17(t)},{fmt17(d.real)},{fmt17(d.imag)}")
        return EXIT_OK
    raise ParseError(f"unknown quantity {args.quantity!r}")


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=argparse.SUPPRESS,
                        help="refinement tolerance (env SCHWARZ_TOL)")
    common.add_argument("--n", type=int, default=argparse.SUPPRESS,
                        help="pin the node count (env SCHWARZ_N)")
    common.add_argument("--format", choices=("json", "csv"),
                        default=argparse.SUPPRESS)
    parser = argparse.ArgumentParser(
        prog="schwarzbundles",
        parents=[common],
        description="Schwarz functions, Cauchy/exponential transforms, line "
                    "bundle sections, and quadrature-domain identities")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="validate a curve file", parents=[common])
    p.add_argument("curve_file")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("transform", help="Cauchy / exponential transform values", parents=[common])
    p.add_argument("curve_file")
    p.add_argument("--z", required=True)
    p.add_argument("--w", default=None)
    p.set_defaults(func=cmd_transform)

    p = sub.add_parser("moments", help="harmonic moment table", parents=[common])
    p.add_argument("curve_file")
    p.add_argument("--kmin", type=int, default=-3)
    p.add_argument("--kmax", type=int, default=3)
    p.set_defaults(func=cmd_moments)

    p = sub.add_parser("section", help="canonical bundle section", parents=[common])
    p.add_argument("curve_file")
    p.add_argument("--bundle", required=True,
                   choices=("exp-schwarz", "schwarz-pole", "tangent-power"))
    p.add_argument("--pole", default=None)
    p.add_argument("--power", type=int, default=None)
    p.add_argument("--adjust", default=None)
    p.add_argument("--verify", action="store_true")
    p.add_argument("--dump", default=None)
    p.set_defaults(func=cmd_section)

    p = sub.add_parser("quadrature", help="residue quadrature identities", parents=[common])
    p.add_argument("curve_file")
    p.add_argument("--kind", required=True,
                   choices=("classical", "abelian", "arc-length", "corner"))
    p.add_argument("--f", default=None,
                   help="polynomial coefficients, low to high, ';'-separated")
    p.set_defaults(func=cmd_quadrature)

    p = sub.add_parser("rational-fit", help="rational structure of F(z, w)", parents=[common])
    p.add_argument("curve_file")
    p.add_argument("--deg-q", type=int, required=True, dest="deg_q")
    p.add_argument("--deg-p", type=int, required=True, dest="deg_p")
    p.add_argument("--samples", type=int, default=12)
    p.set_defaults(func=cmd_rational_fit)

    p = sub.add_parser("plotdata", help="CSV samples for external plotting", parents=[common])
    p.add_argument("curve_file")
    p.add_argument("--quantity", required=True,
                   choices=("exp-transform-abs", "moments", "section-density"))
    p.add_argument("--grid", default="1.5:4:25,1.5:4:25")
    p.add_argument("--w", default=None)
    p.add_argument("--kmin", type=int, default=-3)
    p.add_argument("--kmax", type=int, default=3)
    p.add_argument("--bundle", default="exp-schwarz",
                   choices=("exp-schwarz", "schwarz-pole", "tangent-power"))
    p.add_argument("--pole", default=None)
    p.add_argument("--power", type=int, default=None)
    p.add_argument("--adjust", default=None)
    p.set_defaults(func=cmd_plotdata)

    return parser


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code not in (0, None) else EXIT_OK
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except NearBoundaryError as exc:
        print(f"near-boundary refusal: {exc}", file=sys.stderr)
        return EXIT_NEAR_BOUNDARY
    except BranchUnresolvedError as exc:
        print(f"branch unresolved: {exc}", file=sys.stderr)
        return EXIT_BRANCH
    except (NotConformalMapCurveError, TangentNotMeromorphicError) as exc:
        print(f"incompatible geometry: {exc}", file=sys.stderr)
        return EXIT_GEOMETRY
    except SchwarzBundleError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAILURE


def entrypoint():
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
