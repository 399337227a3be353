"""Command-line front end: `ring-thermo sweep` and `ring-thermo compare`.

Exit codes: 0 success, 1 numerical failure in at least one grid point,
2 invalid specification or arguments.
"""

from __future__ import annotations

import argparse
import sys

from .sweep import (
    SchemaMismatch,
    SpecError,
    compare_datasets,
    emit_csv,
    parse_config,
    run_sweep,
    spec_from_options,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ring-thermo",
        description="Quantum-ring thermodynamics sweeps with Lorentz-violating spectra.")
    sub = parser.add_subparsers(dest="command", required=True)

    sweep = sub.add_parser("sweep", help="run a (T, strength, r0) grid and emit CSV")
    sweep.add_argument("--config", help="flat key=value spec file; flags override it")
    sweep.add_argument("--ensemble", choices=["canonical", "grand"])
    sweep.add_argument("--variant", choices=["anisotropic", "isotropic"])
    sweep.add_argument("--strengths", help="comma-separated coupling strengths")
    sweep.add_argument("--t-min", dest="t_min", type=float)
    sweep.add_argument("--t-max", dest="t_max", type=float)
    sweep.add_argument("--t-points", dest="t_points", type=int)
    sweep.add_argument("--r0-sweep", dest="r0_sweep", metavar="MIN,MAX,POINTS",
                       help="radius sweep at fixed temperature, in reference-radius units")
    sweep.add_argument("--fixed-T", dest="fixed_t", type=float)
    sweep.add_argument("--mu", type=float)
    sweep.add_argument("--omega", type=float, help="dimensionless mode energy scale, eV")
    sweep.add_argument("--mass", dest="mass_ev", type=float, help="electron mass, eV (physical mode)")
    sweep.add_argument("--radius-nm", dest="radius_nm", type=float, help="ring radius, nm (physical mode)")
    sweep.add_argument("--mass-radius", dest="mass_radius", type=float,
                       help="m*r0 product for the spin-current prefactor (dimensionless mode)")
    sweep.add_argument("--backend", choices=["direct", "em", "euler-maclaurin"])
    sweep.add_argument("--quantities", help="comma-separated subset of f,u,s,c,n,j")
    sweep.add_argument("--out", dest="output_path")

    compare = sub.add_parser("compare", help="column-wise deviation report for two datasets")
    compare.add_argument("a")
    compare.add_argument("b")
    compare.add_argument("--rtol", type=float, default=1e-9)
    compare.add_argument("--atol", type=float, default=0.0)
    return parser


def _sweep_command(args) -> int:
    options = {}
    if args.config:
        options.update(parse_config(args.config))
    overrides = {
        "ensemble": args.ensemble,
        "variant": args.variant,
        "strengths": args.strengths,
        "t_min": args.t_min,
        "t_max": args.t_max,
        "t_points": args.t_points,
        "fixed_t": args.fixed_t,
        "mu": args.mu,
        "omega": args.omega,
        "mass_ev": args.mass_ev,
        "radius_nm": args.radius_nm,
        "mass_radius": args.mass_radius,
        "backend": args.backend,
        "quantities": args.quantities,
        "output_path": args.output_path,
    }
    if args.r0_sweep:
        parts = args.r0_sweep.split(",")
        if len(parts) != 3:
            raise SpecError("--r0-sweep expects MIN,MAX,POINTS")
        overrides["r0_min"], overrides["r0_max"], overrides["r0_points"] = parts
    options.update({k: v for k, v in overrides.items() if v is not None})

    if args.mass_ev is not None or args.radius_nm is not None:
        options.setdefault("unit_mode", "physical")

    spec = spec_from_options(options)
    result = run_sweep(spec)
    path = emit_csv(result, spec.output_path)
    n_failed = sum(1 for row in result.rows if row.error is not None)
    print(f"wrote {len(result.rows)} rows to {path}" +
          (f" ({n_failed} flagged)" if n_failed else ""))
    return 1 if result.failed else 0


def _compare_command(args) -> int:
    report = compare_datasets(args.a, args.b, rtol=args.rtol, atol=args.atol)
    print(report.summary())
    return 0 if report.passed else 1


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "sweep":
            return _sweep_command(args)
        return _compare_command(args)
    except (SpecError, SchemaMismatch) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
