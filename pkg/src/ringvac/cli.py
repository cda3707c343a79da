"""Command-line interface.

Five subcommands: ``spectrum``, ``energy``, ``sweep``, ``verify`` and
``transform``.  Every numeric output line states its unit and an error
estimate.  Exit codes: 0 success, 2 domain error (including bad flags),
3 numerical failure, 4 model-violation flag.

Output is deterministic: identical flags and tolerances produce
byte-identical output, so nothing here prints timestamps or hostnames.
The environment variable ``RINGVAC_TOL`` overrides the default tolerance
(1e-8 for single evaluations, 1e-6 for sweeps); an explicit ``--tol`` beats
both, and the provenance header on the output says which source won.
"""

from __future__ import annotations

import argparse
import math
import os
import sys

from . import __version__ as _version
from .energy import corotating_total_energy
from .errors import DomainError, ModelViolationError, NumericalError
from .params import ModelPoint
from .rotation import ell_zp_quadrature, ground_state_report, omega_of_ell
from .spectrum import (
    _secular_slope,
    inner_products,
    mode_frequencies,
    mode_residuals,
    secular_value,
    spectrum_modes,
)
from .sweep import build_sweep, to_json, write_csv
from .verify import run_checks

__all__ = ["main"]

_ENV_TOL = "RINGVAC_TOL"


def _fmt(x: float) -> str:
    return f"{x:.12e}"


def _parse_lambda(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise DomainError(f"cannot parse coupling {text!r}") from None
    if math.isnan(value) or value < 0.0:
        raise DomainError(f"need lambda >= 0, got {text!r}")
    return value


def _parse_grid(text: str) -> list[float]:
    """Either 'lo:hi:count' (uniform grid) or a comma-separated list."""
    if ":" in text:
        parts = text.split(":")
        if len(parts) != 3:
            raise DomainError(f"grid spec {text!r} must be lo:hi:count or a comma list")
        try:
            lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
        except ValueError:
            raise DomainError(f"cannot parse grid spec {text!r}") from None
        if count < 1:
            raise DomainError(f"grid count must be >= 1, got {count}")
        if count == 1:
            return [lo]
        step = (hi - lo) / (count - 1)
        return [lo + i * step for i in range(count)]
    try:
        return [float(v) for v in text.split(",") if v.strip()]
    except ValueError:
        raise DomainError(f"cannot parse list {text!r}") from None


def _resolve_tol(flag_value, default: float) -> tuple[float, str]:
    if flag_value is not None:
        tol, source = float(flag_value), "flag"
    elif _ENV_TOL in os.environ:
        try:
            tol, source = float(os.environ[_ENV_TOL]), _ENV_TOL
        except ValueError:
            raise DomainError(
                f"cannot parse {_ENV_TOL}={os.environ[_ENV_TOL]!r} as a tolerance"
            ) from None
    else:
        tol, source = default, "default"
    if not (tol > 0.0 and math.isfinite(tol)):
        raise DomainError(f"tolerance must be positive and finite, got {tol!r}")
    return tol, source


def _root_uncertainty(alpha: float, point: ModelPoint) -> float:
    """Newton-step estimate of the root's numerical uncertainty."""
    if point.dirichlet:
        return 0.0
    g = abs(secular_value(alpha, point))
    slope = abs(_secular_slope(alpha, point))
    floor = 4.0 * sys.float_info.epsilon * (1.0 + alpha)
    if slope > 0.0:
        est = g / slope
        if math.isfinite(est) and est < 1e-3:
            return max(est, floor)
    # tangency (double root): refined through the slope's own zero
    return max(1e-9 * (1.0 + alpha), floor)


def cmd_spectrum(args) -> int:
    tol, tol_source = _resolve_tol(args.tol, 1e-8)
    point = ModelPoint(beta=args.beta, lambda_hat=args.lambda_hat)
    spec = mode_frequencies(point, alpha_max=args.alpha_max)
    print(f"# ringvac spectrum v{_version}")
    print(f"# point: beta={args.beta:.12g} lambda_hat={args.lambda_hat:.12g} "
          f"alpha_max={args.alpha_max:.12g} tol={tol:.6e} ({tol_source})")
    for i, alpha in enumerate(spec.alphas, start=1):
        err = _root_uncertainty(alpha, point)
        tag = " degenerate-pair" if spec.degenerate[i - 1] else ""
        print(f"alpha_{i:02d} = {_fmt(alpha)} +- {err:.1e} (omega R / c){tag}")
    if not spec.alphas:
        print("# no modes below alpha_max")
    if args.check:
        worst = 0.0
        modes = spectrum_modes(spec)
        for i, mode in enumerate(modes):
            r = mode_residuals(mode)
            cross = 0.0
            for j in range(i):
                first, second = inner_products(modes[j], mode)
                cross = max(cross, abs(first), abs(second))
            norm_defect = abs(inner_products(mode, mode)[0] - 1.0)
            worst = max(worst, r.ode_max, r.periodicity_defect, r.jump_defect,
                        norm_defect, cross)
            print(f"check alpha_{i + 1:02d}: ode={r.ode_max:.1e} "
                  f"periodicity={r.periodicity_defect:.1e} jump={r.jump_defect:.1e} "
                  f"norm_defect={norm_defect:.1e} max_cross={cross:.1e}")
        if worst > 1e-6:
            print(f"check failed: worst defect {worst:.3e} > 1e-06", file=sys.stderr)
            return 3
        print(f"check passed: worst defect {worst:.3e} <= 1e-06")
    return 0


def _print_energy_block(point: ModelPoint, inertia_hat: float, tol: float) -> None:
    res = corotating_total_energy(point, inertia_hat, tol)
    print(f"field_energy = {_fmt(res.field_energy)} +- {res.quadrature_error:.1e} (hbar c / R)")
    print(f"classical_term = {_fmt(res.classical_term)} +- 0.0e+00 (hbar c / R)")
    print(f"total_corotating = {_fmt(res.total)} +- {res.quadrature_error:.1e} (hbar c / R)")


def cmd_energy(args) -> int:
    tol, tol_source = _resolve_tol(args.tol, 1e-8)
    point = ModelPoint(beta=args.beta, lambda_hat=args.lambda_hat)
    print(f"# ringvac energy v{_version}")
    print(f"# point: beta={args.beta:.12g} lambda_hat={args.lambda_hat:.12g} "
          f"inertia_hat={args.inertia:.12g} frame={args.frame} tol={tol:.6e} ({tol_source})")
    _print_energy_block(point, args.inertia, tol)
    if args.frame == "stationary":
        res = corotating_total_energy(point, args.inertia, tol)
        lzp = ell_zp_quadrature(point, tol)
        ell_total = args.inertia * point.beta + lzp.value
        es = res.total + ell_total * point.beta
        es_err = res.quadrature_error + abs(point.beta) * lzp.error_estimate
        print(f"ell_zp = {_fmt(lzp.value)} +- {lzp.error_estimate:.1e} (hbar)")
        print(f"ell_total = {_fmt(ell_total)} +- {lzp.error_estimate:.1e} (hbar)")
        print(f"stationary_energy = {_fmt(es)} +- {es_err:.1e} (hbar c / R)")
    return 0


def cmd_sweep(args) -> int:
    tol, tol_source = _resolve_tol(args.tol, 1e-6)
    beta_grid = _parse_grid(args.beta_grid) if args.beta_grid else None
    lambda_list = [_parse_lambda(v) for v in args.lambda_list.split(",")] if args.lambda_list else None
    table = build_sweep(
        quantity=args.quantity,
        beta_grid=beta_grid,
        lambda_list=lambda_list,
        tol=tol,
        tolerance_source=tol_source,
        jobs=args.jobs,
    )
    text = to_json(table) if args.format == "json" else None
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            if text is None:
                write_csv(table, fh)
            else:
                fh.write(text)
    else:
        if text is None:
            write_csv(table, sys.stdout)
        else:
            sys.stdout.write(text)
    if args.plot:
        from .plotting import save_sweep_figure

        save_sweep_figure(table, args.plot)
    return 0


def cmd_verify(args) -> int:
    results = run_checks(args.level)
    failures = 0
    for r in results:
        mark = "PASS" if r.passed else "FAIL"
        failures += 0 if r.passed else 1
        print(f"[{mark}] {r.name}: measured={r.measured:.3e} required<={r.required:.1e}"
              + (f"  ({r.detail})" if r.detail else ""))
    print(f"verify: {len(results) - failures}/{len(results)} checks passed (level {args.level})")
    return 0 if failures == 0 else 3


def cmd_transform(args) -> int:
    tol, tol_source = _resolve_tol(args.tol, 1e-8)
    beta = omega_of_ell(args.ell, lambda_hat=args.lambda_hat, inertia_hat=args.inertia, tol=tol)
    print(f"# ringvac transform v{_version}")
    print(f"# target: ell_total={args.ell:.12g} lambda_hat={args.lambda_hat:.12g} "
          f"inertia_hat={args.inertia:.12g} tol={tol:.6e} ({tol_source})")
    print(f"beta = {_fmt(beta)} +- {max(1e-12, 0.1 * tol):.1e} (Omega R / c)")
    point = ModelPoint(beta=beta, lambda_hat=args.lambda_hat)
    _print_energy_block(point, args.inertia, tol)
    lzp = ell_zp_quadrature(point, tol)
    res = corotating_total_energy(point, args.inertia, tol)
    ell_total = args.inertia * beta + lzp.value
    es = res.total + ell_total * beta
    print(f"ell_zp = {_fmt(lzp.value)} +- {lzp.error_estimate:.1e} (hbar)")
    print(f"ell_total = {_fmt(ell_total)} +- {lzp.error_estimate:.1e} (hbar)")
    print(f"stationary_energy = {_fmt(es)} +- "
          f"{res.quadrature_error + abs(beta) * lzp.error_estimate:.1e} (hbar c / R)")
    report = ground_state_report(
        args.lambda_hat, args.inertia,
        beta_grid=[-0.9 + 0.15 * i for i in range(13)], tol=1e-6,
    )
    print(f"ground_state_min_inertia_total = {_fmt(report.min_inertia_total)} "
          f"+- 1.0e-06 (hbar R / c)")
    nonrotating = report.positive_inertia and report.ell_zero_only_at_origin
    print(f"ground_state_nonrotating = {'yes' if nonrotating else 'no'}")
    print(f"quantum_ratio_lower_bound = {_fmt(report.quantum_ratio_lower_bound)} "
          f"+- 1.0e-10 (dimensionless)")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ringvac",
        description="Vacuum energy and angular momentum of a scalar field on a rotating ring.",
    )
    parser.add_argument("--version", action="version", version=f"ringvac {_version}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("spectrum", help="mode frequencies of the co-rotating field")
    p.add_argument("--beta", type=float, required=True, help="rim speed Omega R / c")
    p.add_argument("--lambda", dest="lambda_hat", type=_parse_lambda, required=True,
                   help="coupling lambda R^2/c^2; 'inf' for the impenetrable limit")
    p.add_argument("--alpha-max", type=float, default=3.0, help="upper end of the search window")
    p.add_argument("--check", action="store_true",
                   help="verify mode residuals and inner products")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("energy", help="vacuum energy at one model point")
    p.add_argument("--beta", type=float, required=True)
    p.add_argument("--lambda", dest="lambda_hat", type=_parse_lambda, required=True)
    p.add_argument("--inertia", type=float, default=0.0, help="classical inertia I c/(hbar R)")
    p.add_argument("--frame", choices=("corotating", "stationary"), default="corotating")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_energy)

    p = sub.add_parser("sweep", help="tabulate a quantity over a (beta, lambda) grid")
    p.add_argument("--quantity", choices=("izp", "ellzp", "energy"), default="izp")
    p.add_argument("--beta-grid", default=None,
                   help="'lo:hi:count' or comma list; default 0:0.95:20")
    p.add_argument("--lambda-list", default=None,
                   help="comma list, 'inf' allowed; default 0.5,2,10,100,1e6")
    p.add_argument("--out", default=None, help="output file; stdout when omitted")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--jobs", type=int, default=1, help="worker threads for grid points")
    p.add_argument("--plot", default=None, metavar="PNG",
                   help="also render the table as a figure")
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("verify", help="run the self-verification suite")
    p.add_argument("--level", choices=("fast", "full"), default="fast")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("transform", help="rotation rate for a prescribed angular momentum")
    p.add_argument("--ell", type=float, required=True, help="total angular momentum (hbar)")
    p.add_argument("--lambda", dest="lambda_hat", type=_parse_lambda, required=True)
    p.add_argument("--inertia", type=float, required=True)
    p.add_argument("--tol", type=float, default=None)
    p.set_defaults(func=cmd_transform)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NumericalError as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3
    except ModelViolationError as exc:
        print(f"model violation: {exc}", file=sys.stderr)
        return 4


if __name__ == "__main__":
    sys.exit(main())
