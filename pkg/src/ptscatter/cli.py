"""Command-line front end: sweep, verify, and scan subcommands.

Exit codes: 0 success, 1 verify found an applicable identity residual above
tolerance, 2 usage or potential-spec errors. Diagnostics go to stderr; tables
go to --out or stdout.
"""
from __future__ import annotations

import argparse
import os
import sys

import numpy as np

from . import io as tables
from .identities import identity_report
from .potentials import LayerPotential, PotentialError, parse_potential_spec
from .scan import find_spectral_singularities, find_unidirectional_points, sweep
from .transfer import BackendError, ConvergenceError

TOL_ENV_VAR = "PTSCATTER_TOL"
DEFAULT_VERIFY_TOL = 1e-8


def _default_tol() -> float:
    raw = os.environ.get(TOL_ENV_VAR)
    if raw:
        try:
            return float(raw)
        except ValueError:
            print(f"warning: ignoring non-numeric {TOL_ENV_VAR}={raw!r}", file=sys.stderr)
    return DEFAULT_VERIFY_TOL


def _parse_k_range(spec: str) -> np.ndarray:
    parts = spec.split(":")
    if len(parts) != 3:
        raise argparse.ArgumentTypeError("--k-range must be MIN:MAX:COUNT")
    try:
        lo, hi, count = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad --k-range: {exc}") from exc
    if not (0 < lo < hi) or count < 2:
        raise argparse.ArgumentTypeError("--k-range needs 0 < MIN < MAX and COUNT >= 2")
    return np.linspace(lo, hi, count)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptscatter",
        description="Transfer-matrix scattering engine for 1D complex potentials.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(sp, needs_range: bool):
        sp.add_argument("--potential", required=True, metavar="FILE",
                        help="potential spec file (JSON; see format reference)")
        if needs_range:
            sp.add_argument("--k-range", required=True, type=_parse_k_range,
                            metavar="MIN:MAX:COUNT")
        else:
            group = sp.add_mutually_exclusive_group(required=True)
            group.add_argument("--k", type=float, metavar="V", help="single wavenumber")
            group.add_argument("--k-range", type=_parse_k_range, metavar="MIN:MAX:COUNT")
        sp.add_argument("--backend", choices=("auto", "stack", "ode", "both"),
                        default="auto")
        sp.add_argument("--tol", type=float, default=None,
                        help=f"tolerance (default {DEFAULT_VERIFY_TOL}, or ${TOL_ENV_VAR})")
        sp.add_argument("--ode-tol", type=float, default=1e-10,
                        help="local error tolerance of the ODE backend")
        sp.add_argument("--format", choices=("csv", "json"), default="csv")
        sp.add_argument("--out", metavar="PATH", default=None,
                        help="output file (default: stdout)")

    sp = sub.add_parser("sweep", help="tabulate scattering data over a k grid")
    common(sp, needs_range=True)

    sp = sub.add_parser("verify", help="evaluate the identity catalog; exit 1 on failure")
    common(sp, needs_range=False)
    sp.add_argument("--long", action="store_true",
                    help="CSV output as one row per (k, identity) instead of wide columns")

    sp = sub.add_parser("scan", help="locate singular/reflectionless/invisible points")
    common(sp, needs_range=True)

    return parser


def _load_potential(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return parse_potential_spec(fh.read())
    except OSError as exc:
        raise PotentialError(f"cannot read potential file {path!r}: {exc}") from exc


def _write(text: str, out_path):
    if out_path is None:
        sys.stdout.write(text)
    else:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _cmd_sweep(args) -> int:
    p = _load_potential(args.potential)
    if args.backend == "both":
        backends = ["stack", "ode"] if isinstance(p, LayerPotential) else ["ode"]
    else:
        backends = [args.backend]
    rows, errors = [], []
    for backend in backends:
        res = sweep(p, args.k_range, backend=backend, tol=args.ode_tol)
        rows.extend(res.rows)
        errors.extend(res.errors)
    rows.sort(key=lambda s: (s.k, s.backend))
    from .scan import SweepResult

    merged = SweepResult(tuple(rows), tuple(errors))
    for k, msg in errors:
        print(f"warning: k={k}: {msg}", file=sys.stderr)
    text = tables.sweep_to_csv(merged) if args.format == "csv" else tables.sweep_to_json(merged)
    _write(text, args.out)
    return 0


def _verify_backends(p, requested: str) -> tuple[str, str]:
    """Backends for the +k and -k runs. 'both' crosses stack with ode."""
    if requested == "both":
        plus = "stack" if isinstance(p, LayerPotential) else "ode"
        return plus, "ode"
    return requested, requested


def _cmd_verify(args) -> int:
    p = _load_potential(args.potential)
    tol = args.tol if args.tol is not None else _default_tol()
    ks = args.k_range if args.k_range is not None else np.array([args.k])
    if np.any(ks <= 0):
        raise ValueError("verify requires k > 0")
    backend_k, backend_negk = _verify_backends(p, args.backend)
    reports = [
        identity_report(p, float(k), tol_ode=args.ode_tol,
                        backend=backend_k, backend_negk=backend_negk)
        for k in ks
    ]
    if args.format == "json":
        text = tables.reports_to_json(reports)
    elif getattr(args, "long", False):
        text = tables.reports_to_long_csv(reports)
    else:
        text = tables.reports_to_csv(reports)
    _write(text, args.out)
    worst = max(r.max_applicable_residual() for r in reports)
    failing = sorted({
        e.identity for r in reports for e in r.entries
        if e.applicable and e.residual is not None and e.residual > tol
    })
    if failing:
        print(f"verify: FAIL (max applicable residual {worst:.3e} > tol {tol:.1e}); "
              f"failing: {', '.join(failing)}", file=sys.stderr)
        return 1
    print(f"verify: ok (max applicable residual {worst:.3e} <= tol {tol:.1e})",
          file=sys.stderr)
    return 0


def _cmd_scan(args) -> int:
    p = _load_potential(args.potential)
    ks = args.k_range
    k_min, k_max = float(ks[0]), float(ks[-1])
    grid_step = float(ks[1] - ks[0])
    refine_tol = args.tol if args.tol is not None else 1e-10
    backend = "auto" if args.backend == "both" else args.backend
    res_ss = find_spectral_singularities(p, k_min, k_max, grid_step, tol=refine_tol,
                                         backend=backend, ode_tol=args.ode_tol)
    res_ur = find_unidirectional_points(p, k_min, k_max, grid_step, tol=refine_tol,
                                        backend=backend, ode_tol=args.ode_tol)
    from .scan import ScanResult

    merged = ScanResult(
        tuple(sorted(res_ss.features + res_ur.features, key=lambda f: f.k_star)),
        k_min, k_max, grid_step,
    )
    if args.backend == "both":
        merged = _cross_check_features(p, merged, args.ode_tol)
    text = tables.scan_to_csv(merged) if args.format == "csv" else tables.scan_to_json(merged)
    _write(text, args.out)
    return 0


def _cross_check_features(p, res, ode_tol):
    """Annotate each feature with the ODE backend's value of the objective.

    Only meaningful for layer potentials (where the primary run used the
    stack backend); other kinds are returned unchanged.
    """
    from dataclasses import replace

    from .transfer import compute_transfer, scattering_data

    if not isinstance(p, LayerPotential):
        return res
    out = []
    for f in res.features:
        other = "ode"
        m = compute_transfer(p, f.k_star, other, ode_tol)
        if f.kind == "spectral_singularity":
            val = abs(m.m22)
        elif "left" in f.kind:
            val = abs(scattering_data(m).R_left)
        elif "right" in f.kind:
            val = abs(scattering_data(m).R_right)
        else:
            s = scattering_data(m)
            val = max(abs(s.R_left), abs(s.R_right))
        note = (f.note + "; " if f.note else "") + f"cross-backend({other}) residual = {val:.3e}"
        out.append(replace(f, note=note))
    return replace(res, features=tuple(out))


def run_command(argv) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        if args.command == "sweep":
            return _cmd_sweep(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "scan":
            return _cmd_scan(args)
        parser.error(f"unknown command {args.command!r}")
    except (PotentialError, BackendError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConvergenceError as exc:
        print(f"error: integration did not converge: {exc}", file=sys.stderr)
        return 2
    return 0


def main() -> None:
    sys.exit(run_command(sys.argv[1:]))


if __name__ == "__main__":
    main()
