"""Command-line entry point: ``ufourier {validate,coeffs,norms,certify,sweep,fit}``.

Exit status is 0 iff every asserted inequality holds.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

import numpy as np

from . import experiments as ex
from .certificates import certify
from .closed_form import Triangle, phase_coefficients
from .phase import PhaseError, canonical_case, normalize_at_corner
from .spectral import NormReport, u_norm


def _config(args) -> ex.SweepConfig:
    if args.config is None:
        return ex.sawtooth_config()
    return ex.SweepConfig.load(args.config)


def cmd_validate(args) -> int:
    cfg = _config(args)
    phi = cfg.phase
    print(f"pieces: {phi.n_pieces}  degree: {phi.degree}")
    print("slopes: " + ", ".join(repr(s) for s in phi.slopes))
    for j in phi.corners():
        _, c = normalize_at_corner(phi, j)
        canon = canonical_case(c.left_slope, c.right_slope)
        print(f"corner {j} at t={phi.breakpoints[j]!r}: alpha={c.left_slope!r} beta={c.right_slope!r} "
              f"max eps={c.half_width!r} case={canon.case} ops={'+'.join(canon.ops) or 'none'}")
    return 0


def cmd_coeffs(args) -> int:
    cfg = _config(args)
    window = None
    if args.window:
        corner = cfg.corner_data()
        phi, _ = normalize_at_corner(cfg.phase, cfg.corner_index(), corner.half_width)
        window = Triangle(corner.half_width)
    else:
        phi = cfg.phase
    K = args.K if args.K is not None else cfg.n_max(args.n)
    vec = phase_coefficients(phi, args.n, K, window)
    lines = ["k,re,im"] + [f"{k},{float(c.real)!r},{float(c.imag)!r}" for k, c in zip(vec.ks, vec.coeffs)]
    text = "\n".join(lines) + "\n"
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / f"coeffs_n{args.n}.csv").write_text(text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_norms(args) -> int:
    cfg = _config(args)
    ns = [args.n] if args.n is not None else cfg.n_values
    print(",".join(NormReport.CSV_HEADER))
    ok = True
    for n in ns:
        N_max = cfg.n_max(n)
        rep = u_norm(phase_coefficients(cfg.phase, n, N_max), N_max, cfg.oversample)
        print(",".join(rep.csv_row(n)))
        ok &= rep.u_norm.lo <= rep.u_norm.hi
    return 0 if ok else 1


def cmd_certify(args) -> int:
    cfg = _config(args)
    corner = cfg.corner_data()
    ns = [args.n] if args.n is not None else cfg.cert_n_values
    reps = [certify(corner, n) for n in sorted(ns)]
    text = ex.certificates_csv(reps)
    if args.out_dir:
        out = Path(args.out_dir)
        out.mkdir(parents=True, exist_ok=True)
        (out / "certificates.csv").write_text(text)
    sys.stdout.write(text)
    return 0 if all(r.passed for r in reps) else 1


def cmd_sweep(args) -> int:
    cfg = _config(args)
    rows, fits, certs, failures = ex.experiment(cfg, args.out_dir, threads=args.threads,
                                                with_certificates=not args.no_certificates)
    sys.stdout.write(ex.summary_text(rows, fits, certs, failures))
    return 0 if not failures else 1


def cmd_fit(args) -> int:
    path = Path(args.out_dir) / "sweep.csv" if args.input is None else Path(args.input)
    rows = ex.read_sweep_csv(path)
    for column in args.column:
        fit = ex.fit_log_growth(rows, column)
        print(f"{column}: slope={fit.slope!r} intercept={fit.intercept!r} r2={fit.r2!r} "
              f"ratio_min={fit.ratio_min!r} ratio_max={fit.ratio_max!r}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="experiment JSON (default: the sawtooth |t| with default settings)")
    common.add_argument("--out-dir", help="directory for CSV output")
    common.add_argument("--threads", type=int, default=1, help="worker threads over n")
    common.add_argument("--seed", type=int, default=0,
                        help="accepted for reproducible randomized checks; sweep results never depend on it")

    p = argparse.ArgumentParser(prog="ufourier", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    sub.add_parser("validate", parents=[common], help="check a phase and list its corners")
    c = sub.add_parser("coeffs", parents=[common], help="dump Fourier coefficients of e^{in phi}")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--K", type=int, help="half-degree (default: n*max|slope| + slack)")
    c.add_argument("--window", action="store_true", help="multiply by the triangle window at the corner")
    c = sub.add_parser("norms", parents=[common], help="U/A/star norms of e^{in phi}")
    c.add_argument("--n", type=int)
    c = sub.add_parser("certify", parents=[common], help="corner lower-bound certificates")
    c.add_argument("--n", type=int)
    c = sub.add_parser("sweep", parents=[common], help="full n-sweep with fits and certificates")
    c.add_argument("--no-certificates", action="store_true", help="skip the extended certificate n-set")
    c = sub.add_parser("fit", parents=[common], help="log-growth fit of a sweep.csv")
    c.add_argument("--input", help="sweep CSV (default: OUT_DIR/sweep.csv)")
    c.add_argument("--column", action="append", default=None)
    return p


COMMANDS = {"validate": cmd_validate, "coeffs": cmd_coeffs, "norms": cmd_norms,
            "certify": cmd_certify, "sweep": cmd_sweep, "fit": cmd_fit}


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "fit":
        if args.column is None:
            args.column = ["u_lo", "a_norm"]
        if args.input is None and args.out_dir is None:
            print("fit needs --input or --out-dir", file=sys.stderr)
            return 2
    np.random.seed(args.seed)
    try:
        return COMMANDS[args.command](args)
    except (ex.ConfigError, PhaseError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
