"""Command-line interface.

Exit codes: 0 when the checked property holds, 1 when the analysis completed
and the property fails, 2 for input or usage errors.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionError, NumericalError, PairingError, PreconditionError, TheoremViolationError
from .io import MatrixFileError, format_float, parse_matrix_file, parse_vector_file, write_matrix_file
from .kh import KHParameters, kh_family
from .krein import SweepError, classify_eigenvalues, count_kinds, krein_product, strong_stability, sweep
from .linalg import Tolerance, evolve
from .metric import check_pseudo_with, check_pt, construct_metric, find_generalized_parity

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

log = logging.getLogger("ptkrein")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class RunConfig:
    tol: Tolerance
    seed: int
    out: Path | None


def _config(args):
    try:
        tol = Tolerance(rel=args.tol)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    return RunConfig(tol=tol, seed=args.seed, out=Path(args.out) if args.out else None)


def _fmt_c(z):
    z = complex(z)
    return f"{z.real:.12g}{z.imag:+.12g}j"


def cmd_check_pt(args, cfg, out):
    H = parse_matrix_file(args.hamiltonian)
    P = parse_matrix_file(args.parity)
    rep = check_pt(H, P, cfg.tol)
    print(f"parity_ok: {rep.parity_ok}", file=out)
    print(f"parity_residual: {rep.parity_residual:.3e}", file=out)
    print(f"commutation_residual: {rep.commutation_residual:.3e}", file=out)
    print(f"is_pt_symmetric: {rep.is_pt_symmetric}", file=out)
    return EXIT_OK if rep.is_pt_symmetric else EXIT_FAIL


def cmd_check_pseudo(args, cfg, out):
    H = parse_matrix_file(args.hamiltonian)
    G = parse_matrix_file(args.metric)
    cert = check_pseudo_with(H, G, cfg.tol)
    if not cert:
        print(f"pseudo_hermitian: False (failed {cert.gate} check)", file=out)
        print(f"residual: {cert.residual:.3e}", file=out)
        print(f"hermitian_residual: {cert.hermitian_residual:.3e}", file=out)
        print(f"min_abs_eig: {cert.min_abs_eig:.3e}", file=out)
        return EXIT_FAIL
    print("pseudo_hermitian: True", file=out)
    _print_certificate(cert, out)
    return EXIT_OK


def _print_certificate(cert, out):
    print(f"residual: {cert.residual:.3e}", file=out)
    print(f"inertia: p={cert.inertia.p} q={cert.inertia.q} z={cert.inertia.z}", file=out)
    print(f"min_abs_eig: {cert.min_abs_eig:.6g}", file=out)
    if cert.condQ is not None:
        print(f"condQ: {cert.condQ:.6g}", file=out)


def cmd_construct_g(args, cfg, out):
    H = parse_matrix_file(args.hamiltonian)
    try:
        cert = construct_metric(H, cfg.tol)
    except TheoremViolationError as exc:
        ev = exc.evidence
        print("not similar to conjugate", file=out)
        if ev is not None:
            print("spectrum: " + ", ".join(f"{_fmt_c(l)} {list(s)}" for l, s in ev.signature), file=out)
            print("conjugate: " + ", ".join(f"{_fmt_c(l)} {list(s)}" for l, s in ev.conjugate_signature),
                  file=out)
        return EXIT_FAIL
    except PairingError as exc:
        print(f"pairing error: {exc}", file=out)
        return EXIT_FAIL
    except NumericalError as exc:
        print(f"metric construction failed: {exc}", file=out)
        return EXIT_FAIL
    print("metric constructed", file=out)
    _print_certificate(cert, out)
    if cfg.out is not None:
        write_matrix_file(cfg.out, cert.G)
        print(f"wrote {cfg.out}", file=out)
    return EXIT_OK


def cmd_classify(args, cfg, out):
    H = parse_matrix_file(args.hamiltonian)
    G = parse_matrix_file(args.metric)
    cert = check_pseudo_with(H, G, cfg.tol)
    if not cert:
        print(f"(H, G) not certified: {cert.gate} check failed (residual {cert.residual:.3e})", file=out)
        return EXIT_FAIL
    classes = classify_eigenvalues(H, G, cfg.tol)
    print("eigenvalue,alg_mult,geo_mult,kind", file=out)
    for c in classes:
        print(f"{_fmt_c(c.eigenvalue)},{c.alg_mult},{c.geo_mult},{c.kind}", file=out)
    counts = count_kinds(classes, G, cfg.tol)
    print(f"counts: {counts if counts is not None else 'not applicable'}", file=out)
    print(f"strongly_stable: {strong_stability(H, G, cfg.tol)}", file=out)
    return EXIT_OK


def cmd_find_parity(args, cfg, out):
    H = parse_matrix_file(args.hamiltonian)
    P = find_generalized_parity(H, cfg.tol, seed=cfg.seed)
    if P is None:
        print("no nonsingular P with H P = P conj(H)", file=out)
        return EXIT_FAIL
    res = np.linalg.norm(H @ P - P @ H.conj()) / max(np.linalg.norm(H) * np.linalg.norm(P), 1e-300)
    print(f"parity found, residual {res:.3e}, cond {np.linalg.cond(P):.6g}", file=out)
    if cfg.out is not None:
        write_matrix_file(cfg.out, P)
        print(f"wrote {cfg.out}", file=out)
    return EXIT_OK


def cmd_evolve(args, cfg, out):
    H = parse_matrix_file(args.hamiltonian)
    G = parse_matrix_file(args.metric)
    if G.shape != H.shape:
        raise DimensionError(f"G has shape {G.shape}, H has shape {H.shape}")
    n = H.shape[0]
    if args.x0:
        x0 = parse_vector_file(args.x0)
    else:
        rng = np.random.default_rng(cfg.seed)
        x0 = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    x = evolve(-1j * H, x0, args.t)
    q0 = krein_product(x0, x0, G, cfg.tol)
    qt = krein_product(x, x, G, cfg.tol)
    drift = abs(qt - q0)
    for z in x:
        print(f"{format_float(z.real)},{format_float(z.imag)}", file=out)
    print(f"krein_initial: {q0:.17g}", file=out)
    print(f"krein_final: {qt:.17g}", file=out)
    print(f"krein_drift: {drift:.3e}", file=out)
    return EXIT_OK if drift <= 1e-8 * (1.0 + abs(q0)) else EXIT_FAIL


def write_sweep_csv(report, fh):
    fh.write("param,eig_index,re,im,kind\n")
    for p, j, lam, kind in report.rows():
        fh.write(f"{format_float(p)},{j},{format_float(lam.real)},{format_float(lam.imag)},{kind}\n")
    for ev in report.collisions:
        fh.write(f"# collision {format_float(ev.parameter_value)}\n")


def cmd_sweep_kh(args, cfg, out):
    if args.steps < 2:
        raise UsageError("--steps must be at least 2")
    if not args.u20_min < args.u20_max:
        raise UsageError("--u20-min must be less than --u20-max")
    KHParameters(k=args.k, u10=args.u10, u20=args.u10, rho10=args.rho10, rho20=args.rho20, g=args.g)
    fam = kh_family(k=args.k, u10=args.u10, rho10=args.rho10, rho20=args.rho20, g=args.g)
    try:
        report = sweep(fam.hamiltonian, fam.metric, args.u20_min, args.u20_max, args.steps, cfg.tol)
    except SweepError as exc:
        print(f"sweep failed at u20 = {exc.parameter!r}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    buf = io.StringIO()
    write_sweep_csv(report, buf)
    if cfg.out is not None:
        cfg.out.write_text(buf.getvalue())
        for ev in report.collisions:
            print(f"collision at u20 = {ev.parameter_value:.10f} ({ev.kinds_before[0]}/{ev.kinds_before[1]}, "
                  f"eigenvalue {ev.colliding_eigenvalue.real:.10f})", file=out)
    else:
        out.write(buf.getvalue())
    return EXIT_OK


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-10, help="relative tolerance (default 1e-10)")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized steps")
    common.add_argument("--out", default=None, help="output file")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(
        prog="ptkrein",
        description="PT-symmetry, pseudo-Hermiticity and Krein-signature analysis of finite matrices.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check-pt", parents=[common], help="check P conj(H) = H P and P^2 = I")
    p.add_argument("hamiltonian")
    p.add_argument("parity")
    p.set_defaults(func=cmd_check_pt)

    p = sub.add_parser("check-pseudo", parents=[common], help="verify a metric G for H")
    p.add_argument("hamiltonian")
    p.add_argument("metric")
    p.set_defaults(func=cmd_check_pseudo)

    p = sub.add_parser("construct-g", parents=[common], help="build a metric from the Jordan form")
    p.add_argument("hamiltonian")
    p.set_defaults(func=cmd_construct_g)

    p = sub.add_parser("classify", parents=[common], help="Krein kinds of the eigenvalues")
    p.add_argument("hamiltonian")
    p.add_argument("metric")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("find-parity", parents=[common], help="nonsingular P with H P = P conj(H)")
    p.add_argument("hamiltonian")
    p.set_defaults(func=cmd_find_parity)

    p = sub.add_parser("evolve", parents=[common], help="propagate x' = -iHx and report Krein drift")
    p.add_argument("hamiltonian")
    p.add_argument("metric")
    p.add_argument("--t", type=float, required=True, help="propagation time")
    p.add_argument("--x0", default=None, help="vector file with the initial state (random if omitted)")
    p.set_defaults(func=cmd_evolve)

    p = sub.add_parser("sweep-kh", parents=[common], help="Kelvin-Helmholtz sweep over u20, CSV output")
    p.add_argument("--k", type=float, default=1.0)
    p.add_argument("--g", type=float, default=3.0)
    p.add_argument("--rho10", type=float, default=2.0)
    p.add_argument("--rho20", type=float, default=3.0)
    p.add_argument("--u10", type=float, default=1.0)
    p.add_argument("--u20-min", type=float, default=2.3)
    p.add_argument("--u20-max", type=float, default=2.7)
    p.add_argument("--steps", type=int, default=81)
    p.set_defaults(func=cmd_sweep_kh)
    return parser


def main(argv=None, out=None):
    out = out if out is not None else sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = _config(args)
        return args.func(args, cfg, out)
    except (UsageError, MatrixFileError, DimensionError, PreconditionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
