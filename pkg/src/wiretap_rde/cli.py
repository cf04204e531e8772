"""Command-line front end.

    wiretap-rde binary sweep --eps 0.1 --zeta 0.1 --beta 0:1:64 --out binary.csv
    wiretap-rde gaussian sweep --p 1 --py 0.5 --pz 1 --pe 1 --pb inf --d 0.3333:1:50 --out gaussian.csv
    wiretap-rde point binary --scheme digital --beta 1 --eps 0.1 --zeta 0.1
    wiretap-rde verify -v

Exit codes: 0 ok, 1 verify failure, 2 bad arguments, 3 I/O error.
"""
from __future__ import annotations

import argparse
import json
import math
import os
import sys
import tempfile
from typing import Sequence

import numpy as np

from . import binary_wiretap as bw
from . import gaussian_wiretap as gw
from .checks import CHECKS, Check, run_checks
from .curves import TradeoffCurve, default_threads
from .errors import DomainError, InfeasibleError

EXIT_OK, EXIT_VERIFY, EXIT_USAGE, EXIT_IO = 0, 1, 2, 3


class UsageError(Exception):
    pass


def parse_grid(text: str) -> np.ndarray:
    """``min:max:steps`` -> steps+1 evenly spaced points (one point if min == max)."""
    parts = text.split(":")
    if len(parts) != 3:
        raise UsageError(f"grid {text!r} is not of the form min:max:steps")
    try:
        lo, hi, steps = float(parts[0]), float(parts[1]), int(parts[2])
    except ValueError:
        raise UsageError(f"grid {text!r} is not of the form min:max:steps") from None
    if steps < 1 or not (math.isfinite(lo) and math.isfinite(hi)) or hi < lo:
        raise UsageError(f"grid {text!r}: need finite min <= max and steps >= 1")
    if hi == lo:
        return np.array([lo])
    return np.linspace(lo, hi, steps + 1)


def parse_pb(text: str):
    if text.strip().lower() in ("inf", "infinity", "none"):
        return None
    try:
        return float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"--pb expects a number or 'inf', got {text!r}") from None


def parse_schemes(text: str, allowed: Sequence[str]) -> list[str]:
    out = [s.strip() for s in text.split(",") if s.strip()]
    bad = [s for s in out if s not in allowed]
    if bad:
        raise UsageError(f"unknown scheme(s) {bad}; choose from {list(allowed)}")
    if len(set(out)) != len(out):
        raise UsageError("duplicate schemes")
    return out


def format_csv(curves: Sequence[TradeoffCurve]) -> str:
    """Rows in grid order, schemes in the requested order within each x."""
    rows = sorted(
        ((x, k, c.scheme, v) for k, c in enumerate(curves) for x, v in zip(c.xs, c.values)),
        key=lambda r: (r[0], r[1]),
    )
    lines = ["x,scheme,value"]
    lines += [f"{x:.9g},{s},{v:.9g}" for x, _, s, v in rows]
    return "\n".join(lines) + "\n"


def write_atomic(path: str, text: str) -> None:
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(prefix=".tmp-", dir=directory)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _binary_params(args, beta: float = 1.0) -> bw.BinaryModelParams:
    return bw.BinaryModelParams(beta, args.eps, args.zeta)


def _gaussian_params(args) -> gw.GaussianModelParams:
    return gw.GaussianModelParams(args.p, args.py, args.pz, args.pe, args.pb)


def cmd_binary_sweep(args) -> int:
    grid = parse_grid(args.beta)
    schemes = parse_schemes(args.schemes, bw.BINARY_SCHEMES)
    template = _binary_params(args, float(grid[0]))
    curves = bw.binary_sweep(template, grid, schemes, threads=args.threads)
    write_atomic(args.out, format_csv([curves[s] for s in schemes]))
    return EXIT_OK


def cmd_gaussian_sweep(args) -> int:
    grid = parse_grid(args.d)
    schemes = parse_schemes(args.schemes, gw.GAUSSIAN_SCHEMES)
    m = _gaussian_params(args)
    curves = gw.gaussian_sweep(m, grid, schemes, threads=args.threads)
    dropped = len(grid) - min((len(c) for c in curves.values()), default=len(grid))
    if dropped:
        print(
            f"warning: {dropped} grid point(s) below the minimum distortion "
            f"{gw.d_min(m):.9g} omitted",
            file=sys.stderr,
        )
    write_atomic(args.out, format_csv([curves[s] for s in schemes]))
    return EXIT_OK


def _point_binary(args) -> dict:
    m = _binary_params(args, args.beta)
    inp = {"beta": m.beta, "eps": m.eps, "zeta": m.zeta}
    out = {"model": "binary", "scheme": args.scheme, "input": inp}
    if args.scheme == "outer":
        r = bw.outer_optimum(m)
        out["value"] = max(0.0, r.value)
        out["argmax"] = {"u": r.argmax[0], "q": r.argmax[1]}
    elif args.scheme == "digital":
        r = bw.digital_optimum(m)
        out["value"] = max(0.0, r.value)
        out["argmax"] = {"u": r.argmax[0], "q": r.argmax[1]}
    elif args.scheme == "hybrid":
        r = bw.hybrid_optimum(m)
        out["value"] = max(0.0, r.value)
        out["argmax"] = {"u": r.u}
    else:
        out["value"] = bw.analog_delta(m)
    return out


def _point_gaussian(args) -> dict:
    m = _gaussian_params(args)
    inp = {"p": m.p, "p_y": m.p_y, "p_z": m.p_z, "p_e": m.p_e, "p_b": m.p_b, "d": args.d}
    out = {"model": "gaussian", "scheme": args.scheme, "input": inp}
    if args.scheme == "digital":
        r = gw.prop11_digital(m, args.d)
        out["value"], out["argmax"] = r.value, {"mu": r.argmax}
    elif args.scheme == "hybrid":
        r = gw.hybrid_best(m, args.d)
        out["value"] = r.de
        out["argmax"] = {"alpha": r.coef.alpha, "beta": r.coef.beta}
    elif args.scheme == "optimal":
        out["value"] = gw.theorem4_de(m, args.d)
    elif args.scheme == "analog":
        out["value"] = gw.prop12_analog_de(m, args.d)
    else:
        out["value"] = gw.outer_de(m, args.d)
    return out


def cmd_point(args) -> int:
    out = _point_binary(args) if args.model == "binary" else _point_gaussian(args)
    print(json.dumps(out))
    return EXIT_OK


def _always_fails():
    return False, "injected failure"


def cmd_verify(args) -> int:
    checks = list(CHECKS)
    if args.inject_failure:
        checks.append(Check("injected failure", _always_fails))
    results = run_checks(checks)
    width = max(len(r.name) for r in results)
    for r in results:
        if args.verbose or not r.passed:
            print(f"{'PASS' if r.passed else 'FAIL'}  {r.name:<{width}}  {r.detail}  ({r.seconds:.2f}s)")
    n_fail = sum(not r.passed for r in results)
    print(f"{len(results) - n_fail}/{len(results)} checks passed")
    return EXIT_OK if n_fail == 0 else EXIT_VERIFY


def _add_threads(p):
    p.add_argument("--threads", type=int, default=default_threads(), help="worker threads (default: all cores)")


def _add_binary_params(p, with_beta: bool):
    p.add_argument("--eps", type=float, required=True, help="Eve side-info BSC crossover")
    p.add_argument("--zeta", type=float, required=True, help="Eve channel BSC crossover")
    if with_beta:
        p.add_argument("--beta", type=float, required=True, help="Bob side-info erasure probability")


def _add_gaussian_params(p):
    p.add_argument("--p", type=float, required=True, help="channel input power")
    p.add_argument("--py", type=float, required=True, help="Bob channel noise power")
    p.add_argument("--pz", type=float, required=True, help="Eve channel noise power")
    p.add_argument("--pe", type=float, required=True, help="Eve side-info noise power")
    p.add_argument("--pb", type=parse_pb, default=None, help="Bob side-info noise power, or 'inf' (default)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="wiretap-rde", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    binary = sub.add_parser("binary", help="binary source over a type-II wiretap channel")
    bsub = binary.add_subparsers(dest="action", required=True)
    bs = bsub.add_parser("sweep", help="Delta versus erasure probability beta")
    _add_binary_params(bs, with_beta=False)
    bs.add_argument("--beta", required=True, help="grid min:max:steps")
    bs.add_argument("--schemes", default=",".join(bw.BINARY_SCHEMES))
    bs.add_argument("--out", required=True)
    _add_threads(bs)
    bs.set_defaults(func=cmd_binary_sweep)

    gauss = sub.add_parser("gaussian", help="Gaussian source over a Gaussian wiretap channel")
    gsub = gauss.add_subparsers(dest="action", required=True)
    gs = gsub.add_parser("sweep", help="D_E versus distortion d")
    _add_gaussian_params(gs)
    gs.add_argument("--d", required=True, help="grid min:max:steps")
    gs.add_argument("--schemes", default="optimal,digital,analog")
    gs.add_argument("--out", required=True)
    _add_threads(gs)
    gs.set_defaults(func=cmd_gaussian_sweep)

    point = sub.add_parser("point", help="evaluate one scheme at one operating point (JSON)")
    psub = point.add_subparsers(dest="model", required=True)
    pb = psub.add_parser("binary")
    pb.add_argument("--scheme", choices=bw.BINARY_SCHEMES, required=True)
    _add_binary_params(pb, with_beta=True)
    pg = psub.add_parser("gaussian")
    pg.add_argument("--scheme", choices=gw.GAUSSIAN_SCHEMES, required=True)
    _add_gaussian_params(pg)
    pg.add_argument("--d", type=float, required=True, help="distortion at Bob")
    point.set_defaults(func=cmd_point)

    verify = sub.add_parser("verify", help="run the property checks")
    verify.add_argument("-v", "--verbose", action="store_true", help="list every check")
    verify.add_argument("--inject-failure", action="store_true", help=argparse.SUPPRESS)
    verify.set_defaults(func=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, DomainError, InfeasibleError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
