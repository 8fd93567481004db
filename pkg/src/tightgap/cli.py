"""Batch front end.

One process, one command: run a lemma cover, solve for the constants,
build and certify a hard distribution, dump the threshold-plane contour
grid, or run a Monte-Carlo simulation.  Every run emits a manifest
(command, parameters, precision, workers, seed, output files with content
hashes) so results are attributable and reproducible; numeric results
always serialize as interval endpoints, never a single rounded number.

Exit codes are a stable contract: 0 success/verified, 2 a verification or
tolerance failure, 3 a usage/configuration error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .config import (Configuration, parse_config_literal, prob_thresh,
                     value as clause_value)
from .constants import (ConstantsError, ToleranceUnreachable,
                        solve_alpha_star, solve_beta_llz, solve_gamma_star)
from .gauss import Phi_inv
from .hardness import (HardnessError, ThresholdPoint, WeightedDistribution,
                       build_theta1, build_theta2, prob_theta,
                       theta1_optimal_certificate, theta2_global_certificate)
from .interval import Interval
from .simulator import (InfeasibleConfiguration, mc_distribution, mc_round,
                        scheme_beta, scheme_gamma)
from .verifier import LEMMA_IDS, CheckStatus, run_lemma

SCHEMA_VERSION = "1"
EXIT_OK = 0
EXIT_FAIL = 2
EXIT_USAGE = 3

ENV_PRECISION = "TIGHTGAP_PRECISION_BITS"
ENV_WORKERS = "TIGHTGAP_WORKERS"


class UsageError(Exception):
    """A configuration problem that maps to exit code 3."""


class _Parser(argparse.ArgumentParser):
    """argparse defaults to exit code 2 on usage errors; this project
    reserves 2 for verification failures, so remap to 3."""

    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


@dataclass
class RunManifest:
    """What ran and what it produced, with content hashes."""

    command: str
    parameters: dict
    precision_bits: int
    workers: int
    seed: Optional[int] = None
    outputs: list = field(default_factory=list)

    def record_output(self, path: str) -> None:
        h = hashlib.sha256()
        with open(path, "rb") as fh:
            for chunk in iter(lambda: fh.read(65536), b""):
                h.update(chunk)
        self.outputs.append({"path": str(path), "sha256": h.hexdigest()})

    def to_json_dict(self) -> dict:
        return {
            "schema_version": SCHEMA_VERSION,
            "tool_version": __version__,
            "command": self.command,
            "parameters": self.parameters,
            "precision_bits": self.precision_bits,
            "workers": self.workers,
            "seed": self.seed,
            "outputs": self.outputs,
        }


def _env_int(name: str) -> Optional[int]:
    raw = os.environ.get(name)
    if raw is None or raw == "":
        return None
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"environment variable {name}={raw!r} is not an"
                         f" integer") from None


def _resolve_precision(flag: Optional[int]) -> int:
    value = flag if flag is not None else _env_int(ENV_PRECISION)
    if value is None:
        value = 53
    if value != 53:
        raise UsageError(
            f"precision {value} bits is not available: the engine runs on"
            f" IEEE double (53-bit) outward-rounded interval arithmetic")
    return value


def _resolve_workers(flag: Optional[int]) -> int:
    value = flag if flag is not None else _env_int(ENV_WORKERS)
    if value is None:
        value = 1
    if value < 1:
        raise UsageError(f"workers must be >= 1, got {value}")
    return value


def _emit(args, manifest: RunManifest, result: dict, human_lines) -> None:
    """Write the result (stdout or --out) and the manifest (stdout)."""
    payload = json.dumps(result, indent=2)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(payload + "\n")
        manifest.record_output(args.out)
    if args.json:
        envelope = {"manifest": manifest.to_json_dict()}
        if not args.out:
            envelope["result"] = result
        print(json.dumps(envelope, indent=2))
    else:
        for line in human_lines:
            print(line)
        for rec in manifest.outputs:
            print(f"wrote {rec['path']} (sha256 {rec['sha256'][:16]}...)")


def _iv(iv: Interval):
    return [float(iv.lo), float(iv.hi)]


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------
def cmd_verify(args) -> int:
    workers = _resolve_workers(args.workers)
    report = run_lemma(args.lemma_id, heuristic=args.heuristic,
                       depth_limit=args.depth_limit, workers=workers,
                       time_limit_s=args.time_limit)
    manifest = RunManifest(
        command="verify",
        parameters={"lemma_id": args.lemma_id, "heuristic": args.heuristic,
                    "depth_limit": args.depth_limit,
                    "time_limit": args.time_limit},
        precision_bits=_resolve_precision(args.precision), workers=workers)
    counts = ", ".join(f"{k}={v}" for k, v in
                       sorted(report.criterion_counts.items()))
    lines = [
        f"{args.lemma_id}: {report.status.value}",
        f"  boxes {report.boxes_examined}, max depth {report.max_depth},"
        f" {report.wall_time_s:.1f} s, heuristic {report.heuristic}",
        f"  certified by: {counts}",
    ]
    lines += [f"  note: {n}" for n in report.notes]
    _emit(args, manifest, report.to_json_dict(), lines)
    if report.status is CheckStatus.VERIFIED:
        return EXIT_OK
    return EXIT_FAIL


# ----------------------------------------------------------------------
# constants
# ----------------------------------------------------------------------
_SOLVERS = {
    "beta": (solve_beta_llz, 1e-12),
    "gamma": (solve_gamma_star, 1e-9),
    "alpha": (solve_alpha_star, 1e-9),
}


def cmd_constants(args) -> int:
    which = list(_SOLVERS) if args.which == "all" else [args.which]
    reports = []
    lines = []
    for name in which:
        solver, default_tol = _SOLVERS[name]
        tol = args.tol if args.tol is not None else default_tol
        try:
            rep = solver(tol=tol)
        except ConstantsError as exc:
            print(f"{name}: {type(exc).__name__}: {exc}", file=sys.stderr)
            return EXIT_FAIL
        reports.append(rep.to_json_dict())
        lo, hi = float(rep.enclosure.lo), float(rep.enclosure.hi)
        lines += [
            f"{rep.name}: [{lo!r}, {hi!r}]  (width {hi - lo:.2e})",
            f"  printed to 8 digits: {0.5 * (lo + hi):.8f}",
            f"  hardest bias: [{float(rep.hardest_bias.lo)!r},"
            f" {float(rep.hardest_bias.hi)!r}]",
            f"  residuals containing zero: {len(rep.residuals)}"
            f" of {len(rep.residuals)}",
            f"  method: {rep.method}",
        ]
    manifest = RunManifest(
        command="constants",
        parameters={"which": args.which, "tol": args.tol},
        precision_bits=_resolve_precision(args.precision),
        workers=_resolve_workers(args.workers))
    _emit(args, manifest,
          {"schema_version": SCHEMA_VERSION, "reports": reports}, lines)
    return EXIT_OK


# ----------------------------------------------------------------------
# hardness
# ----------------------------------------------------------------------
def cmd_hardness(args) -> int:
    workers = _resolve_workers(args.workers)
    if args.problem == "ornot":
        dist = build_theta1()
        cert = None if args.skip_verify else theta1_optimal_certificate()
    else:
        dist = build_theta2()
        cert = None if args.skip_verify else \
            theta2_global_certificate(workers=workers)

    weights = ", ".join(f"{float(w.mid):.4f}" for w in dist.weights())
    lines = [f"{args.problem}: {len(dist.entries)} weighted configurations",
             f"  weights (midpoints): {weights}"]
    result = {"schema_version": SCHEMA_VERSION,
              "distribution": dist.to_json_dict()}
    code = EXIT_OK
    if cert is not None:
        result["certificate"] = cert.to_json_dict()
        lines.append(f"  certificate {cert.name}: {cert.status}")
        for p in cert.premises:
            lines.append(f"    [{p.status}] {p.name}")
        if cert.status != "Verified":
            code = EXIT_FAIL
    else:
        lines.append("  certificate: skipped (--skip-verify)")
    manifest = RunManifest(
        command="hardness",
        parameters={"problem": args.problem,
                    "skip_verify": bool(args.skip_verify)},
        precision_bits=_resolve_precision(args.precision), workers=workers)
    _emit(args, manifest, result, lines)
    return code


# ----------------------------------------------------------------------
# plot-theta2
# ----------------------------------------------------------------------
def cmd_plot_theta2(args) -> int:
    if args.grid < 2:
        raise UsageError(f"grid must be >= 2 (got {args.grid}): a single"
                         f" point is not a contour grid")
    dist = build_theta2()
    taus = np.linspace(0.0, 1.0, args.grid)
    ts = [Phi_inv(Interval(float(tau))) for tau in taus]
    rows = ["tau1,tau2,prob"]
    for i, tau1 in enumerate(taus):
        for j, tau2 in enumerate(taus):
            prob = prob_theta(dist, ThresholdPoint(ts[i], ts[j]), tol=1e-9)
            rows.append(f"{tau1:.17g},{tau2:.17g},{float(prob.mid):.17g}")
    csv = "\n".join(rows) + "\n"

    manifest = RunManifest(
        command="plot-theta2", parameters={"grid": args.grid},
        precision_bits=_resolve_precision(args.precision),
        workers=_resolve_workers(args.workers))
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(csv)
        manifest.record_output(args.out)
        if args.json:
            print(json.dumps({"manifest": manifest.to_json_dict()}, indent=2))
        else:
            rec = manifest.outputs[0]
            print(f"wrote {rec['path']} ({args.grid}x{args.grid} grid,"
                  f" sha256 {rec['sha256'][:16]}...)")
    else:
        sys.stdout.write(csv)
    return EXIT_OK


# ----------------------------------------------------------------------
# simulate
# ----------------------------------------------------------------------
def _scheme_threshold(b: Interval, scheme: str, param: float) -> Interval:
    one = Interval(1.0)
    if scheme == "beta":
        f = Interval(param) * b
    else:
        f = Interval(param) * (one + b) - one
    return Phi_inv(((one + f) * Interval(0.5)).clip(0.0, 1.0))


def cmd_simulate(args) -> int:
    workers = _resolve_workers(args.workers)
    seed = args.seed if args.seed is not None else 0
    result: dict = {"schema_version": SCHEMA_VERSION, "target": args.target,
                    "samples": args.samples, "seed": seed}

    if os.path.isfile(args.target):
        if args.t1 is None or args.t2 is None:
            raise UsageError("simulating a distribution file needs --t1 and"
                             " --t2 (thresholds for the two bias classes)")
        with open(args.target, "r", encoding="utf-8") as fh:
            dist = WeightedDistribution.from_json_dict(json.load(fh))
        tp = ThresholdPoint(Interval(args.t1), Interval(args.t2))
        est, se = mc_distribution(dist, tp, args.samples, seed,
                                  workers=workers)
        analytic = prob_theta(dist, tp, tol=1e-10)
        result.update({"mode": "distribution",
                       "t1": args.t1, "t2": args.t2})
    else:
        try:
            cfg = parse_config_literal(args.target)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        scheme_fn = scheme_beta(args.param) if args.scheme == "beta" \
            else scheme_gamma(args.param)
        try:
            est, se = mc_round(cfg, scheme_fn, args.samples, seed,
                               workers=workers)
        except InfeasibleConfiguration as exc:
            raise UsageError(str(exc)) from None
        t_i = _scheme_threshold(cfg.b_i, args.scheme, args.param)
        t_j = _scheme_threshold(cfg.b_j, args.scheme, args.param) \
            if cfg.pred.arity == 2 else None
        analytic = prob_thresh(cfg, t_i, t_j, tol=1e-10)
        result.update({"mode": "configuration", "scheme": args.scheme,
                       "param": args.param})

    # Distance from the estimate to the analytic *enclosure* (zero when the
    # estimate lies inside it), in units of the Monte Carlo standard error.
    gap = max(float(analytic.lo) - est, est - float(analytic.hi), 0.0)
    sigmas = gap / se if se > 0.0 else (0.0 if gap == 0.0 else float("inf"))
    result.update({"estimate": est, "stderr": se,
                   "analytic": _iv(analytic),
                   "deviation_sigmas": sigmas})
    lines = [
        f"estimate {est:.6f} +- {se:.2e}  ({args.samples} samples,"
        f" seed {seed})",
        f"analytic enclosure [{float(analytic.lo):.12f},"
        f" {float(analytic.hi):.12f}]",
        f"deviation: {sigmas:.2f} standard errors",
    ]
    manifest = RunManifest(
        command="simulate",
        parameters={k: result[k] for k in result
                    if k in ("target", "mode", "scheme", "param", "t1", "t2",
                             "samples")},
        precision_bits=_resolve_precision(args.precision),
        workers=workers, seed=seed)
    _emit(args, manifest, result, lines)
    return EXIT_OK


# ----------------------------------------------------------------------
# parser
# ----------------------------------------------------------------------
def _build_parser() -> _Parser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--precision", type=int, default=None,
                        metavar="N", help="precision in bits (53 only;"
                        f" env {ENV_PRECISION})")
    common.add_argument("--workers", type=int, default=None, metavar="N",
                        help=f"worker count (env {ENV_WORKERS})")
    common.add_argument("--seed", type=int, default=None, metavar="N",
                        help="random seed where applicable")
    common.add_argument("--out", default=None, metavar="PATH",
                        help="write the result to PATH (recorded with a"
                        " content hash)")
    common.add_argument("--json", action="store_true",
                        help="emit a JSON envelope with the run manifest")

    parser = _Parser(prog="tightgap",
                     description="certified interval analysis of threshold"
                     " rounding for weighted 2-SAT subclasses")
    sub = parser.add_subparsers(dest="command", metavar="<command>")

    p = sub.add_parser("verify", parents=[common],
                       help="run one packaged lemma cover")
    p.add_argument("lemma_id", choices=LEMMA_IDS)
    p.add_argument("--heuristic", default="widest",
                   choices=("widest", "shortest_nonzero"))
    p.add_argument("--depth-limit", type=int, default=None)
    p.add_argument("--time-limit", type=float, default=None,
                   metavar="SECONDS")
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("constants", parents=[common],
                       help="solve for the certified rounding constants")
    p.add_argument("which", choices=("beta", "gamma", "alpha", "all"))
    p.add_argument("--tol", type=float, default=None,
                   help="enclosure width target (per-constant default)")
    p.set_defaults(fn=cmd_constants)

    p = sub.add_parser("hardness", parents=[common],
                       help="build and certify a hard distribution")
    p.add_argument("problem", choices=("ornot", "horn"))
    p.add_argument("--skip-verify", action="store_true",
                   help="emit the distribution without certifying it")
    p.set_defaults(fn=cmd_hardness)

    p = sub.add_parser("plot-theta2", parents=[common],
                       help="threshold-plane contour grid as CSV")
    p.add_argument("--grid", type=int, default=25, metavar="N",
                   help="grid points per axis in Phi-space (default 25)")
    p.set_defaults(fn=cmd_plot_theta2)

    p = sub.add_parser("simulate", parents=[common],
                       help="Monte-Carlo estimate for a configuration"
                       " literal or a distribution file")
    p.add_argument("target", help="configuration literal like 'OR(0,0,-1)'"
                   " or a distribution JSON path")
    p.add_argument("--scheme", choices=("beta", "gamma"), default="beta")
    p.add_argument("--param", type=float, default=0.9401656724814047,
                   help="scheme parameter (default: the optimal beta)")
    p.add_argument("--samples", type=int, default=1_000_000)
    p.add_argument("--t1", type=float, default=None,
                   help="threshold for the negative bias class"
                   " (distribution mode)")
    p.add_argument("--t2", type=float, default=None,
                   help="threshold for the positive bias class"
                   " (distribution mode)")
    p.set_defaults(fn=cmd_simulate)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if not getattr(args, "command", None):
        parser.print_help()
        return EXIT_USAGE
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"tightgap {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (HardnessError, ToleranceUnreachable) as exc:
        print(f"tightgap {args.command}: {type(exc).__name__}: {exc}",
              file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
