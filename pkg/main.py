"""
Command-line entry point
Subcommands: radius, bounds, verify, reproduce
"""
from typing import List, Optional
import argparse
import json
import logging
import sys

from pydantic import ValidationError

import config
from analyzers.catalogue import BoundCatalogue
from analyzers.radius import numerical_radius
from ensembles import EnsembleSpec
from linalg.block_matrix import BlockOperatorMatrix
from matrix_storage import load_matrix
from report_generator import ReportGenerator
from utils import UsageError, WRadiusError, handle_cli_error
from verification.fixtures import reproduce
from verification.properties import SUITES, verify_ensemble

logger = logging.getLogger("wradius")

LOG_FORMAT = "[%(levelname)s] %(name)s: %(message)s"


class CliParser(argparse.ArgumentParser):
    """argparse parser whose usage errors map to the usage exit code"""

    def error(self, message):
        raise UsageError(message)


def configure_logging(level: str = config.LOG_LEVEL) -> None:
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, stream=sys.stderr, force=True)


def build_parser() -> CliParser:
    parser = CliParser(prog="wradius", description="Certified numerical radius and bound catalogue")
    sub = parser.add_subparsers(dest="command", required=True)

    radius = sub.add_parser("radius", help="certified enclosure of w(A)")
    radius.add_argument("path", help="matrix file (dense or block)")
    radius.add_argument("--tol", type=float, default=None, help="enclosure width (default 1e-8·(1+‖A‖))")
    radius.add_argument("--format", choices=["json", "md"], default="json")

    bounds = sub.add_parser("bounds", help="evaluate catalogue bounds")
    bounds.add_argument("path", nargs="?", help="matrix file (dense or block)")
    bounds.add_argument("--bounds", default="all", help="comma-separated bound names, or 'all'")
    group = bounds.add_mutually_exclusive_group()
    group.add_argument("--t", type=float, default=None, help="parameter for t-family bounds")
    group.add_argument("--min-t", action="store_true", help="minimize t-family bounds over t")
    bounds.add_argument("--list", action="store_true", help="print the catalogue and exit")
    bounds.add_argument("--tol", type=float, default=None, help="width of the true w enclosure (default 1e-8)")
    bounds.add_argument("--format", choices=["json", "md"], default="json")

    verify = sub.add_parser("verify", help="run the property suites on a seeded ensemble")
    verify.add_argument("--seed", type=int, default=None, help=f"ensemble seed (default $WRADIUS_SEED or {config.VERIFY['seed']})")
    verify.add_argument("--count", type=int, default=config.VERIFY["count"])
    verify.add_argument("--n", type=int, default=config.VERIFY["n"], help="block grid size")
    verify.add_argument("--d", type=int, default=config.VERIFY["d"], help="block dimension")
    verify.add_argument("--ensemble", choices=config.ENSEMBLES, default=config.VERIFY["ensemble"])
    verify.add_argument("--tol", type=float, default=config.VERIFY["sweep_tol"], help="sweep tolerance")
    verify.add_argument("--workers", type=int, default=None,
                        help=f"thread count (default $WRADIUS_WORKERS or {config.VERIFY['workers']})")
    verify.add_argument("--suites", default=None, help=f"comma-separated subset of: {', '.join(SUITES)}")
    verify.add_argument("--format", choices=["json", "md"], default="json")

    repro = sub.add_parser("reproduce", help="recompute the worked examples")
    repro.add_argument("--format", choices=["json", "md"], default="json")

    return parser


def _matrix_of(operand):
    return operand.flatten() if isinstance(operand, BlockOperatorMatrix) else operand


def run_radius(args) -> int:
    enclosure = numerical_radius(_matrix_of(load_matrix(args.path)), args.tol)
    if args.format == "md":
        print(f"w(A) ∈ [{enclosure.lo:.15g}, {enclosure.hi:.15g}] ({enclosure.kind.value})")
    else:
        print(json.dumps(enclosure.to_dict()))
    return config.EXIT_CODES["ok"]


def run_bounds(args) -> int:
    if args.list:
        listing = BoundCatalogue.listing()
        if args.format == "md":
            print("| Bound | Family | Takes t | Description |")
            print("|---|---|---|---|")
            for entry in listing:
                print(f"| {entry['name']} | {entry['family']} | {'yes' if entry['takes_t'] else 'no'} | {entry['description']} |")
        else:
            print(json.dumps(listing, indent=2, ensure_ascii=False))
        return config.EXIT_CODES["ok"]

    if not args.path:
        raise UsageError("bounds needs a matrix file unless --list is given")
    if args.t is not None and not 0.0 <= args.t <= 1.0:
        raise UsageError(f"--t must lie in [0, 1], got {args.t}")

    operand = load_matrix(args.path)
    results = BoundCatalogue.evaluate_all(args.bounds, operand, args.t, args.min_t)
    # absolute width: every gap stays above −2e-8 at any scale of A
    width = config.TOLERANCES["report_width"] if args.tol is None else args.tol
    true_w = numerical_radius(_matrix_of(operand), width)
    tolerance = args.tol if args.tol is not None else max(true_w.width, width)

    report = ReportGenerator.build(args.path, true_w, results, tolerance)
    print(ReportGenerator.render(report, args.format))
    if any(row.gap < -2.0 * tolerance for row in report.rows):
        return config.EXIT_CODES["violation"]
    return config.EXIT_CODES["ok"]


def _resolve_seed(seed: Optional[int]) -> int:
    if seed is not None:
        return seed
    if config.ENV_SEED:
        try:
            return int(config.ENV_SEED)
        except ValueError:
            raise UsageError(f"WRADIUS_SEED must be an integer, got {config.ENV_SEED!r}")
    return config.VERIFY["seed"]


def _resolve_workers(workers: Optional[int]) -> int:
    if workers is None and config.ENV_WORKERS:
        try:
            workers = int(config.ENV_WORKERS)
        except ValueError:
            raise UsageError(f"WRADIUS_WORKERS must be an integer, got {config.ENV_WORKERS!r}")
    if workers is None:
        workers = config.VERIFY["workers"]
    if workers < 1:
        raise UsageError(f"--workers must be at least 1, got {workers}")
    return workers


def run_verify(args) -> int:
    suites = None
    if args.suites:
        suites = [s.strip() for s in args.suites.split(",") if s.strip()]
        unknown = sorted(set(suites) - set(SUITES))
        if unknown:
            raise UsageError(f"unknown suites: {', '.join(unknown)}")
    workers = _resolve_workers(args.workers)
    if args.tol <= 0.0:
        raise UsageError(f"--tol must be positive, got {args.tol}")

    try:
        spec = EnsembleSpec(seed=_resolve_seed(args.seed), count=args.count, n=args.n, d=args.d, ensemble=args.ensemble)
    except ValidationError as e:
        raise UsageError("; ".join(f"{'.'.join(map(str, err['loc']))}: {err['msg']}" for err in e.errors()))

    logger.info("verifying %d %s instances (n=%d, d=%d, seed=%d)", spec.count, spec.ensemble, spec.n, spec.d, spec.seed)
    summary = verify_ensemble(spec, workers=workers, suites=suites, tol=args.tol)

    if args.format == "md":
        print(f"## Verification: {spec.ensemble}, seed {spec.seed}, {spec.count} instances")
        print()
        print("| Property | Checked | Violated | Worst margin |")
        print("|---|---|---|---|")
        for tally in summary.properties:
            print(f"| {tally.name} | {tally.checked} | {tally.violated} | {tally.worst_margin:.3e} |")
        for violation in summary.violations:
            print(f"\nVIOLATION {violation.property} (instance {violation.instance}, seed {violation.seed}): {violation.explanation}")
            print(json.dumps(violation.matrix))
    else:
        print(summary.model_dump_json(indent=2))

    return config.EXIT_CODES["ok"] if summary.ok else config.EXIT_CODES["violation"]


def run_reproduce(args) -> int:
    report = reproduce()
    if args.format == "md":
        print("| Example | Expected | Computed | Difference | Status |")
        print("|---|---|---|---|---|")
        for o in report.outcomes:
            print(f"| {o.name} | {o.expected:.10g} | {o.computed:.10g} | {o.difference:.3e} | {'ok' if o.passed else 'MISMATCH'} |")
    else:
        print(report.model_dump_json(indent=2))
    return config.EXIT_CODES["ok"] if report.ok else config.EXIT_CODES["violation"]


COMMANDS = {
    "radius": run_radius,
    "bounds": run_bounds,
    "verify": run_verify,
    "reproduce": run_reproduce,
}


def main(argv: Optional[List[str]] = None) -> int:
    configure_logging()
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args)
    except WRadiusError as e:
        code, message = handle_cli_error(e)
        print(message, file=sys.stderr)
        return code
    except Exception as e:
        logger.debug("unexpected failure", exc_info=True)
        code, message = handle_cli_error(e)
        print(message, file=sys.stderr)
        return code


if __name__ == "__main__":
    sys.exit(main())
