# app.py

import argparse
import json
import logging
import sys

from config.settings import VERSION, configure, get_log_level
from models.composition import Composition, SliceConstraint
from utils.cache import ResultCache
from utils.errors import CapExceededError, CompositionError, MatroidSpecError, TutteFrameError
from utils.filters import norm
from utils.flatexpand import flat_tensor, flat_tensor_mobius, total_F
from utils.formatting import (
    decomposition_to_json,
    ftableau_to_json,
    polynomial_to_expression,
    polynomial_to_json,
    render_ftableau,
    render_tableau,
    render_tensor,
    tensor_to_json,
)
from utils.frame import frame_decomposition, gammabar_closed, gammabar_norms, gammabar_oracle
from utils.ginvariant import catenary_data, gamma_symbols, specialize
from utils.matroid_dsl import canonical_spec, construct
from utils.verify import METHODS, ROUTES, compute, verify
from utils.zoo import load_zoo, run_entry

logger = logging.getLogger("tutteframe")

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE, EXIT_INFEASIBLE = 0, 1, 2, 3

FRAME_FORMS = {"closed": gammabar_closed, "norms": gammabar_norms, "oracle": gammabar_oracle}


def _dump(payload):
    return json.dumps(payload, indent=2) + "\n"


# --- Commands ---
def cmd_compute(args, out):
    matroid = construct(args.matroid)
    spec = canonical_spec(args.matroid)
    cache = None if args.no_cache else ResultCache()
    cached = cache.get(spec, args.method) if cache else None
    if cached is not None:
        poly, n, r = cached
        poly.check_tutte_shape()
    else:
        poly, n, r = compute(matroid, args.method), matroid.n, matroid.r
        if cache:
            cache.put(spec, args.method, poly, n, r)
    out.write(render_tableau(poly, n, r, args.format))
    return EXIT_OK


def cmd_verify(args, out):
    matroid = construct(args.matroid)
    routes = [route.strip() for route in args.routes.split(",")] if args.routes else None
    report = verify(matroid, routes)
    if args.format == "json":
        out.write(_dump(report.to_json()))
    else:
        out.write(report.render())
    return EXIT_OK if report.passed else EXIT_MISMATCH


def cmd_gamma(args, out):
    a = Composition.parse(args.composition)
    symbols = gamma_symbols(a)
    if args.format == "json":
        out.write(_dump({
            "composition": list(a.parts),
            "symbols": [{"bits": str(bits), "c": c} for bits, c in symbols.items()],
        }))
    elif args.format == "poly":
        out.write(polynomial_to_expression(specialize(symbols)) + "\n")
    else:
        for bits, c in symbols.items():
            out.write(f"{c} [{bits}]\n")
    return EXIT_OK


def cmd_frame_element(args, out):
    a = Composition.parse(args.composition)
    poly = FRAME_FORMS[args.form](a)
    if args.format == "json":
        payload = polynomial_to_json(poly, a.n, a.r)
        payload["decomposition"] = decomposition_to_json(frame_decomposition(a))
        out.write(_dump(payload))
    else:
        out.write(render_tableau(poly, a.n, a.r, args.format))
    return EXIT_OK


def cmd_catenary(args, out):
    data = catenary_data(construct(args.matroid))
    if args.format == "json":
        out.write(_dump(data.to_json()))
    else:
        for a, nu in data.items():
            out.write(f"{a}\t{nu}\n")
    return EXIT_OK


def cmd_ftensor(args, out):
    matroid = construct(args.matroid)
    loops = matroid.loops()
    if loops:
        logger.info("Deleting %d loops before computing the flat tensor.", loops.bit_count())
        matroid = matroid.delete(loops)
    tensor = flat_tensor(matroid) if args.route == "catenary" else flat_tensor_mobius(matroid)
    if args.F:
        ftableau = total_F(tensor)
        if args.format == "json":
            out.write(_dump(ftableau_to_json(ftableau)))
        else:
            out.write(render_ftableau(ftableau))
    elif args.format == "json":
        out.write(_dump(tensor_to_json(tensor, args.unsigned)))
    else:
        out.write(render_tensor(tensor, args.unsigned))
    return EXIT_OK


def cmd_norm(args, out):
    a = Composition.parse(args.composition)
    constraint = SliceConstraint.parse(args.slice)
    value = norm(a, constraint)
    if args.format == "json":
        out.write(_dump({"composition": list(a.parts), "slice": str(constraint), "norm": value}))
    else:
        out.write(f"{value}\n")
    return EXIT_OK


def cmd_zoo_list(args, out):
    for entry in load_zoo():
        kinds = ",".join(fixture["kind"] for fixture in entry.fixtures)
        marker = " (slow)" if entry.slow else ""
        out.write(f"{entry.name}\t{entry.spec}\t{kinds}{marker}\n")
    return EXIT_OK


def cmd_zoo_run_all(args, out):
    failures = 0
    for entry in load_zoo():
        if args.name and entry.name != args.name:
            continue
        if entry.slow and args.skip_slow:
            continue
        for result in run_entry(entry):
            status = "PASS" if result.passed else "FAIL"
            line = f"{status} {result.entry} {result.kind}"
            out.write(line + (f": {result.detail}" if result.detail else "") + "\n")
            failures += not result.passed
    return EXIT_MISMATCH if failures else EXIT_OK


# --- Argument parsing ---
# Flags accepted before or after the command name.
GLOBAL_DEFAULTS = {
    "format": "tableau",
    "threads": None,
    "cache": None,
    "no_cache": False,
    "max_direct_n": None,
    "log_level": None,
}


def global_flags():
    flags = argparse.ArgumentParser(add_help=False)
    flags.add_argument("--format", choices=("tableau", "json", "poly"), default=argparse.SUPPRESS)
    flags.add_argument("--threads", type=int, default=argparse.SUPPRESS, help="worker processes for subset sums")
    flags.add_argument("--cache", default=argparse.SUPPRESS, help="result cache directory")
    flags.add_argument("--no-cache", action="store_true", default=argparse.SUPPRESS, help="bypass the result cache")
    flags.add_argument(
        "--max-direct-n", type=int, default=argparse.SUPPRESS,
        help="largest n for direct enumeration (default 24)",
    )
    flags.add_argument("--log-level", default=argparse.SUPPRESS, help="logging level (default WARNING)")
    return flags


def build_parser():
    flags = global_flags()
    parser = argparse.ArgumentParser(
        prog="tutteframe",
        description="Tutte polynomials of matroids through frame and flat-tensor expansions.",
        parents=[flags],
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {VERSION}")
    commands = parser.add_subparsers(dest="command", required=True)

    compute_parser = commands.add_parser("compute", help="compute a Tutte polynomial", parents=[flags])
    compute_parser.add_argument("--matroid", required=True)
    compute_parser.add_argument("--method", choices=METHODS, default="auto")
    compute_parser.set_defaults(handler=cmd_compute)

    verify_parser = commands.add_parser("verify", help="compare routes exactly", parents=[flags])
    verify_parser.add_argument("--matroid", required=True)
    verify_parser.add_argument("--routes", help="comma-separated subset of " + ",".join(ROUTES))
    verify_parser.set_defaults(handler=cmd_verify)

    gamma_parser = commands.add_parser("gamma", help="symbol expansion of gamma(a)", parents=[flags])
    gamma_parser.add_argument("--composition", required=True)
    gamma_parser.set_defaults(handler=cmd_gamma)

    frame_parser = commands.add_parser("frame-element", help="gammabar(a)", parents=[flags])
    frame_parser.add_argument("--composition", required=True)
    frame_parser.add_argument("--form", choices=tuple(FRAME_FORMS), default="closed")
    frame_parser.set_defaults(handler=cmd_frame_element)

    catenary_parser = commands.add_parser("catenary", help="flag counts by composition", parents=[flags])
    catenary_parser.add_argument("--matroid", required=True)
    catenary_parser.set_defaults(handler=cmd_catenary)

    ftensor_parser = commands.add_parser("ftensor", help="flat tensor or F-tableau", parents=[flags])
    ftensor_parser.add_argument("--matroid", required=True)
    ftensor_parser.add_argument("--unsigned", action="store_true", help="print magnitudes")
    ftensor_parser.add_argument("--route", choices=("catenary", "mobius"), default="catenary")
    ftensor_parser.add_argument("--F", action="store_true", help="collapse to the F-tableau")
    ftensor_parser.set_defaults(handler=cmd_ftensor)

    norm_parser = commands.add_parser("norm", help="filter norm with an optional slice", parents=[flags])
    norm_parser.add_argument("--composition", required=True)
    norm_parser.add_argument("--slice", default="", help='e.g. "s5<=2, s4=0"')
    norm_parser.set_defaults(handler=cmd_norm)

    zoo_parser = commands.add_parser("zoo", help="registered fixtures", parents=[flags])
    zoo_commands = zoo_parser.add_subparsers(dest="zoo_command", required=True)
    zoo_commands.add_parser("list", parents=[flags]).set_defaults(handler=cmd_zoo_list)
    run_all = zoo_commands.add_parser("run-all", parents=[flags])
    run_all.add_argument("--name", help="run a single entry")
    run_all.add_argument("--skip-slow", action="store_true")
    run_all.set_defaults(handler=cmd_zoo_run_all)
    return parser


def main(argv=None, out=None):
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    for name, default in GLOBAL_DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, default)
    configure(
        threads=args.threads,
        cache_dir=args.cache,
        max_direct_n=args.max_direct_n,
        log_level=args.log_level,
    )
    level = get_log_level()
    if not isinstance(logging.getLevelName(level), int):
        print(f"error: unknown log level {level!r}", file=sys.stderr)
        return EXIT_USAGE
    logging.basicConfig(
        level=level,
        stream=sys.stderr,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args, out)
    except (CompositionError, MatroidSpecError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapExceededError as exc:
        print(f"infeasible: {exc}", file=sys.stderr)
        return EXIT_INFEASIBLE
    except TutteFrameError as exc:
        print(f"failed: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


if __name__ == "__main__":
    sys.exit(main())
