import argparse
import json
import logging
import sys

from algebraic_degree.census import (
    STATUS_MATCH,
    STATUS_TIMED_OUT,
    CensusOptions,
    compare_formulations,
    emit_report,
    run_census,
    run_census_batch,
)
from algebraic_degree.config import ConfigError, load_settings
from algebraic_degree.degree_formula import (
    ConeShape,
    DegreeShape,
    ShapeError,
    degree_sweep,
    general_degree,
)
from algebraic_degree.field_arith import FieldArithmeticError, PrimeField
from algebraic_degree.polyring import PolynomialSyntaxError, ordering_from_name
from algebraic_degree.problem_file import ProblemFileError, parse_problem_file, serialize_problem
from algebraic_degree.problems import GenConfig, generate_instance, predicted_degree_from_name
from algebraic_degree.problems.problem_utils import InstanceError

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MISMATCH = 2
EXIT_TIMEOUT = 3
EXIT_PARSE_ERROR = 4
EXIT_SHAPE_ERROR = 5

PROBLEM_CLASSES = ["general", "unconstrained", "lp", "qcqp", "socp", "pocp"]


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _int_list(text):
    try:
        return tuple(int(v) for v in text.replace(" ", "").split(",") if v)
    except ValueError:
        raise argparse.ArgumentTypeError("expected comma-separated integers, got {0!r}".format(text))


def _add_shape_flags(parser):
    parser.add_argument("--class", dest="problem_class", choices=PROBLEM_CLASSES, default="general")
    parser.add_argument("--n", type=int)
    parser.add_argument("--m", type=int)
    parser.add_argument("--k", type=int, default=0)
    parser.add_argument("--p", type=int, default=2, help="cone order")
    parser.add_argument("--degrees", type=_int_list, help="d0,d1,...,dm")
    parser.add_argument("--rows", type=_int_list, help="row counts of the non-linear cones")


def _add_run_flags(parser, settings):
    parser.add_argument("--prime", type=int, default=settings.prime)
    parser.add_argument("--budget", type=float, default=settings.budget, help="seconds")
    parser.add_argument("--minpoly", action="store_true")
    parser.add_argument("--json", action="store_true")
    parser.add_argument("--retries", type=int, default=settings.retries)
    parser.add_argument("--ordering", choices=sorted(ordering_from_name), default="grevlex")


def build_parser(settings):
    parser = _Parser(prog="algebraic_degree", description="Algebraic degrees of polynomial optimization")
    parser.add_argument("--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    degree = sub.add_parser("degree", help="closed-form degree of a problem class")
    _add_shape_flags(degree)
    degree.add_argument("--d0", type=int)
    degree.add_argument("--degree", type=int, help="uniform constraint degree for sweeps")
    degree.add_argument("--sweep", action="store_true")
    degree.add_argument("--n-max", type=int, default=6)
    degree.add_argument("--json", action="store_true")

    census = sub.add_parser("census", help="predicted versus counted critical points")
    _add_shape_flags(census)
    _add_run_flags(census, settings)
    census.add_argument("--seed", type=int, default=settings.seed)
    census.add_argument("--repeat", type=int, default=1)
    census.add_argument("--workers", type=int, default=settings.workers)
    census.add_argument("--cross-check", action="store_true")

    solve = sub.add_parser("solve-file", help="census of a problem file")
    solve.add_argument("path")
    _add_run_flags(solve, settings)
    solve.add_argument("--cross-check", action="store_true")

    gen = sub.add_parser("gen", help="emit a generated instance as a problem file")
    _add_shape_flags(gen)
    gen.add_argument("--prime", type=int, default=settings.prime)
    gen.add_argument("--seed", type=int, default=settings.seed)
    gen.add_argument("--output")
    return parser


def _require(args, *names):
    missing = ["--" + name.replace("_", "-") for name in names if getattr(args, name) is None]
    if missing:
        raise UsageError("--class {0} needs {1}".format(args.problem_class, " ".join(missing)))


def _degree_list(args):
    _require(args, "n", "degrees")
    if args.m is not None and args.m != len(args.degrees) - 1:
        raise UsageError(
            "--m {0} disagrees with {1} constraint degrees".format(args.m, len(args.degrees) - 1)
        )
    return DegreeShape(args.n, len(args.degrees) - 1, args.degrees)


def shape_from_args(args):
    """DegreeShape or ConeShape described by the shape flags."""
    cls = args.problem_class
    if cls == "general":
        return _degree_list(args)
    if cls == "unconstrained":
        _require(args, "n")
        d0 = getattr(args, "d0", None) or (args.degrees[0] if args.degrees else None)
        if d0 is None:
            raise UsageError("--class unconstrained needs --d0 or --degrees")
        if args.m not in (None, 0):
            raise UsageError("--class unconstrained takes no constraints")
        return DegreeShape(args.n, 0, (d0,))
    if cls == "qcqp":
        _require(args, "n", "m")
        return DegreeShape(args.n, args.m, (2,) * (args.m + 1))
    if cls in ("socp", "pocp"):
        _require(args, "n", "m")
        if cls == "socp" and args.p != 2:
            raise UsageError("--class socp has cone order 2")
        return ConeShape(args.n, args.k, args.m, args.rows or (), args.p)
    raise UsageError("--class {0} cannot be generated".format(cls))


def degree_command(args, out):
    if args.sweep:
        if args.problem_class == "general":
            _require(args, "d0", "degree")
        if args.problem_class == "unconstrained":
            _require(args, "d0")
        n_values = range(1, args.n_max + 1) if args.n is None else [args.n]
        m_values = range(0, args.n_max + 1) if args.m is None else [args.m]
        rows = list(
            degree_sweep(args.problem_class, n_values, m_values, args.k, args.p, args.d0, args.degree)
        )
        if args.json:
            out.write(json.dumps([{"n": n, "m": m, "degree": str(d)} for n, m, d in rows]) + "\n")
        else:
            out.write("{0:>4} {1:>4}  {2}\n".format("n", "m", "degree"))
            for n, m, d in rows:
                out.write("{0:>4} {1:>4}  {2}\n".format(n, m, d))
        return EXIT_OK

    cls = args.problem_class
    if cls == "general":
        value = general_degree(_degree_list(args))
    elif cls == "lp":
        _require(args, "n")
        value = predicted_degree_from_name["lp"](n=args.n, m=args.m)
    elif cls == "unconstrained":
        shape = shape_from_args(args)
        value = general_degree(shape)
    else:
        _require(args, "n", "m")
        value = predicted_degree_from_name[cls](n=args.n, m=args.m, k=args.k, p=args.p)
    if args.json:
        out.write(json.dumps({"class": cls, "n": args.n, "m": args.m, "predicted_degree": str(value)}) + "\n")
    else:
        out.write("{0}\n".format(value))
    return EXIT_OK


def _exit_code(reports):
    statuses = [r.status for r in reports]
    if STATUS_TIMED_OUT in statuses:
        return EXIT_TIMEOUT
    if any(s != STATUS_MATCH for s in statuses):
        return EXIT_MISMATCH
    return EXIT_OK


def _options(args):
    return CensusOptions(
        budget=args.budget,
        minpoly=args.minpoly,
        retries=args.retries,
        ordering=ordering_from_name[args.ordering],
    )


def _cross_check(spec, options, out):
    comparison = compare_formulations(spec, options)
    out.write(json.dumps(comparison.to_dict()) + "\n")
    if comparison.status == STATUS_TIMED_OUT:
        return EXIT_TIMEOUT
    return EXIT_OK if comparison.status == STATUS_MATCH else EXIT_MISMATCH


def census_command(args, out):
    config = GenConfig(args.seed, PrimeField(args.prime), args.problem_class, shape_from_args(args))
    options = _options(args)
    if args.cross_check:
        return _cross_check(generate_instance(config), options, out)
    fmt = "json" if args.json else "text"
    if args.repeat > 1:
        reports = run_census_batch(config, options, args.repeat, args.workers)
        out.write(emit_report(reports, fmt).decode("utf-8"))
        return _exit_code(reports)
    report = run_census(config, options)
    out.write(emit_report(report, fmt).decode("utf-8"))
    return _exit_code([report])


def solve_file_command(args, out):
    spec = parse_problem_file(args.path, PrimeField(args.prime))
    if args.cross_check:
        return _cross_check(spec, _options(args), out)
    report = run_census(spec, _options(args))
    out.write(emit_report(report, "json" if args.json else "text").decode("utf-8"))
    return _exit_code([report])


def gen_command(args, out):
    config = GenConfig(args.seed, PrimeField(args.prime), args.problem_class, shape_from_args(args))
    text = serialize_problem(generate_instance(config))
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text)
    else:
        out.write(text)
    return EXIT_OK


_COMMANDS = {
    "degree": degree_command,
    "census": census_command,
    "solve-file": solve_file_command,
    "gen": gen_command,
}


def main(argv=None, out=None):
    out = out or sys.stdout
    try:
        settings = load_settings()
    except ConfigError as e:
        sys.stderr.write("configuration error: {0}\n".format(e))
        return EXIT_SHAPE_ERROR
    try:
        args = build_parser(settings).parse_args(argv)
    except UsageError as e:
        sys.stderr.write("usage error: {0}\n".format(e))
        return EXIT_SHAPE_ERROR
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else settings.log_level.upper(),
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        return _COMMANDS[args.command](args, out)
    except (ProblemFileError, PolynomialSyntaxError) as e:
        sys.stderr.write("parse error: {0}\n".format(e))
        return EXIT_PARSE_ERROR
    except (ShapeError, UsageError, InstanceError, FieldArithmeticError) as e:
        sys.stderr.write("shape error: {0}\n".format(e))
        return EXIT_SHAPE_ERROR
