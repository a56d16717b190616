import logging
import os
import uuid
from types import SimpleNamespace

from flask import Flask, jsonify, request
from werkzeug.utils import secure_filename

from algebraic_degree.census import CensusOptions, run_census
from algebraic_degree.cli import PROBLEM_CLASSES, UsageError, shape_from_args
from algebraic_degree.config import load_settings
from algebraic_degree.degree_formula import ShapeError, general_degree
from algebraic_degree.field_arith import FieldArithmeticError, PrimeField
from algebraic_degree.problem_file import ProblemFileError, parse_problem_file
from algebraic_degree.problems import GenConfig, predicted_degree_from_name
from algebraic_degree.problems.problem_utils import InstanceError

logger = logging.getLogger(__name__)

app = Flask(__name__)

ALLOWED_EXTENSIONS = {"txt", "poly"}
CLASS_DESCRIPTIONS = {
    "general": "min f0 subject to f1..fm = 0, degrees d0..dm",
    "unconstrained": "critical points of a single polynomial of degree d0",
    "lp": "linear program with n active constraints",
    "qcqp": "quadratic objective and m quadratic constraints",
    "socp": "second-order cone program with k single-row cones",
    "pocp": "p-th order cone program with k single-row cones",
}

settings = load_settings()
FILE_STORAGE_DIR = settings.storage


class BadRequest(Exception):
    pass


def error_response(message, status=400):
    response = jsonify({"error": message})
    response.status_code = status
    return response


@app.errorhandler(BadRequest)
@app.errorhandler(UsageError)
@app.errorhandler(ShapeError)
@app.errorhandler(InstanceError)
@app.errorhandler(FieldArithmeticError)
@app.errorhandler(ProblemFileError)
def handle_bad_request(e):
    return error_response(str(e))


def _int_arg(name, default=None):
    value = request.args.get(name)
    if value is None or value == "":
        return default
    try:
        return int(value)
    except ValueError:
        raise BadRequest("{0} must be an integer, got {1!r}".format(name, value))


def _list_arg(name):
    value = request.args.get(name)
    if not value:
        return None
    try:
        return tuple(int(v) for v in value.split(",") if v.strip())
    except ValueError:
        raise BadRequest("{0} must be comma-separated integers".format(name))


def _bool_arg(name):
    return request.args.get(name, default=False, type=lambda v: v.lower() == "true")


def _shape_args():
    problem_class = request.args.get("class", "general")
    if problem_class not in PROBLEM_CLASSES:
        raise BadRequest("Unknown class {0!r}".format(problem_class))
    return SimpleNamespace(
        problem_class=problem_class,
        n=_int_arg("n"),
        m=_int_arg("m"),
        k=_int_arg("k", 0),
        p=_int_arg("p", 2),
        d0=_int_arg("d0"),
        degrees=_list_arg("degrees"),
        rows=_list_arg("rows"),
    )


def _census_options():
    budget = request.args.get("budget", default=settings.budget, type=float)
    return CensusOptions(budget=budget, minpoly=_bool_arg("minpoly"), retries=settings.retries)


@app.route("/api/v1/classes", methods=["GET"])
def classes():
    return CLASS_DESCRIPTIONS


@app.route("/api/v1/degree", methods=["GET"])
def degree():
    args = _shape_args()
    if args.problem_class in ("general", "unconstrained"):
        value = general_degree(shape_from_args(args))
    elif args.problem_class == "lp":
        if args.n is None:
            raise BadRequest("n is required")
        value = predicted_degree_from_name["lp"](n=args.n, m=args.m)
    else:
        if args.n is None or args.m is None:
            raise BadRequest("n and m are required")
        value = predicted_degree_from_name[args.problem_class](
            n=args.n, m=args.m, k=args.k, p=args.p
        )
    # string so that large degrees survive JSON clients with float numbers
    return {"class": args.problem_class, "n": args.n, "predicted_degree": str(value)}


@app.route("/api/v1/census", methods=["GET"])
def census():
    args = _shape_args()
    prime = _int_arg("prime", settings.prime)
    seed = _int_arg("seed", settings.seed)
    config = GenConfig(seed, PrimeField(prime), args.problem_class, shape_from_args(args))
    report = run_census(config, _census_options())
    return report.to_dict()


@app.route("/api/v1/upload", methods=["POST"])
def upload():
    if "file" not in request.files:
        return error_response("Parameter 'file' is not found")
    file = request.files["file"]
    if not file or not allowed_file(file.filename):
        return error_response("Expected a .txt or .poly problem file")

    os.makedirs(FILE_STORAGE_DIR, exist_ok=True)
    filename = str(uuid.uuid4()) + "." + get_extension(file.filename)
    file.save(os.path.join(FILE_STORAGE_DIR, filename))
    logger.info("Stored problem file %s", filename)
    return {"file_name": filename}


@app.route("/api/v1/solve", methods=["GET"])
def solve():
    input_filename = request.args.get("file_name")
    if not input_filename:
        return error_response("Parameter 'file_name' is not found")
    path = os.path.join(FILE_STORAGE_DIR, secure_filename(input_filename))
    if not os.path.isfile(path):
        return error_response("Unknown file {0}".format(input_filename), status=404)
    prime = _int_arg("prime", settings.prime)
    spec = parse_problem_file(path, PrimeField(prime))
    return run_census(spec, _census_options()).to_dict()


def get_extension(filename):
    return filename.rsplit(".", 1)[1].lower()


def allowed_file(filename):
    return "." in filename and get_extension(filename) in ALLOWED_EXTENSIONS


if __name__ == "__main__":
    logging.basicConfig(level=settings.log_level.upper())
    app.run(host="0.0.0.0", debug=False)
