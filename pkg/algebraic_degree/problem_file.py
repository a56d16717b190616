"""Line-oriented problem files.

    # comments run to the end of the line
    variables: 3            (optional; otherwise the largest xK used)
    class: general          (optional)
    seed: 1338              (optional)
    objective: 47*x1^5 + 5*x1*x2^4 - 92*x1*x3^2
    constraint: x1^2 + x2^2 - 1
"""
import logging
import os
import re

from algebraic_degree.kkt_builder import ProblemSpec
from algebraic_degree.polyring import (
    PolynomialRing,
    PolynomialSyntaxError,
    default_variable_names,
    format_polynomial,
    parse_polynomial,
)

logger = logging.getLogger(__name__)

_LINE = re.compile(r"^\s*(?P<key>[A-Za-z_]+)\s*:(?P<value>.*)$")
_NAME = re.compile(r"[A-Za-z_][A-Za-z_0-9]*")
_X_VARIABLE = re.compile(r"x(\d+)")


class ProblemFileError(Exception):
    def __init__(self, message, line=None, column=None):
        self.message = message
        self.line = line
        self.column = column
        where = []
        if line is not None:
            where.append("line {0}".format(line))
        if column is not None:
            where.append("column {0}".format(column))
        super().__init__(
            "{0} ({1})".format(message, ", ".join(where)) if where else message
        )


def _strip_comment(raw):
    return raw.split("#", 1)[0].rstrip()


def _read_entries(text):
    entries = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = _strip_comment(raw)
        if not line.strip():
            continue
        match = _LINE.match(line)
        if match is None:
            raise ProblemFileError("Expected '<key>: <value>'", line=line_no, column=1)
        key = match.group("key").lower()
        value = match.group("value")
        offset = match.start("value") + (len(value) - len(value.lstrip()))
        entries.append((line_no, key, value.strip(), offset))
    return entries


def _integer(value, line_no, key):
    try:
        return int(value)
    except ValueError:
        raise ProblemFileError(
            "{0} expects an integer, got {1!r}".format(key, value), line=line_no
        ) from None


def parse_problem_text(text, field):
    entries = _read_entries(text)
    n = None
    problem_class = "general"
    seed = None
    polynomial_entries = []
    for line_no, key, value, offset in entries:
        if key == "variables":
            n = _integer(value, line_no, key)
            if n < 1:
                raise ProblemFileError("variables must be >= 1", line=line_no)
        elif key == "class":
            problem_class = value
        elif key == "seed":
            seed = _integer(value, line_no, key)
        elif key in ("objective", "constraint"):
            polynomial_entries.append((line_no, key, value, offset))
        else:
            raise ProblemFileError("Unknown key {0!r}".format(key), line=line_no, column=1)

    objectives = [e for e in polynomial_entries if e[1] == "objective"]
    if not objectives:
        raise ProblemFileError("Missing 'objective:' line")
    if len(objectives) > 1:
        raise ProblemFileError("More than one objective", line=objectives[1][0])

    if n is None:
        used = [
            int(match.group(1))
            for _, _, value, _ in polynomial_entries
            for match in map(_X_VARIABLE.fullmatch, _NAME.findall(value))
            if match
        ]
        n = max([i for i in used if i > 0], default=1)
    ring = PolynomialRing(n, field)
    names = default_variable_names(n)

    objective = None
    constraints = []
    for line_no, key, value, offset in polynomial_entries:
        try:
            poly = parse_polynomial(value, ring, names)
        except PolynomialSyntaxError as e:
            column = offset + e.column if e.column is not None else None
            raise ProblemFileError(e.message, line=line_no, column=column) from None
        if poly.is_zero() or poly.total_degree() == 0:
            raise ProblemFileError(
                "{0} has degree 0".format(key.capitalize()), line=line_no
            )
        if key == "objective":
            objective = poly
        else:
            constraints.append(poly)

    spec = ProblemSpec(
        n=n,
        objective=objective,
        constraints=tuple(constraints),
        problem_class=problem_class,
        seed=seed,
    )
    logger.debug("Parsed problem n=%d m=%d degrees=%s", spec.n, spec.m, spec.degrees)
    return spec


def parse_problem_file(path, field):
    if not os.path.isfile(path):
        raise ProblemFileError("Problem file {0} doesn't exist".format(path))
    with open(path, "rb") as f:
        data = f.read()
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as e:
        line_start = data.rfind(b"\n", 0, e.start) + 1
        raise ProblemFileError(
            "Invalid UTF-8 byte 0x{0:02x}".format(data[e.start]),
            line=data.count(b"\n", 0, e.start) + 1,
            column=e.start - line_start + 1,
        ) from None
    return parse_problem_text(text, field)


def serialize_problem(spec):
    names = default_variable_names(spec.n)
    lines = [
        "# n={0} m={1} degrees={2}".format(spec.n, spec.m, ",".join(map(str, spec.degrees))),
        "variables: {0}".format(spec.n),
        "class: {0}".format(spec.problem_class),
    ]
    if spec.seed is not None:
        lines.append("seed: {0}".format(spec.seed))
    lines.append("objective: {0}".format(format_polynomial(spec.objective, names)))
    for f in spec.constraints:
        lines.append("constraint: {0}".format(format_polynomial(f, names)))
    return "\n".join(lines) + "\n"


def write_problem_file(spec, path):
    dir_name = os.path.dirname(path)
    if dir_name and not os.path.exists(dir_name):
        os.makedirs(dir_name)
    with open(path, "w", encoding="utf-8") as f:
        f.write(serialize_problem(spec))
