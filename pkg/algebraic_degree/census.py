"""Predicted algebraic degree versus the exact critical-point count."""
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

from algebraic_degree.degree_formula import general_degree
from algebraic_degree.groebner import (
    BudgetExceededError,
    buchberger,
    is_zero_dimensional,
    minimal_polynomial,
    quotient_dimension,
)
from algebraic_degree.kkt_builder import build_minor_system, critical_system
from algebraic_degree.polyring import GREVLEX
from algebraic_degree.problems import GenConfig, derive_seed, generate_instance

logger = logging.getLogger(__name__)

STATUS_MATCH = "match"
STATUS_MISMATCH = "mismatch"
STATUS_NOT_ZERO_DIMENSIONAL = "not-zero-dimensional"
STATUS_TIMED_OUT = "timed-out"


@dataclass(frozen=True)
class CensusOptions:
    budget: float = 60.0
    minpoly: bool = False
    retries: int = 3
    ordering: object = GREVLEX


@dataclass(frozen=True)
class CensusReport:
    problem_class: str
    n: int
    m: int
    k: object
    p: object
    degrees: tuple
    prime: int
    seed: object
    predicted_degree: int
    zero_dimensional: bool
    computed_count: object
    minpoly_degrees: object
    match: bool
    retries: int
    wall_ms: int
    status: str
    diagnostic: str = ""

    def __post_init__(self):
        if self.match and not (
            self.zero_dimensional and self.computed_count == self.predicted_degree
        ):
            raise ValueError("match requires a zero-dimensional system with the predicted count")

    def to_dict(self):
        return {
            "class": self.problem_class,
            "n": self.n,
            "m": self.m,
            "k": self.k,
            "p": self.p,
            "degrees": list(self.degrees),
            "prime": self.prime,
            "seed": self.seed,
            "predicted_degree": str(self.predicted_degree),
            "zero_dimensional": self.zero_dimensional,
            "computed_count": self.computed_count,
            "minpoly_degrees": None
            if self.minpoly_degrees is None
            else list(self.minpoly_degrees),
            "match": self.match,
            "retries": self.retries,
            "wall_ms": self.wall_ms,
            "status": self.status,
            "diagnostic": self.diagnostic,
        }


@dataclass(frozen=True)
class SolveOutcome:
    zero_dimensional: bool
    count: object
    minpoly_degrees: object


@dataclass(frozen=True)
class FormulationComparison:
    status: str
    lagrange_count: object = None
    minor_count: object = None
    lagrange_minpoly: object = None
    minor_minpoly: object = None
    minors_in_lagrange_ideal: object = None

    @property
    def lagrange_minpoly_degree(self):
        return None if self.lagrange_minpoly is None else self.lagrange_minpoly.total_degree()

    @property
    def minor_minpoly_degree(self):
        return None if self.minor_minpoly is None else self.minor_minpoly.total_degree()

    @property
    def agree(self):
        return (
            self.lagrange_count is not None
            and self.lagrange_count == self.minor_count
            and self.lagrange_minpoly_degree == self.minor_minpoly_degree
        )

    @property
    def x_projections_agree(self):
        """Minor variety contains the projection and both have the same x1 coordinates."""
        return bool(
            self.agree
            and self.minors_in_lagrange_ideal
            and self.lagrange_minpoly == self.minor_minpoly
        )

    def to_dict(self):
        return {
            "status": self.status,
            "lagrange_count": self.lagrange_count,
            "minor_count": self.minor_count,
            "lagrange_x1_minpoly_degree": self.lagrange_minpoly_degree,
            "minor_x1_minpoly_degree": self.minor_minpoly_degree,
            "minors_in_lagrange_ideal": self.minors_in_lagrange_ideal,
            "agree": self.agree,
            "x_projections_agree": self.x_projections_agree,
        }


def solve_system(system, ordering=GREVLEX, deadline=None, minpoly=False):
    gb = buchberger(list(system.equations), ordering, deadline=deadline)
    if not is_zero_dimensional(gb, system.nvars):
        return SolveOutcome(False, None, None)
    count = quotient_dimension(gb)
    degrees = None
    if minpoly:
        degrees = tuple(
            minimal_polynomial(gb, v).total_degree() for v in system.original_variables
        )
    return SolveOutcome(True, count, degrees)


def _diagnose(spec, outcome):
    notes = []
    if not outcome.zero_dimensional:
        notes.append("critical system is not zero-dimensional")
    if outcome.minpoly_degrees is not None and outcome.count:
        for i, d in enumerate(outcome.minpoly_degrees):
            if d != outcome.count:
                notes.append(
                    "x{0} minimal polynomial degree {1} differs from count {2}".format(
                        i + 1, d, outcome.count
                    )
                )
    if spec.metadata.get("sharp") is False:
        notes.append("cone rows too few for the bound to be attained")
    if spec.metadata.get("lp_reduction"):
        notes.append("solved as an LP with {0} linear constraints".format(spec.m))
    degenerate = spec.metadata.get("degenerate_constraints")
    if degenerate:
        notes.append("degenerate cone constraints {0}".format(list(degenerate)))
    return "; ".join(notes)


def _build_report(spec, predicted, outcome, status, retries, started, seed):
    cone = spec.cone
    # the LP reduction solves n linear constraints; report the requested cone shape
    shape = spec
    if cone is not None and spec.metadata.get("lp_reduction"):
        shape = cone.degree_shape()
    zero_dimensional = bool(outcome and outcome.zero_dimensional)
    count = outcome.count if outcome else None
    match = status == STATUS_MATCH
    return CensusReport(
        problem_class=spec.problem_class,
        n=spec.n,
        m=shape.m,
        k=cone.k if cone is not None else None,
        p=cone.p if cone is not None else None,
        degrees=tuple(shape.degrees),
        prime=spec.field.p,
        seed=seed,
        predicted_degree=predicted,
        zero_dimensional=zero_dimensional,
        computed_count=count,
        minpoly_degrees=outcome.minpoly_degrees if outcome else None,
        match=match,
        retries=retries,
        wall_ms=int((time.perf_counter() - started) * 1000),
        status=status,
        diagnostic=_diagnose(spec, outcome) if outcome else "census budget exhausted",
    )


def run_census(source, options=CensusOptions()):
    """Count critical points of a spec, or of a generated instance with retries."""
    started = time.perf_counter()
    deadline = time.monotonic() + options.budget if options.budget else None
    generated = isinstance(source, GenConfig)
    attempts = options.retries + 1 if generated else 1

    spec = None
    outcome = None
    for attempt in range(attempts):
        if generated:
            spec = generate_instance(source.with_seed(derive_seed(source.seed, attempt)))
        else:
            spec = source
        predicted = general_degree(spec.degree_shape())
        system = critical_system(spec)
        try:
            outcome = solve_system(system, options.ordering, deadline, options.minpoly)
        except BudgetExceededError as e:
            logger.warning("Census timed out: %s", e)
            seed = source.seed if generated else spec.seed
            return _build_report(spec, predicted, None, STATUS_TIMED_OUT, attempt, started, seed)
        logger.info(
            "Attempt %d: seed=%s zero_dimensional=%s count=%s predicted=%d",
            attempt,
            spec.seed,
            outcome.zero_dimensional,
            outcome.count,
            predicted,
        )
        if outcome.zero_dimensional:
            break
        if attempt + 1 < attempts:
            logger.warning("Instance not zero-dimensional, retrying with a fresh seed")

    if not outcome.zero_dimensional:
        status = STATUS_NOT_ZERO_DIMENSIONAL
    elif outcome.count == predicted:
        status = STATUS_MATCH
    else:
        status = STATUS_MISMATCH
    seed = source.seed if generated else spec.seed
    return _build_report(spec, predicted, outcome, status, attempt, started, seed)


def _run_one(args):
    config, options = args
    return run_census(config, options)


def run_census_batch(config, options=CensusOptions(), repeat=1, workers=1):
    """Census of seeds seed..seed+repeat-1, sorted by seed."""
    configs = [config.with_seed(config.seed + i) for i in range(repeat)]
    jobs = [(c, options) for c in configs]
    if workers > 1 and repeat > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_one, jobs))
    else:
        reports = [_run_one(job) for job in jobs]
    return sorted(reports, key=lambda r: r.seed)


def compare_formulations(spec, options=CensusOptions()):
    """Lagrange versus minor system: counts, x1 minimal polynomials and ideal containment.

    Every maximal minor of the Jacobian-like matrix lies in the Lagrange
    ideal, so the minor variety contains the x-projection of the Lagrange
    variety. Equal counts and equal x1 minimal polynomials close the gap.
    """
    deadline = time.monotonic() + options.budget if options.budget else None
    lagrange, minor = critical_system(spec), build_minor_system(spec)
    try:
        bases = [
            buchberger(list(system.equations), options.ordering, deadline=deadline)
            for system in (lagrange, minor)
        ]
    except BudgetExceededError as e:
        logger.warning("Cross-check timed out: %s", e)
        return FormulationComparison(STATUS_TIMED_OUT)
    lagrange_gb, minor_gb = bases
    if not (
        is_zero_dimensional(lagrange_gb, lagrange.nvars)
        and is_zero_dimensional(minor_gb, minor.nvars)
    ):
        logger.warning("Cross-check system is not zero-dimensional")
        return FormulationComparison(STATUS_NOT_ZERO_DIMENSIONAL)
    contained = all(
        lagrange_gb.reduce(lagrange.ring.embed(g)).is_zero() for g in minor.equations
    )
    comparison = FormulationComparison(
        STATUS_MATCH,
        lagrange_count=quotient_dimension(lagrange_gb),
        minor_count=quotient_dimension(minor_gb),
        lagrange_minpoly=minimal_polynomial(lagrange_gb, 0),
        minor_minpoly=minimal_polynomial(minor_gb, 0),
        minors_in_lagrange_ideal=contained,
    )
    if not comparison.x_projections_agree:
        comparison = replace(comparison, status=STATUS_MISMATCH)
    return comparison


def emit_report(report, fmt="json"):
    if isinstance(report, (list, tuple)):
        if fmt == "json":
            return (json.dumps([r.to_dict() for r in report], indent=2) + "\n").encode("utf-8")
        return b"\n".join(emit_report(r, fmt) for r in report)
    if fmt == "json":
        return (json.dumps(report.to_dict(), indent=2) + "\n").encode("utf-8")
    if fmt != "text":
        raise ValueError("Unknown report format {0!r}".format(fmt))
    data = report.to_dict()
    width = max(len(key) for key in data)
    lines = []
    for key, value in data.items():
        if value is None or value == "":
            value = "-"
        elif isinstance(value, list):
            value = ", ".join(map(str, value))
        lines.append("{0:<{1}}  {2}".format(key, width, value))
    return ("\n".join(lines) + "\n").encode("utf-8")
