"""Exact solvers for single-item lot sizing with piecewise-linear production costs."""
from .arrangements import ArrangementSpace, lemma3_sort, naive_sort
from .baseline import dp1_solve, solve_baseline
from .dp_core import DpTables, phi
from .estimator import LotSizer, check_instance
from .fast import solve_fast
from .instance import (
    INFEASIBLE,
    Instance,
    InstanceParseError,
    InstanceValidationError,
    Schedule,
    ScheduleError,
    evaluate_schedule,
    generate_instance,
    load_instance,
    parse_instance,
    serialize_instance,
    validate,
)
from .oracle import OracleBudgetError, oracle_solve
from .results import Block, SolveResult

__all__ = [
    "ArrangementSpace", "Block", "DpTables", "INFEASIBLE", "Instance", "InstanceParseError",
    "InstanceValidationError", "LotSizer", "OracleBudgetError", "Schedule", "ScheduleError",
    "SolveResult", "check_instance", "dp1_solve", "evaluate_schedule", "generate_instance",
    "lemma3_sort", "load_instance", "naive_sort", "oracle_solve", "parse_instance", "phi",
    "serialize_instance", "solve_baseline", "solve_fast", "validate",
]
