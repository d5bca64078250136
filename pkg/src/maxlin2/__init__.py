"""Solvers for MaxLin2-AA and Max-r-Lin2-AA: linear equations over GF(2) above average."""

from .errors import DimensionError, Lin2Error, ParseError, PreconditionError
from .linsystem import Equation, LinearSystem, TransformLog, eq, excess, lift_assignment, reduce
from .solver import Verdict, guaranteed_excess_assignment, kernelize, kernelize_r, solve, solve_search_tree

__version__ = "0.1.0"

__all__ = [
    "DimensionError",
    "Equation",
    "Lin2Error",
    "LinearSystem",
    "ParseError",
    "PreconditionError",
    "TransformLog",
    "Verdict",
    "eq",
    "excess",
    "guaranteed_excess_assignment",
    "kernelize",
    "kernelize_r",
    "lift_assignment",
    "reduce",
    "solve",
    "solve_search_tree",
]
