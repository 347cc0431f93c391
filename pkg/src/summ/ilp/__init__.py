"""Exact 0/1 programming and the ILP summarizers built on it."""
from .bnb import solve_binary_program
from .models import (build_budget_model, build_score_model, build_set_cover_model,
                     occurrence_assignment)
from .program import BinaryProgram, Solution, read_solution, to_lp_format, write_lp
from .simplex import solve_lp
from .summarize import ilp_summarize, score_weights

__all__ = [
    "BinaryProgram", "Solution", "solve_binary_program", "solve_lp",
    "build_set_cover_model", "build_budget_model", "build_score_model",
    "occurrence_assignment", "ilp_summarize", "score_weights",
    "to_lp_format", "write_lp", "read_solution",
]
