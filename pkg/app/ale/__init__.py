"""Approximate Lipschitz Embedding"""

from app.ale.constraints import ConstraintSet, max_distance, max_violation, project_pair
from app.ale.dykstra import DykstraResult, dykstra_project, run_dykstra
from app.ale.solver import AleParams, solve_ale

__all__ = [
    "ConstraintSet",
    "max_distance",
    "max_violation",
    "project_pair",
    "DykstraResult",
    "dykstra_project",
    "run_dykstra",
    "AleParams",
    "solve_ale",
]
