"""Raw stress evaluation and the unconstrained Guttman solver"""

from app.stress.guttman import (
    GuttmanOperator,
    guttman_transform,
    random_configuration,
    raw_stress,
    stationarity_residual,
    step_norm,
)
from app.stress.solver import relative_decrease, solve_multistart, solve_unconstrained

__all__ = [
    "GuttmanOperator",
    "guttman_transform",
    "random_configuration",
    "raw_stress",
    "stationarity_residual",
    "step_norm",
    "relative_decrease",
    "solve_multistart",
    "solve_unconstrained",
]
