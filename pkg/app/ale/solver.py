"""Approximate Lipschitz Embedding: projected Guttman iteration"""

import dataclasses
from typing import List, Optional

import numpy as np
from pydantic import BaseModel, Field

from app.ale.constraints import ConstraintSet
from app.ale.dykstra import DykstraResult, run_dykstra
from app.config import get_settings
from app.exceptions import DimensionMismatch
from app.models import AleReport, Configuration, DissimilarityMatrix, Termination, WeightMatrix
from app.stress.guttman import GuttmanOperator, raw_stress, step_norm
from app.stress.solver import relative_decrease
from app.utils.logger import setup_logger

settings = get_settings()
logger = setup_logger(__name__)


class AleParams(BaseModel):
    """Cap constant K and the tolerances of both loops"""

    lipschitz_k: float = Field(..., ge=0.0)
    dykstra_tol: float = Field(default_factory=lambda: settings.dykstra_tol, gt=0.0)
    dykstra_max_cycles: int = Field(default_factory=lambda: settings.dykstra_max_cycles, gt=0)
    outer_tol: float = Field(default_factory=lambda: settings.ale_outer_tol, gt=0.0)
    outer_max_iters: int = Field(default_factory=lambda: settings.ale_outer_max_iters, gt=0)
    schedule_cycles: bool = Field(default_factory=lambda: settings.ale_schedule_cycles)
    projection_rounds: int = Field(default_factory=lambda: settings.ale_projection_rounds, gt=0)
    step_tol: float = Field(default_factory=lambda: settings.ale_step_tol, gt=0.0)

    model_config = {"frozen": True}

    def cycle_budget(self, outer_iteration: int) -> int:
        """Dykstra cycles allowed per run at an outer iteration (approximate early projections when scheduled)"""
        if self.schedule_cycles:
            return min(self.dykstra_max_cycles, 10 + outer_iteration)
        return self.dykstra_max_cycles

    def rounds(self) -> int:
        """Dykstra runs allowed per projection; scheduled projections are never resumed"""
        return 1 if self.schedule_cycles else self.projection_rounds


def _project(
    config: Configuration,
    constraints: ConstraintSet,
    params: AleParams,
    budget: int,
    corrections: Optional[np.ndarray],
    warnings: List[str],
    label: str,
) -> DykstraResult:
    result = run_dykstra(config, constraints, params.dykstra_tol, budget, corrections)
    cycles = result.cycles
    for _ in range(params.rounds() - 1):
        if result.converged:
            break
        result = run_dykstra(config, constraints, params.dykstra_tol, budget, result.corrections)
        cycles += result.cycles

    if not result.converged:
        message = f"{label}: Dykstra stopped after {cycles} cycles with violation {result.violation:.3e}"
        logger.warning(message)
        warnings.append(message)
    return dataclasses.replace(result, cycles=cycles)


def solve_ale(
    delta: DissimilarityMatrix,
    weights: WeightMatrix,
    init: Configuration,
    params: AleParams,
    operator: Optional[GuttmanOperator] = None,
) -> AleReport:
    """
    Minimize raw stress subject to ||z_i - z_j|| <= K delta_ij

    Each outer step applies the Guttman transform and then projects onto the
    caps with Dykstra's algorithm. ``init`` is projected first so the traces
    start from a feasible point. Correction buffers carry over from one
    projection to the next. A projection that hits ``dykstra_max_cycles`` is
    resumed up to ``projection_rounds`` runs in total; if it still has not
    converged, the lowest-violation iterate is used and the run is recorded
    in ``warnings``.

    The run counts as converged once the relative stress decrease drops
    below ``outer_tol`` and the last step norm is below ``step_tol``.

    Args:
        delta: Target dissimilarities
        weights: Pair weights
        init: Starting configuration
        params: ALE parameters
        operator: Prebuilt GuttmanOperator for ``weights``

    Returns:
        AleReport with stress and max-violation traces
    """
    if not (delta.n == weights.n == init.n):
        raise DimensionMismatch(f"delta n={delta.n}, weights n={weights.n}, init n={init.n}")

    op = operator or GuttmanOperator(weights)
    constraints = ConstraintSet.from_delta(delta, params.lipschitz_k)
    warnings: List[str] = []

    start = _project(init, constraints, params, params.cycle_budget(0), None, warnings, "initial projection")
    current = start.config
    corrections = start.corrections
    stress = raw_stress(delta, weights, current)
    stress_trace = [stress]
    violation_trace = [start.violation]
    cycles_per_iter = []

    termination = Termination.MAX_ITERATIONS
    last_step = 0.0
    iteration = 0
    for iteration in range(1, params.outer_max_iters + 1):
        transformed = Configuration(op.apply(delta, current.points))
        result = _project(
            transformed,
            constraints,
            params,
            params.cycle_budget(iteration),
            corrections,
            warnings,
            f"iteration {iteration}",
        )
        new_stress = raw_stress(delta, weights, result.config)
        last_step = step_norm(op.laplacian, current.points, result.config.points)
        decrease = relative_decrease(stress, new_stress)

        stress_trace.append(new_stress)
        violation_trace.append(result.violation)
        cycles_per_iter.append(result.cycles)
        logger.debug(
            f"iter {iteration}: stress {new_stress:.12e}, violation {result.violation:.3e}, "
            f"{result.cycles} Dykstra cycles, step {last_step:.3e}"
        )

        current, stress, corrections = result.config, new_stress, result.corrections
        if decrease < params.outer_tol and last_step < params.step_tol:
            termination = Termination.CONVERGED
            break

    logger.info(
        f"ALE (K={params.lipschitz_k}) finished: {termination.value} after {iteration} "
        f"iterations, stress {stress:.6e}, violation {violation_trace[-1]:.3e}"
    )
    return AleReport(
        config=current,
        stress_trace=stress_trace,
        max_violation_trace=violation_trace,
        outer_iterations=iteration,
        dykstra_cycles_per_iter=cycles_per_iter,
        termination=termination,
        final_step_norm=last_step,
        lipschitz_k=params.lipschitz_k,
        warnings=warnings,
    )
