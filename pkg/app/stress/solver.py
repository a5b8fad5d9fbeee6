"""Unconstrained raw stress minimization by Guttman iteration"""

from typing import Optional

import numpy as np

from app.classical import classical_mds
from app.config import get_settings
from app.exceptions import DimensionMismatch
from app.models import Configuration, DissimilarityMatrix, SolveReport, Termination, WeightMatrix
from app.stress.guttman import (
    GuttmanOperator,
    random_configuration,
    raw_stress,
    stationarity_residual,
    step_norm,
)
from app.utils.logger import setup_logger

settings = get_settings()
logger = setup_logger(__name__)


def relative_decrease(previous: float, current: float) -> float:
    """(previous - current) / max(previous, stress floor)"""
    return (previous - current) / max(previous, settings.stress_floor)


def solve_unconstrained(
    delta: DissimilarityMatrix,
    weights: WeightMatrix,
    init: Configuration,
    tol: Optional[float] = None,
    max_iters: Optional[int] = None,
    operator: Optional[GuttmanOperator] = None,
) -> SolveReport:
    """
    Iterate the Guttman transform from ``init`` until the relative stress
    decrease drops below ``tol`` or ``max_iters`` transforms were applied

    Args:
        delta: Target dissimilarities
        weights: Pair weights (their graph must be connected)
        init: Starting configuration; its dimension fixes d
        tol: Relative decrease threshold (default ``Settings.guttman_tol``)
        max_iters: Transform budget, at least 1 (default ``Settings.guttman_max_iters``)
        operator: Prebuilt operator for ``weights`` to share across solves

    Returns:
        SolveReport whose stress trace starts with the stress of ``init``
    """
    tol = settings.guttman_tol if tol is None else tol
    max_iters = settings.guttman_max_iters if max_iters is None else max_iters
    if max_iters < 1:
        raise ValueError("max_iters must be at least 1")
    if tol <= 0:
        raise ValueError("tol must be positive")
    if init.n != delta.n:
        raise DimensionMismatch(f"init has {init.n} points, delta has {delta.n}")

    op = operator or GuttmanOperator(weights)
    current = init
    stress = raw_stress(delta, weights, current)
    trace = [stress]

    if stationarity_residual(op, delta, current) <= settings.stationary_tol:
        logger.debug(f"Start is stationary (stress {stress:.6e})")
        return SolveReport(
            config=current.centered(),
            stress_trace=trace,
            iterations=0,
            termination=Termination.STATIONARY_START,
        )

    termination = Termination.MAX_ITERATIONS
    last_step = 0.0
    iterations = 0
    for iterations in range(1, max_iters + 1):
        updated = Configuration(op.apply(delta, current.points))
        new_stress = raw_stress(delta, weights, updated)
        last_step = step_norm(op.laplacian, current.points, updated.points)
        decrease = relative_decrease(stress, new_stress)
        trace.append(new_stress)
        logger.debug(f"iter {iterations}: stress {new_stress:.12e} (rel. decrease {decrease:.3e})")

        current, stress = updated, new_stress
        if decrease < tol:
            termination = Termination.CONVERGED
            break

    logger.info(
        f"Guttman iteration finished: {termination.value} after {iterations} "
        f"iterations, stress {stress:.6e}"
    )
    return SolveReport(
        config=current,
        stress_trace=trace,
        iterations=iterations,
        termination=termination,
        final_step_norm=last_step,
    )


def solve_multistart(
    delta: DissimilarityMatrix,
    weights: WeightMatrix,
    d: int,
    rng: np.random.Generator,
    restarts: Optional[int] = None,
    tol: Optional[float] = None,
    max_iters: Optional[int] = None,
) -> SolveReport:
    """
    Best (lowest final stress) of a classical-MDS start and ``restarts``
    random starts, sharing one GuttmanOperator
    """
    restarts = settings.multistart_restarts if restarts is None else restarts
    op = GuttmanOperator(weights)
    best = solve_unconstrained(
        delta, weights, classical_mds(delta, d).config, tol, max_iters, operator=op
    )
    scale = max(delta.max_entry, 1.0)
    for attempt in range(restarts):
        init = random_configuration(delta.n, d, rng, scale=scale)
        report = solve_unconstrained(delta, weights, init, tol, max_iters, operator=op)
        logger.debug(f"restart {attempt + 1}/{restarts}: stress {report.final_stress:.6e}")
        if report.final_stress < best.final_stress:
            best = report
    return best
