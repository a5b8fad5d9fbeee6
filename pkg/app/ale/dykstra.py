"""Dykstra's cyclic projection onto the intersection of pairwise distance caps"""

from dataclasses import dataclass
from typing import Optional

import numpy as np
from numba import njit

from app.ale.constraints import ConstraintSet
from app.config import get_settings
from app.exceptions import DimensionMismatch, MaxCyclesExceeded
from app.models import Configuration

settings = get_settings()


def _dykstra_sweeps(points, pair_i, pair_j, caps, corrections, best, tol, max_cycles):
    """
    Run Dykstra cycles in place over the pairs in the given order

    corrections[p] holds the outer-normal increments of constraint p for
    rows pair_i[p] and pair_j[p]. The end-of-cycle iterate with the lowest
    max violation is copied into best. Returns
    (cycles, violation, converged, best_violation).
    """
    m = pair_i.shape[0]
    d = points.shape[1]
    shifted_i = np.empty(d)
    shifted_j = np.empty(d)
    violation = 0.0
    best_violation = np.inf

    for cycle in range(1, max_cycles + 1):
        max_change = 0.0
        for p in range(m):
            i = pair_i[p]
            j = pair_j[p]
            dist2 = 0.0
            for k in range(d):
                shifted_i[k] = points[i, k] + corrections[p, 0, k]
                shifted_j[k] = points[j, k] + corrections[p, 1, k]
                gap = shifted_i[k] - shifted_j[k]
                dist2 += gap * gap
            dist = np.sqrt(dist2)
            cap = caps[p]

            change2 = 0.0
            if dist > cap:
                factor = 0.0 if cap == 0.0 else 0.5 * cap / dist
                for k in range(d):
                    mid = 0.5 * (shifted_i[k] + shifted_j[k])
                    half = factor * (shifted_i[k] - shifted_j[k])
                    new_i = mid + half
                    new_j = mid - half
                    ci = shifted_i[k] - new_i
                    cj = shifted_j[k] - new_j
                    change2 += (ci - corrections[p, 0, k]) ** 2 + (cj - corrections[p, 1, k]) ** 2
                    corrections[p, 0, k] = ci
                    corrections[p, 1, k] = cj
                    points[i, k] = new_i
                    points[j, k] = new_j
            else:
                for k in range(d):
                    change2 += corrections[p, 0, k] ** 2 + corrections[p, 1, k] ** 2
                    corrections[p, 0, k] = 0.0
                    corrections[p, 1, k] = 0.0
                    points[i, k] = shifted_i[k]
                    points[j, k] = shifted_j[k]
            change = np.sqrt(change2)
            if change > max_change:
                max_change = change

        violation = 0.0
        for p in range(m):
            i = pair_i[p]
            j = pair_j[p]
            dist2 = 0.0
            for k in range(d):
                gap = points[i, k] - points[j, k]
                dist2 += gap * gap
            excess = np.sqrt(dist2) - caps[p]
            if excess > violation:
                violation = excess

        if violation < best_violation:
            best_violation = violation
            best[:, :] = points

        if violation <= tol and max_change <= tol:
            return cycle, violation, True, best_violation

    return max_cycles, violation, False, best_violation


_dykstra_kernel = njit(cache=True)(_dykstra_sweeps)


@dataclass
class DykstraResult:
    config: Configuration
    cycles: int
    violation: float
    converged: bool
    # Correction buffers at the last cycle, shape (m, 2, d) in finite_pairs() order
    corrections: Optional[np.ndarray] = None


def run_dykstra(
    config: Configuration,
    constraints: ConstraintSet,
    tol: Optional[float] = None,
    max_cycles: Optional[int] = None,
    corrections: Optional[np.ndarray] = None,
) -> DykstraResult:
    """
    Dykstra projection without raising on the cycle limit

    Both stopping conditions (max violation and per-cycle change of the
    correction buffers) are checked against ``tol * (1 + max finite cap)``.

    ``corrections`` warm-starts the buffers, e.g. from an earlier run on the
    same constraint set. The iteration then starts from ``config`` minus the
    summed corrections and still converges to the projection of ``config``.
    Passing the buffers of an unconverged run with the same ``config``
    resumes that run.

    When the cycle limit is hit, the returned configuration is the
    lowest-violation iterate seen.
    """
    tol = settings.dykstra_tol if tol is None else tol
    max_cycles = settings.dykstra_max_cycles if max_cycles is None else max_cycles
    if config.n != constraints.n:
        raise DimensionMismatch(f"config n={config.n}, constraints n={constraints.n}")
    if tol <= 0 or max_cycles < 1:
        raise ValueError("tol must be positive and max_cycles at least 1")

    pair_i, pair_j, caps = constraints.finite_pairs()
    if len(caps) == 0:
        return DykstraResult(config, 1, 0.0, True, np.zeros((0, 2, config.d)))

    points = np.array(config.points, dtype=np.float64, copy=True)
    if corrections is None:
        corrections = np.zeros((len(caps), 2, config.d))
    else:
        corrections = np.array(corrections, dtype=np.float64, copy=True)
        if corrections.shape != (len(caps), 2, config.d):
            raise DimensionMismatch(
                f"corrections shape {corrections.shape}, expected {(len(caps), 2, config.d)}"
            )
        np.subtract.at(points, pair_i, corrections[:, 0, :])
        np.subtract.at(points, pair_j, corrections[:, 1, :])

    best = np.empty_like(points)
    scaled_tol = tol * constraints.feasibility_scale()
    cycles, violation, converged, best_violation = _dykstra_kernel(
        points,
        pair_i.astype(np.int64),
        pair_j.astype(np.int64),
        caps.astype(np.float64),
        corrections,
        best,
        scaled_tol,
        int(max_cycles),
    )
    if converged:
        return DykstraResult(Configuration(points), int(cycles), max(0.0, float(violation)), True, corrections)
    return DykstraResult(Configuration(best), int(cycles), max(0.0, float(best_violation)), False, corrections)


def dykstra_project(
    config: Configuration,
    constraints: ConstraintSet,
    tol: Optional[float] = None,
    max_cycles: Optional[int] = None,
) -> Configuration:
    """
    Frobenius-nearest point of the intersection of all finite pairwise caps

    Pairs are visited in lexicographic order (i < j) with one correction
    buffer per constraint.

    Raises:
        MaxCyclesExceeded: carrying the lowest-violation iterate and its max violation
    """
    result = run_dykstra(config, constraints, tol, max_cycles)
    if not result.converged:
        raise MaxCyclesExceeded(result.config, result.violation, result.cycles)
    return result.config
