"""Numeric checks of the decrease lemma and the 6-delta bound on minimizers"""

from dataclasses import dataclass
from typing import Optional

import numpy as np

from app.ale.constraints import max_distance
from app.classical import classical_mds
from app.config import get_settings
from app.models import DissimilarityMatrix, WeightMatrix
from app.stress import solve_multistart, solve_unconstrained
from app.utils.logger import setup_logger

settings = get_settings()
logger = setup_logger(__name__)

SLACK_TOL = 1e-12


@dataclass
class DecreaseLemmaCheck:
    trials: int
    violations: int
    min_slack: float
    worst_trial: int

    @property
    def passed(self) -> bool:
        return self.violations == 0


@dataclass
class SixDeltaCheck:
    instances: int
    violations: int
    retried: int
    local_failures: int  # fixed by multistart, so the classical start only found a local solution
    worst_ratio: float  # max embedded distance / max delta

    @property
    def passed(self) -> bool:
        return self.violations == 0


def _unit_vectors(rng: np.random.Generator, count: int) -> np.ndarray:
    angle = rng.uniform(0.0, 2.0 * np.pi, size=count)
    return np.column_stack([np.cos(angle), np.sin(angle)])


def _lens_points(rng: np.random.Generator, z1: np.ndarray, z2: np.ndarray) -> np.ndarray:
    """Uniform points z with ||z1 - z|| <= ||z1 - z2|| and ||z2 - z|| <= ||z1 - z2||"""
    count = len(z1)
    span = np.linalg.norm(z1 - z2, axis=1)
    center = 0.5 * (z1 + z2)
    out = np.empty_like(z1)
    pending = np.arange(count)
    while len(pending):
        radius = span[pending] * np.sqrt(rng.uniform(0.0, 1.0, size=len(pending)))
        candidate = center[pending] + radius[:, None] * _unit_vectors(rng, len(pending))
        ok = (np.linalg.norm(candidate - z1[pending], axis=1) <= span[pending]) & (
            np.linalg.norm(candidate - z2[pending], axis=1) <= span[pending]
        )
        out[pending[ok]] = candidate[ok]
        pending = pending[~ok]
    return out


def check_decrease_lemma(
    trials: int,
    seed: int,
    delta_range=(1.0, 2.0),
    weight_range=(0.5, 2.0),
) -> DecreaseLemmaCheck:
    """
    Monte Carlo check of the two-point decrease inequality

    Each trial draws delta, delta_1, delta_2 <= delta, weights w_1, w_2 and
    planar points with ||z1 - z2|| > 3 delta (1 + rho^2) and z inside the
    lens ||z_i - z|| <= ||z1 - z2||. Moving z1 and z2 toward each other by
    eps in (0, sqrt(delta)] must lower sum_i w_i (||z_i - z|| - delta_i)^2
    by at least (w_1 + w_2) eps^2. The slack is the observed decrease minus
    that amount; slack below -1e-12 counts as a violation.

    delta is drawn from ``delta_range`` (default [1, 2]) so that
    eps <= sqrt(delta) <= delta. For delta below 1/4 the inequality can fail,
    e.g. z = z1 with delta_1 = delta_2 = 0 and eps = sqrt(delta).

    Returns:
        DecreaseLemmaCheck with the minimum slack over all trials
    """
    if trials < 1:
        raise ValueError("trials must be positive")
    rng = np.random.default_rng(seed)

    delta = rng.uniform(*delta_range, size=trials)
    targets = rng.uniform(0.0, 1.0, size=(trials, 2)) * delta[:, None]
    weights = rng.uniform(*weight_range, size=(trials, 2))
    rho2 = weights.max(axis=1) / weights.min(axis=1)

    span = 3.0 * delta * (1.0 + rho2) * (1.0 + rng.uniform(1e-3, 1.0, size=trials))
    direction = _unit_vectors(rng, trials)
    center = rng.uniform(-10.0, 10.0, size=(trials, 2))
    z1 = center + 0.5 * span[:, None] * direction
    z2 = center - 0.5 * span[:, None] * direction
    z = _lens_points(rng, z1, z2)

    # eps in (0, sqrt(delta)]
    eps = (1.0 - rng.uniform(0.0, 1.0, size=trials)) * np.sqrt(delta)
    step = eps[:, None] * direction
    moved1 = z1 - step
    moved2 = z2 + step

    decrease = np.zeros(trials)
    for k, (before, after, shift) in enumerate(((z1, moved1, step), (z2, moved2, -step))):
        a = np.linalg.norm(before - z, axis=1)
        b = np.linalg.norm(after - z, axis=1)
        # a - b = (a^2 - b^2) / (a + b) with a^2 - b^2 = (before - after) . (before + after - 2z)
        shrink = np.einsum("ij,ij->i", shift, before + after - 2.0 * z) / (a + b)
        # (a - t)^2 - (b - t)^2 = (a - b)(a + b - 2t)
        decrease += weights[:, k] * shrink * (a + b - 2.0 * targets[:, k])

    slack = decrease - weights.sum(axis=1) * eps**2
    violated = slack < -SLACK_TOL
    worst = int(np.argmin(slack))

    result = DecreaseLemmaCheck(
        trials=trials,
        violations=int(violated.sum()),
        min_slack=float(slack[worst]),
        worst_trial=worst,
    )
    logger.info(
        f"Decrease lemma: {result.violations} violations in {trials} trials, "
        f"min slack {result.min_slack:.3e}"
    )
    return result


def random_dissimilarity(n: int, rng: np.random.Generator, high: float = 2.0) -> DissimilarityMatrix:
    """Symmetric hollow matrix with off-diagonal entries uniform on (0, high)"""
    upper = np.triu(rng.uniform(0.0, high, size=(n, n)), k=1)
    return DissimilarityMatrix(upper + upper.T)


def check_six_delta_bound(
    instances: int,
    seed: int,
    n_range=(4, 30),
    d: int = 2,
    restarts: Optional[int] = None,
) -> SixDeltaCheck:
    """
    Check max_ij ||z_i - z_j|| <= 6 max(delta) on uniform-weight solutions

    Each random instance is solved from the classical-MDS start. The bound
    concerns global minimizers, so an instance that exceeds it is re-solved
    with random restarts and only counted as a violation if the best
    solution still exceeds it.
    """
    restarts = settings.multistart_restarts if restarts is None else restarts
    rng = np.random.default_rng(seed)
    violations = retried = local_failures = 0
    worst_ratio = 0.0

    for instance in range(instances):
        n = int(rng.integers(n_range[0], n_range[1] + 1))
        delta = random_dissimilarity(n, rng)
        weights = WeightMatrix.uniform(n)
        bound = 6.0 * delta.max_entry + 1e-6

        report = solve_unconstrained(delta, weights, classical_mds(delta, min(d, n - 1)).config)
        spread = max_distance(report.config)
        if spread > bound:
            retried += 1
            logger.warning(f"instance {instance}: spread {spread:.4g} > {bound:.4g}, retrying")
            report = solve_multistart(delta, weights, min(d, n - 1), rng, restarts=restarts)
            spread = max_distance(report.config)
            if spread > bound:
                violations += 1
            else:
                local_failures += 1

        if delta.max_entry > 0:
            worst_ratio = max(worst_ratio, spread / delta.max_entry)

    logger.info(f"6-delta bound: {violations} violations in {instances} instances ({retried} retried)")
    return SixDeltaCheck(
        instances=instances,
        violations=violations,
        retried=retried,
        local_failures=local_failures,
        worst_ratio=worst_ratio,
    )
