"""
Run the default desk-scale experiment grid and log a summary

Usage:
    python experiment_main.py [output_dir]
"""

import sys
from pathlib import Path

import numpy as np

from app.dissim import euclidean_distances
from app.harness import (
    ManifoldKind,
    Unconstrained,
    check_decrease_lemma,
    check_six_delta_bound,
    fixed_n_stability,
    median_trend,
    run_consistency_grid,
    run_interpolant_grid,
)
from app.storage import MatrixStorage
from app.stress import random_configuration
from app.utils.logger import setup_logger

logger = setup_logger(__name__)

SEEDS = list(range(10))
CONSISTENCY_SIZES = [50, 100, 200, 400]
INTERPOLANT_SIZES = [50, 100, 200]
INTERPOLANT_K = 1.2
STABILITY_KS = [1, 2, 4, 8]


def _is_decreasing(values) -> bool:
    values = list(values)
    return all(b < a for a, b in zip(values, values[1:]))


def main():
    """Main experiment workflow"""
    output_dir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("results")
    output_dir.mkdir(parents=True, exist_ok=True)
    storage = MatrixStorage()

    try:
        # Step 1: Lemma checks
        logger.info("Checking the two-point decrease inequality...")
        decrease = check_decrease_lemma(100_000, seed=0)
        logger.info("Checking the 6-delta bound on random instances...")
        six_delta = check_six_delta_bound(50, seed=0)

        # Step 2: Consistency on the interval
        logger.info(f"Consistency grid on the interval, sizes {CONSISTENCY_SIZES}, {len(SEEDS)} seeds...")
        consistency = run_consistency_grid(ManifoldKind.INTERVAL, CONSISTENCY_SIZES, Unconstrained(), 2.0, SEEDS)
        storage.write_table(output_dir / "consistency.csv", consistency)
        lp_trend = median_trend(consistency, "lp_error")
        ratio_trend = median_trend(consistency, "ratio_R")

        # Step 3: Fixed-n stability
        logger.info("Fixed-n stability under vanishing noise...")
        drifts = []
        for seed in range(20):
            rng = np.random.default_rng(seed)
            delta = euclidean_distances(random_configuration(20, 2, rng))
            trend = fixed_n_stability(delta, 0.1, steps=max(STABILITY_KS), rng=rng, ks=STABILITY_KS)
            drifts.append([drift for _, drift in trend])
        stability_trend = np.median(np.array(drifts), axis=0)

        # Step 4: Interpolant trend
        logger.info(f"Uniform interpolant grid, K={INTERPOLANT_K}...")
        interpolant = run_interpolant_grid(ManifoldKind.INTERVAL, INTERPOLANT_SIZES, INTERPOLANT_K, 200, SEEDS)
        storage.write_table(output_dir / "interpolant.csv", interpolant)
        sup_trend = median_trend(interpolant, "sup_error").dropna()

        # Summary
        logger.info("")
        logger.info("=" * 50)
        logger.info("Experiments complete!")
        logger.info(f"  Decrease inequality: {decrease.violations} violations, min slack {decrease.min_slack:.3e}")
        logger.info(f"  6-delta bound: {six_delta.violations} violations ({six_delta.local_failures} local)")
        logger.info(f"  Median L2 error by n: {lp_trend.round(6).to_dict()} decreasing={_is_decreasing(lp_trend)}")
        logger.info(f"  Median R_n by n: {ratio_trend.round(6).to_dict()}")
        logger.info(f"  Median stability drift for k={STABILITY_KS}: {np.round(stability_trend, 8).tolist()}")
        logger.info(f"  Median probe sup change by n: {sup_trend.round(6).to_dict()}")
        logger.info(f"  Lipschitz checks passed: {bool(interpolant['lipschitz_ok'].all())}")
        logger.info(f"  Tables written to {output_dir}")
        logger.info("=" * 50)

    except Exception as e:
        logger.error(f"Error in experiment workflow: {e}", exc_info=True)
        sys.exit(1)


if __name__ == "__main__":
    main()
