"""Desk-scale consistency and stability experiments"""

import math
import time
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np
import pandas as pd

from app.ale import AleParams, solve_ale
from app.classical import classical_mds
from app.config import get_settings
from app.dissim import euclidean_distances, lp_discrepancy, ratio_metric, sup_discrepancy
from app.exceptions import DisconnectedGraph
from app.geodesics import KNN, build_graph, shortest_path_dissimilarity
from app.harness.manifolds import ManifoldSpec
from app.interpolation import LipschitzCheck, build_interpolant, lipschitz_checks
from app.models import Configuration, DissimilarityMatrix, WeightMatrix
from app.stress import GuttmanOperator, solve_unconstrained
from app.utils.logger import setup_logger

settings = get_settings()
logger = setup_logger(__name__)

GLOBALITY_CAVEAT = (
    "Solvers return local minimizers; consistency statements concern global "
    "minimizers, so trends are judged on medians across seeds."
)

TABLE_COLUMNS = [
    "manifold",
    "mode",
    "n",
    "seed",
    "p",
    "lp_error",
    "sup_error",
    "ratio_R",
    "stress_final",
    "max_violation",
    "wall_ms",
]


@dataclass(frozen=True)
class Unconstrained:
    """Plain raw-stress embedding"""

    label = "unconstrained"


@dataclass(frozen=True)
class Ale:
    """Approximate Lipschitz Embedding with cap constant K"""

    K: float
    label = "ale"


EmbeddingMode = Union[Unconstrained, Ale]


@dataclass
class TrendReport:
    """Per-size errors of one experiment run (one manifold, one seed)"""

    manifold: str
    mode: str
    seed: int
    p: float
    sample_sizes: List[int] = field(default_factory=list)
    lp_errors: List[float] = field(default_factory=list)
    sup_errors: List[float] = field(default_factory=list)
    ratio_bounds_R: List[float] = field(default_factory=list)
    runtimes: List[float] = field(default_factory=list)  # seconds
    stress_finals: List[float] = field(default_factory=list)
    max_violations: List[float] = field(default_factory=list)
    scale_factors: List[float] = field(default_factory=list)
    scaled_lp_errors: List[float] = field(default_factory=list)
    lipschitz_checks: List[LipschitzCheck] = field(default_factory=list)
    notes: str = GLOBALITY_CAVEAT

    def to_frame(self) -> pd.DataFrame:
        """One row per sample size with the experiment CSV columns"""
        rows = [
            {
                "manifold": self.manifold,
                "mode": self.mode,
                "n": n,
                "seed": self.seed,
                "p": self.p,
                "lp_error": self.lp_errors[k],
                "sup_error": self.sup_errors[k],
                "ratio_R": self.ratio_bounds_R[k],
                "stress_final": self.stress_finals[k],
                "max_violation": self.max_violations[k],
                "wall_ms": round(self.runtimes[k] * 1000.0, 3),
            }
            for k, n in enumerate(self.sample_sizes)
        ]
        return pd.DataFrame(rows, columns=TABLE_COLUMNS)


def knn_size(n: int) -> int:
    """k = max(4, ceil(2 log n))"""
    return max(settings.knn_min, math.ceil(settings.knn_log_factor * math.log(n)))


def geodesic_dissimilarity(manifold: ManifoldSpec, params: np.ndarray) -> DissimilarityMatrix:
    """Shortest-path distances on the k-NN graph of the sampled points"""
    n = params.shape[0]
    graph = build_graph(manifold.ambient(params), KNN(knn_size(n)))
    try:
        return shortest_path_dissimilarity(graph)
    except DisconnectedGraph as exc:
        raise DisconnectedGraph(exc.labels, n=n) from exc


def optimal_scale(embedded: DissimilarityMatrix, target: DissimilarityMatrix) -> float:
    """s >= 0 minimizing ||s * embedded - target||_F"""
    denominator = float(np.sum(embedded.entries**2))
    if denominator == 0:
        return 0.0
    return max(0.0, float(np.sum(embedded.entries * target.entries)) / denominator)


def _embed(
    delta: DissimilarityMatrix, d: int, mode: EmbeddingMode
) -> Tuple[Configuration, float, float]:
    """Embed from the classical start; returns (config, final stress, max violation)"""
    weights = WeightMatrix.uniform(delta.n)
    init = classical_mds(delta, d).config
    if isinstance(mode, Ale):
        report = solve_ale(delta, weights, init, AleParams(lipschitz_k=mode.K))
        return report.config, report.final_stress, report.final_violation
    report = solve_unconstrained(delta, weights, init)
    return report.config, report.final_stress, 0.0


def _check_sizes(sizes: Sequence[int]) -> None:
    if not sizes or any(b <= a for a, b in zip(sizes, sizes[1:])):
        raise ValueError(f"sizes must be strictly increasing, got {list(sizes)}")


def consistency_experiment(
    manifold: ManifoldSpec,
    sizes: Sequence[int],
    mode: EmbeddingMode,
    p: float = 2.0,
    use_true_dissimilarity: bool = False,
) -> TrendReport:
    """
    Compare embedded distances with the closed-form metric on growing samples

    For each n: sample, build the k-NN graph, take shortest-path
    dissimilarities, record R_n = exp(mu(delta_n, delta_inf)), embed in the
    manifold's embedding dimension from the classical start and measure the
    L^p and sup discrepancies between embedded distances and delta_inf.
    Errors are reported raw (scale 1); the optimally scaled L^p error and
    its scale are kept alongside.

    Args:
        manifold: Sample space and seed
        sizes: Strictly increasing sample sizes
        mode: ``Unconstrained()`` or ``Ale(K)``
        p: Exponent of the L^p discrepancy
        use_true_dissimilarity: Embed delta_inf itself instead of graph geodesics

    Raises:
        DisconnectedGraph: with the failing n
    """
    _check_sizes(sizes)
    rng = manifold.rng()
    report = TrendReport(manifold=manifold.kind.value, mode=_mode_label(mode), seed=manifold.seed, p=p)

    for n in sizes:
        started = time.perf_counter()
        params = manifold.sample(n, rng)
        truth = manifold.true_dissimilarity(params)
        delta = truth if use_true_dissimilarity else geodesic_dissimilarity(manifold, params)
        ratio_bound = math.exp(ratio_metric(delta, truth))
        if ratio_bound < 1.0 - 1e-12:
            logger.warning(f"n={n}: ratio bound {ratio_bound!r} below 1")
            report.notes += f" Ratio bound below 1 at n={n}."

        config, stress, violation = _embed(delta, manifold.embed_dim, mode)
        embedded = euclidean_distances(config)
        scale = optimal_scale(embedded, truth)

        report.sample_sizes.append(n)
        report.lp_errors.append(lp_discrepancy(embedded, truth, p))
        report.sup_errors.append(sup_discrepancy(embedded, truth))
        report.ratio_bounds_R.append(ratio_bound)
        report.stress_finals.append(stress)
        report.max_violations.append(violation)
        report.scale_factors.append(scale)
        report.scaled_lp_errors.append(
            lp_discrepancy(DissimilarityMatrix(scale * embedded.entries), truth, p)
        )
        report.runtimes.append(time.perf_counter() - started)
        logger.info(
            f"{manifold.kind.value} n={n}: L{p:g} error {report.lp_errors[-1]:.4e}, "
            f"R={ratio_bound:.6f}, stress {stress:.4e}"
        )

    return report


def uniform_interpolant_experiment(
    manifold: ManifoldSpec,
    sizes: Sequence[int],
    K: float,
    probe_count: int,
    check_pairs: int = 10_000,
    central: bool = False,
) -> TrendReport:
    """
    Uniform behavior of interpolated pseudometrics as the sample grows

    For each n: run ALE with constant K, build the Lipschitz interpolant of
    the configuration with c = K * R_n against the closed-form metric, and
    evaluate the interpolated pseudometric on ``probe_count`` fixed
    out-of-sample pairs. ``sup_errors`` holds the sup over probes of the
    change from the previous size (NaN for the first), ``lp_errors`` the RMS
    probe error against delta_inf; each size also runs the Lipschitz checks.
    """
    _check_sizes(sizes)
    rng = manifold.rng()
    probe_rng = manifold.rng(offset=10_000)
    probes_a = manifold.sample(probe_count, probe_rng)
    probes_b = manifold.sample(probe_count, probe_rng)
    probe_truth = manifold.metric().paired(probes_a, probes_b)

    report = TrendReport(manifold=manifold.kind.value, mode=f"ale(K={K:g})", seed=manifold.seed, p=2.0)
    previous: Optional[np.ndarray] = None

    for n in sizes:
        started = time.perf_counter()
        params = manifold.sample(n, rng)
        truth = manifold.true_dissimilarity(params)
        delta = geodesic_dissimilarity(manifold, params)
        ratio_bound = math.exp(ratio_metric(delta, truth))

        config, stress, violation = _embed(delta, manifold.embed_dim, Ale(K))
        interp = build_interpolant(params, config.points, K * ratio_bound, manifold.metric(), central=central)
        mapped_a = interp.evaluate_many(probes_a)
        mapped_b = interp.evaluate_many(probes_b)
        probe_values = np.linalg.norm(mapped_a - mapped_b, axis=1)

        report.sample_sizes.append(n)
        report.lp_errors.append(float(np.sqrt(np.mean((probe_values - probe_truth) ** 2))))
        report.sup_errors.append(
            float("nan") if previous is None else float(np.max(np.abs(probe_values - previous)))
        )
        report.ratio_bounds_R.append(ratio_bound)
        report.stress_finals.append(stress)
        report.max_violations.append(violation)
        report.scale_factors.append(interp.inflation)
        report.scaled_lp_errors.append(report.lp_errors[-1])
        report.lipschitz_checks.append(
            lipschitz_checks(interp, manifold.sample, manifold.rng(offset=20_000 + n), pairs=check_pairs)
        )
        report.runtimes.append(time.perf_counter() - started)
        previous = probe_values
        logger.info(
            f"{manifold.kind.value} n={n}: probe sup change {report.sup_errors[-1]:.4e}, "
            f"c={interp.constant_c:.6f}, checks passed={report.lipschitz_checks[-1].passed}"
        )

    return report


def symmetric_noise(n: int, rng: np.random.Generator) -> np.ndarray:
    """Symmetric hollow matrix with |N(0, 1)| entries"""
    upper = np.triu(np.abs(rng.standard_normal((n, n))), k=1)
    return upper + upper.T


def fixed_n_stability(
    delta: DissimilarityMatrix,
    perturbation_scale: float,
    steps: int,
    rng: Optional[np.random.Generator] = None,
    d: int = 2,
    ks: Optional[Sequence[int]] = None,
) -> List[Tuple[float, float]]:
    """
    Solution drift under vanishing perturbations of a fixed-size problem

    Solves delta_k = delta + (scale / k) E for one fixed nonnegative
    symmetric hollow noise matrix E and k = 1..steps (or the given ``ks``),
    always from the classical start of ``delta``, and compares each
    solution's distance matrix with that of the unperturbed solve.

    Returns:
        List of (L2 size of the perturbation, L2 discrepancy of solution distances)
    """
    if steps < 2 and ks is None:
        raise ValueError("steps must be at least 2")
    rng = rng or np.random.default_rng(settings.default_seed)
    ks = list(ks) if ks is not None else list(range(1, steps + 1))

    d = min(d, delta.n - 1)
    weights = WeightMatrix.uniform(delta.n)
    op = GuttmanOperator(weights)
    init = classical_mds(delta, d).config
    noise = symmetric_noise(delta.n, rng)

    limit = euclidean_distances(solve_unconstrained(delta, weights, init, operator=op).config)
    results = []
    for k in ks:
        perturbed = DissimilarityMatrix(delta.entries + (perturbation_scale / k) * noise)
        solution = solve_unconstrained(perturbed, weights, init, operator=op)
        results.append(
            (
                lp_discrepancy(perturbed, delta, 2.0),
                lp_discrepancy(euclidean_distances(solution.config), limit, 2.0),
            )
        )
        logger.debug(f"k={k}: perturbation {results[-1][0]:.4e}, drift {results[-1][1]:.4e}")
    return results


def _mode_label(mode: EmbeddingMode) -> str:
    return f"ale(K={mode.K:g})" if isinstance(mode, Ale) else "unconstrained"


def run_consistency_grid(
    kind,
    sizes: Sequence[int],
    mode: EmbeddingMode,
    p: float,
    seeds: Sequence[int],
    use_true_dissimilarity: bool = False,
) -> pd.DataFrame:
    """Concatenated experiment tables over seeds, ordered by seed then n"""
    frames = [
        consistency_experiment(ManifoldSpec(kind, seed), sizes, mode, p, use_true_dissimilarity).to_frame()
        for seed in seeds
    ]
    return pd.concat(frames, ignore_index=True)


def run_interpolant_grid(
    kind, sizes: Sequence[int], K: float, probe_count: int, seeds: Sequence[int], check_pairs: int = 10_000
) -> pd.DataFrame:
    frames = []
    for seed in seeds:
        report = uniform_interpolant_experiment(ManifoldSpec(kind, seed), sizes, K, probe_count, check_pairs)
        frame = report.to_frame()
        frame["lipschitz_ok"] = [check.passed for check in report.lipschitz_checks]
        frames.append(frame)
    return pd.concat(frames, ignore_index=True)


def median_trend(table: pd.DataFrame, column: str) -> pd.Series:
    """Median of ``column`` per sample size"""
    return table.groupby("n")[column].median().sort_index()
