"""Subcommand implementations; each returns the process exit status"""

from dataclasses import asdict
from typing import Tuple

import numpy as np
import pandas as pd

from app.ale import AleParams, solve_ale
from app.classical import classical_mds
from app.cli.config import EmbedMode, ExperimentConfig, ExperimentKind, RunConfig, Subcommand
from app.config import get_settings
from app.dissim import euclidean_distances, triangle_defect, validate_dissimilarity
from app.exceptions import DimensionMismatch
from app.geodesics import KNN, Epsilon, build_graph, shortest_path_dissimilarity
from app.harness import (
    Ale,
    Unconstrained,
    check_decrease_lemma,
    check_six_delta_bound,
    fixed_n_stability,
    median_trend,
    run_consistency_grid,
    run_interpolant_grid,
)
from app.models import Configuration, DissimilarityMatrix, WeightMatrix
from app.storage import AleEmbedReport, EmbedReport, IsomapReport, MatrixStorage, ValidateReport
from app.stress import GuttmanOperator, random_configuration, solve_unconstrained, stationarity_residual
from app.utils.logger import setup_logger

settings = get_settings()
logger = setup_logger(__name__)


def _load_weights(config: RunConfig, storage: MatrixStorage, n: int) -> WeightMatrix:
    if config.weights_path is None:
        return WeightMatrix.uniform(n)
    weights = WeightMatrix(storage.read_matrix(config.weights_path))
    if weights.n != n:
        raise DimensionMismatch(f"weights are {weights.n}x{weights.n}, dissimilarities are {n}x{n}")
    return weights


def initial_configuration(delta: DissimilarityMatrix, d: int, seed: int) -> Configuration:
    """Classical-MDS start, or a seeded random start when all classical points coincide"""
    init = classical_mds(delta, d).config
    if np.max(np.abs(init.points), initial=0.0) > 0 or delta.max_entry == 0:
        return init
    logger.warning("Classical initialization collapsed to a point; using a random start")
    return random_configuration(delta.n, d, np.random.default_rng(seed), scale=delta.max_entry)


def _embed(
    config: RunConfig, delta: DissimilarityMatrix, weights: WeightMatrix, d: int
) -> Tuple[Configuration, EmbedReport]:
    op = GuttmanOperator(weights)
    init = initial_configuration(delta, d, config.rng_seed)

    if config.subcommand == Subcommand.ALE_EMBED:
        overrides = {"lipschitz_k": config.k_lipschitz}
        if config.tol is not None:
            overrides["outer_tol"] = config.tol
        if config.max_iters is not None:
            overrides["outer_max_iters"] = config.max_iters
        params = AleParams(**overrides)
        result = solve_ale(delta, weights, init, params, operator=op)
        report = AleEmbedReport(
            n=delta.n,
            d=d,
            stress_trace=result.stress_trace,
            final_stress=result.final_stress,
            iterations=result.outer_iterations,
            termination=result.termination.value,
            stationarity_residual=stationarity_residual(op, delta, result.config),
            final_step_norm=result.final_step_norm,
            K=params.lipschitz_k,
            max_violation_trace=result.max_violation_trace,
            dykstra_cycles_per_iter=result.dykstra_cycles_per_iter,
            warnings=result.warnings,
        )
        return result.config, report

    result = solve_unconstrained(delta, weights, init, config.tol, config.max_iters, operator=op)
    report = EmbedReport(
        n=delta.n,
        d=d,
        stress_trace=result.stress_trace,
        final_stress=result.final_stress,
        iterations=result.iterations,
        termination=result.termination.value,
        stationarity_residual=stationarity_residual(op, delta, result.config),
        final_step_norm=result.final_step_norm,
    )
    return result.config, report


def run_embed(config: RunConfig) -> int:
    """embed / ale-embed: dissimilarity CSV in, configuration CSV and JSON report out"""
    storage = MatrixStorage()
    delta = validate_dissimilarity(storage.read_matrix(config.input_path))
    weights = _load_weights(config, storage, delta.n)

    embedding, report = _embed(config, delta, weights, config.d)
    storage.write_matrix(config.output_path, embedding.points)
    storage.write_report(config.report_path, report)
    logger.info(f"Wrote {delta.n}x{config.d} configuration to {config.output_path}")
    return 0


def run_isomap(config: RunConfig) -> int:
    """Point cloud in, shortest-path dissimilarities out, optionally embedded"""
    storage = MatrixStorage()
    points = storage.read_matrix(config.input_path)
    rule = KNN(config.knn) if config.knn is not None else Epsilon(config.epsilon)

    graph = build_graph(points, rule)
    delta = shortest_path_dissimilarity(graph)
    storage.write_matrix(config.output_path, delta.entries)

    embed_report = None
    if config.embed_dim is not None:
        embedding, embed_report = _embed(config, delta, WeightMatrix.uniform(delta.n), config.embed_dim)
        embedding_path = config.output_path.with_name(config.output_path.stem + ".embedding.csv")
        storage.write_matrix(embedding_path, embedding.points)

    report = IsomapReport(
        n=graph.n,
        edges=len(graph.adjacency),
        zero_weight_edges=len(graph.zero_weight_edges),
        rule=repr(rule),
        embed=embed_report,
    )
    storage.write_report(config.report_path, report)
    return 0


def run_validate(config: RunConfig) -> int:
    """Exit 0 for a metric, 1 for a valid dissimilarity that breaks the triangle inequality"""
    storage = MatrixStorage()
    delta = validate_dissimilarity(storage.read_matrix(config.input_path))
    defect = triangle_defect(delta)
    is_metric = defect <= settings.symmetry_tol * max(1.0, delta.max_entry)

    report = ValidateReport(
        n=delta.n, valid=True, max_entry=delta.max_entry, triangle_defect=defect, metric=is_metric
    )
    if config.output_path is not None:
        storage.write_report(config.report_path, report)
    logger.info(f"{config.input_path}: valid n={delta.n}, triangle defect {defect:.3e}")
    return 0 if is_metric else 1


def _stability_table(experiment: ExperimentConfig) -> pd.DataFrame:
    rows = []
    for seed in experiment.seeds:
        rng = np.random.default_rng(seed)
        delta = euclidean_distances(random_configuration(experiment.n, 2, rng))
        trend = fixed_n_stability(
            delta, experiment.perturbation_scale, steps=max(experiment.ks), rng=rng, ks=experiment.ks
        )
        for k, (size, drift) in zip(experiment.ks, trend):
            rows.append({"seed": seed, "n": experiment.n, "k": k, "perturbation": size, "discrepancy": drift})
    return pd.DataFrame(rows)


def run_experiment(config: RunConfig) -> int:
    """Run a harness experiment grid; exit 1 when a lemma check finds violations"""
    experiment = ExperimentConfig.from_file(
        config.input_path,
        mode=config.mode,
        p=config.p,
        k=config.k_lipschitz,
        seeds=[config.seed] if config.seed is not None else None,
    )
    status = 0

    if experiment.experiment == ExperimentKind.CONSISTENCY:
        mode = Ale(experiment.k) if experiment.mode == EmbedMode.ALE else Unconstrained()
        table = run_consistency_grid(
            experiment.manifold, experiment.sizes, mode, experiment.p, experiment.seeds,
            use_true_dissimilarity=experiment.use_true_dissimilarity,
        )
        logger.info(f"Median L{experiment.p:g} error by n: {median_trend(table, 'lp_error').to_dict()}")
    elif experiment.experiment == ExperimentKind.INTERPOLANT:
        table = run_interpolant_grid(
            experiment.manifold, experiment.sizes, experiment.k, experiment.probe_count,
            experiment.seeds, experiment.check_pairs,
        )
        status = 0 if table["lipschitz_ok"].all() else 1
    elif experiment.experiment == ExperimentKind.STABILITY:
        table = _stability_table(experiment)
        logger.info(f"Median drift by k: {table.groupby('k')['discrepancy'].median().to_dict()}")
    elif experiment.experiment == ExperimentKind.DECREASE:
        checks = [(seed, check_decrease_lemma(experiment.trials, seed)) for seed in experiment.seeds]
        table = pd.DataFrame(
            [{"seed": seed, **asdict(check), "passed": check.passed} for seed, check in checks]
        )
        status = 0 if table["passed"].all() else 1
    else:
        checks = [(seed, check_six_delta_bound(experiment.instances, seed)) for seed in experiment.seeds]
        table = pd.DataFrame(
            [{"seed": seed, **asdict(check), "passed": check.passed} for seed, check in checks]
        )
        status = 0 if table["passed"].all() else 1

    if config.output_path is not None:
        MatrixStorage().write_table(config.output_path, table)
    return status


HANDLERS = {
    Subcommand.EMBED: run_embed,
    Subcommand.ALE_EMBED: run_embed,
    Subcommand.ISOMAP: run_isomap,
    Subcommand.VALIDATE: run_validate,
    Subcommand.EXPERIMENT: run_experiment,
}


def run(config: RunConfig) -> int:
    return HANDLERS[config.subcommand](config)
