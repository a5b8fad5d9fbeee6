import math

import numpy as np
import pytest

from app.ale import max_distance
from app.classical import classical_mds
from app.dissim import euclidean_distances
from app.harness import (
    Ale,
    ManifoldKind,
    ManifoldSpec,
    TrendReport,
    Unconstrained,
    check_decrease_lemma,
    check_six_delta_bound,
    consistency_experiment,
    fixed_n_stability,
    knn_size,
    median_trend,
    run_consistency_grid,
    run_interpolant_grid,
    verify_metric_axioms,
)
from app.harness.experiments import TABLE_COLUMNS, optimal_scale
from app.models import Configuration, DissimilarityMatrix, WeightMatrix
from app.stress import random_configuration, solve_unconstrained


@pytest.mark.parametrize("kind", list(ManifoldKind))
def test_closed_form_metrics_satisfy_axioms(kind):
    assert verify_metric_axioms(ManifoldSpec(kind), triples=5000, tol=1e-9).passed


@pytest.mark.parametrize(
    "kind, intrinsic, embed, ambient",
    [
        (ManifoldKind.INTERVAL, 1, 1, 2),
        (ManifoldKind.CIRCLE, 1, 2, 2),
        (ManifoldKind.SWISS_ROLL, 2, 2, 3),
    ],
)
def test_manifold_dimensions(kind, intrinsic, embed, ambient):
    manifold = ManifoldSpec(kind)
    params = manifold.sample(7, manifold.rng())
    assert params.shape == (7, intrinsic)
    assert manifold.embed_dim == embed
    assert manifold.ambient(params).shape == (7, ambient)


def test_circle_metric_wraps_around():
    manifold = ManifoldSpec(ManifoldKind.CIRCLE)
    assert manifold.metric()(0.1, 2 * np.pi - 0.1) == pytest.approx(0.2)


def test_bent_interval_chords_never_exceed_arcs(rng):
    manifold = ManifoldSpec(ManifoldKind.INTERVAL)
    params = manifold.sample(50, rng)
    chords = euclidean_distances(Configuration(manifold.ambient(params))).entries
    assert np.all(chords <= manifold.true_dissimilarity(params).entries + 1e-12)


def test_knn_size():
    assert knn_size(2) == 4
    assert knn_size(50) == math.ceil(2 * math.log(50))
    assert knn_size(400) == 12


def test_decrease_inequality_holds():
    check = check_decrease_lemma(100_000, seed=0)
    assert check.passed
    assert check.trials == 100_000
    assert check.min_slack >= -1e-12


def test_decrease_inequality_rejects_empty_run():
    with pytest.raises(ValueError):
        check_decrease_lemma(0, seed=0)


def test_six_delta_on_regular_simplex():
    delta = DissimilarityMatrix(np.ones((4, 4)) - np.eye(4))
    report = solve_unconstrained(delta, WeightMatrix.uniform(4), classical_mds(delta, 2).config)
    assert max_distance(report.config) <= 6.0 * delta.max_entry


@pytest.mark.slow
def test_six_delta_bound_on_random_instances():
    check = check_six_delta_bound(50, seed=0)
    assert check.passed
    assert check.worst_ratio <= 6.0


def test_zero_perturbation_gives_zero_drift(rng):
    delta = euclidean_distances(random_configuration(12, 2, rng))
    for size, drift in fixed_n_stability(delta, 0.0, steps=3, rng=rng):
        assert size == 0.0
        assert drift == 0.0


def test_stability_needs_two_steps(rng):
    delta = euclidean_distances(random_configuration(5, 2, rng))
    with pytest.raises(ValueError):
        fixed_n_stability(delta, 0.1, steps=1, rng=rng)


@pytest.mark.slow
def test_stability_drift_shrinks_with_perturbation(rng):
    drifts = []
    for _ in range(20):
        delta = euclidean_distances(random_configuration(20, 2, rng))
        trend = fixed_n_stability(delta, 0.1, steps=8, rng=rng, ks=[1, 2, 4, 8])
        sizes = [size for size, _ in trend]
        assert all(b < a for a, b in zip(sizes, sizes[1:]))
        drifts.append([drift for _, drift in trend])
    median = np.median(np.array(drifts), axis=0)
    assert all(b < a for a, b in zip(median, median[1:]))


def test_true_dissimilarity_on_interval_is_recovered():
    manifold = ManifoldSpec(ManifoldKind.INTERVAL, seed=3)
    report = consistency_experiment(manifold, [20, 40], Unconstrained(), use_true_dissimilarity=True)
    assert report.sample_sizes == [20, 40]
    assert report.ratio_bounds_R == [1.0, 1.0]
    assert max(report.lp_errors) < 1e-6
    assert report.max_violations == [0.0, 0.0]


def test_consistency_rejects_unsorted_sizes():
    with pytest.raises(ValueError):
        consistency_experiment(ManifoldSpec(ManifoldKind.INTERVAL), [40, 20], Unconstrained())


def test_geodesic_ratio_bound_is_at_least_one():
    report = consistency_experiment(ManifoldSpec(ManifoldKind.CIRCLE, seed=1), [30], Unconstrained())
    assert report.ratio_bounds_R[0] >= 1.0
    assert report.lp_errors[0] >= 0.0


def test_optimal_scale():
    target = DissimilarityMatrix(np.array([[0.0, 2.0], [2.0, 0.0]]))
    embedded = DissimilarityMatrix(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert optimal_scale(embedded, target) == pytest.approx(2.0)
    assert optimal_scale(DissimilarityMatrix(np.zeros((2, 2))), target) == 0.0


def test_trend_report_frame():
    report = TrendReport(manifold="interval", mode="unconstrained", seed=0, p=2.0)
    report.sample_sizes = [10, 20]
    report.lp_errors = [0.2, 0.1]
    report.sup_errors = [0.4, 0.3]
    report.ratio_bounds_R = [1.1, 1.05]
    report.stress_finals = [0.01, 0.005]
    report.max_violations = [0.0, 0.0]
    report.runtimes = [0.0123456, 0.5]
    frame = report.to_frame()
    assert list(frame.columns) == TABLE_COLUMNS
    assert frame["wall_ms"].tolist() == [12.346, 500.0]
    assert median_trend(frame, "lp_error").to_dict() == {10: 0.2, 20: 0.1}


@pytest.mark.slow
def test_interval_consistency_trend():
    sizes = [50, 100, 200, 400]
    table = run_consistency_grid(ManifoldKind.INTERVAL, sizes, Unconstrained(), 2.0, range(10))
    assert len(table) == 40
    trend = median_trend(table, "lp_error").tolist()
    assert all(b < a for a, b in zip(trend, trend[1:]))
    ratio = median_trend(table, "ratio_R").tolist()
    assert all(b <= a for a, b in zip(ratio, ratio[1:]))


@pytest.mark.slow
def test_ale_error_stays_close_to_unconstrained():
    sizes = [50, 100, 200]
    plain = run_consistency_grid(ManifoldKind.INTERVAL, sizes, Unconstrained(), 2.0, range(5))
    ale = run_consistency_grid(ManifoldKind.INTERVAL, sizes, Ale(1.2), 2.0, range(5))
    assert (ale["max_violation"] <= 1e-8).all()
    plain_trend = median_trend(plain, "lp_error")
    ale_trend = median_trend(ale, "lp_error")
    for n in sizes:
        assert ale_trend[n] <= 2.0 * plain_trend[n]


@pytest.mark.slow
def test_interpolant_grid_passes_lipschitz_checks():
    table = run_interpolant_grid(ManifoldKind.INTERVAL, [50, 100, 200], 1.2, 100, range(10), check_pairs=2000)
    assert table["lipschitz_ok"].all()
    assert table.groupby("seed")["sup_error"].apply(lambda s: s.isna().sum()).eq(1).all()
    differences = median_trend(table, "sup_error").dropna()
    assert differences.index.tolist() == [100, 200]
    assert differences[200] <= differences[100]
