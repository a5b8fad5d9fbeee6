import numpy as np
import pytest
from scipy.optimize import minimize

from app.ale import (
    AleParams,
    ConstraintSet,
    dykstra_project,
    max_distance,
    max_violation,
    project_pair,
    run_dykstra,
    solve_ale,
)
from app.classical import classical_mds
from app.exceptions import DegeneratePair, DimensionMismatch, MaxCyclesExceeded
from app.models import Configuration, DissimilarityMatrix, Termination, WeightMatrix
from app.stress import raw_stress, solve_unconstrained


def caps_matrix(n, entries):
    caps = np.full((n, n), np.inf)
    for (i, j), cap in entries.items():
        caps[i, j] = caps[j, i] = cap
    return ConstraintSet(caps)


def projection_oracle(x0, constraints):
    """Nearest point under linear |x_i - x_j| <= cap constraints (d = 1) by SLSQP"""
    pair_i, pair_j, caps = constraints.finite_pairs()
    rows = []
    for i, j, cap in zip(pair_i, pair_j, caps):
        for sign in (1.0, -1.0):
            row = np.zeros(len(x0))
            row[i], row[j] = -sign, sign
            rows.append((row, cap))
    cons = [
        {"type": "ineq", "fun": (lambda x, r=row, c=cap: c + r @ x), "jac": (lambda x, r=row: r)}
        for row, cap in rows
    ]
    result = minimize(
        lambda x: float(np.sum((x - x0) ** 2)),
        x0,
        jac=lambda x: 2 * (x - x0),
        constraints=cons,
        method="SLSQP",
        options={"ftol": 1e-15, "maxiter": 1000},
    )
    return result.x


def test_project_pair_contracts_to_cap():
    config = Configuration([[0.0, 0.0], [4.0, 0.0], [7.0, 7.0]])
    out = project_pair(config, 0, 1, 2.0)
    assert np.allclose(out.points, [[1.0, 0.0], [3.0, 0.0], [7.0, 7.0]])


def test_project_pair_feasible_is_unchanged():
    config = Configuration([[0.0, 0.0], [1.0, 0.0]])
    assert project_pair(config, 0, 1, 2.0) is config


def test_project_pair_zero_cap_averages():
    out = project_pair(Configuration([[0.0], [4.0]]), 0, 1, 0.0)
    assert np.array_equal(out.points, [[2.0], [2.0]])


def test_project_pair_rejects_bad_arguments():
    config = Configuration([[0.0], [1.0]])
    with pytest.raises(DegeneratePair):
        project_pair(config, 0, 1, -1.0)
    with pytest.raises(ValueError):
        project_pair(config, 1, 1, 1.0)


def test_project_pair_matches_quadratic_oracle(rng):
    for _ in range(10):
        points = rng.standard_normal((4, 3)) * 3
        cap = 0.5 * float(np.linalg.norm(points[1] - points[2]))
        out = project_pair(Configuration(points), 1, 2, cap)

        x0 = np.concatenate([points[1], points[2]])
        result = minimize(
            lambda x: float(np.sum((x - x0) ** 2)),
            x0,
            constraints=[{"type": "ineq", "fun": lambda x: cap**2 - np.sum((x[:3] - x[3:]) ** 2)}],
            method="SLSQP",
            options={"ftol": 1e-15, "maxiter": 500},
        )
        assert np.allclose(out.points[[1, 2]].ravel(), result.x, atol=1e-6)
        assert np.array_equal(out.points[[0, 3]], points[[0, 3]])


def test_max_violation_examples():
    constraints = caps_matrix(3, {(0, 1): 2.0})
    assert max_violation(Configuration([[0.0], [5.0], [100.0]]), constraints) == pytest.approx(3.0)
    assert max_violation(Configuration([[0.0], [1.0], [100.0]]), constraints) == 0.0
    assert max_violation(Configuration([[0.0], [5.0], [9.0]]), caps_matrix(3, {})) == 0.0


def test_constraint_set_validation():
    with pytest.raises(ValueError):
        ConstraintSet(np.array([[0.0, -1.0], [-1.0, 0.0]]))
    with pytest.raises(ValueError):
        ConstraintSet(np.array([[0.0, 1.0], [2.0, 0.0]]))
    constraints = ConstraintSet.from_delta(DissimilarityMatrix(np.array([[0.0, 2.0], [2.0, 0.0]])), 1.5)
    assert constraints.max_finite_cap == 3.0
    assert constraints.feasibility_scale() == 4.0


def test_dykstra_feasible_input_takes_one_cycle():
    config = Configuration([[0.0], [1.0], [2.0]])
    result = run_dykstra(config, caps_matrix(3, {(0, 1): 2.0, (1, 2): 2.0, (0, 2): 4.0}))
    assert result.cycles == 1 and result.converged
    assert np.allclose(result.config.points, config.points, atol=1e-12)


def test_dykstra_single_constraint_is_plain_projection(rng):
    points = rng.standard_normal((5, 2)) * 4
    cap = 0.25 * float(np.linalg.norm(points[1] - points[3]))
    projected = dykstra_project(Configuration(points), caps_matrix(5, {(1, 3): cap}))
    assert np.allclose(projected.points, project_pair(Configuration(points), 1, 3, cap).points, atol=1e-12)


def test_dykstra_three_points_hand_case():
    constraints = caps_matrix(3, {(0, 1): 2.0, (1, 2): 2.0, (0, 2): 4.0})
    projected = dykstra_project(Configuration([[0.0], [10.0], [20.0]]), constraints, max_cycles=10_000)
    assert np.allclose(projected.points[:, 0], [8.0, 10.0, 12.0], atol=1e-6)


def test_dykstra_matches_quadratic_oracle(rng):
    for _ in range(25):
        x0 = rng.uniform(0.0, 10.0, size=3)
        constraints = caps_matrix(
            3, {(0, 1): rng.uniform(0.5, 5.0), (0, 2): rng.uniform(0.5, 5.0), (1, 2): rng.uniform(0.5, 5.0)}
        )
        result = run_dykstra(Configuration(x0.reshape(-1, 1)), constraints, tol=1e-12, max_cycles=100_000)
        assert np.linalg.norm(result.config.points[:, 0] - projection_oracle(x0, constraints)) < 1e-6


def test_dykstra_cycle_limit_carries_best_iterate(rng):
    points = rng.standard_normal((8, 2)) * 5
    constraints = ConstraintSet.from_delta(DissimilarityMatrix(np.ones((8, 8)) - np.eye(8)), 0.5)
    with pytest.raises(MaxCyclesExceeded) as excinfo:
        dykstra_project(Configuration(points), constraints, tol=1e-14, max_cycles=1)
    assert excinfo.value.cycles == 1
    assert excinfo.value.violation == pytest.approx(max_violation(excinfo.value.best, constraints), abs=1e-12)

    first = run_dykstra(Configuration(points), constraints, tol=1e-14, max_cycles=1)
    longer = run_dykstra(Configuration(points), constraints, tol=1e-14, max_cycles=5)
    assert not longer.converged
    assert longer.violation <= first.violation
    assert longer.violation == pytest.approx(max_violation(longer.config, constraints), abs=1e-12)


def test_dykstra_resume_reaches_the_same_projection(rng, make_dissimilarity):
    delta = make_dissimilarity(rng, 7)
    constraints = ConstraintSet.from_delta(delta, 0.8)
    config = Configuration(rng.standard_normal((7, 2)) * 3)
    full = run_dykstra(config, constraints, tol=1e-11, max_cycles=100_000)
    partial = run_dykstra(config, constraints, tol=1e-11, max_cycles=3)
    resumed = run_dykstra(config, constraints, tol=1e-11, max_cycles=100_000, corrections=partial.corrections)
    assert full.converged and resumed.converged
    assert np.allclose(resumed.config.points, full.config.points, atol=1e-6)


def test_dykstra_warm_start_from_another_input(rng, make_dissimilarity):
    delta = make_dissimilarity(rng, 6)
    constraints = ConstraintSet.from_delta(delta, 1.0)
    first = Configuration(rng.standard_normal((6, 2)) * 3)
    second = Configuration(first.points + 0.1 * rng.standard_normal((6, 2)))
    previous = run_dykstra(first, constraints, tol=1e-11, max_cycles=100_000)

    cold = run_dykstra(second, constraints, tol=1e-11, max_cycles=100_000)
    warm = run_dykstra(second, constraints, tol=1e-11, max_cycles=100_000, corrections=previous.corrections)
    assert warm.converged
    assert np.allclose(warm.config.points, cold.config.points, atol=1e-6)
    assert np.allclose(warm.config.points.mean(axis=0), second.points.mean(axis=0), atol=1e-11)


def test_dykstra_rejects_mismatched_corrections():
    constraints = caps_matrix(3, {(0, 1): 1.0})
    with pytest.raises(DimensionMismatch):
        run_dykstra(Configuration([[0.0], [5.0], [9.0]]), constraints, corrections=np.zeros((2, 2, 1)))


def test_ale_params_schedule():
    params = AleParams(lipschitz_k=1.0, schedule_cycles=True, dykstra_max_cycles=50)
    assert params.cycle_budget(0) == 10
    assert params.cycle_budget(100) == 50
    assert params.rounds() == 1
    assert AleParams(lipschitz_k=1.0).rounds() == AleParams(lipschitz_k=1.0).projection_rounds
    assert AleParams(lipschitz_k=1.0).cycle_budget(3) == AleParams(lipschitz_k=1.0).dykstra_max_cycles
    with pytest.raises(ValueError):
        AleParams(lipschitz_k=-1.0)


def test_ale_matches_unconstrained_when_caps_are_slack(rng, make_edm):
    for _ in range(20):
        n, d = int(rng.integers(4, 15)), int(rng.integers(1, 3))
        delta = make_edm(rng, n, d)
        weights = WeightMatrix.uniform(n)
        init = classical_mds(delta, d).config
        ale = solve_ale(delta, weights, init, AleParams(lipschitz_k=1.0))
        plain = solve_unconstrained(delta, weights, init)
        assert ale.final_stress < 1e-8
        assert ale.final_stress == pytest.approx(plain.final_stress, abs=1e-8)


def test_ale_with_zero_k_collapses(rng, make_dissimilarity):
    delta = make_dissimilarity(rng, 5)
    weights = WeightMatrix.uniform(5)
    report = solve_ale(delta, weights, classical_mds(delta, 2).config, AleParams(lipschitz_k=0.0))
    assert max_distance(report.config) < 1e-6
    expected = float(np.sum(weights.entries * delta.entries**2))
    assert report.final_stress == pytest.approx(expected, rel=1e-6)


def test_zero_dissimilarities_force_coincident_chains():
    # delta_01 = delta_12 = delta_23 = 0 chains all four points together under any finite K
    delta = np.ones((4, 4)) - np.eye(4)
    for i in range(3):
        delta[i, i + 1] = delta[i + 1, i] = 0.0
    delta = DissimilarityMatrix(delta)
    init = Configuration(np.arange(8, dtype=float).reshape(4, 2))
    report = solve_ale(delta, WeightMatrix.uniform(4), init, AleParams(lipschitz_k=5.0))
    assert max_distance(report.config) < 1e-6


def test_ale_active_constraint_costs_stress():
    delta = DissimilarityMatrix(np.array([[0.0, 1.0, 3.0], [1.0, 0.0, 1.0], [3.0, 1.0, 0.0]]))
    weights = WeightMatrix.uniform(3)
    ale = solve_ale(delta, weights, classical_mds(delta, 2).config, AleParams(lipschitz_k=1.0))

    constraints = ConstraintSet.from_delta(delta, 1.0)
    assert max_violation(ale.config, constraints) <= 1e-8
    # d_02 <= d_01 + d_12 <= 2 keeps the (0, 2) residual at least 1
    assert ale.final_stress >= 2.0 / 9.0 - 1e-9
    pair_i, pair_j, caps = constraints.finite_pairs()
    distances = np.linalg.norm(ale.config.points[pair_i] - ale.config.points[pair_j], axis=1)
    assert np.any(np.abs(distances - caps) < 1e-3)


def test_ale_report_traces_align(rng, make_dissimilarity):
    delta = make_dissimilarity(rng, 8)
    report = solve_ale(delta, WeightMatrix.uniform(8), classical_mds(delta, 2).config, AleParams(lipschitz_k=1.0))
    assert len(report.stress_trace) == len(report.max_violation_trace) == report.outer_iterations + 1
    assert len(report.dykstra_cycles_per_iter) == report.outer_iterations
    assert report.lipschitz_k == 1.0


@pytest.mark.slow
def test_ale_feasibility_and_descent(rng, make_dissimilarity):
    converged = 0
    for _ in range(50):
        n = int(rng.integers(3, 31))
        K = float(rng.choice([0.8, 1.0, 1.5]))
        delta = make_dissimilarity(rng, n)
        report = solve_ale(delta, WeightMatrix.uniform(n), classical_mds(delta, 2).config, AleParams(lipschitz_k=K))

        bound = 1e-8 * (1.0 + K * delta.max_entry)
        constraints = ConstraintSet.from_delta(delta, K)
        assert report.final_violation <= bound
        assert max_violation(report.config, constraints) <= bound
        assert np.all(np.diff(report.stress_trace) <= 1e-9)
        if report.termination == Termination.CONVERGED:
            converged += 1
            assert report.final_step_norm < 1e-12
    assert converged > 0


def test_ale_runs_feasible_with_default_budget(rng, make_dissimilarity):
    delta = make_dissimilarity(rng, 25)
    init = Configuration(rng.standard_normal((25, 2)) * 4)
    report = solve_ale(delta, WeightMatrix.uniform(25), init, AleParams(lipschitz_k=0.8))
    assert report.final_violation <= 1e-8 * (1.0 + 0.8 * delta.max_entry)
    assert np.all(np.diff(report.stress_trace) <= 1e-9)


def test_ale_stress_equals_raw_stress_of_result(rng, make_dissimilarity):
    delta = make_dissimilarity(rng, 6)
    weights = WeightMatrix.uniform(6)
    report = solve_ale(delta, weights, classical_mds(delta, 2).config, AleParams(lipschitz_k=1.2))
    assert report.final_stress == pytest.approx(raw_stress(delta, weights, report.config), rel=1e-12)
