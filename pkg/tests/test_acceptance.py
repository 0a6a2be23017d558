"""Exit criteria. Each test records one PASS/FAIL line shown in the terminal summary."""

import time

import numpy as np
import pytest

from conftest import ACCEPTANCE_LINES, EXAMPLE_DIMS, EXAMPLE_X, EXAMPLE_Y
from helpers import random_case
from matbp import (
    FiniteDiffConfig,
    NetworkSpec,
    backward,
    base_case_closed_form,
    chain_rule_full_gradient,
    component_activation,
    component_activation_derivative,
    finite_difference_gradient,
    forward,
    full_gradient,
    init_weights,
    jacobian_activation,
    jacobian_potential_wrt_activation,
    jacobian_potential_wrt_weights,
    potential,
    run_mixture_experiment,
)
from matbp.cli import main
from matbp.instrument import count_calls
from matbp.tensor_ops import augment, diag, drop_last_column, hadamard, kron, row, unvec, vec


def report(number, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, detail


def test_criterion_1_gradient_triangle():
    rng = np.random.default_rng(1)
    settings = [("logistic", "quadratic"), ("logistic", "cross-entropy"), ("tanh", "quadratic")]
    worst_chain = worst_fd = 0.0
    start = time.perf_counter()
    for trial in range(20):
        activation, cost = settings[trial % 3]
        spec, W, x, y = random_case(rng, activation, cost)
        bp = full_gradient(spec, W, cost, x, y)
        chain = chain_rule_full_gradient(spec, W, cost, x, y)
        fd = finite_difference_gradient(spec, W, cost, x, y, FiniteDiffConfig(1e-6, "central"))
        worst_chain = max(worst_chain, np.max(np.abs(bp - chain)))
        worst_fd = max(worst_fd, np.max(np.abs(bp - fd)))
    elapsed = time.perf_counter() - start
    ok = worst_chain <= 1e-12 and worst_fd <= 1e-5 and elapsed < 5.0
    report(1, ok, f"bp-chain {worst_chain:.2e} <= 1e-12, bp-fd {worst_fd:.2e} <= 1e-5, {elapsed:.2f}s < 5s")


def test_criterion_2_closed_form_equivalence():
    spec = NetworkSpec(EXAMPLE_DIMS, "logistic")
    W = init_weights(spec, 1)
    bt = backward(spec, W, "quadratic", forward(spec, W, EXAMPLE_X), EXAMPLE_Y)
    g3, g2, g1 = base_case_closed_form(spec, W, "quadratic", EXAMPLE_X, EXAMPLE_Y)
    err = max(np.max(np.abs(g - p)) for g, p in zip((g1, g2, g3), bt.partial_gradients))
    report(2, err <= 1e-12, f"closed form vs backprop max |diff| {err:.2e} <= 1e-12")


def test_criterion_3_kronecker_hadamard_identities():
    rng = np.random.default_rng(3)

    def shape():
        return tuple(rng.integers(1, 6, size=2))

    start = time.perf_counter()
    worst = {"transpose": 0.0, "mixed": 0.0, "vec": 0.0, "diag": 0.0}
    for _ in range(100):
        A, B = rng.standard_normal(shape()), rng.standard_normal(shape())
        worst["transpose"] = max(worst["transpose"], np.max(np.abs(kron(A, B).T - kron(A.T, B.T))))

        m, n, p, q, r, s = rng.integers(1, 5, size=6)
        A, B = rng.standard_normal((m, n)), rng.standard_normal((p, q))
        C, D = rng.standard_normal((n, r)), rng.standard_normal((q, s))
        worst["mixed"] = max(worst["mixed"], np.max(np.abs(kron(A, B) @ kron(C, D) - kron(A @ C, B @ D))))

        m, n, p = rng.integers(1, 6, size=3)
        A, X, B = rng.standard_normal((m, n)), rng.standard_normal((n, p)), rng.standard_normal((p, m))
        worst["vec"] = max(worst["vec"], np.max(np.abs(vec(A @ X @ B) - kron(B.T, A) @ vec(X))))

        v, w = rng.standard_normal(5), rng.standard_normal(5)
        worst["diag"] = max(worst["diag"], np.max(np.abs(diag(v) @ w - hadamard(v, w))))
    elapsed = time.perf_counter() - start
    ok = max(worst.values()) <= 1e-12 and elapsed < 1.0
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    report(3, ok, f"{detail} (all <= 1e-12), {elapsed:.2f}s < 1s")


def _fd_jacobian(f, u, h):
    cols = []
    for i in range(u.size):
        e = np.zeros_like(u)
        e[i] = h
        cols.append((f(u + e) - f(u - e)) / (2 * h))
    return np.column_stack(cols)


def test_criterion_4_jacobians():
    rng = np.random.default_rng(4)
    shapes_ok = True
    worst = {"DPhi_a": 0.0, "DPhi_W": 0.0, "DSigma": 0.0}
    for _ in range(50):
        m, n = (int(v) for v in rng.integers(1, 6, size=2))
        a = rng.standard_normal(n)
        W = rng.standard_normal((m, n + 1))
        J = jacobian_potential_wrt_weights(a, m)
        shapes_ok &= J.shape == (m, m * (n + 1))
        shapes_ok &= np.array_equal(J, kron(row(augment(a)), np.eye(m)))
        shapes_ok &= np.array_equal(jacobian_potential_wrt_activation(W), drop_last_column(W))
        fd = _fd_jacobian(lambda w: potential(unvec(w, m, n + 1), a), vec(W), 1e-6)
        worst["DPhi_a"] = max(worst["DPhi_a"], np.max(np.abs(J - fd)))
        fd = _fd_jacobian(lambda u: potential(W, u), a, 1e-6)
        worst["DPhi_W"] = max(worst["DPhi_W"], np.max(np.abs(jacobian_potential_wrt_activation(W) - fd)))
        for kind in ("logistic", "tanh"):
            z = rng.uniform(-3, 3, m)
            D = jacobian_activation(kind, z)
            shapes_ok &= np.array_equal(D, np.diag(component_activation_derivative(kind, z)))
            fd = _fd_jacobian(lambda u: component_activation(kind, u), z, 1e-6)
            worst["DSigma"] = max(worst["DSigma"], np.max(np.abs(D - fd)))
    ok = bool(shapes_ok) and max(worst.values()) <= 1e-6
    detail = ", ".join(f"{k} {v:.1e}" for k, v in worst.items())
    report(4, ok, f"shapes/closed forms {'ok' if shapes_ok else 'WRONG'}; vs finite differences {detail} (<= 1e-6)")


SEEDS = range(10)


@pytest.fixture(scope="module")
def experiment_runs():
    runs = []
    for seed in SEEDS:
        start = time.perf_counter()
        result = run_mixture_experiment(seed)
        runs.append((seed, result.record, time.perf_counter() - start))
    return runs


def test_criterion_5_mixture_experiment(experiment_runs):
    reached = sum(rec.accuracy[-1] >= 0.95 for _, rec, _ in experiment_runs)
    monotone = all(np.all(np.diff(rec.cost[1:]) <= 1e-9) for _, rec, _ in experiment_runs)
    initial_ok = all(0.35 <= rec.accuracy[0] <= 0.70 for _, rec, _ in experiment_runs)
    slowest = max(t for _, _, t in experiment_runs)
    per_seed = " ".join(
        f"{s}:{rec.accuracy[0]:.3f}->{rec.accuracy[-1]:.3f}" for s, rec, _ in experiment_runs
    )
    ok = reached >= 8 and monotone and initial_ok and slowest < 10.0
    report(
        5,
        ok,
        f"{reached}/10 runs reach accuracy >= 0.95 (need 8); cost nonincreasing: {monotone}; "
        f"all initial accuracies in [0.35, 0.70]: {initial_ok}; slowest run {slowest:.1f}s < 10s "
        f"[seed:initial->final {per_seed}]",
    )


def test_criterion_6_pass_counts():
    spec = NetworkSpec(EXAMPLE_DIMS, "logistic")
    W = init_weights(spec, 1)
    with count_calls() as bp:
        full_gradient(spec, W, "quadratic", EXAMPLE_X, EXAMPLE_Y)
    with count_calls() as fd:
        finite_difference_gradient(spec, W, "quadratic", EXAMPLE_X, EXAMPLE_Y, FiniteDiffConfig(1e-6, "forward"))
    expected = 1 + sum(m * n for m, n in spec.weight_shapes)
    ok = bp["forward"] == 1 and bp["backward"] == 1 and fd["cost_eval"] == expected == 30
    report(
        6,
        ok,
        f"full_gradient: {bp['forward']} forward + {bp['backward']} backward; "
        f"forward-difference oracle: {fd['cost_eval']} cost evaluations (expected {expected})",
    )


def test_criterion_7_train_determinism(tmp_path):
    data = tmp_path / "d.csv"
    assert main(["sample-data", "--seed", "7", "--out", str(data)]) == 0
    args = ["train", "--data", str(data), "--dims", "2,3,3,2", "--activation", "logistic",
            "--cost", "quadratic", "--alpha", "1", "--iters", "100", "--seed", "3"]
    assert main(args + ["--out-dir", str(tmp_path / "first")]) == 0
    assert main(["rerun", str(tmp_path / "first" / "manifest.txt"), "--out-dir", str(tmp_path / "second")]) == 0
    names = ("metrics.csv", "displacement.csv", "gradients.csv", "weights.txt")
    same = [(tmp_path / "first" / n).read_bytes() == (tmp_path / "second" / n).read_bytes() for n in names]
    rows = len((tmp_path / "first" / "metrics.csv").read_text().splitlines()) - 1
    report(7, all(same) and rows == 101, f"rerun byte-identical: {dict(zip(names, same))}; metrics rows {rows}")
