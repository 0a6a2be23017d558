"""Batch and stochastic gradient descent on the additive cost."""

from dataclasses import dataclass

import numpy as np

from ._validation import ShapeError
from .backprop import batch_cost_and_gradient, batch_gradient
from .cost import _weights_for, flatten
from .network import check_weights, init_weights, predict_outputs


@dataclass(frozen=True)
class TrainConfig:
    """Gradient descent settings.

    ``mode`` is ``"batch"`` (all exemplars every step) or ``"stochastic"``
    (``batch_size`` exemplars drawn without replacement each step from a
    generator seeded with ``rng_seed``). ``tol`` optionally stops early once
    the full-set gradient norm drops below it.
    """

    alpha: float = 1.0
    iterations: int = 100
    mode: str = "batch"
    batch_size: int = None
    rng_seed: int = 0
    record_metrics: bool = True
    tol: float = None

    def __post_init__(self):
        if not self.alpha > 0:
            raise ValueError(f"alpha must be > 0, got {self.alpha}")
        if self.iterations < 1:
            raise ValueError(f"iterations must be >= 1, got {self.iterations}")
        if self.mode not in ("batch", "stochastic"):
            raise ValueError(f"mode must be 'batch' or 'stochastic', got {self.mode!r}")
        if self.mode == "stochastic" and (self.batch_size is None or self.batch_size < 1):
            raise ValueError("stochastic mode needs batch_size >= 1")
        if self.tol is not None and not self.tol > 0:
            raise ValueError(f"tol must be > 0, got {self.tol}")


@dataclass(frozen=True, eq=False)
class TrainRecord:
    """Per-iteration metrics; row ``j`` describes the weights after ``j`` updates.

    ``gradients`` and ``displacement`` have one column per weight-vector
    coordinate.
    """

    cost: np.ndarray
    grad_norm: np.ndarray
    accuracy: np.ndarray
    displacement: np.ndarray
    gradients: np.ndarray

    def __len__(self):
        return len(self.cost)


def initial_weight_vector(spec, seed=None):
    """N(0, 1) initial weights, flattened."""
    return flatten(init_weights(spec, seed))


def _is_one_hot(Y):
    return bool(np.all((Y == 0.0) | (Y == 1.0)) and np.all(Y.sum(axis=1) == 1.0))


def predict_accuracy(spec, weight_vector, D):
    """Fraction of exemplars whose largest output matches the one-hot target.

    Ties go to the lowest index.
    """
    if spec.dims[-1] < 2:
        raise ShapeError("accuracy needs at least two output units")
    if not _is_one_hot(D.Y):
        raise ValueError("accuracy needs one-hot targets")
    D.check_conforms(spec)
    weights = check_weights(spec, _weights_for(spec, weight_vector))
    outputs = predict_outputs(spec, weights, D.X)
    return float(np.mean(np.argmax(outputs, axis=1) == np.argmax(D.Y, axis=1)))


def gradient_descent(spec, init, kind, D, cfg=TrainConfig()):
    """Run ``cfg.iterations`` descent steps from ``init``.

    Returns the final :class:`~matbp.cost.WeightVector` and a
    :class:`TrainRecord` (``None`` when ``cfg.record_metrics`` is false).
    Accuracy is recorded only when the targets are one-hot; otherwise the
    column is NaN.
    """
    D.check_conforms(spec)
    n = len(D)
    if cfg.mode == "stochastic" and cfg.batch_size > n:
        raise ValueError(f"batch_size {cfg.batch_size} exceeds training set size {n}")
    rng = np.random.default_rng(cfg.rng_seed)
    track_accuracy = spec.dims[-1] >= 2 and _is_one_hot(D.Y)

    wv = init
    w0 = init.data
    rows = []
    for j in range(cfg.iterations + 1):
        need_full = cfg.record_metrics or cfg.mode == "batch" or cfg.tol is not None
        if need_full:
            cost, grad = batch_cost_and_gradient(spec, wv, kind, D)
            norm = float(np.linalg.norm(grad))
        if cfg.record_metrics:
            acc = predict_accuracy(spec, wv, D) if track_accuracy else float("nan")
            rows.append((cost, norm, acc, wv.data - w0, grad))
        if j == cfg.iterations or (cfg.tol is not None and norm < cfg.tol):
            break
        if cfg.mode == "batch":
            step = grad
        else:
            idx = rng.choice(n, size=cfg.batch_size, replace=False)
            step = batch_gradient(spec, wv, kind, D.subset(idx))
        wv = wv.with_data(wv.data - cfg.alpha * step)

    record = None
    if cfg.record_metrics:
        cost, norm, acc, disp, grads = zip(*rows)
        record = TrainRecord(
            cost=np.array(cost),
            grad_norm=np.array(norm),
            accuracy=np.array(acc),
            displacement=np.array(disp),
            gradients=np.array(grads),
        )
    return wv, record
