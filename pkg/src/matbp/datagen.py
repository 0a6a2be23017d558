"""Two-class Gaussian mixture used for the binary classification demo.

Labels are drawn with probability 0.5 each; a target ``(1, 0)`` selects mean
``mu0`` and ``(0, 1)`` selects ``mu1``, both with covariance
``sigma_scale * I_2``.

Randomness comes from ``numpy.random.default_rng(seed)`` (PCG64). For every
exemplar in order, one uniform draw picks the label (``< 0.5`` means the
first class) and then two standard normals (NumPy's ziggurat sampler) are
scaled by ``sqrt(sigma_scale)`` and shifted by the class mean.
"""

from dataclasses import dataclass

import numpy as np

from .cost import TrainingSet


@dataclass(frozen=True)
class MixtureConfig:
    n: int = 200
    mu0: tuple = (-1.0, -1.0)
    mu1: tuple = (1.0, 1.0)
    sigma_scale: float = 0.5
    rng_seed: int = 0

    def __post_init__(self):
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")
        if not self.sigma_scale > 0:
            raise ValueError(f"sigma_scale must be > 0, got {self.sigma_scale}")
        for name in ("mu0", "mu1"):
            mu = tuple(float(v) for v in getattr(self, name))
            if len(mu) != 2:
                raise ValueError(f"{name} must have two components")
            object.__setattr__(self, name, mu)


def sample_training_set(cfg=MixtureConfig()):
    rng = np.random.default_rng(cfg.rng_seed)
    means = np.array([cfg.mu0, cfg.mu1])
    scale = np.sqrt(cfg.sigma_scale)
    X = np.empty((cfg.n, 2))
    Y = np.zeros((cfg.n, 2))
    for i in range(cfg.n):
        label = 0 if rng.random() < 0.5 else 1
        X[i] = means[label] + scale * rng.standard_normal(2)
        Y[i, label] = 1.0
    return TrainingSet(X, Y)
