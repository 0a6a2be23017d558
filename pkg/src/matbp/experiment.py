"""The two-class Gaussian mixture training run, end to end.

One integer seed is split with ``numpy.random.SeedSequence.spawn`` into
independent streams for the dataset and for the initial weights, so the
sampled features never share random numbers with the weights.
"""

from dataclasses import dataclass

import numpy as np

from .cost import TrainingSet, WeightVector
from .datagen import MixtureConfig, sample_training_set
from .network import NetworkSpec
from .training import TrainConfig, TrainRecord, gradient_descent, initial_weight_vector

DEFAULT_DIMS = (2, 3, 3, 2)


@dataclass(frozen=True, eq=False)
class ExperimentResult:
    data: TrainingSet
    initial: WeightVector
    final: WeightVector
    record: TrainRecord


def run_mixture_experiment(seed, dims=DEFAULT_DIMS, activation="logistic", cost="quadratic",
                           alpha=1.0, iterations=100, n=200):
    data_seed, weight_seed = np.random.SeedSequence(seed).spawn(2)
    spec = NetworkSpec(dims, activation)
    D = sample_training_set(MixtureConfig(n=n, rng_seed=data_seed))
    init = initial_weight_vector(spec, weight_seed)
    final, record = gradient_descent(spec, init, cost, D, TrainConfig(alpha=alpha, iterations=iterations))
    return ExperimentResult(D, init, final, record)
