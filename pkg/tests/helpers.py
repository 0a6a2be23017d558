import numpy as np

from matbp import NetworkSpec, forward, init_weights


def random_case(rng, activation, cost, max_layers=3, max_width=4):
    """Random small network, weights, input and domain-valid target.

    ReLU-type activations are resampled until no potential sits within 1e-3
    of the kink.
    """
    while True:
        k = int(rng.integers(1, max_layers + 1))
        dims = tuple(int(d) for d in rng.integers(1, max_width + 1, size=k + 1))
        spec = NetworkSpec(dims, activation)
        weights = init_weights(spec, rng)
        x = rng.standard_normal(dims[0])
        if cost == "cross-entropy":
            y = rng.uniform(0, 1, dims[-1])
        else:
            y = rng.standard_normal(dims[-1])
        trace = forward(spec, weights, x)
        if spec.activation.name in ("relu", "leaky-relu"):
            if any(np.any(np.abs(z) < 1e-3) for z in trace.z):
                continue
        if cost == "cross-entropy" and np.any((trace.output < 1e-6) | (trace.output > 1 - 1e-6)):
            continue
        return spec, weights, x, y
