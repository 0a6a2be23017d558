"""Matrix-form backpropagation.

For a trace of a k-layered network the error vectors are

    delta^k = grad c_y(a^k) * sigma'(z^k)
    delta^l = (W^{l+1}_bullet^T @ delta^{l+1}) * sigma'(z^l),   l = k-1, ..., 1

and the partial gradient for layer ``l`` is ``vec(delta^l @ (a^{l-1}^T 1))``,
with ``a^0 = x``. Concatenating the partial gradients in layer order gives a
vector laid out exactly like :func:`matbp.cost.flatten`.
"""

from dataclasses import dataclass

import numpy as np

from . import instrument
from ._validation import ShapeError, as_vector, frozen
from .cost import _weights_for, cost_gradient, cost_value
from .network import check_weights, component_activation_derivative, forward
from .tensor_ops import augment, drop_last_column, hadamard, row, vec


@dataclass(frozen=True)
class BackpropTrace:
    """``deltas[l-1]`` is ``delta^l`` and ``partial_gradients[l-1]`` is the
    vectorized gradient with respect to ``W^l``."""

    deltas: tuple
    partial_gradients: tuple

    @property
    def gradient(self):
        return np.concatenate(self.partial_gradients)


def backward_from_seed(spec, weights, trace, seed):
    """Run the backward pass from an arbitrary output seed ``grad c_y(a^k)``.

    :func:`backward` calls this with the cost gradient; exposing the seed makes
    the recursion's linearity directly testable.
    """
    weights = check_weights(spec, weights)
    seed = as_vector(seed, "seed")
    k = spec.n_layers
    if len(trace.z) != k or len(trace.a) != k + 1:
        raise ShapeError(f"trace has {len(trace.z)} layers, network has {k}")
    if seed.size != spec.dims[-1]:
        raise ShapeError(f"seed has dim {seed.size}, output layer has width {spec.dims[-1]}")
    instrument.record("backward")

    deltas = [None] * k
    grads = [None] * k
    delta = seed
    for l in range(k, 0, -1):
        slope = component_activation_derivative(spec.activation, trace.z[l - 1])
        if l == k:
            # Output layer: the (1 0) pseudo-weight of the next layer is the identity.
            delta = hadamard(delta, slope)
        else:
            delta = hadamard(drop_last_column(weights[l]).T @ delta, slope)
        deltas[l - 1] = frozen(delta)
        grads[l - 1] = frozen(vec(delta[:, None] @ row(augment(trace.a[l - 1]))))
    return BackpropTrace(deltas=tuple(deltas), partial_gradients=tuple(grads))


def backward(spec, weights, kind, trace, y):
    """Backward pass for a trace produced by :func:`matbp.network.forward`."""
    return backward_from_seed(spec, weights, trace, cost_gradient(kind, y, trace.output))


def full_gradient(spec, weights, kind, x, y):
    """Gradient of the exemplar cost with one forward and one backward pass."""
    trace = forward(spec, weights, x)
    return backward(spec, weights, kind, trace, y).gradient


def batch_gradient(spec, weight_vector, kind, D):
    """Mean of the exemplar gradients over ``D``, accumulated in exemplar order."""
    if len(D) == 0:
        raise ValueError("batch gradient of an empty training set is undefined")
    D.check_conforms(spec)
    weights = check_weights(spec, _weights_for(spec, weight_vector))
    total = np.zeros(spec.n_weights)
    for x, y in D:
        total += full_gradient(spec, weights, kind, x, y)
    return total / len(D)


def batch_cost_and_gradient(spec, weight_vector, kind, D):
    """Mean cost and mean gradient over ``D`` sharing one forward pass per exemplar."""
    if len(D) == 0:
        raise ValueError("batch gradient of an empty training set is undefined")
    D.check_conforms(spec)
    weights = check_weights(spec, _weights_for(spec, weight_vector))
    total_cost = 0.0
    total = np.zeros(spec.n_weights)
    for x, y in D:
        trace = forward(spec, weights, x)
        total_cost += cost_value(kind, y, trace.output)
        total += backward(spec, weights, kind, trace, y).gradient
    return total_cost / len(D), total / len(D)
