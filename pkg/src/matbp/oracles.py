"""Gradient computations that do not use the backward recursion.

These exist to check :mod:`matbp.backprop`:

* difference quotients, perturbing one weight at a time;
* the explicit chain rule, multiplying full Jacobian matrices of every stage;
* the written-out k = 3 gradient expressions.
"""

import enum
from dataclasses import dataclass

import numpy as np

from ._validation import ShapeError, as_vector
from .cost import CostKind, cost_gradient, exemplar_cost
from .network import (
    check_weights,
    component_activation_derivative,
    forward,
)
from .tensor_ops import augment, diag, drop_last_column, hadamard, kron, row, vec


class Scheme(enum.Enum):
    FORWARD = "forward"
    CENTRAL = "central"


@dataclass(frozen=True)
class FiniteDiffConfig:
    epsilon: float = 1e-6
    scheme: Scheme = Scheme.CENTRAL

    def __post_init__(self):
        object.__setattr__(self, "scheme", Scheme(self.scheme))
        if not 1e-9 <= self.epsilon <= 1e-3:
            raise ValueError(f"epsilon must lie in [1e-9, 1e-3], got {self.epsilon}")


def finite_difference_gradient(spec, weights, kind, x, y, cfg=FiniteDiffConfig()):
    """Approximate the exemplar-cost gradient by difference quotients.

    Coordinates are visited in weight-vector order (layer by layer, column-major
    within a layer). The forward scheme costs ``1 + p`` cost evaluations, the
    central scheme ``2p``.
    """
    weights = check_weights(spec, weights)
    eps = cfg.epsilon
    base = exemplar_cost(spec, weights, kind, x, y) if cfg.scheme is Scheme.FORWARD else None
    out = []
    for l, W in enumerate(weights):
        m, n = W.shape
        for j in range(n):
            for i in range(m):
                perturbed = list(weights)
                W_plus = W.copy()
                W_plus[i, j] += eps
                perturbed[l] = W_plus
                c_plus = exemplar_cost(spec, perturbed, kind, x, y)
                if cfg.scheme is Scheme.FORWARD:
                    out.append((c_plus - base) / eps)
                else:
                    W_minus = W.copy()
                    W_minus[i, j] -= eps
                    perturbed[l] = W_minus
                    c_minus = exemplar_cost(spec, perturbed, kind, x, y)
                    out.append((c_plus - c_minus) / (2 * eps))
    return np.array(out)


def jacobian_potential_wrt_weights(a, m):
    """Jacobian of ``W -> W @ (a; 1)`` with respect to ``vec(W)``: ``(a^T 1) kron I_m``."""
    return kron(row(augment(a)), np.eye(m))


def jacobian_potential_wrt_activation(W):
    """Jacobian of ``a -> W @ (a; 1)``; constant in ``a``."""
    return drop_last_column(W)


def jacobian_activation(kind, z):
    return diag(component_activation_derivative(kind, as_vector(z, "z")))


def chain_rule_gradient(spec, weights, kind, x, y, layer):
    """Partial gradient for ``W^layer`` as a transposed product of Jacobians.

    Builds ``Dc_y(a^k) DSigma^k(z^k) DPhi^k_W(a^{k-1}) ... DSigma^l(z^l)
    DPhi^l_a(W^l)`` from left to right and returns its transpose as a vector.
    """
    weights = check_weights(spec, weights)
    k = spec.n_layers
    if not 1 <= layer <= k:
        raise IndexError(f"layer must be in 1..{k}, got {layer}")
    trace = forward(spec, weights, x)
    J = row(cost_gradient(kind, y, trace.output))
    for q in range(k, layer, -1):
        J = J @ jacobian_activation(spec.activation, trace.z[q - 1])
        J = J @ jacobian_potential_wrt_activation(weights[q - 1])
    J = J @ jacobian_activation(spec.activation, trace.z[layer - 1])
    J = J @ jacobian_potential_wrt_weights(trace.a[layer - 1], spec.dims[layer])
    return J.T.reshape(-1)


def chain_rule_full_gradient(spec, weights, kind, x, y):
    return np.concatenate([
        chain_rule_gradient(spec, weights, kind, x, y, l) for l in range(1, spec.n_layers + 1)
    ])


def base_case_closed_form(spec, weights, kind, x, y):
    """The three partial gradients of a 3-layered network, written out in full.

    Returns ``(grad_W3, grad_W2, grad_W1)``; nothing is shared between the
    three expressions beyond the forward trace.
    """
    if spec.n_layers != 3:
        raise ShapeError(f"closed form is only defined for k = 3, got k = {spec.n_layers}")
    W1, W2, W3 = check_weights(spec, weights)
    x = as_vector(x, "x")
    t = forward(spec, [W1, W2, W3], x)
    z1, z2, z3 = t.z
    d1, d2, d3 = (component_activation_derivative(spec.activation, z) for z in (z1, z2, z3))
    s1, s2 = t.a[1], t.a[2]
    g = cost_gradient(CostKind.parse(kind), y, t.a[3])

    def col(v):
        return v[:, None]

    grad_W3 = vec(col(hadamard(g, d3)) @ row(augment(s2)))
    grad_W2 = vec(
        col(hadamard(drop_last_column(W3).T @ hadamard(g, d3), d2)) @ row(augment(s1))
    )
    grad_W1 = vec(
        col(hadamard(
            drop_last_column(W2).T @ hadamard(drop_last_column(W3).T @ hadamard(g, d3), d2),
            d1,
        ))
        @ row(augment(x))
    )
    return grad_W3, grad_W2, grad_W1
