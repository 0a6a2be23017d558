"""Activation functions, affine potentials and the traced forward pass of a
k-layered network.

A network with widths ``(n_0, ..., n_k)`` has weight matrices ``W^l`` of
shape ``n_l x (n_{l-1} + 1)``; the last column of each holds the biases.
"""

from dataclasses import dataclass

import numpy as np

from . import instrument
from ._validation import ShapeError, as_matrix, as_vector, frozen
from .tensor_ops import augment

ACTIVATION_NAMES = ("logistic", "tanh", "relu", "leaky-relu")


@dataclass(frozen=True)
class Activation:
    """One scalar nonlinearity applied at every layer.

    ``slope`` only matters for ``leaky-relu`` and is used by both the value
    and the derivative.
    """

    name: str = "logistic"
    slope: float = 0.01

    def __post_init__(self):
        if self.name not in ACTIVATION_NAMES:
            raise ValueError(f"unknown activation {self.name!r}; choose from {ACTIVATION_NAMES}")
        if self.name == "leaky-relu" and not 0.0 < self.slope < 1.0:
            raise ValueError(f"leaky-relu slope must lie in (0, 1), got {self.slope}")

    @classmethod
    def parse(cls, text):
        """Build from ``"logistic"``, ``"tanh"``, ``"relu"`` or ``"leaky-relu[:slope]"``."""
        if isinstance(text, cls):
            return text
        name, _, slope = str(text).strip().lower().replace("_", "-").partition(":")
        if slope:
            return cls(name, float(slope))
        return cls(name)

    def __str__(self):
        if self.name == "leaky-relu":
            return f"{self.name}:{self.slope!r}"
        return self.name


LOGISTIC = Activation("logistic")
TANH = Activation("tanh")
RELU = Activation("relu")


def _logistic(z):
    # exp(-|z|) never overflows; the two branches are the same function.
    e = np.exp(-np.abs(z))
    return np.where(z >= 0, 1.0 / (1.0 + e), e / (1.0 + e))


def component_activation(kind, z):
    """Apply the activation entrywise."""
    kind = Activation.parse(kind)
    z = np.asarray(z, dtype=np.float64)
    zz = np.atleast_1d(z)
    if kind.name == "logistic":
        out = _logistic(zz)
    elif kind.name == "tanh":
        out = np.tanh(zz)
    elif kind.name == "relu":
        out = np.maximum(zz, 0.0)
    else:
        out = np.where(zz > 0, zz, kind.slope * zz)
    return out.reshape(z.shape)


def component_activation_derivative(kind, z):
    """Entrywise activation derivative.

    ReLU and leaky ReLU use the left-hand derivative at ``z == 0``.
    """
    kind = Activation.parse(kind)
    z = np.asarray(z, dtype=np.float64)
    zz = np.atleast_1d(z)
    if kind.name == "logistic":
        # sigma(z) * (1 - sigma(z)) without cancelling 1 - sigma for large z
        e = np.exp(-np.abs(zz))
        out = e / (1.0 + e) ** 2
    elif kind.name == "tanh":
        out = 1.0 - np.tanh(zz) ** 2
    elif kind.name == "relu":
        out = (zz > 0).astype(np.float64)
    else:
        out = np.where(zz > 0, 1.0, kind.slope)
    return out.reshape(z.shape)


def activation_value(kind, z):
    return float(component_activation(kind, float(z)))


def activation_derivative(kind, z):
    return float(component_activation_derivative(kind, float(z)))


@dataclass(frozen=True)
class NetworkSpec:
    """Layer widths ``(n_0, ..., n_k)`` and the shared activation."""

    dims: tuple
    activation: Activation = LOGISTIC

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) < 2:
            raise ValueError("a network needs at least an input and an output width")
        if any(d < 1 for d in dims):
            raise ValueError(f"all layer widths must be >= 1, got {dims}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "activation", Activation.parse(self.activation))

    @property
    def n_layers(self):
        return len(self.dims) - 1

    def weight_shape(self, layer):
        """Shape of ``W^layer`` for ``layer`` in ``1..k``."""
        if not 1 <= layer <= self.n_layers:
            raise IndexError(f"layer must be in 1..{self.n_layers}, got {layer}")
        return (self.dims[layer], self.dims[layer - 1] + 1)

    @property
    def weight_shapes(self):
        return [self.weight_shape(l) for l in range(1, self.n_layers + 1)]

    @property
    def n_weights(self):
        return sum(m * n for m, n in self.weight_shapes)


def check_weights(spec, weights):
    """Validate a list of weight matrices against ``spec``; return float copies."""
    weights = list(weights)
    if len(weights) != spec.n_layers:
        raise ShapeError(f"expected {spec.n_layers} weight matrices, got {len(weights)}")
    out = []
    for l, W in enumerate(weights, start=1):
        W = np.asarray(W, dtype=np.float64)
        if W.shape != spec.weight_shape(l):
            raise ShapeError(
                f"layer {l}: weight matrix has shape {W.shape}, expected {spec.weight_shape(l)}"
            )
        out.append(W)
    return out


def init_weights(spec, rng=None):
    """Draw every weight and bias i.i.d. from N(0, 1).

    ``rng`` may be a seed or a ``numpy.random.Generator``; layers are filled
    in order, each in row-major draw order.
    """
    rng = np.random.default_rng(rng)
    return [rng.standard_normal(shape) for shape in spec.weight_shapes]


def potential(W, a):
    """Affine potential ``W @ (a; 1)``."""
    W = as_matrix(W, "W")
    a = as_vector(a, "a")
    if a.size != W.shape[1] - 1:
        raise ShapeError(f"potential: W has {W.shape[1]} columns but a has dim {a.size}")
    return W @ augment(a)


@dataclass(frozen=True)
class ForwardTrace:
    """Potentials ``z[l-1] = z^l`` for ``l = 1..k`` and activations
    ``a[l] = a^l`` for ``l = 0..k`` (``a[0]`` is the input)."""

    z: tuple
    a: tuple

    @property
    def x(self):
        return self.a[0]

    @property
    def output(self):
        return self.a[-1]


def forward(spec, weights, x):
    """Evaluate the network on ``x`` and keep every intermediate vector."""
    weights = check_weights(spec, weights)
    x = as_vector(x, "x")
    if x.size != spec.dims[0]:
        raise ShapeError(f"input has dim {x.size}, network expects {spec.dims[0]}")
    instrument.record("forward")
    a = [frozen(x)]
    z = []
    for W in weights:
        zl = W @ augment(a[-1])
        z.append(frozen(zl))
        a.append(frozen(component_activation(spec.activation, zl)))
    return ForwardTrace(z=tuple(z), a=tuple(a))


def predict_outputs(spec, weights, X):
    """Output activations for every row of ``X`` at once.

    Same arithmetic as :func:`forward` with the exemplars stacked as columns;
    no intermediate values are kept.
    """
    weights = check_weights(spec, weights)
    A = np.asarray(X, dtype=np.float64)
    if A.ndim != 2 or A.shape[1] != spec.dims[0]:
        raise ShapeError(f"X must have shape (n, {spec.dims[0]}), got {A.shape}")
    A = A.T
    for W in weights:
        A = component_activation(spec.activation, W[:, :-1] @ A + W[:, -1:])
    return A.T
