"""Output costs, per-exemplar and additive costs, and the weight-vector layout."""

import enum
from dataclasses import dataclass

import numpy as np

from ._validation import CostDomainError, ShapeError, as_matrix, as_vector, frozen
from .network import NetworkSpec, check_weights, forward
from . import instrument
from .tensor_ops import unvec, vec


class CostKind(enum.Enum):
    QUADRATIC = "quadratic"
    CROSS_ENTROPY = "cross-entropy"

    @classmethod
    def parse(cls, text):
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower().replace("_", "-")
        if key in ("crossentropy", "ce"):
            key = "cross-entropy"
        return cls(key)

    def __str__(self):
        return self.value


def _check_pair(kind, y, a):
    y = as_vector(y, "y")
    a = as_vector(a, "a")
    if y.size != a.size:
        raise ShapeError(f"target has dim {y.size} but output has dim {a.size}")
    if kind is CostKind.CROSS_ENTROPY:
        bad = np.flatnonzero((a <= 0.0) | (a >= 1.0))
        if bad.size:
            j = int(bad[0])
            raise CostDomainError(
                f"cross-entropy needs outputs in (0, 1); output index {j} is {a[j]!r}"
            )
    return y, a


def cost_value(kind, y, a):
    """Output-specific cost of activation ``a`` against target ``y``."""
    kind = CostKind.parse(kind)
    y, a = _check_pair(kind, y, a)
    if kind is CostKind.QUADRATIC:
        return 0.5 * float(np.sum((a - y) ** 2))
    return -float(np.sum(y * np.log(a) + (1.0 - y) * np.log1p(-a)))


def cost_gradient(kind, y, a):
    """Gradient of :func:`cost_value` with respect to ``a``."""
    kind = CostKind.parse(kind)
    y, a = _check_pair(kind, y, a)
    if kind is CostKind.QUADRATIC:
        return a - y
    return -y / a + (1.0 - y) / (1.0 - a)


@dataclass(frozen=True, eq=False)
class TrainingSet:
    """Ordered exemplars; row ``i`` of ``X`` and ``Y`` form pair ``i``."""

    X: np.ndarray
    Y: np.ndarray

    def __post_init__(self):
        if np.ndim(self.X) != 2 or np.ndim(self.Y) != 2:
            raise ShapeError("X and Y must be 2-D arrays with one exemplar per row")
        if len(self.X) == 0:
            raise ValueError("a training set needs at least one exemplar")
        X = as_matrix(self.X, "X")
        Y = as_matrix(self.Y, "Y")
        if X.shape[0] != Y.shape[0]:
            raise ShapeError(f"X has {X.shape[0]} rows but Y has {Y.shape[0]}")
        object.__setattr__(self, "X", frozen(X))
        object.__setattr__(self, "Y", frozen(Y))

    @classmethod
    def from_pairs(cls, pairs):
        pairs = list(pairs)
        if not pairs:
            raise ValueError("a training set needs at least one exemplar")
        X = np.array([as_vector(x, "x") for x, _ in pairs])
        Y = np.array([as_vector(y, "y") for _, y in pairs])
        return cls(X, Y)

    def __len__(self):
        return self.X.shape[0]

    def __iter__(self):
        return zip(self.X, self.Y)

    def subset(self, indices):
        return TrainingSet(self.X[indices], self.Y[indices])

    def concat(self, other):
        return TrainingSet(np.vstack([self.X, other.X]), np.vstack([self.Y, other.Y]))

    def check_conforms(self, spec):
        if self.X.shape[1] != spec.dims[0] or self.Y.shape[1] != spec.dims[-1]:
            raise ShapeError(
                f"training set has x dim {self.X.shape[1]} / y dim {self.Y.shape[1]}, "
                f"network expects {spec.dims[0]} / {spec.dims[-1]}"
            )


@dataclass(frozen=True, eq=False)
class WeightVector:
    """All weights as one vector: ``vec(W^1), ..., vec(W^k)`` in layer order."""

    data: np.ndarray
    dims: tuple

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        data = as_vector(self.data, "weight vector")
        p = NetworkSpec(dims).n_weights
        if data.size != p:
            raise ShapeError(f"weight vector has dim {data.size}, dims {dims} need {p}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "data", frozen(data))

    def __len__(self):
        return self.data.size

    def with_data(self, data):
        return WeightVector(data, self.dims)


def flatten(weights):
    """Stack ``vec(W^l)`` for ``l = 1..k`` into a :class:`WeightVector`."""
    weights = [as_matrix(W, "W") for W in weights]
    if not weights:
        raise ShapeError("need at least one weight matrix")
    dims = [weights[0].shape[1] - 1]
    for l, W in enumerate(weights, start=1):
        if W.shape[1] - 1 != dims[-1]:
            raise ShapeError(f"layer {l}: weight matrix {W.shape} does not chain onto width {dims[-1]}")
        dims.append(W.shape[0])
    return WeightVector(np.concatenate([vec(W) for W in weights]), tuple(dims))


def unflatten(wv):
    """Split a :class:`WeightVector` back into its weight matrices."""
    out = []
    offset = 0
    for m, n in NetworkSpec(wv.dims).weight_shapes:
        out.append(unvec(wv.data[offset:offset + m * n], m, n))
        offset += m * n
    return out


def _weights_for(spec, weight_vector):
    if tuple(weight_vector.dims) != spec.dims:
        raise ShapeError(f"weight vector dims {weight_vector.dims} do not match network dims {spec.dims}")
    return unflatten(weight_vector)


def exemplar_cost(spec, weights, kind, x, y):
    """Cost of the network output for input ``x`` against target ``y``."""
    instrument.record("cost_eval")
    return cost_value(kind, y, forward(spec, weights, x).output)


def additive_cost(spec, weight_vector, kind, D):
    """Mean exemplar cost over the training set ``D``, summed in exemplar order."""
    if len(D) == 0:
        raise ValueError("additive cost of an empty training set is undefined")
    D.check_conforms(spec)
    weights = check_weights(spec, _weights_for(spec, weight_vector))
    total = 0.0
    for x, y in D:
        total += exemplar_cost(spec, weights, kind, x, y)
    return total / len(D)
