"""scikit-learn compatible classifier trained with matrix-form backpropagation."""

import numbers

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin
from sklearn.utils.multiclass import check_classification_targets
from sklearn.utils.validation import check_is_fitted, validate_data

from .cost import CostKind, TrainingSet, flatten, unflatten
from .network import Activation, NetworkSpec, init_weights, predict_outputs
from .training import TrainConfig, gradient_descent


class MatrixBPClassifier(ClassifierMixin, BaseEstimator):
    """Feedforward classifier with one output unit per class.

    Labels are one-hot encoded in the order of ``classes_``; the predicted
    class is the output unit with the largest activation.

    Parameters
    ----------
    hidden_layer_sizes : tuple of int
        Widths of the hidden layers; ``()`` gives a single-layer network.
    activation : str
        ``"logistic"``, ``"tanh"``, ``"relu"`` or ``"leaky-relu[:slope]"``.
    cost : str
        ``"quadratic"`` or ``"cross-entropy"`` (the latter needs logistic).
    learning_rate : float
        Gradient descent step size.
    n_iter : int
        Number of descent steps.
    batch_size : int or None
        ``None`` for batch gradient descent, otherwise the minibatch size of
        stochastic gradient descent.
    tol : float or None
        Stop once the full-set gradient norm falls below ``tol``.
    random_state : int, numpy Generator or None
        Seeds weight initialization (i.i.d. N(0, 1)) and minibatch sampling.

    Attributes
    ----------
    classes_, n_features_in_, spec_, coefs_, weight_vector_, record_, n_iter_
    """

    def __init__(
        self,
        hidden_layer_sizes=(3, 3),
        activation="logistic",
        cost="quadratic",
        learning_rate=1.0,
        n_iter=100,
        batch_size=None,
        tol=None,
        random_state=None,
    ):
        self.hidden_layer_sizes = hidden_layer_sizes
        self.activation = activation
        self.cost = cost
        self.learning_rate = learning_rate
        self.n_iter = n_iter
        self.batch_size = batch_size
        self.tol = tol
        self.random_state = random_state

    def _check_params(self):
        activation = Activation.parse(self.activation)
        cost = CostKind.parse(self.cost)
        if cost is CostKind.CROSS_ENTROPY and activation.name != "logistic":
            raise ValueError("cross-entropy cost needs logistic activation (outputs in (0, 1))")
        if not isinstance(self.n_iter, numbers.Integral) or self.n_iter < 1:
            raise ValueError(f"n_iter must be a positive integer, got {self.n_iter!r}")
        return activation, cost

    def fit(self, X, y):
        activation, cost = self._check_params()
        X, y = validate_data(self, X, y)
        check_classification_targets(y)
        self.classes_, labels = np.unique(y, return_inverse=True)
        if len(self.classes_) < 2:
            raise ValueError(f"need at least two classes, got 1 class: {self.classes_[0]!r}")
        Y = np.eye(len(self.classes_))[labels]

        dims = (X.shape[1], *self.hidden_layer_sizes, len(self.classes_))
        self.spec_ = NetworkSpec(dims, activation)
        rng = np.random.default_rng(self.random_state)
        init = flatten(init_weights(self.spec_, rng))
        cfg = TrainConfig(
            alpha=self.learning_rate,
            iterations=self.n_iter,
            mode="batch" if self.batch_size is None else "stochastic",
            batch_size=None if self.batch_size is None else min(self.batch_size, len(X)),
            rng_seed=int(rng.integers(2**32)),
            tol=self.tol,
        )
        self.weight_vector_, self.record_ = gradient_descent(
            self.spec_, init, cost, TrainingSet(X, Y), cfg
        )
        self.coefs_ = unflatten(self.weight_vector_)
        self.n_iter_ = len(self.record_) - 1
        return self

    def output_activations(self, X):
        """Output-layer activations ``a^k``, one column per class."""
        check_is_fitted(self)
        X = validate_data(self, X, reset=False)
        return predict_outputs(self.spec_, self.coefs_, X)

    def decision_function(self, X):
        """Output activations; for two classes, ``a_2 - a_1`` (positive means ``classes_[1]``)."""
        out = self.output_activations(X)
        if out.shape[1] == 2:
            return out[:, 1] - out[:, 0]
        return out

    def predict(self, X):
        """Class of the largest output activation; ties go to the earlier class."""
        idx = np.argmax(self.output_activations(X), axis=1)
        return self.classes_[idx]
