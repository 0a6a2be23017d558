"""Backpropagation in matrix notation for k-layered feedforward networks."""

from ._validation import CostDomainError, ShapeError
from .backprop import (
    BackpropTrace,
    backward,
    backward_from_seed,
    batch_cost_and_gradient,
    batch_gradient,
    full_gradient,
)
from .cost import (
    CostKind,
    TrainingSet,
    WeightVector,
    additive_cost,
    cost_gradient,
    cost_value,
    exemplar_cost,
    flatten,
    unflatten,
)
from .datagen import MixtureConfig, sample_training_set
from .estimator import MatrixBPClassifier
from .experiment import ExperimentResult, run_mixture_experiment
from .network import (
    Activation,
    ForwardTrace,
    NetworkSpec,
    activation_derivative,
    activation_value,
    component_activation,
    component_activation_derivative,
    forward,
    init_weights,
    potential,
)
from .oracles import (
    FiniteDiffConfig,
    Scheme,
    base_case_closed_form,
    chain_rule_full_gradient,
    chain_rule_gradient,
    finite_difference_gradient,
    jacobian_activation,
    jacobian_potential_wrt_activation,
    jacobian_potential_wrt_weights,
)
from .training import (
    TrainConfig,
    TrainRecord,
    gradient_descent,
    initial_weight_vector,
    predict_accuracy,
)

__version__ = "0.1.0"
