"""Input validation helpers shared across the package."""

import numpy as np


class ShapeError(ValueError):
    """Raised when array dimensions do not conform to what an operation needs."""


class CostDomainError(ValueError):
    """Raised when a cost function is evaluated outside its domain."""


def as_matrix(A, name="A"):
    A = np.asarray(A, dtype=np.float64)
    if A.ndim == 1:
        A = A[:, None]
    if A.ndim != 2 or A.shape[0] < 1 or A.shape[1] < 1:
        raise ShapeError(f"{name} must be a non-empty 2-D matrix, got shape {A.shape}")
    return A


def as_vector(v, name="v"):
    v = np.asarray(v, dtype=np.float64)
    if v.ndim == 2 and 1 in v.shape:
        v = v.reshape(-1)
    if v.ndim != 1 or v.size < 1:
        raise ShapeError(f"{name} must be a non-empty vector, got shape {v.shape}")
    return v


def check_finite(a, name="array"):
    if not np.all(np.isfinite(a)):
        raise ValueError(f"{name} contains NaN or Inf")
    return a


def frozen(a):
    """Return a read-only float64 copy of ``a``."""
    out = np.array(a, dtype=np.float64, copy=True)
    out.setflags(write=False)
    return out
