"""Dense matrix primitives: vec/unvec, Kronecker and Hadamard products, diag,
bias-column removal and activation augmentation.

Matrices are 2-D float64 arrays and vectors are 1-D float64 arrays.
Vectorization is column-major throughout, so weight and gradient vectors
built on top of :func:`vec` share one layout.
"""

import numpy as np

from ._validation import ShapeError, as_matrix, as_vector


def vec(A):
    """Stack the columns of ``A`` from left to right into one vector.

    Entry ``(i, j)`` of an ``m x n`` matrix lands at index ``j * m + i``.

    >>> vec([[1, 3], [2, 4]])
    array([1., 2., 3., 4.])
    """
    A = as_matrix(A)
    return A.reshape(-1, order="F").copy()


def unvec(v, rows, cols):
    """Inverse of :func:`vec`."""
    v = as_vector(v)
    if rows < 1 or cols < 1 or v.size != rows * cols:
        raise ShapeError(f"cannot unvec a vector of dim {v.size} into {rows}x{cols}")
    return v.reshape((rows, cols), order="F").copy()


def kron(A, B):
    """Kronecker product; block ``(i, j)`` of the result is ``A[i, j] * B``."""
    A = as_matrix(A, "A")
    B = as_matrix(B, "B")
    p, q = B.shape
    out = np.empty((A.shape[0] * p, A.shape[1] * q))
    for i in range(A.shape[0]):
        for j in range(A.shape[1]):
            out[i * p:(i + 1) * p, j * q:(j + 1) * q] = A[i, j] * B
    return out


def hadamard(A, B):
    """Entrywise product of two equally shaped arrays.

    Vectors stay vectors; a vector is never silently broadcast against a matrix.
    """
    A = np.asarray(A, dtype=np.float64)
    B = np.asarray(B, dtype=np.float64)
    if A.shape != B.shape:
        raise ShapeError(f"hadamard needs identical shapes, got {A.shape} and {B.shape}")
    return A * B


def diag(v):
    v = as_vector(v)
    return np.diag(v)


def drop_last_column(A):
    """Remove the bias column of a weight matrix (the ``W•`` operator)."""
    A = as_matrix(A)
    if A.shape[1] < 2:
        raise ShapeError("drop_last_column needs at least two columns")
    return A[:, :-1].copy()


def augment(a):
    """Append a constant 1 to an activation vector."""
    a = as_vector(a, "a")
    return np.concatenate((a, [1.0]))


def row(v):
    """View a vector as a ``1 x n`` matrix."""
    return as_vector(v)[None, :]
