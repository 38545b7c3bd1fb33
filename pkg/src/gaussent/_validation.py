"""Small input-normalization helpers used across the package."""

import numpy as np

from .errors import DomainError, InvalidArgumentError

SYMMETRY_TOL = 1e-9


def as_matrix(obj, *, symmetric=True, tol=SYMMETRY_TOL):
    """Return a float copy of a covariance matrix or state-like object.

    Accepts a 2-D array or any object exposing a ``cm`` attribute.
    The matrix must be square with even dimension; when ``symmetric``
    is set it must also be symmetric within ``tol`` (relative to its
    largest entry) and is returned exactly symmetrized.
    """
    m = getattr(obj, "cm", obj)
    m = np.array(m, dtype=float)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise InvalidArgumentError(f"expected a square matrix, got shape {m.shape}")
    if m.shape[0] == 0 or m.shape[0] % 2:
        raise InvalidArgumentError(f"matrix dimension must be even and positive, got {m.shape[0]}")
    if not np.all(np.isfinite(m)):
        raise InvalidArgumentError("matrix has non-finite entries")
    if symmetric:
        scale = max(1.0, float(np.abs(m).max()))
        if np.abs(m - m.T).max() > tol * scale:
            raise InvalidArgumentError("covariance matrix is not symmetric")
        m = 0.5 * (m + m.T)
    return m


def n_modes_of(m):
    return m.shape[0] // 2


def mode_indices(modes, n_modes):
    """Validate a collection of 0-based mode indices and return a sorted tuple."""
    try:
        idx = tuple(int(k) for k in modes)
    except TypeError:
        idx = (int(modes),)
    if not idx:
        raise InvalidArgumentError("mode set must be non-empty")
    if len(set(idx)) != len(idx):
        raise InvalidArgumentError(f"repeated mode index in {idx}")
    for k in idx:
        if not 0 <= k < n_modes:
            raise InvalidArgumentError(f"mode index {k} out of range for {n_modes} modes")
    return tuple(sorted(idx))


def quadrature_indices(modes):
    """Rows/columns of the xpxp covariance matrix belonging to ``modes``."""
    return np.array([2 * k + s for k in modes for s in (0, 1)], dtype=int)


def require_positive_definite(m):
    """Lower Cholesky factor of ``m``; DomainError if ``m`` is not positive definite."""
    try:
        return np.linalg.cholesky(m)
    except np.linalg.LinAlgError:
        raise DomainError("covariance matrix is not positive definite") from None
