"""Symplectic form, Gaussian-unitary generators and normal-mode analysis.

All matrices use the xpxp ordering ``(q1, p1, ..., qN, pN)`` and the
convention in which the vacuum covariance matrix is the identity.
"""

import numpy as np
from scipy.linalg import schur

from ._validation import as_matrix, require_positive_definite
from .errors import InvalidArgumentError, NumericError

STRUCTURAL_TOL = 1e-9
RECONSTRUCTION_TOL = 1e-8

_OMEGA1 = np.array([[0.0, 1.0], [-1.0, 0.0]])


def omega(n_modes):
    """Symplectic form for ``n_modes`` modes.

    Parameters
    ----------
    n_modes : int
        Number of modes, at least one.

    Returns
    -------
    numpy.ndarray
        The ``2N x 2N`` block-diagonal matrix with ``[[0, 1], [-1, 0]]``
        on every diagonal block.
    """
    n = int(n_modes)
    if n < 1 or n != n_modes:
        raise InvalidArgumentError(f"n_modes must be a positive integer, got {n_modes!r}")
    return np.kron(np.eye(n), _OMEGA1)


def is_symplectic(S, tol=STRUCTURAL_TOL):
    """Check ``S^T Omega S = Omega`` entrywise within ``tol``."""
    S = np.asarray(S, dtype=float)
    if S.ndim != 2 or S.shape[0] != S.shape[1] or S.shape[0] % 2:
        raise InvalidArgumentError(f"expected a square even-dimensional matrix, got {S.shape}")
    W = omega(S.shape[0] // 2)
    return bool(np.abs(S.T @ W @ S - W).max() <= tol)


def seralian(cm):
    """Sum of the determinants of all 2x2 mode blocks of ``cm``.

    Equals the sum of squared symplectic eigenvalues, so it is invariant
    under symplectic congruence.
    """
    s = as_matrix(cm)
    n = s.shape[0] // 2
    blocks = s.reshape(n, 2, n, 2).transpose(0, 2, 1, 3)
    dets = blocks[..., 0, 0] * blocks[..., 1, 1] - blocks[..., 0, 1] * blocks[..., 1, 0]
    return float(dets.sum())


def symplectic_spectrum(cm):
    """Symplectic eigenvalues of a positive-definite covariance matrix.

    Parameters
    ----------
    cm : array_like or GaussianState
        ``2N x 2N`` symmetric positive-definite matrix.

    Returns
    -------
    numpy.ndarray
        The ``N`` values ``nu_1 <= ... <= nu_N``. The eigenvalues of
        ``Omega @ cm`` come in pairs ``+-i nu_k``; their sorted moduli are
        averaged pairwise.

    Notes
    -----
    With ``cm = L L^T`` the Hermitian matrix ``i L^T Omega L`` is similar
    to ``i Omega cm`` up to transposition, so its (real) eigenvalues are
    ``+-nu_k``. A Hermitian solver keeps the absolute error near
    ``eps * ||cm||`` even for badly conditioned inputs.

    Raises
    ------
    DomainError
        If ``cm`` is not positive definite.
    """
    s = as_matrix(cm)
    L = require_positive_definite(s)
    n = s.shape[0] // 2
    mods = np.sort(np.abs(np.linalg.eigvalsh(1j * (L.T @ omega(n) @ L))))
    return 0.5 * (mods[0::2] + mods[1::2])


def williamson(cm, tol=RECONSTRUCTION_TOL):
    """Williamson normal form ``cm = S^T diag(nu) S``.

    Parameters
    ----------
    cm : array_like or GaussianState
        Symmetric positive-definite ``2N x 2N`` matrix.
    tol : float
        Maximal admissible entrywise reconstruction residual, also used
        for the symplecticity check on ``S``.

    Returns
    -------
    S : numpy.ndarray
        Symplectic matrix.
    nu : numpy.ndarray
        Ascending symplectic eigenvalues; the diagonal form is
        ``numpy.repeat(nu, 2)``.

    Notes
    -----
    The antisymmetric matrix ``K = cm^{1/2} Omega cm^{1/2}`` is brought
    to its real canonical form ``O^T K O = (+) nu_k [[0, 1], [-1, 0]]``
    by a real Schur decomposition. Then ``S = nu^{-1/2} O^T cm^{1/2}``.
    """
    s = as_matrix(cm)
    require_positive_definite(s)
    n = s.shape[0] // 2
    w, V = np.linalg.eigh(s)
    root = (V * np.sqrt(w)) @ V.T
    K = root @ omega(n) @ root
    K = 0.5 * (K - K.T)
    T, O = schur(K, output="real")
    # Orient every 2x2 block as +nu * omega, then sort blocks by nu.
    nus = np.empty(n)
    for k in range(n):
        i, j = 2 * k, 2 * k + 1
        if T[i, j] < 0:
            O[:, [i, j]] = O[:, [j, i]]
        nus[k] = abs(T[i, j])
    order = np.argsort(nus, kind="stable")
    cols = np.array([[2 * k, 2 * k + 1] for k in order]).ravel()
    O = O[:, cols]
    nus = nus[order]
    S = (O.T @ root) / np.sqrt(np.repeat(nus, 2))[:, None]
    resid = np.abs(S.T @ (np.repeat(nus, 2)[:, None] * S) - s).max()
    scale = max(1.0, float(np.abs(s).max()))
    if resid > tol * scale or not is_symplectic(S, tol * max(1.0, float(np.abs(S).max()) ** 2)):
        raise NumericError(f"Williamson reconstruction residual {resid:.3e} exceeds {tol:.1e}")
    return S, nus


def _embed(block, modes, n):
    idx = [2 * m + q for m in modes for q in (0, 1)]
    S = np.eye(2 * n)
    S[np.ix_(idx, idx)] = block
    return S


def _check_pair(i, j, n):
    if n < 2:
        raise InvalidArgumentError("two-mode operation needs n >= 2")
    for k in (i, j):
        if not 0 <= k < n:
            raise InvalidArgumentError(f"mode index {k} out of range for {n} modes")
    if i == j:
        raise InvalidArgumentError("the two mode indices must differ")


def two_mode_squeezer(r, i=0, j=1, n=2):
    """Two-mode squeezing symplectic acting on modes ``i`` and ``j``.

    The 4x4 block is ``[[c, 0, s, 0], [0, c, 0, -s], [s, 0, c, 0],
    [0, -s, 0, c]]`` with ``c = cosh r`` and ``s = sinh r``.
    """
    _check_pair(i, j, n)
    c, s = np.cosh(r), np.sinh(r)
    block = np.array([[c, 0, s, 0], [0, c, 0, -s], [s, 0, c, 0], [0, -s, 0, c]])
    return _embed(block, (i, j), n)


def beam_splitter(tau, i=0, j=1, n=2):
    """Beam splitter of transmittivity ``tau`` on modes ``i`` and ``j``.

    Parameters
    ----------
    tau : float
        Transmittivity in ``[0, 1]``.
    i, j : int
        Distinct 0-based mode indices.
    n : int
        Total number of modes.
    """
    if not 0.0 <= tau <= 1.0:
        raise InvalidArgumentError(f"transmittivity must lie in [0, 1], got {tau}")
    _check_pair(i, j, n)
    t, u = np.sqrt(tau), np.sqrt(1.0 - tau)
    block = np.array([[t, 0, u, 0], [0, t, 0, u], [u, 0, -t, 0], [0, u, 0, -t]])
    return _embed(block, (i, j), n)


def single_mode_squeezer(r, j=0, n=1):
    """``diag(e^r, e^-r)`` on mode ``j``, identity elsewhere."""
    if not 0 <= j < n:
        raise InvalidArgumentError(f"mode index {j} out of range for {n} modes")
    return _embed(np.diag([np.exp(r), np.exp(-r)]), (j,), n)


def phase_rotation(phi, j=0, n=1):
    """Rotation by angle ``phi`` in the phase plane of mode ``j``."""
    if not 0 <= j < n:
        raise InvalidArgumentError(f"mode index {j} out of range for {n} modes")
    c, s = np.cos(phi), np.sin(phi)
    return _embed(np.array([[c, s], [-s, c]]), (j,), n)


def direct_sum(*blocks):
    """Block-diagonal direct sum of square matrices."""
    from scipy.linalg import block_diag

    return block_diag(*blocks)


def apply(S, cm):
    """Congruence ``S cm S^T``, exactly symmetrized.

    If ``cm`` is a state object carrying a ``mean`` vector, a new object
    of the same type is returned with the mean mapped to ``S @ mean``.
    """
    S = np.asarray(S, dtype=float)
    m = as_matrix(cm)
    if S.shape != m.shape:
        raise InvalidArgumentError(f"dimension mismatch: {S.shape} vs {m.shape}")
    out = S @ m @ S.T
    out = 0.5 * (out + out.T)
    if hasattr(cm, "cm") and hasattr(cm, "mean"):
        return type(cm)(out, S @ np.asarray(cm.mean, dtype=float))
    return out
