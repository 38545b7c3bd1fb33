"""Fully symmetric and bisymmetric states, unitary localization and block entanglement.

A bisymmetric state is invariant under permutations of the modes inside
each side of a bipartition ``A|B``. Its covariance matrix is made of
identical ``2x2`` blocks: ``alpha`` on the diagonal of side A, ``eps``
between two modes of A, ``beta`` and ``zeta`` likewise for B, and
``gamma`` between any mode of A and any mode of B. Mixing the modes of
each side with an orthogonal matrix whose first row is uniform
concentrates all the correlations between the sides onto one pair of
modes.
"""

from dataclasses import dataclass

import numpy as np

from ._validation import as_matrix
from .errors import DomainError, InvalidArgumentError
from .separability import Bipartition, _restricted, log_negativity, pt_spectrum
from .states import GaussianState, reduce, require_bona_fide
from .symplectic import williamson

SYMMETRY_CHECK_TOL = 1e-8


# ---------------------------------------------------------------- specs and builders


@dataclass(frozen=True)
class FullySymmetricSpec:
    """Standard-form parameters of a fully symmetric state.

    Every mode has ``diag(b, b)``; every pair of modes is coupled by
    ``diag(z1, z2)``.
    """

    n_modes: int
    b: float
    z1: float
    z2: float

    def __post_init__(self):
        if int(self.n_modes) != self.n_modes or self.n_modes < 1:
            raise InvalidArgumentError(f"n_modes must be a positive integer, got {self.n_modes!r}")

    def matrix(self):
        n = int(self.n_modes)
        return _block_matrix(n, np.diag([self.b, self.b]), np.diag([self.z1, self.z2]))


@dataclass(frozen=True)
class BisymmetricSpec:
    """Two fully symmetric blocks coupled by identical ``2x2`` blocks ``gamma``."""

    block_a: FullySymmetricSpec
    block_b: FullySymmetricSpec
    gamma: np.ndarray

    def matrix(self):
        m, n = int(self.block_a.n_modes), int(self.block_b.n_modes)
        g = np.asarray(self.gamma, dtype=float)
        if g.shape != (2, 2):
            raise InvalidArgumentError(f"gamma must be 2x2, got shape {g.shape}")
        out = np.zeros((2 * (m + n), 2 * (m + n)))
        out[: 2 * m, : 2 * m] = self.block_a.matrix()
        out[2 * m :, 2 * m :] = self.block_b.matrix()
        out[: 2 * m, 2 * m :] = np.tile(g, (m, n))
        out[2 * m :, : 2 * m] = out[: 2 * m, 2 * m :].T
        return out


def _block_matrix(n, diag_block, off_block):
    return np.kron(np.eye(n), diag_block - off_block) + np.kron(np.ones((n, n)), off_block)


def fully_symmetric_cm(spec):
    """Bona fide state described by a :class:`FullySymmetricSpec`."""
    return GaussianState(require_bona_fide(spec.matrix()))


def fully_symmetric_pure_couplings(n, b):
    """Couplings ``(z1, z2)`` that make the ``n``-mode fully symmetric state pure."""
    if n < 2:
        raise InvalidArgumentError(f"need at least two modes, got {n}")
    if b < 1.0:
        raise DomainError(f"local parameter b must be >= 1, got {b}")
    x = b * b - 1.0
    root = np.sqrt(max(x * (n * (x * n + 4.0) - 4.0), 0.0))
    den = 2.0 * b * (n - 1)
    return ((n - 2) * x + root) / den, ((n - 2) * x - root) / den


def fully_symmetric_pure(n, b):
    """Pure fully symmetric ``n``-mode state with single-mode block ``diag(b, b)``.

    Raises
    ------
    DomainError
        If ``b < 1``.
    """
    z1, z2 = fully_symmetric_pure_couplings(n, b)
    return GaussianState(FullySymmetricSpec(n, b, z1, z2).matrix())


def fully_symmetric_mixed(n, b, traced):
    """``n`` modes of the pure ``(n + traced)``-mode fully symmetric state."""
    if traced < 0:
        raise InvalidArgumentError(f"number of traced modes must be >= 0, got {traced}")
    return reduce(fully_symmetric_pure(n + traced, b), range(n))


def assemble_bisymmetric(spec):
    """Bona fide bisymmetric state from a :class:`BisymmetricSpec`.

    Raises
    ------
    DomainError
        If the assembled matrix is not a physical covariance matrix.
    """
    return GaussianState(require_bona_fide(spec.matrix()))


# ---------------------------------------------------------------- symmetry checks


def _blk(m, i, j):
    return m[2 * i : 2 * i + 2, 2 * j : 2 * j + 2]


def _common_block(m, pairs, what, tol):
    """The shared ``2x2`` block over ``pairs``; DomainError if they differ."""
    ref = _blk(m, *pairs[0])
    for i, j in pairs[1:]:
        if np.abs(_blk(m, i, j) - ref).max() > tol:
            raise DomainError(f"state is not symmetric: {what} blocks differ")
    return ref.copy()


def _side_blocks(m, side, tol):
    diag = _common_block(m, [(i, i) for i in side], "diagonal", tol)
    pairs = [(i, j) for i in side for j in side if i != j]
    off = _common_block(m, pairs, "intra-side", tol) if pairs else np.zeros((2, 2))
    return diag, off


def _scaled_tol(m, tol):
    return tol * max(1.0, float(np.abs(m).max()))


def bisymmetric_blocks(cm, partition, tol=SYMMETRY_CHECK_TOL):
    """The ``2x2`` blocks ``(alpha, eps, beta, zeta, gamma)`` of a bisymmetric state.

    Raises
    ------
    DomainError
        If the state is not invariant under permutations within each side.
    """
    m, bp = _restricted(cm, partition)
    t = _scaled_tol(m, tol)
    alpha, eps = _side_blocks(m, bp.side_a, t)
    beta, zeta = _side_blocks(m, bp.side_b, t)
    gamma = _common_block(m, [(i, j) for i in bp.side_a for j in bp.side_b], "inter-side", t)
    return alpha, eps, beta, zeta, gamma


def _require_fully_symmetric(cm, tol=SYMMETRY_CHECK_TOL):
    m = as_matrix(cm)
    n = m.shape[0] // 2
    t = _scaled_tol(m, tol)
    _side_blocks(m, range(n), t)
    return m


# ---------------------------------------------------------------- local standard form


def _single_mode_normalizer(diag_block, off_block):
    """Single-mode symplectic ``L`` with ``L beta L^T = b I`` and ``L zeta L^T`` diagonal."""
    S, nu = williamson(diag_block)
    L = np.linalg.inv(S).T
    z = L @ off_block @ L.T
    w, R = np.linalg.eigh(0.5 * (z + z.T))
    R = R[:, ::-1]
    if np.linalg.det(R) < 0:
        R[:, 1] *= -1.0
    return R.T @ L, float(nu[0])


def local_standard_form(cm, partition):
    """Bring each side of a bisymmetric state to diagonal blocks.

    The same single-mode symplectic is applied to every mode of a side, so
    that ``beta = diag(b, b)`` and ``zeta = diag(z1, z2)`` with ``z1 >= z2``.
    The partition must cover all modes.

    Returns
    -------
    GaussianState
    """
    m = require_bona_fide(cm)
    n = m.shape[0] // 2
    _, bp = _restricted(m, partition)
    if len(bp.modes) != n:
        raise InvalidArgumentError("local standard form needs a bipartition of all modes")
    alpha, eps, beta, zeta, _ = bisymmetric_blocks(m, bp)
    La, _ = _single_mode_normalizer(alpha, eps)
    Lb, _ = _single_mode_normalizer(beta, zeta)
    S = np.eye(2 * n)
    for side, L in ((bp.side_a, La), (bp.side_b, Lb)):
        for k in side:
            S[2 * k : 2 * k + 2, 2 * k : 2 * k + 2] = L
    out = S @ m @ S.T
    return GaussianState(0.5 * (out + out.T))


def fully_symmetric_spec(cm):
    """:class:`FullySymmetricSpec` of a fully symmetric state (after local normalization)."""
    m = _require_fully_symmetric(require_bona_fide(cm))
    n = m.shape[0] // 2
    L, b = _single_mode_normalizer(_blk(m, 0, 0), _blk(m, 0, 1) if n > 1 else np.zeros((2, 2)))
    z = L @ _blk(m, 0, 1) @ L.T if n > 1 else np.zeros((2, 2))
    return FullySymmetricSpec(n, b, float(z[0, 0]), float(z[1, 1]))


# ---------------------------------------------------------------- localization


def uniform_orthogonal(k):
    """Orthogonal ``k x k`` matrix whose first row is ``(1, ..., 1) / sqrt(k)``.

    Built as the Householder reflection exchanging ``e_1`` and the uniform
    unit vector.
    """
    if int(k) != k or k < 1:
        raise InvalidArgumentError(f"size must be a positive integer, got {k!r}")
    k = int(k)
    u = np.full(k, 1.0 / np.sqrt(k))
    v = u.copy()
    v[0] -= 1.0
    nv = v @ v
    if nv < 1e-30:
        return np.eye(k)
    return np.eye(k) - 2.0 * np.outer(v, v) / nv


@dataclass(frozen=True)
class LocalizationResult:
    """Outcome of :func:`unitary_localization`.

    Attributes
    ----------
    two_mode : numpy.ndarray
        ``4x4`` covariance matrix of the localized pair (side A mode first).
    residual : list of numpy.ndarray
        ``2x2`` covariance matrices of the remaining, uncorrelated modes.
    localized_cm : numpy.ndarray
        Full covariance matrix after the local mixing, in the input mode order.
    symplectic : numpy.ndarray
        The local (block-diagonal across the cut) symplectic applied.
    pair : tuple of int
        Modes carrying the localized pair.
    leakage : float
        Largest correlation left between different output groups.
    """

    two_mode: np.ndarray
    residual: list
    localized_cm: np.ndarray
    symplectic: np.ndarray
    pair: tuple
    leakage: float


def _mixing_symplectic(n, sides):
    S = np.eye(2 * n)
    for side in sides:
        O = uniform_orthogonal(len(side))
        for i, ki in enumerate(side):
            for j, kj in enumerate(side):
                S[2 * ki, 2 * kj] = O[i, j]
                S[2 * ki + 1, 2 * kj + 1] = O[i, j]
    return S


def unitary_localization(state, partition, tol=SYMMETRY_CHECK_TOL):
    """Concentrate the ``A|B`` correlations of a bisymmetric state onto two modes.

    On each side, the modes are mixed by ``O (x) I_2`` with ``O`` from
    :func:`uniform_orthogonal`; this is a passive local symplectic. The
    first mode of each side then carries all the correlations across the
    cut, every other mode is left uncorrelated.

    Parameters
    ----------
    state : GaussianState or array_like
    partition : Bipartition or index collections
        If it covers only some modes, the state is first reduced to them.
    tol : float
        Relative tolerance of the bisymmetry check.

    Returns
    -------
    LocalizationResult

    Raises
    ------
    DomainError
        If the state is not bisymmetric with respect to ``partition``.
    """
    m, bp = _restricted(require_bona_fide(state), partition)
    bisymmetric_blocks(m, bp, tol)
    n = m.shape[0] // 2
    S = _mixing_symplectic(n, (bp.side_a, bp.side_b))
    out = S @ m @ S.T
    out = 0.5 * (out + out.T)
    pa, pb = bp.side_a[0], bp.side_b[0]
    rest = [k for k in range(n) if k not in (pa, pb)]
    groups = [(pa, pb)] + [(k,) for k in rest]
    label = np.empty(2 * n, dtype=int)
    for g, modes in enumerate(groups):
        for k in modes:
            label[2 * k : 2 * k + 2] = g
    leak = np.where(label[:, None] != label[None, :], np.abs(out), 0.0).max()
    idx = [2 * pa, 2 * pa + 1, 2 * pb, 2 * pb + 1]
    two = out[np.ix_(idx, idx)]
    residual = [_blk(out, k, k).copy() for k in rest]
    return LocalizationResult(two, residual, out, S, (pa, pb), float(leak))


def localized_two_mode_cm(alpha, eps, beta, zeta, gamma, m, n):
    """Closed form of the localized pair for an ``m|n`` bisymmetric state."""
    a = np.asarray(alpha, float) + (m - 1) * np.asarray(eps, float)
    b = np.asarray(beta, float) + (n - 1) * np.asarray(zeta, float)
    g = np.sqrt(m * n) * np.asarray(gamma, float)
    return np.block([[a, g], [g.T, b]])


# ---------------------------------------------------------------- block entanglement


def block_log_negativity(state, k):
    """Logarithmic negativity between the first ``k`` modes and the rest.

    ``state`` must be fully symmetric, so any ``k``-mode block gives the same value.
    """
    m = _require_fully_symmetric(require_bona_fide(state))
    n = m.shape[0] // 2
    if int(k) != k or not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"block size must be in [1, {n - 1}], got {k!r}")
    return log_negativity(m, tuple(range(int(k))))


def one_vs_block_log_negativity(state, k):
    """Logarithmic negativity between mode 0 and modes ``1..k`` (others traced out).

    For a fully symmetric state this is the ``1|K`` entry of the entanglement hierarchy.
    """
    m = _require_fully_symmetric(require_bona_fide(state))
    n = m.shape[0] // 2
    if int(k) != k or not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"block size must be in [1, {n - 1}], got {k!r}")
    return log_negativity(m, Bipartition((0,), tuple(range(1, int(k) + 1))))


def block_pt_spectrum(state, k):
    """Partially transposed spectrum for the ``k | n-k`` cut of a fully symmetric state."""
    m = _require_fully_symmetric(require_bona_fide(state))
    n = m.shape[0] // 2
    if int(k) != k or not 1 <= k <= n - 1:
        raise InvalidArgumentError(f"block size must be in [1, {n - 1}], got {k!r}")
    return pt_spectrum(m, Bipartition(tuple(range(int(k))), tuple(range(int(k), n))))


def asymptotic_1K_bound(n, k):
    """Infinite-squeezing limit of the ``1|K`` logarithmic negativity.

    For the pure fully symmetric state of ``1 + n`` modes, a single mode
    against a block of ``k < n`` others tends to

    ``-1/2 ln[(k + 1)(n - k) / (n (k + 1) - k (k - 3))]``.

    The value never exceeds ``ln sqrt 5``.
    """
    if int(n) != n or int(k) != k or not 1 <= k < n:
        raise InvalidArgumentError(f"need integers 1 <= K < N, got N={n!r}, K={k!r}")
    return float(-0.5 * np.log((k + 1) * (n - k) / (n * (k + 1) - k * (k - 3))))


def ole(state):
    """Optimal localizable entanglement: the ``floor(n/2)`` block log-negativity."""
    m = as_matrix(state)
    n = m.shape[0] // 2
    if n < 2:
        raise InvalidArgumentError("need at least two modes")
    return block_log_negativity(m, n // 2)
