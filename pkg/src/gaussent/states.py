"""Gaussian states: construction, validity, reduction and entropies."""

from contextlib import contextmanager
from contextvars import ContextVar
from dataclasses import dataclass, field

import numpy as np

from ._validation import as_matrix, mode_indices, quadrature_indices
from .errors import DomainError, InvalidArgumentError, NumericError
from .symplectic import apply, symplectic_spectrum, two_mode_squeezer

BONA_FIDE_TOL = 1e-9
_NEAR_ONE = 1e-12


@dataclass(frozen=True, eq=False)
class GaussianState:
    """Covariance matrix plus first moments of an ``N``-mode Gaussian state.

    Parameters
    ----------
    cm : array_like
        ``2N x 2N`` real symmetric covariance matrix (xpxp ordering,
        vacuum equal to the identity).
    mean : array_like, optional
        Length ``2N`` vector of first moments; zero by default. It plays
        no role in any entropic or entanglement quantity.
    """

    cm: np.ndarray
    mean: np.ndarray = field(default=None)

    def __post_init__(self):
        m = as_matrix(self.cm)
        m.setflags(write=False)
        object.__setattr__(self, "cm", m)
        mean = np.zeros(m.shape[0]) if self.mean is None else np.array(self.mean, dtype=float)
        if mean.shape != (m.shape[0],):
            raise InvalidArgumentError(f"mean must have length {m.shape[0]}, got shape {mean.shape}")
        mean.setflags(write=False)
        object.__setattr__(self, "mean", mean)

    @property
    def n_modes(self):
        return self.cm.shape[0] // 2

    def __repr__(self):
        return f"GaussianState(n_modes={self.n_modes})"


def _state(obj):
    return obj if isinstance(obj, GaussianState) else GaussianState(obj)


def vacuum(n):
    """Vacuum state of ``n`` modes (identity covariance matrix)."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"number of modes must be a positive integer, got {n!r}")
    return GaussianState(np.eye(2 * int(n)))


def thermal(nu):
    """Product of thermal modes with symplectic eigenvalues ``nu``.

    Each ``nu_k`` must be at least one; ``nu_k = 2 nbar_k + 1`` where
    ``nbar_k`` is the mean photon number (see :func:`mean_photon_numbers`).
    """
    nu = np.atleast_1d(np.asarray(nu, dtype=float))
    if nu.ndim != 1 or nu.size == 0:
        raise InvalidArgumentError("nu must be a non-empty 1-D sequence")
    if np.any(nu < 1.0):
        raise DomainError(f"thermal symplectic eigenvalues must be >= 1, got {nu}")
    return GaussianState(np.diag(np.repeat(nu, 2)))


def mean_photon_numbers(nu):
    """Bose-Einstein occupations ``(nu_k - 1) / 2`` of thermal modes."""
    nu = np.asarray(nu, dtype=float)
    if np.any(nu < 1.0):
        raise DomainError("symplectic eigenvalues must be >= 1")
    return (nu - 1.0) / 2.0


def two_mode_squeezed(r):
    """Two-mode squeezed vacuum (twin beam) with squeezing ``r``.

    The covariance matrix has ``cosh 2r`` on the diagonal, ``+sinh 2r``
    between the positions and ``-sinh 2r`` between the momenta.
    """
    return GaussianState(apply(two_mode_squeezer(r), np.eye(4)))


def rounding_slack(cm):
    """Symplectic-eigenvalue uncertainty caused by storing ``cm`` in floating point.

    A relative perturbation ``eps`` of the entries moves ``nu_k`` by about
    ``eps * cond(cm)``; the returned slack is ten times that.
    """
    w = np.linalg.eigvalsh(as_matrix(cm))
    if not w[0] > 0:
        return 0.0
    return float(10.0 * np.finfo(float).eps * w[-1] / w[0])


_ACTIVE_TOL = ContextVar("bona_fide_tol", default=BONA_FIDE_TOL)


@contextmanager
def bona_fide_tolerance(tol):
    """Temporarily change the default tolerance of :func:`is_bona_fide`."""
    if not tol > 0:
        raise InvalidArgumentError(f"tolerance must be positive, got {tol}")
    token = _ACTIVE_TOL.set(float(tol))
    try:
        yield
    finally:
        _ACTIVE_TOL.reset(token)


def is_bona_fide(cm, tol=None):
    """True iff ``cm`` is positive definite with all ``nu_k >= 1 - tol``.

    ``tol`` defaults to ``BONA_FIDE_TOL`` or the value set by
    :func:`bona_fide_tolerance`. The threshold is widened by
    :func:`rounding_slack` so that exactly pure but badly conditioned
    matrices are still accepted.
    """
    tol = _ACTIVE_TOL.get() if tol is None else tol
    try:
        m = as_matrix(cm)
        return bool(symplectic_spectrum(m)[0] >= 1.0 - tol - rounding_slack(m))
    except DomainError:
        return False


def require_bona_fide(cm, tol=None):
    """Return the symmetrized matrix of ``cm`` or raise :class:`DomainError`."""
    m = as_matrix(cm)
    if not is_bona_fide(m, tol):
        raise DomainError("not a physical covariance matrix")
    return m


def reduce(state, modes):
    """Reduced state on the 0-based ``modes`` (partial trace over the rest)."""
    st = _state(state)
    idx = quadrature_indices(mode_indices(modes, st.n_modes))
    return GaussianState(st.cm[np.ix_(idx, idx)], st.mean[idx])


def purity(state):
    """``Tr rho^2 = 1 / prod(nu_k)``, clipped to at most one."""
    return min(1.0, float(1.0 / np.prod(symplectic_spectrum(require_bona_fide(state)))))


def linear_entropy(state):
    """``1 - purity``."""
    return 1.0 - purity(state)


def entropy_function(x):
    """Von Neumann entropy of a thermal mode with symplectic eigenvalue ``x``.

    ``f(x) = ((x+1)/2) ln((x+1)/2) - ((x-1)/2) ln((x-1)/2)``, with the
    continuous extension ``f(1) = 0``.
    """
    x = np.asarray(x, dtype=float)
    xp = (x + 1.0) / 2.0
    xm = np.clip((x - 1.0) / 2.0, 0.0, None)
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = np.where(xm > _NEAR_ONE, xm * np.log(np.where(xm > 0, xm, 1.0)), 0.0)
    out = xp * np.log(xp) - tail
    return out if out.ndim else float(out)


def tr_rho_p_factor(x, p):
    """Single-mode factor ``g_p(x) = 2^p / ((x+1)^p - (x-1)^p)`` of ``Tr rho^p``."""
    x = np.asarray(x, dtype=float)
    out = 2.0**p / ((x + 1.0) ** p - np.clip(x - 1.0, 0.0, None) ** p)
    return out if out.ndim else float(out)


def von_neumann_entropy(state):
    """Sum of :func:`entropy_function` over the symplectic spectrum (nats)."""
    nu = symplectic_spectrum(require_bona_fide(state))
    return float(np.sum(entropy_function(np.maximum(nu, 1.0))))


def _check_p(p):
    if not p > 1:
        raise InvalidArgumentError(f"entropy order must exceed 1, got {p}")


def generalized_entropy(state, p):
    """Tsallis-type entropy ``(1 - Tr rho^p) / (p - 1)`` for ``p > 1``."""
    _check_p(p)
    nu = np.maximum(symplectic_spectrum(require_bona_fide(state)), 1.0)
    return float((1.0 - np.prod(tr_rho_p_factor(nu, p))) / (p - 1.0))


def renyi_entropy(state, p):
    """Renyi entropy ``ln(Tr rho^p) / (1 - p)`` for ``p > 1``."""
    _check_p(p)
    nu = np.maximum(symplectic_spectrum(require_bona_fide(state)), 1.0)
    return float(np.sum(np.log(tr_rho_p_factor(nu, p))) / (1.0 - p))


def symplectic_rank(state, tol=1e-8):
    """Number of symplectic eigenvalues exceeding ``1 + tol``."""
    return int(np.sum(symplectic_spectrum(require_bona_fide(state)) > 1.0 + tol))


def is_pure(state, tol=1e-8):
    return symplectic_rank(state, tol) == 0


def wigner_at(state, point):
    """Wigner function ``exp(-x^T cm^{-1} x / 2) / (pi^N sqrt(det cm))``.

    Parameters
    ----------
    state : GaussianState or array_like
    point : array_like
        Phase-space point of length ``2N``; the state mean is subtracted.

    Notes
    -----
    With this prefactor the function integrates to one against the
    measure ``d^{2N}x / 2^N`` and ``pi^N * integral(W^2 d^{2N}x)`` equals
    the purity.
    """
    st = _state(state)
    x = np.asarray(point, dtype=float)
    if x.shape != st.mean.shape:
        raise InvalidArgumentError(f"point must have length {st.mean.size}")
    x = x - st.mean
    det = np.linalg.det(st.cm)
    if not det > 0:
        raise NumericError("covariance matrix is singular")
    try:
        q = x @ np.linalg.solve(st.cm, x)
    except np.linalg.LinAlgError:
        raise NumericError("covariance matrix is singular") from None
    return float(np.exp(-0.5 * q) / (np.pi**st.n_modes * np.sqrt(det)))

