"""Partial transposition, negativities and two-mode entanglement structure."""

from dataclasses import dataclass

import numpy as np

from ._validation import as_matrix, mode_indices, quadrature_indices
from .errors import DomainError, InvalidArgumentError, NumericError
from .states import (
    BONA_FIDE_TOL,
    GaussianState,
    entropy_function,
    is_pure,
    reduce,
    require_bona_fide,
)
from .symplectic import symplectic_spectrum

REGIONS = ("unphysical-low", "separable", "coexistence", "entangled", "unphysical-high")


@dataclass(frozen=True)
class Bipartition:
    """Two disjoint, non-empty sets of 0-based mode indices."""

    side_a: tuple
    side_b: tuple

    def __post_init__(self):
        a = tuple(sorted(int(k) for k in self.side_a))
        b = tuple(sorted(int(k) for k in self.side_b))
        if not a or not b:
            raise InvalidArgumentError("both sides of a bipartition must be non-empty")
        if len(set(a)) != len(a) or len(set(b)) != len(b) or set(a) & set(b):
            raise InvalidArgumentError(f"sides {a} and {b} must be disjoint without repeats")
        if min(a + b) < 0:
            raise InvalidArgumentError("mode indices must be non-negative")
        object.__setattr__(self, "side_a", a)
        object.__setattr__(self, "side_b", b)

    @property
    def modes(self):
        return tuple(sorted(self.side_a + self.side_b))

    def check(self, n_modes):
        if max(self.modes) >= n_modes:
            raise InvalidArgumentError(f"bipartition {self} exceeds {n_modes} modes")
        return self


def as_bipartition(partition, n_modes):
    """Coerce ``partition`` into a :class:`Bipartition` valid for ``n_modes``.

    ``partition`` may be a :class:`Bipartition`, a pair ``(A, B)`` of index
    collections, or a single collection ``A`` (then ``B`` is its complement).
    """
    if isinstance(partition, Bipartition):
        return partition.check(n_modes)
    if isinstance(partition, (int, np.integer)):
        partition = (partition,)
    parts = list(partition)
    if len(parts) == 2 and all(np.ndim(p) == 1 for p in parts):
        a, b = parts
    else:
        a = mode_indices(parts, n_modes)
        b = tuple(k for k in range(n_modes) if k not in a)
    return Bipartition(tuple(a), tuple(b)).check(n_modes)


def _restricted(cm, partition):
    """Covariance matrix on the modes of ``partition`` and the relabelled cut."""
    m = as_matrix(cm)
    n = m.shape[0] // 2
    bp = as_bipartition(partition, n)
    if len(bp.modes) == n:
        return m, bp
    sub = reduce(GaussianState(m), bp.modes).cm
    pos = {k: i for i, k in enumerate(bp.modes)}
    return sub, Bipartition(tuple(pos[k] for k in bp.side_a), tuple(pos[k] for k in bp.side_b))


def partial_transpose(cm, partition):
    """``theta cm theta`` with ``theta`` flipping the momenta of side A.

    The partition must cover every mode of ``cm``.
    """
    m = as_matrix(cm)
    n = m.shape[0] // 2
    bp = as_bipartition(partition, n)
    if len(bp.modes) != n:
        raise InvalidArgumentError("partial transposition needs a bipartition of all modes")
    theta = np.ones(2 * n)
    theta[[2 * k + 1 for k in bp.side_a]] = -1.0
    return theta[:, None] * m * theta[None, :]


def pt_spectrum(cm, partition):
    """Symplectic spectrum of the partial transpose (ascending)."""
    m, bp = _restricted(cm, partition)
    return symplectic_spectrum(partial_transpose(m, bp))


def pt_min_eigenvalue(cm, partition):
    """Smallest partially transposed symplectic eigenvalue."""
    return float(pt_spectrum(require_bona_fide(cm), partition)[0])


def is_ppt(cm, partition, tol=BONA_FIDE_TOL):
    """Positivity of the partial transpose: ``min nu~ >= 1 - tol``."""
    return pt_min_eigenvalue(cm, partition) >= 1.0 - tol


def negativity(cm, partition):
    """``(prod_{nu~<1} 1/nu~ - 1) / 2``; zero for PPT states."""
    nt = pt_spectrum(require_bona_fide(cm), partition)
    return float(0.5 * (np.prod(1.0 / nt[nt < 1.0]) - 1.0))


def log_negativity(cm, partition):
    """``-sum log nu~`` over the partially transposed eigenvalues below one."""
    nt = pt_spectrum(require_bona_fide(cm), partition)
    return float(-np.sum(np.log(nt[nt < 1.0]))) + 0.0


def negativity_from_log_negativity(en):
    """Negativity implied by a logarithmic negativity: ``(e^E - 1) / 2``."""
    return 0.5 * np.expm1(en)


def entropy_of_entanglement(cm, partition, tol=1e-8):
    """Von Neumann entropy of side A for a globally pure state."""
    m, bp = _restricted(cm, partition)
    require_bona_fide(m)
    if not is_pure(m, tol):
        raise DomainError("entropy of entanglement needs a pure state")
    nu = symplectic_spectrum(reduce(GaussianState(m), bp.side_a))
    return float(np.sum(entropy_function(np.maximum(nu, 1.0))))


# ---------------------------------------------------------------- two modes


@dataclass(frozen=True)
class TwoModeInvariants:
    """Marginal purities, global purity and seralian of a two-mode state."""

    mu1: float
    mu2: float
    mu: float
    delta: float


@dataclass(frozen=True)
class TwoModeStdForm:
    """Standard-form covariances ``(a, b, c_plus, c_minus)``.

    The matrix is ``[[a, 0, c+, 0], [0, a, 0, c-], [c+, 0, b, 0],
    [0, c-, 0, b]]`` with ``c_plus >= |c_minus|``.
    """

    a: float
    b: float
    c_plus: float
    c_minus: float

    @property
    def det_gamma(self):
        return self.c_plus * self.c_minus

    @property
    def det_sigma(self):
        ab = self.a * self.b
        return (ab - self.c_plus**2) * (ab - self.c_minus**2)

    @property
    def delta(self):
        return self.a**2 + self.b**2 + 2.0 * self.det_gamma

    @property
    def invariants(self):
        return TwoModeInvariants(1.0 / self.a, 1.0 / self.b, 1.0 / np.sqrt(self.det_sigma), self.delta)

    def matrix(self):
        a, b, cp, cm = self.a, self.b, self.c_plus, self.c_minus
        return np.array([[a, 0, cp, 0], [0, a, 0, cm], [cp, 0, b, 0], [0, cm, 0, b]], dtype=float)

    @property
    def is_symmetric(self):
        return abs(self.a - self.b) <= 1e-9 * max(1.0, self.a)


def _two_mode(cm):
    m = as_matrix(cm)
    if m.shape != (4, 4):
        raise InvalidArgumentError(f"expected a two-mode (4x4) covariance matrix, got {m.shape}")
    return m


def _std_form_from_invariants(a, b, det_gamma, det_sigma, what):
    p = (a * a * b * b + det_gamma**2 - det_sigma) / (a * b)
    disc = p * p - 4.0 * det_gamma**2
    if disc < -1e-10 * max(1.0, p * p):
        raise NumericError(f"{what}: negative discriminant {disc:.3e}")
    root = np.sqrt(max(disc, 0.0))
    t_hi = 0.5 * (p + root)
    t_lo = max(det_gamma**2 / t_hi, 0.0) if t_hi > 0 else 0.0
    c_plus = np.sqrt(max(t_hi, 0.0))
    c_minus = np.sign(det_gamma) * np.sqrt(t_lo)
    return TwoModeStdForm(float(a), float(b), float(c_plus), float(c_minus))


def _normalizer(block):
    """``sqrt(a) block^{-1/2}``: unit-determinant map sending ``block`` to ``a I``."""
    w, V = np.linalg.eigh(block)
    return np.sqrt(np.sqrt(w[0] * w[1])) * (V / np.sqrt(w)) @ V.T


def two_mode_standard_form(cm):
    """Standard form of a bona fide two-mode covariance matrix.

    Each local block is rescaled to a multiple of the identity, then the
    coupling block is diagonalized by local rotations (a signed singular
    value decomposition). Going through local operations rather than the
    invariants keeps ``c_plus`` and ``c_minus`` accurate to rounding even
    when they nearly coincide in modulus.

    Returns
    -------
    TwoModeStdForm
    """
    if isinstance(cm, TwoModeStdForm):
        return cm
    m = require_bona_fide(_two_mode(cm))
    A, B, C = m[:2, :2], m[2:, 2:], m[:2, 2:]
    a, b = np.sqrt(np.linalg.det(A)), np.sqrt(np.linalg.det(B))
    U, c, Vt = np.linalg.svd(_normalizer(A) @ C @ _normalizer(B).T)
    sign = np.sign(np.linalg.det(U) * np.linalg.det(Vt)) or 1.0
    return TwoModeStdForm(float(a), float(b), float(c[0]), float(sign * c[1]))


def two_mode_invariants(cm):
    return two_mode_standard_form(cm).invariants


def pt_symplectic_pair(sf):
    """Partially transposed symplectic eigenvalues ``(nu~-, nu~+)``.

    Uses ``Delta~ = Delta - 4 det gamma`` and
    ``2 nu~^2 = Delta~ -+ sqrt(Delta~^2 - 4 det sigma)``.
    """
    sf = two_mode_standard_form(sf)
    dt = sf.delta - 4.0 * sf.det_gamma
    rad = dt * dt - 4.0 * sf.det_sigma
    if rad < -1e-10 * max(1.0, dt * dt):
        raise NumericError(f"negative radicand {rad:.3e} in partially transposed spectrum")
    root = np.sqrt(max(rad, 0.0))
    hi = 0.5 * (dt + root)
    lo = sf.det_sigma / hi  # product of the two squares equals det sigma
    return float(np.sqrt(lo)), float(np.sqrt(hi))


def eof_function(x):
    """Entanglement of formation of a symmetric state with ``nu~- = x``.

    Defined for ``0 < x <= 1`` (zero at ``x = 1``); values ``x >= 1`` give 0.
    """
    x = np.asarray(x, dtype=float)
    xc = np.clip(x, 1e-300, 1.0)
    c_p = (1.0 + xc) ** 2 / (4.0 * xc)
    c_m = (1.0 - xc) ** 2 / (4.0 * xc)
    with np.errstate(divide="ignore", invalid="ignore"):
        tail = np.where(c_m > 0, c_m * np.log(np.where(c_m > 0, c_m, 1.0)), 0.0)
    out = np.where(x >= 1.0, 0.0, c_p * np.log(c_p) - tail)
    return out if out.ndim else float(out)


def eof_symmetric(sf):
    """Entanglement of formation of a symmetric two-mode state."""
    sf = two_mode_standard_form(sf)
    if not sf.is_symmetric:
        raise DomainError(f"state is not symmetric (a={sf.a}, b={sf.b})")
    return float(eof_function(pt_symplectic_pair(sf)[0]))


def _purity_bounds(mu1, mu2):
    p = mu1 * mu2
    sep = p / (mu1 + mu2 - p)
    coex = p / np.sqrt(mu1**2 + mu2**2 - p**2)
    ent = p / (p + abs(mu1 - mu2))
    return p, sep, coex, ent


def classify_purities(mu1, mu2, mu):
    """Region of the purity space a triple ``(mu1, mu2, mu)`` falls into.

    Returns one of ``"unphysical-low"``, ``"separable"``, ``"coexistence"``,
    ``"entangled"`` or ``"unphysical-high"``.
    """
    for v in (mu1, mu2, mu):
        if not 0.0 < v <= 1.0:
            raise InvalidArgumentError(f"purities must lie in (0, 1], got {v}")
    low, sep, coex, high = _purity_bounds(mu1, mu2)
    if mu < low:
        return "unphysical-low"
    if mu > high:
        return "unphysical-high"
    if mu <= sep:
        return "separable"
    if mu <= coex:
        return "coexistence"
    return "entangled"


def delta_bounds(mu1, mu2, mu):
    """Lower and upper admissible seralian at fixed purities."""
    lower = 2.0 / mu + (mu1 - mu2) ** 2 / (mu1**2 * mu2**2)
    upper = min((mu1 + mu2) ** 2 / (mu1**2 * mu2**2) - 2.0 / mu, 1.0 + 1.0 / mu**2)
    return lower, upper


def glems_upper_is_minimum_uncertainty(mu1, mu2, mu):
    """True when ``1 + 1/mu^2`` is the active upper bound on the seralian."""
    return 1.0 + 1.0 / mu**2 <= (mu1 + mu2) ** 2 / (mu1**2 * mu2**2) - 2.0 / mu


def _extremal(mu1, mu2, mu, delta, what):
    region = classify_purities(mu1, mu2, mu)
    if region.startswith("unphysical"):
        raise DomainError(f"purities ({mu1}, {mu2}, {mu}) are unphysical ({region})")
    a, b = 1.0 / mu1, 1.0 / mu2
    det_gamma = 0.5 * (delta - a * a - b * b)
    return _std_form_from_invariants(a, b, det_gamma, 1.0 / mu**2, what)


def gmems(mu1, mu2, mu):
    """Maximally entangled standard form at fixed global/marginal purities."""
    return _extremal(mu1, mu2, mu, delta_bounds(mu1, mu2, mu)[0], "GMEMS")


def glems(mu1, mu2, mu):
    """Least entangled standard form at fixed global/marginal purities."""
    return _extremal(mu1, mu2, mu, delta_bounds(mu1, mu2, mu)[1], "GLEMS")


def _log_neg_sf(sf):
    return max(0.0, -np.log(pt_symplectic_pair(sf)[0]))


def average_log_negativity(mu1, mu2, mu):
    """Mean of the GMEMS and GLEMS logarithmic negativities."""
    return 0.5 * (_log_neg_sf(gmems(mu1, mu2, mu)) + _log_neg_sf(glems(mu1, mu2, mu)))
