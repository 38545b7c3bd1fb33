"""Gaussian entanglement measures from optimal pure-state decompositions.

Every Gaussian entanglement measure of a mixed state is the value, on the
pure Gaussian state ``sigma_p <= sigma`` with the least-mixed probe
reduction, of a monotone function of ``m^2 = det(probe block)``. This
module locates that optimum

* for two modes, by a one-parameter search along the rim of the set of
  admissible pure states (see :func:`m_squared_theta`);
* for one mode against several, by a barrier-method search over all pure
  covariance matrices below ``sigma`` (see :func:`one_vs_rest`).
"""

from dataclasses import dataclass

import numpy as np
from scipy.stats import unitary_group

from . import _pure_opt
from ._validation import as_matrix, mode_indices
from .errors import DomainError, InvalidArgumentError, NumericError
from .separability import (
    TwoModeStdForm,
    eof_function,
    glems,
    gmems,
    pt_min_eigenvalue,
    pt_symplectic_pair,
    two_mode_standard_form,
)
from .states import is_pure, require_bona_fide
from .symplectic import williamson

MEASURES = ("gaussian_eof", "contangle", "gaussian_tangle")
SEPARABLE_GUARD = 1e-9
GRID_POINTS = 720


# ---------------------------------------------------------------- pure-state functions


def contangle_function(m2):
    """``arcsinh^2 sqrt(m^2 - 1)``: contangle of a pure state with probe determinant ``m^2``."""
    m2 = np.maximum(np.asarray(m2, dtype=float), 1.0)
    out = np.arcsinh(np.sqrt(m2 - 1.0)) ** 2
    return out if out.ndim else float(out)


def tangle_function(m2):
    """``(sqrt(m^2 - 1) + sqrt(m^2) - 1)^2 / 4``: squared negativity of the pure state."""
    m2 = np.maximum(np.asarray(m2, dtype=float), 1.0)
    out = 0.25 * (np.sqrt(m2 - 1.0) + np.sqrt(m2) - 1.0) ** 2
    return out if out.ndim else float(out)


def nu_tilde_from_m_squared(m2):
    """Smallest partially transposed eigenvalue ``m - sqrt(m^2 - 1)`` of the pure state."""
    m2 = np.maximum(np.asarray(m2, dtype=float), 1.0)
    out = np.sqrt(m2) - np.sqrt(m2 - 1.0)
    return out if out.ndim else float(out)


def eof_from_m_squared(m2):
    return eof_function(nu_tilde_from_m_squared(m2))


_MEASURE_FUNCS = {
    "gaussian_eof": eof_from_m_squared,
    "contangle": contangle_function,
    "gaussian_tangle": tangle_function,
}


def measure_from_m_squared(m2, measure):
    """Apply the pure-state function of ``measure`` to ``m^2``."""
    try:
        fn = _MEASURE_FUNCS[measure]
    except KeyError:
        raise InvalidArgumentError(f"unknown measure {measure!r}; choose from {MEASURES}") from None
    return float(fn(m2))


# ---------------------------------------------------------------- two modes


@dataclass(frozen=True)
class GaussianEMResult:
    """Outcome of the two-mode pure-state optimization.

    Attributes
    ----------
    m_squared_opt : float
        Minimal probe determinant, at least one.
    theta_opt : float
        Rim angle of the optimum in ``[0, 2 pi)``.
    value : float
        The requested measure evaluated at ``m_squared_opt``.
    nu_tilde_opt : float
        ``m_opt - sqrt(m_opt^2 - 1)``.
    measure : str
    """

    m_squared_opt: float
    theta_opt: float
    value: float
    nu_tilde_opt: float
    measure: str


def canonical_std_form(sf):
    """Relabel quadratures so that ``c_plus >= |c_minus|``.

    Swapping ``q`` and ``p`` on both modes exchanges ``c_plus`` and
    ``c_minus``; a phase flip of one mode negates both.
    """
    sf = two_mode_standard_form(sf)
    cp, cm = sf.c_plus, sf.c_minus
    if abs(cm) > abs(cp):
        cp, cm = cm, cp
    if cp < 0:
        cp, cm = -cp, -cm
    return TwoModeStdForm(sf.a, sf.b, cp, cm)


def _rim_setup(sf):
    a, b, cp, cm = sf.a, sf.b, sf.c_plus, sf.c_minus
    gq = np.array([[a, cp], [cp, b]])
    det_p = a * b - cm * cm
    if not det_p > 0:
        raise NumericError("momentum block of the standard form is not positive definite")
    gp_inv = np.array([[b, -cm], [-cm, a]]) / det_p
    M = gq - gp_inv
    m0 = 0.5 * (M[0, 0] + M[1, 1])
    m1 = M[0, 1]
    m3 = 0.5 * (M[0, 0] - M[1, 1])
    rad = m0 * m0 - m1 * m1 - m3 * m3
    if rad < -1e-9 * max(1.0, m0 * m0) or m0 < -1e-12:
        raise NumericError(f"standard form outside the admissible domain (radicand {rad:.3e})")
    return gq, m0, m1, m3, np.sqrt(max(rad, 0.0))


def m_squared_theta(sf, theta):
    """Probe determinant of the pure state at rim angle ``theta``.

    Parameters
    ----------
    sf : TwoModeStdForm or array_like
        Standard form (or a two-mode covariance matrix).
    theta : float or array_like
        Polar angle on the rim.

    Returns
    -------
    float or numpy.ndarray
        ``m^2 = 1 + x1^2 / det(Gamma)``.

    Notes
    -----
    In standard form the candidate pure states are
    ``Gamma (+) Gamma^{-1}`` with ``gamma_p^{-1} <= Gamma <= gamma_q``, where
    ``gamma_q = [[a, c+], [c+, b]]`` and ``gamma_p = [[a, c-], [c-, b]]``.
    Writing symmetric 2x2 matrices as Minkowski vectors
    ``(x0, x1, x3) -> [[x0 + x3, x1], [x1, x0 - x3]]`` (the determinant is
    the Minkowski norm), the rim on which the optimum lies is the set where
    both ``gamma_q - Gamma`` and ``Gamma - gamma_p^{-1}`` are null. It is
    the circle of radius ``sqrt(det M) / 2`` in the rest frame of
    ``M = gamma_q - gamma_p^{-1}``; ``theta`` is the polar angle there.
    When ``M`` is null (partial minimum uncertainty) the circle collapses
    onto the segment between ``gamma_p^{-1}`` and ``gamma_q``, which the
    same expression traverses.
    """
    sf = canonical_std_form(sf)
    gq, m0, m1, m3, mu = _rim_setup(sf)
    th = np.asarray(theta, dtype=float)
    c, s = np.cos(th), np.sin(th)
    dot = m1 * c + m3 * s
    w = dot / (mu + m0) if mu + m0 > 0 else 0.0 * th
    # no division by mu: at mu = 0 the rim is the null segment from gamma_p^-1 to gamma_q
    u0 = 0.5 * (m0 + dot)
    u1 = 0.5 * (mu * c + m1 + w * m1)
    u3 = 0.5 * (mu * s + m3 + w * m3)
    G00 = gq[0, 0] - (u0 + u3)
    G11 = gq[1, 1] - (u0 - u3)
    G01 = gq[0, 1] - u1
    det = G00 * G11 - G01 * G01
    out = 1.0 + G01 * G01 / det
    return out if out.ndim else float(out)


_INV_PHI = (np.sqrt(5.0) - 1.0) / 2.0


def _golden(f, lo, hi, xtol=1e-10):
    """Golden-section search for a minimum of ``f`` on ``[lo, hi]``."""
    x1 = hi - _INV_PHI * (hi - lo)
    x2 = lo + _INV_PHI * (hi - lo)
    f1, f2 = f(x1), f(x2)
    while hi - lo > xtol:
        if f1 <= f2:
            hi, x2, f2 = x2, x1, f1
            x1 = hi - _INV_PHI * (hi - lo)
            f1 = f(x1)
        else:
            lo, x1, f1 = x1, x2, f2
            x2 = lo + _INV_PHI * (hi - lo)
            f2 = f(x2)
    return (x1, f1) if f1 <= f2 else (x2, f2)


def _result(m2, theta, measure):
    m2 = max(float(m2), 1.0)
    return GaussianEMResult(m2, float(theta), measure_from_m_squared(m2, measure), float(nu_tilde_from_m_squared(m2)), measure)


def minimize_m_squared(sf, measure="gaussian_eof", grid=GRID_POINTS):
    """Global minimum of :func:`m_squared_theta` over ``[0, 2 pi)``.

    A uniform grid of ``grid`` angles seeds golden-section refinements
    around the three lowest local minima (to ``|d theta| < 1e-10``).
    Separable states (``nu~- >= 1 - 1e-9``) short-circuit to ``m^2 = 1`` and
    pure states to ``m^2 = a^2``.

    Returns
    -------
    GaussianEMResult
    """
    if measure not in MEASURES:
        raise InvalidArgumentError(f"unknown measure {measure!r}; choose from {MEASURES}")
    sf = canonical_std_form(sf)
    if pt_symplectic_pair(sf)[0] >= 1.0 - SEPARABLE_GUARD:
        return _result(1.0, 0.0, measure)
    if abs(sf.det_sigma - 1.0) <= 1e-10 * max(1.0, sf.a**2):
        return _result(sf.a**2, 0.0, measure)
    thetas = np.linspace(0.0, 2.0 * np.pi, grid, endpoint=False)
    vals = m_squared_theta(sf, thetas)
    if not np.all(np.isfinite(vals)):
        raise NumericError("non-finite m^2 on the rim")
    left, right = np.roll(vals, 1), np.roll(vals, -1)
    local = np.flatnonzero((vals <= left) & (vals <= right))
    local = local[np.argsort(vals[local], kind="stable")][:3]
    step = thetas[1]
    best_m2, best_th = np.inf, 0.0
    f = lambda t: m_squared_theta(sf, t)  # noqa: E731
    for i in local:
        t0 = thetas[i]
        th, val = _golden(f, t0 - step, t0 + step)
        if not val <= vals[i]:
            th, val = t0, vals[i]
        th = th % (2.0 * np.pi)
        if val < best_m2 - 1e-12 or (abs(val - best_m2) <= 1e-12 and th < best_th):
            best_m2, best_th = val, th
    return _result(best_m2, best_th, measure)


def gaussian_eof(cm):
    """Gaussian entanglement of formation of a two-mode state."""
    return minimize_m_squared(two_mode_standard_form(cm), "gaussian_eof").value


def contangle_two_mode(cm):
    """Gaussian contangle ``arcsinh^2 sqrt(m_opt^2 - 1)`` of a two-mode state."""
    return minimize_m_squared(two_mode_standard_form(cm), "contangle").value


def gaussian_tangle_two_mode(cm):
    """Gaussian tangle of a two-mode state."""
    return minimize_m_squared(two_mode_standard_form(cm), "gaussian_tangle").value


# ---------------------------------------------------------------- ordering


def symmetric_eof_bound(log_neg):
    """Smallest ``G_EF`` compatible with a logarithmic negativity ``log_neg``.

    Symmetric states sit on this curve, ``h`` evaluated at ``nu~- = e^-E``.
    """
    return eof_function(np.exp(-np.asarray(log_neg, dtype=float)))


@dataclass(frozen=True)
class OrderingInversion:
    """GMEMS/GLEMS pair at shared purities, ordered oppositely by ``E_N`` and ``G_EF``."""

    purities: tuple
    log_neg_gmems: float
    log_neg_glems: float
    eof_gmems: float
    eof_glems: float


def purity_matched_inversion(mu1, mu2, mu):
    """Compare the extremal states at purities ``(mu1, mu2, mu)``.

    Returns an :class:`OrderingInversion` when the maximally entangled
    state (by logarithmic negativity) has the strictly smaller Gaussian
    entanglement of formation, ``None`` otherwise.
    """
    top, low = gmems(mu1, mu2, mu), glems(mu1, mu2, mu)
    en = [max(0.0, -np.log(pt_symplectic_pair(sf)[0])) for sf in (top, low)]
    ef = [minimize_m_squared(sf, "gaussian_eof").value for sf in (top, low)]
    if en[0] > en[1] and ef[0] < ef[1]:
        return OrderingInversion((float(mu1), float(mu2), float(mu)), en[0], en[1], ef[0], ef[1])
    return None


# ---------------------------------------------------------------- pure 1 x N


def _pure_probe_det(cm, probe, tol):
    m = require_bona_fide(cm)
    n = m.shape[0] // 2
    (p,) = mode_indices([probe], n)
    if not is_pure(m, tol):
        raise DomainError("a pure global state is required")
    blk = m[2 * p : 2 * p + 2, 2 * p : 2 * p + 2]
    return max(float(np.linalg.det(blk)), 1.0)


def contangle_pure_1xN(cm, probe, tol=1e-8):
    """Contangle between mode ``probe`` and the rest of a pure state.

    Equals ``ln^2(a_p - sqrt(a_p^2 - 1))`` with ``a_p`` the square root of
    the probe-block determinant.
    """
    a = np.sqrt(_pure_probe_det(cm, probe, tol))
    return float(np.log(a - np.sqrt(a * a - 1.0)) ** 2)


def gaussian_tangle_pure_1xN(cm, probe, tol=1e-8):
    """Gaussian tangle ``w(a_p^2)`` between mode ``probe`` and the rest of a pure state."""
    return tangle_function(_pure_probe_det(cm, probe, tol))


# ---------------------------------------------------------------- mixed 1 x N


@dataclass(frozen=True)
class OneVsRestResult:
    """Optimal pure decomposition for one mode against all the others.

    Attributes
    ----------
    m_squared_opt : float
        Minimal probe determinant over pure ``sigma_p <= sigma``.
    value : float
        The requested measure at ``m_squared_opt``.
    nu_tilde_opt : float
    pure_cm : numpy.ndarray
        The optimal pure covariance matrix found.
    starts : int
        Number of optimizer starts actually run.
    agreeing_starts : int
        Starts whose optimum matched the best one within the agreement tolerance.
    measure : str
    """

    m_squared_opt: float
    value: float
    nu_tilde_opt: float
    pure_cm: np.ndarray
    starts: int
    agreeing_starts: int
    measure: str


_BARRIER_WEIGHTS = 10.0 ** -np.arange(1, 11)
_PURE_TOL = 1e-9


def _qqpp(r):
    return np.r_[np.arange(0, 2 * r, 2), np.arange(1, 2 * r, 2)]


def _random_start(nu, rng, k):
    """Strictly feasible pure start below ``diag(repeat(nu, 2))`` (xpxp)."""
    r = nu.size
    if k == 0:
        return np.eye(2 * r)
    Z = np.zeros((2 * r, 2 * r))
    if k % 2 == 1:
        for j in range(r):
            lim = 0.5 * np.log(nu[j])
            t = np.exp(rng.uniform(-lim, lim))
            th = rng.uniform(0.0, np.pi)
            R = np.array([[np.cos(th), -np.sin(th)], [np.sin(th), np.cos(th)]])
            Z[2 * j : 2 * j + 2, 2 * j : 2 * j + 2] = R @ np.diag([t, 1.0 / t]) @ R.T
        return Z
    # passive mixing of squeezed modes, each squeezed below the smallest nu
    lim = 0.5 * np.log(nu.min())
    D = np.diag(np.repeat(np.exp(rng.uniform(-lim, lim, r)), 2) ** np.tile([1.0, -1.0], r))
    U = unitary_group.rvs(r, random_state=rng) if r > 1 else np.exp(1j * rng.uniform(0, 2 * np.pi)) * np.ones((1, 1))
    O = np.zeros((2 * r, 2 * r))
    for i in range(r):
        for j in range(r):
            x, y = U[i, j].real, U[i, j].imag
            O[2 * i : 2 * i + 2, 2 * j : 2 * j + 2] = [[x, -y], [y, x]]
    return O @ D @ O.T


def one_vs_rest(cm, probe, measure="gaussian_tangle", starts=8, agree=3, rtol=1e-7, seed=0, maxiter=4000):
    """Gaussian entanglement measure between ``probe`` and all other modes.

    Minimizes the probe-block determinant over pure covariance matrices
    ``sigma_p <= sigma``.

    Parameters
    ----------
    cm : array_like or GaussianState
        Bona fide covariance matrix with at least two modes.
    probe : int
        0-based probe mode.
    measure : {"gaussian_tangle", "contangle", "gaussian_eof"}
    starts : int
        Maximal number of optimizer starts.
    agree : int
        Stop early once this many starts reproduce the best value within ``rtol``.
    seed : int
        Seed of the random starting points; results are deterministic.

    Returns
    -------
    OneVsRestResult

    Notes
    -----
    Write ``sigma = S^T nu S`` (Williamson). Then ``sigma_p = S^T g S`` with
    ``g`` pure and ``g <= nu``. Modes with ``nu_k = 1`` force ``g`` to be
    the vacuum there, so only the ``r`` mixed normal modes are optimized.
    PPT states return ``m^2 = 1`` directly.
    """
    if measure not in MEASURES:
        raise InvalidArgumentError(f"unknown measure {measure!r}; choose from {MEASURES}")
    m = require_bona_fide(as_matrix(cm))
    n = m.shape[0] // 2
    if n < 2:
        raise InvalidArgumentError("need at least two modes")
    (p,) = mode_indices([probe], n)
    if pt_min_eigenvalue(m, [p]) >= 1.0 - SEPARABLE_GUARD:
        return OneVsRestResult(1.0, 0.0, 1.0, None, 0, 0, measure)
    S, nu = williamson(m)
    mixed = np.flatnonzero(nu > 1.0 + _PURE_TOL)
    pure = np.flatnonzero(nu <= 1.0 + _PURE_TOL)
    cols = S[:, [2 * p, 2 * p + 1]]
    rows_pure = np.array([2 * k + q for k in pure for q in (0, 1)], dtype=int)
    rows_mixed = np.array([2 * k + q for k in mixed for q in (0, 1)], dtype=int)
    K0 = cols[rows_pure].T @ cols[rows_pure] if pure.size else np.zeros((2, 2))

    def assemble(g_mixed_xpxp):
        g = np.eye(2 * n)
        if mixed.size:
            g[np.ix_(rows_mixed, rows_mixed)] = g_mixed_xpxp
        out = S.T @ g @ S
        return 0.5 * (out + out.T)

    if mixed.size == 0:
        m2 = max(float(np.linalg.det(K0)), 1.0)
        return OneVsRestResult(m2, measure_from_m_squared(m2, measure), nu_tilde_from_m_squared(m2), m, 1, 1, measure)

    r = mixed.size
    perm = _qqpp(r)
    V = np.ascontiguousarray(cols[rows_mixed][perm])
    nu_q = np.ascontiguousarray(np.repeat(nu[mixed], 2)[perm])
    K0 = np.ascontiguousarray(K0)
    rng = np.random.default_rng(seed)
    results = []
    for k in range(starts):
        z = _random_start(nu[mixed], rng, k)
        x0 = _pure_opt.siegel_params(np.ascontiguousarray(z[np.ix_(perm, perm)]), r)
        f, x, _ = _pure_opt.minimize_probe_det(x0, r, nu_q, K0, V, _BARRIER_WEIGHTS, maxiter)
        if np.isfinite(f):
            results.append((f, k, x))
            best = min(results)[0]
            if sum(1 for v, _, _ in results if v <= best * (1.0 + rtol)) >= agree:
                break
    if not results:
        raise NumericError("pure-state optimizer found no feasible point")
    best_f, _, best_x = min(results, key=lambda t: (t[0], t[1]))
    n_agree = sum(1 for v, _, _ in results if v <= best_f * (1.0 + rtol))
    g = _pure_opt.pure_from_params(best_x, r)
    inv = np.argsort(perm)
    pure_cm = assemble(g[np.ix_(inv, inv)])
    m2 = max(float(best_f), 1.0)
    return OneVsRestResult(m2, measure_from_m_squared(m2, measure), nu_tilde_from_m_squared(m2), pure_cm, len(results), n_agree, measure)
