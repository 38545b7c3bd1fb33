"""Three-mode entanglement sharing: pure standard forms, residual contangle, monogamy.

A pure three-mode state is fixed, up to local symplectics, by its local
symplectic eigenvalues ``a_l = sqrt(det sigma_l)``. They are admissible
iff the shifted values ``a'_l = a_l - 1`` obey the triangle inequality.
"""

from dataclasses import dataclass, field

import numpy as np

from ._validation import as_matrix
from .errors import DomainError, InvalidArgumentError, NumericError
from .measures import minimize_m_squared, one_vs_rest
from .separability import is_ppt
from .states import GaussianState, reduce, require_bona_fide
from .symmetric import FullySymmetricSpec
from .symplectic import apply, two_mode_squeezer

TRIANGLE_TOL = 1e-12
VIOLATION_TOL = 1e-6
RESIDUAL_MEASURES = ("contangle", "gaussian_tangle")

_PERMS = ((0, 1, 2), (0, 2, 1), (1, 2, 0))


# ---------------------------------------------------------------- pure standard form


def satisfies_triangle(a1, a2, a3, tol=TRIANGLE_TOL):
    """True iff ``a_l >= 1`` and ``|a'_i - a'_j| <= a'_k <= a'_i + a'_j`` for all orderings."""
    ap = np.array([a1, a2, a3], dtype=float) - 1.0
    if np.any(ap < -tol):
        return False
    return all(abs(ap[i] - ap[j]) <= ap[k] + tol and ap[k] <= ap[i] + ap[j] + tol for i, j, k in _PERMS)


@dataclass(frozen=True)
class ThreeModeLocalMix:
    """Local symplectic eigenvalues of a pure three-mode state.

    Raises
    ------
    DomainError
        If the triple violates the triangle inequality.
    """

    a1: float
    a2: float
    a3: float

    def __post_init__(self):
        if not satisfies_triangle(self.a1, self.a2, self.a3):
            raise DomainError(f"({self.a1}, {self.a2}, {self.a3}) violates the triangle inequality")

    def as_array(self):
        return np.array([self.a1, self.a2, self.a3], dtype=float)


def _radical(x, what):
    if x < -1e-10 * max(1.0, abs(x)):
        raise NumericError(f"negative radicand {x:.3e} in {what}")
    return np.sqrt(max(x, 0.0))


def pure_coupling(ai, aj, ak):
    """Standard-form couplings ``(e_ij^+, e_ij^-)`` between modes ``i`` and ``j``."""
    d2, s2 = (ai - aj) ** 2, (ai + aj) ** 2
    r1 = _radical((d2 - (ak - 1) ** 2) * (d2 - (ak + 1) ** 2), "coupling")
    r2 = _radical((s2 - (ak - 1) ** 2) * (s2 - (ak + 1) ** 2), "coupling")
    den = 4.0 * np.sqrt(ai * aj)
    return (r1 + r2) / den, (r1 - r2) / den


def pure_three_mode(a1, a2, a3):
    """Standard-form pure three-mode state with local eigenvalues ``(a1, a2, a3)``.

    Single-mode blocks are ``a_l I``; couplings are ``diag(e_ij^+, e_ij^-)``.

    Raises
    ------
    DomainError
        If the triple violates the triangle inequality.
    """
    a = ThreeModeLocalMix(a1, a2, a3).as_array()
    m = np.zeros((6, 6))
    for l in range(3):
        m[2 * l, 2 * l] = m[2 * l + 1, 2 * l + 1] = a[l]
    for i, j, k in _PERMS:
        ep, em = pure_coupling(a[i], a[j], a[k])
        m[2 * i, 2 * j] = m[2 * j, 2 * i] = ep
        m[2 * i + 1, 2 * j + 1] = m[2 * j + 1, 2 * i + 1] = em
    return GaussianState(m)


# ---------------------------------------------------------------- residual contangle, pure


@dataclass(frozen=True)
class ResidualContangleReport:
    """Residual (tripartite) entanglement for the minimizing probe mode.

    Attributes
    ----------
    value : float
        ``one_to_rest - sum(pairwise)``.
    probe_mode : int
        0-based index of the probe realizing the minimum.
    one_to_rest : float
        Probe against the other two modes.
    pairwise : tuple of float
        Probe against each other mode, in increasing mode order.
    measure : str
    per_probe : tuple of float
        The residual for every choice of probe (mode order).
    """

    value: float
    probe_mode: int
    one_to_rest: float
    pairwise: tuple
    measure: str = "contangle"
    per_probe: tuple = field(default=())


def _contangle_m2(m2):
    return float(np.arcsinh(np.sqrt(max(m2 - 1.0, 0.0))) ** 2)


def _branch_test(a, s, d):
    """Sign selects the branch of :func:`_closed_m`; zero where both coincide."""
    kp = a * a + (s + d) ** 2
    km = a * a - (s + d) ** 2
    inner = _radical(km * km + 8.0 * kp, "branch test")
    return 2.0 * (s - d) - _radical(2.0 * (km * km + 2.0 * kp + abs(km) * inner) / kp, "branch test")


def _closed_m(a, s, d):
    """Optimal ``m`` for the pair (probe, mode with local eigenvalue ``s + d``)."""
    km = a * a - (s + d) ** 2
    m_minus = abs(km) / ((s - d) ** 2 - 1.0)
    if _branch_test(a, s, d) <= 1e-10:
        return m_minus
    delta = 1.0
    for x in (a - 2 * d - 1, a - 2 * d + 1, a + 2 * d - 1, a + 2 * d + 1, a - 2 * s - 1, a - 2 * s + 1, a + 2 * s - 1, a + 2 * s + 1):
        delta *= x
    num = 2.0 * (2 * a * a * (1 + 2 * s * s + 2 * d * d) - (4 * s * s - 1) * (4 * d * d - 1) - a**4 - _radical(delta, "m+"))
    return _radical(num, "m+") / (4.0 * (s - d))


def pure_pairwise_contangles(a, s, d):
    """Contangles ``(probe|j, probe|k)`` of a pure state with ``a_j = s + d``, ``a_k = s - d``.

    A pair is separable (zero) when ``|d|`` exceeds ``(a^2 - 1) / (4 s)`` on
    the side of the more mixed partner.
    """
    window = (a * a - 1.0) / (4.0 * s)
    g_j = 0.0 if d < -window else _contangle_m2(_closed_m(a, s, d) ** 2)
    g_k = 0.0 if d > window else _contangle_m2(_closed_m(a, s, -d) ** 2)
    return g_j, g_k


def residual_contangle_pure(a1, a2, a3):
    """Residual Gaussian contangle of the pure state with local eigenvalues ``(a1, a2, a3)``.

    The probe is the mode with the smallest ``a_l`` (lowest index on ties).

    Returns
    -------
    ResidualContangleReport
    """
    a = ThreeModeLocalMix(a1, a2, a3).as_array()
    p = int(np.argmin(a))
    j, k = (x for x in range(3) if x != p)
    if a[p] <= 1.0 + TRIANGLE_TOL:
        return ResidualContangleReport(0.0, p, 0.0, (0.0, 0.0))
    s, d = 0.5 * (a[j] + a[k]), 0.5 * (a[j] - a[k])
    lhs = _contangle_m2(a[p] ** 2)
    pair = pure_pairwise_contangles(a[p], s, d)
    return ResidualContangleReport(lhs - sum(pair), p, lhs, pair)


# ---------------------------------------------------------------- residual contangle, generic


def _pair_measure(m, i, j, measure):
    return minimize_m_squared(reduce(GaussianState(m), (i, j)).cm, _em_name(measure)).value


def _em_name(measure):
    if measure not in RESIDUAL_MEASURES:
        raise InvalidArgumentError(f"unknown measure {measure!r}; choose from {RESIDUAL_MEASURES}")
    return measure


def residual_contangle_generic(state, measure="contangle", **opt):
    """Residual Gaussian entanglement of an arbitrary three-mode state.

    For each probe ``i`` computes ``G(i|jk) - G(i|j) - G(i|k)``; the
    one-versus-two term comes from :func:`one_vs_rest`, the pairwise
    terms from :func:`minimize_m_squared`. The minimum over probes is
    reported (lowest index on ties).

    Parameters
    ----------
    state : GaussianState or array_like
        Three-mode covariance matrix.
    measure : {"contangle", "gaussian_tangle"}
    **opt
        Passed on to :func:`one_vs_rest`.
    """
    m = require_bona_fide(state)
    if m.shape != (6, 6):
        raise InvalidArgumentError("a three-mode state is required")
    _em_name(measure)
    pair = {}
    for i, j in ((0, 1), (0, 2), (1, 2)):
        pair[(i, j)] = pair[(j, i)] = _pair_measure(m, i, j, measure)
    rows = []
    for p in range(3):
        j, k = (x for x in range(3) if x != p)
        lhs = one_vs_rest(m, p, measure, **opt).value
        rows.append((lhs - pair[(p, j)] - pair[(p, k)], p, lhs, (pair[(p, j)], pair[(p, k)])))
    best = min(rows, key=lambda r: (r[0], r[1]))
    return ResidualContangleReport(best[0], best[1], best[2], best[3], measure, tuple(r[0] for r in rows))


# ---------------------------------------------------------------- GHZ/W states


def ghzw_couplings(a):
    """``(e+, e-)`` of the pure fully symmetric three-mode state with local eigenvalue ``a``."""
    if a < 1.0:
        raise DomainError(f"local eigenvalue must be >= 1, got {a}")
    x = a * a - 1.0
    root = np.sqrt(x * (9.0 * a * a - 1.0))
    return (x + root) / (4.0 * a), (x - root) / (4.0 * a)


def ghzw(a):
    """Pure, fully symmetric three-mode state (GHZ/W state) with local eigenvalue ``a``."""
    ep, em = ghzw_couplings(a)
    return GaussianState(FullySymmetricSpec(3, a, ep, em).matrix())


def ghzw_pairwise_contangle(a):
    """Contangle between any two modes of the GHZ/W state."""
    if a < 1.0:
        raise DomainError(f"local eigenvalue must be >= 1, got {a}")
    x = 0.5 * (3.0 * a * a - 1.0 - np.sqrt(max(9.0 * a**4 - 10.0 * a * a + 1.0, 0.0)))
    return float(0.25 * np.log(x) ** 2)


def ghzw_residual(a):
    """Residual Gaussian contangle of the GHZ/W state with local eigenvalue ``a``."""
    if a < 1.0:
        raise DomainError(f"local eigenvalue must be >= 1, got {a}")
    return _contangle_m2(a * a) - 2.0 * ghzw_pairwise_contangle(a)


# ---------------------------------------------------------------- monogamy


@dataclass(frozen=True)
class MonogamyRow:
    """Monogamy inequality for one probe: ``lhs >= rhs``."""

    probe: int
    lhs: float
    rhs: float
    pairwise: tuple

    @property
    def slack(self):
        return self.lhs - self.rhs

    @property
    def violated(self):
        return self.slack < -VIOLATION_TOL


@dataclass(frozen=True)
class MonogamyReport:
    measure: str
    rows: tuple

    @property
    def violations(self):
        return sum(r.violated for r in self.rows)

    @property
    def min_slack(self):
        return min(r.slack for r in self.rows)


def monogamy_check(state, measure="gaussian_tangle", probes=None, **opt):
    """Check ``G(i|rest) >= sum_j G(i|j)`` for every probe mode ``i``.

    Parameters
    ----------
    state : GaussianState or array_like
        Bona fide state of at least two modes (the numeric one-versus-rest
        optimizer is practical up to about four modes).
    measure : {"gaussian_tangle", "contangle"}
    probes : iterable of int, optional
        Probe modes to check; all by default.
    **opt
        Passed on to :func:`one_vs_rest`.

    Returns
    -------
    MonogamyReport
    """
    m = require_bona_fide(state)
    n = m.shape[0] // 2
    if n < 2:
        raise InvalidArgumentError("need at least two modes")
    _em_name(measure)
    cache = {}

    def pair(i, j):
        key = (min(i, j), max(i, j))
        if key not in cache:
            cache[key] = _pair_measure(m, key[0], key[1], measure)
        return cache[key]

    rows = []
    for p in range(n) if probes is None else probes:
        others = [k for k in range(n) if k != p]
        pw = tuple(pair(p, k) for k in others)
        lhs = one_vs_rest(m, p, measure, **opt).value if n > 2 else pw[0]
        rows.append(MonogamyRow(int(p), float(lhs), float(sum(pw)), pw))
    return MonogamyReport(measure, tuple(rows))


# ---------------------------------------------------------------- classification and four modes


THREE_MODE_CLASSES = ("fully-inseparable", "one-mode-biseparable", "two-mode-biseparable", "ppt-all")


def three_mode_class(state, tol=1e-9):
    """Separability class from the three ``1|2`` partial transpositions.

    Since PPT is equivalent to separability for one mode against two,
    the number of PPT cuts fixes the class: none, one, two, or all three
    (the last covers both fully separable and biseparable bound entangled
    states, which transposition cannot tell apart).
    """
    m = require_bona_fide(state)
    if m.shape != (6, 6):
        raise InvalidArgumentError("a three-mode state is required")
    n_ppt = sum(is_ppt(m, [k], tol) for k in range(3))
    return THREE_MODE_CLASSES[min(n_ppt, 3)]


def four_mode_promiscuous(s, a):
    """Pure four-mode state ``S34(a) S12(a) S23(s)`` applied to the vacuum.

    Raises
    ------
    InvalidArgumentError
        If ``s`` or ``a`` is negative.
    """
    if s < 0 or a < 0:
        raise InvalidArgumentError(f"squeezings must be non-negative, got s={s}, a={a}")
    S = two_mode_squeezer(a, 2, 3, 4) @ two_mode_squeezer(a, 0, 1, 4) @ two_mode_squeezer(s, 1, 2, 4)
    return GaussianState(apply(S, np.eye(8)))


def four_mode_promiscuous_blocks(s, a):
    """The same covariance matrix assembled entrywise from its closed-form blocks."""
    ch, sh = np.cosh(a), np.sinh(a)
    c2s, s2s = np.cosh(2 * s), np.sinh(2 * s)
    I, Z = np.eye(2), np.diag([1.0, -1.0])
    d14 = (ch**2 + c2s * sh**2) * I
    d23 = (c2s * ch**2 + sh**2) * I
    e12 = np.cosh(s) ** 2 * np.sinh(2 * a) * Z
    e13 = ch * sh * s2s * I
    e14 = sh**2 * s2s * Z
    e23 = ch**2 * s2s * Z
    return np.block(
        [
            [d14, e12, e13, e14],
            [e12, d23, e23, e13],
            [e13, e23, d23, e12],
            [e14, e13, e12, d14],
        ]
    )


def local_mixednesses(state):
    """``a_l = sqrt(det sigma_l)`` for every mode."""
    m = as_matrix(state)
    n = m.shape[0] // 2
    return np.array([np.sqrt(np.linalg.det(m[2 * k : 2 * k + 2, 2 * k : 2 * k + 2])) for k in range(n)])
