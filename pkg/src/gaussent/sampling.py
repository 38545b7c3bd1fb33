"""Seeded random generators of bona fide states for fuzzing and sweeps.

Every sampler takes a :class:`numpy.random.Generator`, so results are
reproducible from a seed.
"""

from itertools import permutations

import numpy as np
from scipy.stats import unitary_group

from .states import GaussianState
from .symplectic import beam_splitter, phase_rotation, single_mode_squeezer, two_mode_squeezer


def rng_from(seed):
    return seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)


def random_passive(n, rng):
    """Orthogonal symplectic matrix from a Haar-random ``n x n`` unitary."""
    U = unitary_group.rvs(n, random_state=rng) if n > 1 else np.exp(2j * np.pi * rng.random()) * np.ones((1, 1))
    O = np.zeros((2 * n, 2 * n))
    O[0::2, 0::2] = U.real
    O[0::2, 1::2] = -U.imag
    O[1::2, 0::2] = U.imag
    O[1::2, 1::2] = U.real
    return O


def random_symplectic(n, rng, max_squeeze=1.0):
    """``O1 D O2`` with passive ``O1, O2`` and single-mode squeezings ``|r| <= max_squeeze``."""
    r = rng.uniform(-max_squeeze, max_squeeze, n)
    D = np.diag(np.exp(np.repeat(r, 2) * np.tile([1.0, -1.0], n)))
    return random_passive(n, rng) @ D @ random_passive(n, rng)


def random_state(n, rng, nu_max=3.0, max_squeeze=1.0, pure=False):
    """``S diag(nu) S^T`` with ``nu_k`` uniform in ``[1, nu_max]`` (all ones if ``pure``)."""
    nu = np.ones(n) if pure else rng.uniform(1.0, nu_max, n)
    S = random_symplectic(n, rng, max_squeeze)
    cm = S @ np.diag(np.repeat(nu, 2)) @ S.T
    return GaussianState(0.5 * (cm + cm.T))


def random_two_mode(rng, nu_max=3.0, r_max=1.0):
    """Two-mode state from thermal noise and the elementary generators.

    Local squeezings and rotations, a beam splitter and a two-mode
    squeezer with parameters drawn uniformly from fixed ranges.
    """
    nu = rng.uniform(1.0, nu_max, 2)
    S = np.eye(4)
    for j in (0, 1):
        S = single_mode_squeezer(rng.uniform(-r_max, r_max), j, 2) @ phase_rotation(rng.uniform(0, 2 * np.pi), j, 2) @ S
    S = two_mode_squeezer(rng.uniform(-r_max, r_max)) @ beam_splitter(rng.random()) @ S
    for j in (0, 1):
        S = phase_rotation(rng.uniform(0, 2 * np.pi), j, 2) @ single_mode_squeezer(rng.uniform(-r_max, r_max), j, 2) @ S
    cm = S @ np.diag(np.repeat(nu, 2)) @ S.T
    return GaussianState(0.5 * (cm + cm.T))


def random_triangle_triple(rng, a_max=5.0):
    """Local eigenvalues ``(a1, a2, a3)`` of a random pure three-mode state.

    Draws two shifted values ``a' = a - 1`` uniformly, the third uniformly
    in its triangle-allowed interval (capped at ``a_max - 1``), then
    permutes the triple at random.
    """
    top = a_max - 1.0
    while True:
        x, y = rng.uniform(0.0, top, 2)
        lo, hi = abs(x - y), min(x + y, top)
        if hi >= lo:
            break
    ap = np.array([x, y, rng.uniform(lo, hi)])
    return tuple(float(v) for v in 1.0 + rng.permutation(ap))


def twirl(cm, sides):
    """Average of ``cm`` over all mode permutations inside each side."""
    m = np.asarray(cm, dtype=float)
    n = m.shape[0] // 2
    acc = np.zeros_like(m)
    count = 0
    side_perms = [list(permutations(s)) for s in sides]
    for pa in side_perms[0]:
        for pb in side_perms[1] if len(sides) > 1 else [()]:
            order = list(range(n))
            for src, dst in zip(sides[0], pa):
                order[src] = dst
            if len(sides) > 1:
                for src, dst in zip(sides[1], pb):
                    order[src] = dst
            idx = np.array([[2 * k, 2 * k + 1] for k in order]).ravel()
            acc += m[np.ix_(idx, idx)]
            count += 1
    out = acc / count
    return 0.5 * (out + out.T)


def random_bisymmetric(m_modes, n_modes, rng, nu_max=3.0, max_squeeze=1.0):
    """Random ``m|n`` bisymmetric state: a random state twirled over in-side permutations.

    The twirl is a convex mixture of permuted copies, hence bona fide.
    """
    n = m_modes + n_modes
    base = random_state(n, rng, nu_max, max_squeeze).cm
    sides = (tuple(range(m_modes)), tuple(range(m_modes, n)))
    return GaussianState(twirl(base, sides))
