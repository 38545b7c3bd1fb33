"""Compiled kernel: smallest probe-mode determinant over pure CMs below a bound.

Problem solved
--------------
Given ``nu`` (``r`` thermal symplectic eigenvalues, all ``> 1``), a fixed
``2x2`` matrix ``K0`` and a ``2r x 2`` matrix ``V`` (both in qqpp order),
minimize ``det(K0 + V^T g V)`` over pure covariance matrices ``g`` with
``g <= diag(nu)``.

Pure matrices are written in Siegel form (qqpp order)::

    g = [[A^-1, A^-1 B], [B A^-1, A + B A^-1 B]],   A = L L^T > 0,  B = B^T

and the constraint is enforced with a log-det barrier whose weight is
driven to zero; each barrier stage is solved by BFGS with a backtracking
line search that rejects infeasible trial points.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def _unpack(x, r):
    L = np.zeros((r, r))
    B = np.zeros((r, r))
    k = 0
    for i in range(r):
        for j in range(i + 1):
            L[i, j] = x[k]
            k += 1
    for i in range(r):
        for j in range(i + 1):
            B[i, j] = x[k]
            B[j, i] = x[k]
            k += 1
    return L, B


@njit(cache=True)
def _pack(L, B, r):
    x = np.zeros(r * (r + 1))
    k = 0
    for i in range(r):
        for j in range(i + 1):
            x[k] = L[i, j]
            k += 1
    for i in range(r):
        for j in range(i + 1):
            x[k] = B[i, j]
            k += 1
    return x


@njit(cache=True)
def _tri_inv(L):
    """Inverse of a lower-triangular matrix; flag is False if (near) singular."""
    n = L.shape[0]
    X = np.zeros((n, n))
    scale = 0.0
    for i in range(n):
        scale = max(scale, abs(L[i, i]))
    for i in range(n):
        if not abs(L[i, i]) > 1e-150 + 1e-14 * scale:
            return X, False
    for j in range(n):
        X[j, j] = 1.0 / L[j, j]
        for i in range(j + 1, n):
            t = 0.0
            for k in range(j, i):
                t -= L[i, k] * X[k, j]
            X[i, j] = t / L[i, i]
    return X, True


@njit(cache=True)
def _gamma(L, B, r):
    A = L @ L.T
    Li, ok = _tri_inv(L)
    C = Li.T @ Li
    CB = C @ B
    g = np.zeros((2 * r, 2 * r))
    g[:r, :r] = C
    g[:r, r:] = CB
    g[r:, :r] = CB.T
    D = A + B @ CB
    g[r:, r:] = 0.5 * (D + D.T)
    return g, A, C, ok


@njit(cache=True)
def _cholesky(M):
    n = M.shape[0]
    Lc = np.zeros((n, n))
    for j in range(n):
        s = M[j, j]
        for k in range(j):
            s -= Lc[j, k] * Lc[j, k]
        if not s > 0.0:
            return Lc, False
        Lc[j, j] = np.sqrt(s)
        for i in range(j + 1, n):
            t = M[i, j]
            for k in range(j):
                t -= Lc[i, k] * Lc[j, k]
            Lc[i, j] = t / Lc[j, j]
    return Lc, True


@njit(cache=True)
def _grad_params(G, L, B, C, r):
    """Chain rule from a symmetric gradient ``G`` w.r.t. ``g`` to ``x``."""
    G11 = np.ascontiguousarray(G[:r, :r])
    G21 = np.ascontiguousarray(G[r:, :r])
    G22 = np.ascontiguousarray(G[r:, r:])
    MC = G11 + 2.0 * (B @ G21) + B @ G22 @ B
    MC = 0.5 * (MC + MC.T)
    MA = G22 - C @ MC @ C
    MB = 2.0 * (G21 @ C) + C @ B @ G22 + G22 @ B @ C
    gL = (MA + MA.T) @ L
    out = np.zeros(r * (r + 1))
    k = 0
    for i in range(r):
        for j in range(i + 1):
            out[k] = gL[i, j]
            k += 1
    for i in range(r):
        for j in range(i + 1):
            out[k] = MB[i, j] if i == j else MB[i, j] + MB[j, i]
            k += 1
    return out


@njit(cache=True)
def _probe_block(g, K0, V):
    return K0 + V.T @ g @ V


@njit(cache=True)
def _value_grad(x, r, nu, K0, V, mu):
    L, B = _unpack(x, r)
    grad = np.zeros(x.size)
    g, A, C, ok = _gamma(L, B, r)
    if not ok:
        return np.inf, grad, np.inf
    R = -g.copy()
    for i in range(2 * r):
        R[i, i] += nu[i]
    Lc, ok = _cholesky(R)
    if not ok:
        return np.inf, grad, np.inf
    Lci, ok = _tri_inv(Lc)
    if not ok:
        return np.inf, grad, np.inf
    P = _probe_block(g, K0, V)
    f = P[0, 0] * P[1, 1] - P[0, 1] * P[1, 0]
    adj = np.empty((2, 2))
    adj[0, 0] = P[1, 1]
    adj[1, 1] = P[0, 0]
    adj[0, 1] = -P[0, 1]
    adj[1, 0] = -P[1, 0]
    G = V @ adj @ V.T
    G = 0.5 * (G + G.T)
    logdet = 0.0
    for i in range(2 * r):
        logdet += np.log(Lc[i, i])
    Ri = Lci.T @ Lci
    G = G + mu * Ri
    grad = _grad_params(G, L, B, C, r)
    return f - 2.0 * mu * logdet, grad, f


@njit(cache=True)
def _bfgs_stage(x, H, r, nu, K0, V, mu, maxiter):
    n = x.size
    val, g, f = _value_grad(x, r, nu, K0, V, mu)
    it = 0
    for it in range(maxiter):
        d = -(H @ g)
        slope = g @ d
        if slope >= 0.0:
            H = np.eye(n) * 1e-2
            d = -(H @ g)
            slope = g @ d
        t = 1.0
        accepted = False
        while t > 1e-16:
            xn = x + t * d
            vn, gn, fn = _value_grad(xn, r, nu, K0, V, mu)
            if vn <= val + 1e-4 * t * slope:
                accepted = True
                break
            t *= 0.5
        if not accepted:
            break
        s = xn - x
        y = gn - g
        sy = s @ y
        if sy > 1e-300:
            rho = 1.0 / sy
            Hy = H @ y
            H = H - rho * (np.outer(Hy, s) + np.outer(s, Hy)) + (rho * rho * (y @ Hy) + rho) * np.outer(s, s)
        change = val - vn
        x, val, g, f = xn, vn, gn, fn
        if np.max(np.abs(g)) < 1e-11 or change <= 1e-15 * max(1.0, abs(val)):
            break
    return x, H, f, it + 1


@njit(cache=True)
def minimize_probe_det(x0, r, nu, K0, V, mus, maxiter):
    """Run the barrier path from the strictly feasible start ``x0``.

    Returns the final determinant, the parameters and the total number of
    BFGS iterations; the determinant is ``inf`` if ``x0`` is infeasible.
    """
    x = x0.copy()
    H = np.eye(x.size) * 1e-2
    f = np.inf
    total = 0
    for k in range(mus.size):
        x, H, f, it = _bfgs_stage(x, H, r, nu, K0, V, mus[k], maxiter)
        total += it
    return f, x, total


@njit(cache=True)
def siegel_params(g, r):
    """Siegel coordinates of a pure qqpp covariance matrix."""
    Q = np.ascontiguousarray(g[:r, :r])
    Rm = np.ascontiguousarray(g[:r, r:])
    A = np.linalg.inv(0.5 * (Q + Q.T))
    A = 0.5 * (A + A.T)
    B = A @ Rm
    B = 0.5 * (B + B.T)
    L = np.linalg.cholesky(A)
    return _pack(L, B, r)


@njit(cache=True)
def pure_from_params(x, r):
    L, B = _unpack(x, r)
    g, A, C, ok = _gamma(L, B, r)
    return g
