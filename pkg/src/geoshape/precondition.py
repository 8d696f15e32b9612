"""Sparse Gauss-Newton preconditioner for the path objective.

The path energy is a sum of squared residuals ``sqrt(coef * vol_tri / 8T) * r``
with ``r`` one of ``a, kappa a, kappa^2 a, kappa_s a, a_s, kappa a_s, a_ss``.
Each residual on the triangles of vertex ``v`` only touches vertices
``v-2..v+2`` of two neighbouring slices, so the Jacobian is recovered with a
handful of colored central differences. ``2 J^T J`` plus the Gauss-Newton part
of the penalty is a positive semidefinite Hessian model; L-BFGS uses its
inverse as the initial inverse-Hessian guess.
"""
from __future__ import annotations

import numpy as np
import scipy.sparse as sp
import scipy.sparse.linalg as spla

from . import stencils
from .curvegeom import geometry_arrays
from .energy import as_path
from .metrics import MetricCoefficients

RADIUS = 3  # colors are spaced so no residual sees two perturbed vertices


def energy_residuals(path, coeff: MetricCoefficients, signed_curvature: bool = False):
    """Residuals whose squares sum to the path energy, shape (2T, terms, N, 2).

    Batch ``b < T`` pairs velocity ``b`` with slice ``b``; batch ``b >= T``
    pairs velocity ``b - T`` with slice ``b - T + 1``.
    """
    X = as_path(path)
    T = X.shape[0] - 1
    geom = geometry_arrays(X, signed_curvature=signed_curvature)
    U = T * (X[1:] - X[:-1])
    h = np.concatenate([U, U])
    sl = np.concatenate([np.arange(T), np.arange(1, T + 1)])
    g = type(geom)(**{f: getattr(geom, f)[sl] for f in geom.__dataclass_fields__})
    a, a_s, a_ss = stencils.triangle_fields(h, g.normal, g)
    k, ks = stencils.triangle_kappa(g)
    w = np.sqrt(g.vol_tri / (8.0 * T))
    terms = [np.sqrt(c) * w * r
             for c, r in ((coeff.A0, a), (coeff.A1, k * a), (coeff.A2, k * k * a),
                          (coeff.A3, ks * a), (coeff.B0, a_s), (coeff.B1, k * a_s),
                          (coeff.C0, a_ss))
             if c]
    return np.stack(terms, axis=1)


def _vertex_colors(N: int) -> np.ndarray:
    k = 2 * RADIUS + 1
    if N <= k:
        return np.arange(N)
    colors = np.arange(N) % k
    tail = N % k
    if tail:
        # the wrap-around would put equal colors too close; give the tail its own
        colors[N - tail:] = k + np.arange(tail)
    return colors


def energy_jacobian(path, coeff: MetricCoefficients, signed_curvature: bool = False,
                    rel_step: float = 1e-7) -> sp.csr_matrix:
    """Jacobian of ``energy_residuals`` (flattened) w.r.t. the interior vertices."""
    X = as_path(path)
    T, N = X.shape[0] - 1, X.shape[1]
    n = (T - 1) * N * 2
    base = energy_residuals(X, coeff, signed_curvature)
    if n == 0:
        return sp.csr_matrix((base.size, 0))
    res_index = np.arange(base.size).reshape(base.shape)
    colors = _vertex_colors(N)
    v = np.arange(N)
    offset = (v[None, :] - v[:, None] + N // 2) % N - N // 2
    near = np.abs(offset) <= RADIUS
    step = rel_step * max(1.0, float(np.abs(X).max()))
    interior = np.arange(1, T)
    t_of_b = np.r_[np.arange(T), np.arange(T)]

    rows, cols, vals = [], [], []
    for parity in (0, 1):
        slices = interior[interior % 2 == parity]
        if slices.size == 0:
            continue
        for c in range(colors.max() + 1):
            verts = np.flatnonzero(colors == c)
            owner = np.full(N, -1)
            for u in verts:
                owner[near[:, u]] = u
            hit = owner >= 0
            for i in range(2):
                D = np.zeros_like(X)
                D[np.ix_(slices, verts, [i])] = step
                d = (energy_residuals(X + D, coeff, signed_curvature)
                     - energy_residuals(X - D, coeff, signed_curvature)) / (2 * step)
                for b, t in enumerate(t_of_b):
                    # batch b depends on slices t and t+1, exactly one has this parity
                    sigma = t if t % 2 == parity else t + 1
                    if not 1 <= sigma <= T - 1:
                        continue
                    blk = d[b][:, hit, :]
                    var = ((sigma - 1) * N + owner[hit]) * 2 + i
                    rows.append(res_index[b][:, hit, :].ravel())
                    cols.append(np.broadcast_to(var[None, :, None], blk.shape).ravel())
                    vals.append(blk.ravel())
    J = sp.csr_matrix((np.concatenate(vals), (np.concatenate(rows), np.concatenate(cols))),
                      shape=(base.size, n))
    J.eliminate_zeros()
    return J


def _edge_jacobian(tangent) -> sp.csr_matrix:
    """d vol_edge / d vertices for one slice, shape (N, 2N)."""
    N = len(tangent)
    v = np.arange(N)
    w = (v + 1) % N
    rows = np.r_[v, v, v, v]
    cols = np.r_[2 * w, 2 * w + 1, 2 * v, 2 * v + 1]
    vals = np.r_[tangent[:, 0], tangent[:, 1], -tangent[:, 0], -tangent[:, 1]]
    return sp.csr_matrix((vals, (rows, cols)), shape=(N, 2 * N))


def penalty_gauss_newton(path, penalty_weight: float = 1.0,
                         signed_curvature: bool = False) -> sp.csc_matrix:
    """``2 w Je^T Je`` per interior slice.

    The exact model has ``J = (I - 11^T/N) Je``; dropping the centering gives a
    sparse upper bound that preconditions just as well.
    """
    X = as_path(path)
    T = X.shape[0] - 1
    geom = geometry_arrays(X, signed_curvature=signed_curvature)
    blocks = []
    for i in range(1, T):
        Je = _edge_jacobian(geom.tangent[i])
        blocks.append(2.0 * penalty_weight * (Je.T @ Je))
    return sp.block_diag(blocks, format="csc")


def gauss_newton(path, coeff: MetricCoefficients, penalty_weight: float = 1.0,
                 signed_curvature: bool = False) -> sp.csc_matrix:
    """Gauss-Newton matrix for the interior unknowns, ordered (slice, vertex, xy)."""
    J = energy_jacobian(path, coeff, signed_curvature)
    H = 2.0 * (J.T @ J)
    if penalty_weight:
        H = H + penalty_gauss_newton(path, penalty_weight, signed_curvature)
    return H.tocsc()


class Preconditioner:
    """Factorized ``GN + ridge`` applied as an inverse-Hessian guess."""

    def __init__(self, path, coeff, penalty_weight=1.0, ridge=1e-6, signed_curvature=False):
        H = gauss_newton(path, coeff, penalty_weight, signed_curvature)
        mu = ridge * float(H.diagonal().mean())
        self.matrix = (H + mu * sp.identity(H.shape[0], format="csc")).tocsc()
        self._lu = spla.splu(self.matrix)

    def solve(self, g: np.ndarray) -> np.ndarray:
        return self._lu.solve(g)
