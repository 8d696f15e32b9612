"""Reverse-mode gradient of the path objective.

The forward sweep mirrors ``energy.total_energy``; the backward sweep walks the
same graph in reverse with hand-written adjoints. Every ``np.roll(x, k)`` in
the forward sweep becomes ``np.roll(xbar, -k)`` here.

The arccos in the turning angle has an unbounded derivative at +-1. Where the
tangent dot product sits on or beyond the clamp the adjoint is set to 0.
"""
from __future__ import annotations

import numpy as np

from .curvegeom import EPS_EDGE_REL, geometry_arrays
from .energy import EnergyBreakdown, as_path
from .metrics import MetricCoefficients


def _roll(x, k):
    return np.roll(x, k, axis=-1)


def objective_and_gradient(path, coeff: MetricCoefficients, penalty_weight: float = 1.0,
                           *, signed_curvature: bool = False,
                           eps_rel: float = EPS_EDGE_REL):
    """Return ``(EnergyBreakdown, grad)`` with ``grad`` shaped like the full path.

    Rows 0 and T of ``grad`` hold the derivative with respect to the boundary
    curves; optimizers use ``grad[1:-1]``.
    """
    X = as_path(path)
    T, N = X.shape[0] - 1, X.shape[1]
    g = geometry_arrays(X, signed_curvature=signed_curvature, eps_rel=eps_rel)
    A0, A1, A2, A3, B0, B1, C0 = coeff.as_tuple()

    # forward: batch of 2T (velocity, geometry slice) pairs, s = t then s = t + 1
    U = T * (X[1:] - X[:-1])
    h = np.concatenate([U, U])
    sl = np.concatenate([np.arange(T), np.arange(1, T + 1)])
    n = g.normal[sl]
    nm1 = np.roll(n, 1, axis=-2)
    e = g.vol_edge[sl]
    em1 = _roll(e, 1)
    vv = g.vol_vert[sl]
    tp, tc = g.vol_tri[sl, :, 0], g.vol_tri[sl, :, 1]
    k = g.kappa[sl]
    ks = g.kappa_s[sl]
    ksp = _roll(ks, 1)

    ac = (h * n).sum(-1)
    ap = (h * nm1).sum(-1)
    ap1 = _roll(ap, -1)
    ac0 = _roll(ac, 1)
    asc = (ap1 - ap) / tc
    asp = (ac - ac0) / tp
    dc = ac - ap
    inner = dc / vv
    fc = (ap1 - ac) / e
    fp = (ap - ac0) / em1
    assc = (fc - inner) / tc
    assp = (inner - fp) / tp
    k2 = k * k
    base = A0 + A1 * k2 + A2 * k2 * k2
    wc = base + A3 * ks * ks
    wp = base + A3 * ksp * ksp
    bw = B0 + B1 * k2
    dens_c = wc * ac * ac + bw * asc * asc + C0 * assc * assc
    dens_p = wp * ap * ap + bw * asp * asp + C0 * assp * assp
    q = (dens_c * tc + dens_p * tp).sum(-1)
    per_step = (q[:T] + q[T:]) / 8.0
    E = float(per_step.sum() / T)

    r = g.vol_edge - g.length[:, None] / N
    P = float((r * r).sum())
    out = EnergyBreakdown(objective=E + penalty_weight * P, total_energy=E, penalty=P,
                          per_step=per_step, penalty_weight=penalty_weight)

    # backward through the per-triangle energy
    sbar = 1.0 / (8.0 * T)
    ac_b = sbar * 2 * wc * ac * tc
    ap_b = sbar * 2 * wp * ap * tp
    wc_b = sbar * ac * ac * tc
    wp_b = sbar * ap * ap * tp
    bw_b = sbar * (asc * asc * tc + asp * asp * tp)
    asc_b = sbar * 2 * bw * asc * tc
    asp_b = sbar * 2 * bw * asp * tp
    assc_b = sbar * 2 * C0 * assc * tc
    assp_b = sbar * 2 * C0 * assp * tp
    tc_b = sbar * dens_c
    tp_b = sbar * dens_p

    k2_b = (wc_b + wp_b) * (A1 + 2 * A2 * k2) + bw_b * B1
    k_b = 2 * k * k2_b
    ks_b = 2 * A3 * (wc_b * ks + _roll(wp_b * ksp, -1))

    fc_b = assc_b / tc
    inner_b = -assc_b / tc + assp_b / tp
    fp_b = -assp_b / tp
    tc_b -= assc_b * assc / tc
    tp_b -= assp_b * assp / tp

    dc_b = inner_b / vv
    vv_b = -inner_b * inner / vv

    ap1_b = fc_b / e
    ac_b -= fc_b / e
    e_b = -fc_b * fc / e
    ap_b += fp_b / em1
    ac0_b = -fp_b / em1
    em1_b = -fp_b * fp / em1

    ac_b += dc_b
    ap_b -= dc_b

    ap1_b += asc_b / tc
    ap_b -= asc_b / tc
    tc_b -= asc_b * asc / tc
    ac_b += asp_b / tp
    ac0_b -= asp_b / tp
    tp_b -= asp_b * asp / tp

    ap_b += _roll(ap1_b, 1)
    ac_b += _roll(ac0_b, -1)
    e_b += _roll(em1_b, -1)

    h_b = ac_b[..., None] * n + ap_b[..., None] * nm1
    n_b = ac_b[..., None] * h + np.roll(ap_b[..., None] * h, -1, axis=-2)

    # scatter batch adjoints back onto the T + 1 slices
    S = T + 1

    def gather(x):
        out = np.zeros((S,) + x.shape[1:])
        out[:-1] += x[:T]
        out[1:] += x[T:]
        return out

    n_B = gather(n_b)
    e_B = gather(e_b)
    vv_B = gather(vv_b)
    tc_B = gather(tc_b)
    tp_B = gather(tp_b)
    k_B = gather(k_b)
    ks_B = gather(ks_b)

    # penalty: d/de_v sum_u (e_u - L/N)^2 = 2 r_v - (2/N) sum_u r_u
    e_B += penalty_weight * (2 * r - (2.0 / N) * r.sum(-1, keepdims=True))

    # backward through slice geometry
    vv_B += tc_B + tp_B
    e_B += tc_B + _roll(tp_B, -1)

    ke = g.kappa_s
    q_ks = ks_B / g.vol_edge
    k_B += _roll(q_ks, 1) - q_ks
    e_B -= ks_B * ke / g.vol_edge

    ang_b = k_B * g.turn_sign / g.vol_vert
    vv_B -= k_B * g.kappa / g.vol_vert

    d = g.dot_raw
    inside = np.abs(d) < 1.0
    safe = np.where(inside, d, 0.0)
    dot_b = np.where(inside, -ang_b / np.sqrt(1.0 - safe * safe), 0.0)

    tan = g.tangent
    tm1 = np.roll(tan, 1, axis=-2)
    tan_b = dot_b[..., None] * tm1 + np.roll(dot_b[..., None] * tan, -1, axis=-2)
    tan_b[..., 0] -= n_B[..., 1]
    tan_b[..., 1] += n_B[..., 0]

    e_B += 0.5 * (vv_B + _roll(vv_B, -1))

    ve = g.vol_edge[..., None]
    edge_b = tan_b / ve - (tan_b * tan).sum(-1, keepdims=True) * tan / ve
    edge_b += e_B[..., None] * tan

    X_b = np.roll(edge_b, 1, axis=-2) - edge_b

    U_b = h_b[:T] + h_b[T:]
    X_b[1:] += T * U_b
    X_b[:-1] -= T * U_b
    return out, X_b
