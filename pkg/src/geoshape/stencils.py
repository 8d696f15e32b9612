"""Triangle-based difference stencils for a vertex field paired with an edge frame.

Around vertex ``v`` the triangles are ordered along the curve as
``(v, v-1) -> (v, v) -> (v+1, v) -> ...``. For a vertex field ``h`` and a unit
frame ``f`` living on edges (the normals, the tangents, or a constant basis
vector) the coefficient on triangle ``(v, w)`` is ``<h[v], f[w]>``.

In terms of ``ap[v] = a(v, v-1)`` and ``ac[v] = a(v, v)`` the derivative stencils
reduce to divided differences along the triangle chain:

    a_s(v, v)     = (ap[v+1] - ap[v]) / vol_tri(v, v)
    a_s(v, v-1)   = (ac[v] - ac[v-1]) / vol_tri(v, v-1)
    a_ss(v, v)    = ((ap[v+1] - ac[v]) / e[v] - (ac[v] - ap[v]) / vv[v]) / vol_tri(v, v)
    a_ss(v, v-1)  = ((ac[v] - ap[v]) / vv[v] - (ap[v] - ac[v-1]) / e[v-1]) / vol_tri(v, v-1)
"""
from __future__ import annotations

import numpy as np

from .curvegeom import CUR, PREV, CurveGeometry


def coefficients(h, frame) -> np.ndarray:
    """``<h[v], frame[w]>`` on every triangle, shape ``(..., N, 2)``."""
    h = np.asarray(h, dtype=float)
    ac = (h * frame).sum(axis=-1)
    ap = (h * np.roll(frame, 1, axis=-2)).sum(axis=-1)
    return np.stack([ap, ac], axis=-1)


def derivatives(a: np.ndarray, geom: CurveGeometry):
    """First and second arc-length differences of a triangle field."""
    ap, ac = a[..., PREV], a[..., CUR]
    e = geom.vol_edge
    e_prev = np.roll(e, 1, axis=-1)
    vv = geom.vol_vert
    tp, tc = geom.vol_tri[..., PREV], geom.vol_tri[..., CUR]

    ap_next = np.roll(ap, -1, axis=-1)
    ac_prev = np.roll(ac, 1, axis=-1)
    a_s = np.stack([(ac - ac_prev) / tp, (ap_next - ap) / tc], axis=-1)

    inner = (ac - ap) / vv
    a_ss = np.stack([(inner - (ap - ac_prev) / e_prev) / tp,
                     ((ap_next - ac) / e - inner) / tc], axis=-1)
    return a_s, a_ss


def triangle_fields(h, frame, geom: CurveGeometry):
    """Return ``(a, a_s, a_ss)`` for vertex field ``h`` against ``frame``."""
    a = coefficients(h, frame)
    a_s, a_ss = derivatives(a, geom)
    return a, a_s, a_ss


def triangle_kappa(geom: CurveGeometry):
    """Curvature at the triangle's vertex and its derivative at the triangle's edge."""
    k = np.repeat(geom.kappa[..., None], 2, axis=-1)
    ks = np.stack([np.roll(geom.kappa_s, 1, axis=-1), geom.kappa_s], axis=-1)
    return k, ks


def density(coeff, a, a_s, a_ss, geom: CurveGeometry) -> np.ndarray:
    """Per-triangle metric integrand (not yet multiplied by ``vol_tri``)."""
    k, ks = triangle_kappa(geom)
    k2 = k * k
    w0 = coeff.A0 + coeff.A1 * k2 + coeff.A2 * k2 * k2 + coeff.A3 * ks * ks
    w1 = coeff.B0 + coeff.B1 * k2
    return w0 * a * a + w1 * a_s * a_s + coeff.C0 * a_ss * a_ss
