"""Normal/tangential splitting of deformation fields on a polygon.

For the metric family used here the horizontal bundle is the normal bundle,
so the horizontal part of a deformation is its pointwise normal projection.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .curvegeom import EPS_EDGE_REL, CurveGeometry
from .stencils import coefficients


class ZeroVertexNormal(ValueError):
    """The two edge normals at a vertex cancel (a cusp)."""


@dataclass(frozen=True)
class SplitField:
    """Normal coefficient ``a`` and tangential coefficient ``b`` per triangle, shape (N, 2)."""

    a: np.ndarray
    b: np.ndarray


def _check(h, geom):
    h = np.asarray(h, dtype=float)
    if h.shape[-2:] != (geom.n_vertices, 2):
        raise ValueError(f"vertex field has shape {h.shape}, expected (..., {geom.n_vertices}, 2)")
    return h


def split(h, geom: CurveGeometry) -> SplitField:
    h = _check(h, geom)
    return SplitField(a=coefficients(h, geom.normal), b=coefficients(h, geom.tangent))


def reconstruct(field: SplitField, geom: CurveGeometry) -> np.ndarray:
    """Per-triangle vectors ``a n[w] + b t[w]``, shape (N, 2, 2)."""
    n_w = np.stack([np.roll(geom.normal, 1, axis=-2), geom.normal], axis=-2)
    t_w = np.stack([np.roll(geom.tangent, 1, axis=-2), geom.tangent], axis=-2)
    return field.a[..., None] * n_w + field.b[..., None] * t_w


def vertex_normals(geom: CurveGeometry, eps: float | None = None) -> np.ndarray:
    """Edge-length weighted average of the two adjacent edge normals, renormalized."""
    e = geom.vol_edge[..., None]
    m = np.roll(e * geom.normal, 1, axis=-2) + e * geom.normal
    norm = np.sqrt((m**2).sum(axis=-1))
    if eps is None:
        eps = EPS_EDGE_REL * geom.length
    bad = norm < np.asarray(eps)[..., None]
    if np.any(bad):
        raise ZeroVertexNormal(f"antipodal edge normals at vertex {int(np.argwhere(bad)[0][-1])}")
    return m / norm[..., None]


def vertex_tangents(geom: CurveGeometry) -> np.ndarray:
    nv = vertex_normals(geom)
    return np.stack([-nv[..., 1], nv[..., 0]], axis=-1)


def horizontal_part(h, geom: CurveGeometry) -> np.ndarray:
    """Project a vertex field onto the vertex normals."""
    h = _check(h, geom)
    nv = vertex_normals(geom)
    return (h * nv).sum(axis=-1)[..., None] * nv

