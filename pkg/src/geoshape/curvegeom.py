"""Discrete differential geometry of closed polygons.

Vertices are stored as float arrays of shape ``(..., N, 2)``; indexing along
the vertex axis is cyclic. Edge ``v`` runs from vertex ``v`` to vertex
``v + 1``. Triangle quantities carry a trailing axis of length 2 where column
0 pairs vertex ``v`` with edge ``v - 1`` and column 1 pairs it with edge ``v``.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

EPS_EDGE_REL = 1e-12

PREV = 0  # triangle column for w = v - 1
CUR = 1  # triangle column for w = v


class DegenerateEdge(ValueError):
    """Raised when an edge is shorter than the degeneracy threshold."""

    def __init__(self, index, length, threshold):
        self.index = index
        self.length = length
        self.threshold = threshold
        super().__init__(
            f"degenerate edge at index {index}: length {length:.3e} < {threshold:.3e}"
        )


def as_polygon(vertices) -> np.ndarray:
    """Validate and return an ``(N, 2)`` float array."""
    c = np.asarray(vertices, dtype=float)
    if c.ndim != 2 or c.shape[1] != 2:
        raise ValueError(f"polygon must have shape (N, 2), got {c.shape}")
    if c.shape[0] < 3:
        raise ValueError(f"polygon needs at least 3 vertices, got {c.shape[0]}")
    if not np.all(np.isfinite(c)):
        raise ValueError("polygon has non-finite coordinates")
    return c


def edge_threshold(c: np.ndarray, eps_rel: float = EPS_EDGE_REL) -> np.ndarray:
    """Per-curve degeneracy threshold: ``eps_rel`` times the bounding-box diagonal."""
    span = c.max(axis=-2) - c.min(axis=-2)
    return eps_rel * np.sqrt((span**2).sum(axis=-1))


@dataclass(frozen=True)
class CurveGeometry:
    """Geometric quantities of one polygon (or a stack of them).

    ``dot_raw`` is the unclamped tangent dot product feeding ``angle``; the
    gradient code needs it to locate the arccos clamp.
    """

    edge: np.ndarray
    vol_edge: np.ndarray
    vol_vert: np.ndarray
    vol_tri: np.ndarray
    tangent: np.ndarray
    normal: np.ndarray
    length: np.ndarray
    dot_raw: np.ndarray
    angle: np.ndarray
    kappa: np.ndarray
    kappa_s: np.ndarray
    turn_sign: np.ndarray

    @property
    def n_vertices(self) -> int:
        return self.vol_edge.shape[-1]


def geometry_arrays(c, *, signed_curvature: bool = False,
                    eps_rel: float = EPS_EDGE_REL) -> CurveGeometry:
    """Compute geometry for polygons stacked along leading axes."""
    c = np.asarray(c, dtype=float)
    edge = np.roll(c, -1, axis=-2) - c
    vol_edge = np.sqrt((edge**2).sum(axis=-1))

    thr = np.broadcast_to(edge_threshold(c, eps_rel)[..., None], vol_edge.shape)
    bad = vol_edge < thr
    if np.any(bad):
        idx = tuple(int(i) for i in np.argwhere(bad)[0])
        raise DegenerateEdge(idx if len(idx) > 1 else idx[0],
                             float(vol_edge[idx]), float(thr[idx]))

    e_prev = np.roll(vol_edge, 1, axis=-1)
    vol_vert = 0.5 * (e_prev + vol_edge)
    vol_tri = np.stack([vol_vert + e_prev, vol_vert + vol_edge], axis=-1)

    tangent = edge / vol_edge[..., None]
    normal = np.stack([tangent[..., 1], -tangent[..., 0]], axis=-1)
    length = vol_edge.sum(axis=-1)

    t_prev = np.roll(tangent, 1, axis=-2)
    dot_raw = (t_prev * tangent).sum(axis=-1)
    angle = np.arccos(np.clip(dot_raw, -1.0, 1.0))
    cross = t_prev[..., 0] * tangent[..., 1] - t_prev[..., 1] * tangent[..., 0]
    if signed_curvature:
        turn_sign = np.where(cross < 0.0, -1.0, 1.0)
    else:
        turn_sign = np.ones_like(angle)
    kappa = turn_sign * angle / vol_vert
    kappa_s = (np.roll(kappa, -1, axis=-1) - kappa) / vol_edge

    return CurveGeometry(edge=edge, vol_edge=vol_edge, vol_vert=vol_vert,
                         vol_tri=vol_tri, tangent=tangent, normal=normal,
                         length=length, dot_raw=dot_raw, angle=angle,
                         kappa=kappa, kappa_s=kappa_s, turn_sign=turn_sign)


def compute_geometry(curve, *, signed_curvature: bool = False,
                     eps_rel: float = EPS_EDGE_REL) -> CurveGeometry:
    """Geometry of a single closed polygon.

    Curvature is the unsigned turning angle over the vertex volume unless
    ``signed_curvature`` is set, in which case it carries the sign of the
    turn (positive for counter-clockwise).
    """
    return geometry_arrays(as_polygon(curve), signed_curvature=signed_curvature,
                           eps_rel=eps_rel)


def D_s_edge(field, geom: CurveGeometry) -> np.ndarray:
    """Arc-length derivative of a vertex field, located on edges."""
    f = np.asarray(field, dtype=float)
    if f.shape[-1] != geom.n_vertices:
        raise ValueError(f"field has {f.shape[-1]} entries, curve has {geom.n_vertices}")
    return (np.roll(f, -1, axis=-1) - f) / geom.vol_edge
