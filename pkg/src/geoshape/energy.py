"""Discrete horizontal path energy and constant-speed penalty.

A path is an array of shape ``(T + 1, N, 2)``; slice 0 and slice T are the
boundary curves. Triangle fields along a path have shape ``(T, 2, N, 2)``:
time interval ``t``, geometry slice ``s in {t, t + 1}`` (axis 1), vertex ``v``,
and triangle column ``w`` (0 for edge ``v - 1``, 1 for edge ``v``).

    energy[t] = sum_{s, v, w} density(t, s, v, w) * vol_tri(s, v, w) / 8
    total     = sum_t energy[t] / T
    penalty   = sum_{slices, edges} (vol_edge - length / N)^2
"""
from __future__ import annotations

from dataclasses import dataclass, fields, replace

import numpy as np

from . import stencils
from .curvegeom import EPS_EDGE_REL, CurveGeometry, geometry_arrays
from .metrics import MetricCoefficients

DEFAULT_PENALTY_WEIGHT = 1.0


def as_path(slices) -> np.ndarray:
    p = np.asarray(slices, dtype=float)
    if p.ndim != 3 or p.shape[2] != 2:
        raise ValueError(f"path must have shape (T+1, N, 2), got {p.shape}")
    if p.shape[0] < 2:
        raise ValueError("path needs at least two slices (T >= 1)")
    if p.shape[1] < 3:
        raise ValueError("slices need at least 3 vertices")
    if not np.all(np.isfinite(p)):
        raise ValueError("path has non-finite coordinates")
    return p


def path_geometry(path, *, signed_curvature=False, eps_rel=EPS_EDGE_REL) -> CurveGeometry:
    return geometry_arrays(as_path(path), signed_curvature=signed_curvature, eps_rel=eps_rel)


def pair_geometry(geom: CurveGeometry) -> CurveGeometry:
    """Re-index slice geometry as ``(T, 2, ...)`` with axis 1 selecting ``s = t`` or ``s = t + 1``."""
    return replace(geom, **{f.name: np.stack([getattr(geom, f.name)[:-1],
                                              getattr(geom, f.name)[1:]], axis=1)
                            for f in fields(geom)})


def velocity(path) -> np.ndarray:
    """Forward difference in time, scaled by ``T``: shape (T, N, 2)."""
    p = as_path(path)
    T = p.shape[0] - 1
    return T * (p[1:] - p[:-1])


def _pair_velocity(path):
    return velocity(path)[:, None]


def field_a(path, geom: CurveGeometry | None = None) -> np.ndarray:
    geom = path_geometry(path) if geom is None else geom
    return stencils.coefficients(_pair_velocity(path), pair_geometry(geom).normal)


def _fields(path, geom):
    geom = path_geometry(path) if geom is None else geom
    pg = pair_geometry(geom)
    a, a_s, a_ss = stencils.triangle_fields(_pair_velocity(path), pg.normal, pg)
    return a, a_s, a_ss, pg


def field_a_s(path, geom: CurveGeometry | None = None) -> np.ndarray:
    return _fields(path, geom)[1]


def field_a_ss(path, geom: CurveGeometry | None = None) -> np.ndarray:
    return _fields(path, geom)[2]


def penalty(path, geom: CurveGeometry | None = None) -> float:
    geom = path_geometry(path) if geom is None else geom
    n = geom.vol_edge.shape[-1]
    r = geom.vol_edge - geom.length[..., None] / n
    return float((r * r).sum())


@dataclass(frozen=True)
class EnergyBreakdown:
    objective: float
    total_energy: float
    penalty: float
    per_step: np.ndarray
    penalty_weight: float


def step_energies(path, coeff: MetricCoefficients,
                  geom: CurveGeometry | None = None) -> np.ndarray:
    """``energy[t]`` for every time interval."""
    a, a_s, a_ss, pg = _fields(path, geom)
    d = stencils.density(coeff, a, a_s, a_ss, pg) * pg.vol_tri
    return d.reshape(d.shape[0], -1).sum(axis=1) / 8.0


def total_energy(path, coeff: MetricCoefficients,
                 penalty_weight: float = DEFAULT_PENALTY_WEIGHT, *,
                 signed_curvature: bool = False) -> EnergyBreakdown:
    p = as_path(path)
    geom = path_geometry(p, signed_curvature=signed_curvature)
    per_step = step_energies(p, coeff, geom)
    E = float(per_step.sum() / len(per_step))
    P = penalty(p, geom)
    return EnergyBreakdown(objective=E + penalty_weight * P, total_energy=E,
                           penalty=P, per_step=per_step, penalty_weight=penalty_weight)
