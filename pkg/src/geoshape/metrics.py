"""Metric family with horizontal = normal, its named presets, and Sobolev comparisons.

On a horizontal field ``h = a n`` the metrics read

    G(h, h) = int (A0 + A1 k^2 + A2 k^4 + A3 (D_s k)^2) a^2
                  + (B0 + B1 k^2) (D_s a)^2 + C0 (D_s^2 a)^2 ds.

Discretely a single-slice value is ``sum(density * vol_tri) / 4``: each vertex
carries two triangles whose volumes add up to twice the local arc length, so
the factor 4 turns the triangle sum into an arc-length integral. The path
energy uses the same normalization (two slices per time step, hence /8).
"""
from __future__ import annotations

from dataclasses import astuple, dataclass, fields

import numpy as np

from . import stencils
from .curvegeom import CurveGeometry

TOL_DOM = 1e-8


@dataclass(frozen=True)
class MetricCoefficients:
    A0: float = 1.0
    A1: float = 0.0
    A2: float = 0.0
    A3: float = 0.0
    B0: float = 0.0
    B1: float = 0.0
    C0: float = 0.0

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if not np.isfinite(v) or v < 0:
                raise ValueError(f"{f.name} must be a finite nonnegative number, got {v}")
        if self.A0 <= 0:
            raise ValueError("A0 must be positive")

    def as_tuple(self) -> tuple:
        return astuple(self)

    def scaled(self, factor: float) -> "MetricCoefficients":
        return MetricCoefficients(*(factor * v for v in self.as_tuple()))

    def dominates(self, other: "MetricCoefficients") -> bool:
        """Termwise coefficient ordering."""
        return all(x >= y for x, y in zip(self.as_tuple(), other.as_tuple()))

    @classmethod
    def parse(cls, text: str) -> "MetricCoefficients":
        """Parse ``"A0,A1,A2,A3,B0,B1,C0"``."""
        parts = [p.strip() for p in text.split(",")]
        if len(parts) != 7:
            raise ValueError(f"expected 7 comma-separated coefficients, got {len(parts)}")
        return cls(*(float(p) for p in parts))


PRESETS = {
    "metric1": MetricCoefficients(1, 2, 0, 0, 0, 0, 0),
    "metric2": MetricCoefficients(1, 2, 0, 0, 2, 0, 0),
    "metric3": MetricCoefficients(1, 2, 4, 4, 0, 0, 0),
    "metric4": MetricCoefficients(1, 2, 4, 4, 2, 16, 4),
}

SOBOLEV_ORDERS = {"h1": 1, "h2": 2}


@dataclass(frozen=True)
class MetricPreset:
    name: str
    coefficients: MetricCoefficients | None = None
    order: int | None = None


def get_preset(name: str) -> MetricPreset:
    if name in PRESETS:
        return MetricPreset(name, coefficients=PRESETS[name])
    if name in SOBOLEV_ORDERS:
        return MetricPreset(name, order=SOBOLEV_ORDERS[name])
    raise KeyError(f"unknown metric {name!r}; choose from {sorted(PRESETS) + sorted(SOBOLEV_ORDERS)}")


def evaluate_normal_quadratic(coeff: MetricCoefficients, a, a_s, a_ss,
                              geom: CurveGeometry) -> float:
    """Discrete ``G(a n, a n)`` from triangle fields ``a``, ``D_s a``, ``D_s^2 a``."""
    d = stencils.density(coeff, a, a_s, a_ss, geom)
    return float((d * geom.vol_tri).sum() / 4.0)


def normal_fields(h, geom: CurveGeometry):
    return stencils.triangle_fields(h, geom.normal, geom)


def tangential_fields(h, geom: CurveGeometry):
    return stencils.triangle_fields(h, geom.tangent, geom)


def evaluate_split(coeff: MetricCoefficients, a, b, geom: CurveGeometry,
                   tangential: MetricCoefficients | None = None) -> float:
    """Quadratic form on coefficient fields: normal block on ``a`` plus tangential block on ``b``.

    ``a`` and ``b`` are per-triangle arrays of shape (N, 2). The tangential
    block defaults to the normal coefficients. There is no mixed ``a b`` term.
    """
    tangential = coeff if tangential is None else tangential
    a_s, a_ss = stencils.derivatives(np.asarray(a, dtype=float), geom)
    b_s, b_ss = stencils.derivatives(np.asarray(b, dtype=float), geom)
    return (evaluate_normal_quadratic(coeff, a, a_s, a_ss, geom)
            + evaluate_normal_quadratic(tangential, b, b_s, b_ss, geom))


def evaluate_full(coeff: MetricCoefficients, h, geom: CurveGeometry,
                  tangential: MetricCoefficients | None = None) -> float:
    """``G(h, h)`` for an arbitrary vertex field, both blocks included."""
    a, b = stencils.coefficients(h, geom.normal), stencils.coefficients(h, geom.tangent)
    return evaluate_split(coeff, a, b, geom, tangential)


def _componentwise(h, geom):
    """Apply the triangle stencils to each Cartesian component of ``h``."""
    h = np.asarray(h, dtype=float)
    out = []
    for i in range(2):
        basis = np.zeros_like(geom.normal)
        basis[..., i] = 1.0
        out.append(stencils.triangle_fields(h, basis, geom))
    return [np.stack(parts, axis=-1) for parts in zip(*out)]


def _second_derivative_in_frame(h, geom):
    """``D_s^2 h`` expanded in the edge frame of each triangle.

    With ``D_s t = -k n`` and ``D_s n = k t`` one has
    ``D_s^2 (a n + b t) = (a_ss - 2k b_s - k_s b - k^2 a) n + (b_ss + 2k a_s + k_s a - k^2 b) t``;
    the pieces are the same discrete ``a``, ``a_s``, ``a_ss``, ``k``, ``k_s``
    that enter the metric family.
    """
    a, a_s, a_ss = normal_fields(h, geom)
    b, b_s, b_ss = tangential_fields(h, geom)
    k, ks = stencils.triangle_kappa(geom)
    nrm = a_ss - 2 * k * b_s - ks * b - k * k * a
    tan = b_ss + 2 * k * a_s + ks * a - k * k * b
    return nrm, tan


def evaluate_sobolev(order: int, h, geom: CurveGeometry) -> float:
    """Discrete ``int sum_{i <= order} |D_s^i h|^2 ds`` on the triangle grid."""
    if order not in (1, 2):
        raise ValueError(f"Sobolev order must be 1 or 2, got {order}")
    h = np.asarray(h, dtype=float)
    val, d1, _ = _componentwise(h, geom)
    dens = (val**2).sum(axis=-1) + (d1**2).sum(axis=-1)
    if order == 2:
        nrm, tan = _second_derivative_in_frame(h, geom)
        dens = dens + nrm**2 + tan**2
    return float((dens * geom.vol_tri).sum() / 4.0)


def check_block_orthogonality(coeff: MetricCoefficients, geom: CurveGeometry,
                              trials: int = 1, rng=None) -> float:
    """Largest relative cross term ``|G(h1, h2)| / (G(h1, h1) + G(h2, h2))``.

    ``h1`` has only a normal coefficient and ``h2`` only a tangential one; both
    are drawn per vertex and spread to the vertex's two triangles.
    """
    if trials < 1:
        raise ValueError("trials must be >= 1")
    rng = np.random.default_rng(rng)
    n = geom.n_vertices
    worst = 0.0
    for _ in range(trials):
        a = np.repeat(rng.standard_normal(n)[:, None], 2, axis=1)
        b = np.repeat(rng.standard_normal(n)[:, None], 2, axis=1)
        plus, minus = evaluate_split(coeff, a, b, geom), evaluate_split(coeff, a, -b, geom)
        worst = max(worst, abs(0.25 * (plus - minus)) / (0.5 * (plus + minus)))
    return worst


def cross_term(coeff: MetricCoefficients, a, b, geom: CurveGeometry) -> float:
    """Polarized ``G(a n, b t)`` for given per-triangle coefficient fields."""
    return 0.25 * (evaluate_split(coeff, a, b, geom) - evaluate_split(coeff, a, -np.asarray(b), geom))


DOMINATION_PAIRS = {("metric2", "h1"), ("metric4", "h2")}


def check_domination(strong: str, weak: str, geom: CurveGeometry, h) -> float:
    """``G_strong(h, h) - H^l(h, h)``; nonnegative up to roundoff for the supported pairs."""
    if (strong, weak) not in DOMINATION_PAIRS:
        raise ValueError(f"unsupported domination pair ({strong}, {weak})")
    return evaluate_full(PRESETS[strong], h, geom) - evaluate_sobolev(SOBOLEV_ORDERS[weak], h, geom)
