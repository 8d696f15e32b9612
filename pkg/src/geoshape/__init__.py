"""Geodesics between closed plane polygons under curvature-weighted Sobolev-type metrics."""
from .curvegeom import CurveGeometry, DegenerateEdge, compute_geometry
from .energy import EnergyBreakdown, total_energy
from .metrics import PRESETS, MetricCoefficients
from .optimize import SolveReport, SolverConfig, align, initial_path, solve

__all__ = [
    "CurveGeometry", "DegenerateEdge", "compute_geometry", "EnergyBreakdown", "total_energy",
    "PRESETS", "MetricCoefficients", "SolveReport", "SolverConfig", "align", "initial_path", "solve",
]
__version__ = "0.1.0"
