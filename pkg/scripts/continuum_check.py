"""Discrete values against their smooth limits on regular polygons.

1. Translating the unit circle by d=1 under metric1: total energy vs 3*pi*d^2.
2. Curvature of the regular N-gon with unit circumradius vs 1 and the observed order.
"""
import math

import numpy as np

from geoshape import PRESETS, compute_geometry, total_energy
from geoshape.generators import circle


def translation_energy(N: int, d: float = 1.0, T: int = 1) -> float:
    c = circle(1.0, N)
    path = np.stack([c + [d * t / T, 0.0] for t in range(T + 1)])
    return total_energy(path, PRESETS["metric1"]).total_energy


def curvature_errors(Ns=(25, 50, 100, 200)) -> list[float]:
    return [float(np.abs(compute_geometry(circle(1.0, N)).kappa - 1).max()) for N in Ns]


def observed_orders(Ns, errs) -> list[float]:
    return [math.log(errs[i] / errs[i + 1]) / math.log(Ns[i + 1] / Ns[i]) for i in range(len(Ns) - 1)]


if __name__ == "__main__":
    print("translation energy, target 3*pi =", 3 * math.pi)
    for N in (25, 50, 100, 200, 400):
        E = translation_energy(N)
        print(f"  N={N:4d}  E={E:.12f}  rel.err={E / (3 * math.pi) - 1:+.3e}")
    Ns = (25, 50, 100, 200)
    errs = curvature_errors(Ns)
    print("curvature error |kappa - 1| on regular N-gons")
    for N, e in zip(Ns, errs):
        print(f"  N={N:4d}  err={e:.3e}")
    print("  observed orders:", ", ".join(f"{p:.3f}" for p in observed_orders(Ns, errs)))
