"""Test shapes sampled at uniform parameter, all counter-clockwise."""
from __future__ import annotations

import numpy as np

from .curvegeom import as_polygon


def _count(N) -> int:
    if int(N) != N or N < 3:
        raise ValueError(f"N must be an integer >= 3, got {N}")
    return int(N)


def _angles(N) -> np.ndarray:
    N = _count(N)
    return 2 * np.pi * np.arange(N) / N


def _positive(**kw):
    for name, x in kw.items():
        if not x > 0:
            raise ValueError(f"{name} must be positive, got {x}")


def circle(r: float = 1.0, N: int = 100, center=(0.0, 0.0)) -> np.ndarray:
    return ellipse(r, r, N, center)


def ellipse(rx: float = 1.0, ry: float = 0.5, N: int = 100, center=(0.0, 0.0)) -> np.ndarray:
    _positive(rx=rx, ry=ry)
    th = _angles(N)
    return np.column_stack([center[0] + rx * np.cos(th), center[1] + ry * np.sin(th)])


def star(k: int = 5, r_in: float = 0.5, r_out: float = 1.0, N: int = 100,
         center=(0.0, 0.0)) -> np.ndarray:
    """Smooth ``k``-pointed star, ``r(θ) = (r_in + r_out)/2 + (r_out - r_in)/2 cos(kθ)``."""
    if int(k) != k or k < 2:
        raise ValueError(f"k must be an integer >= 2, got {k}")
    _positive(r_in=r_in, r_out=r_out)
    th = _angles(N)
    r = 0.5 * (r_in + r_out) + 0.5 * (r_out - r_in) * np.cos(k * th)
    return np.column_stack([center[0] + r * np.cos(th), center[1] + r * np.sin(th)])


def square(side: float = 1.0, N: int = 100) -> np.ndarray:
    """Axis-aligned square with corner (0, 0), sampled uniformly along the perimeter."""
    _positive(side=side)
    N = _count(N)
    u = 4.0 * np.arange(N) / N  # perimeter parameter in [0, 4)
    leg = np.floor(u).astype(int)
    f = u - leg
    xs = np.choose(leg, [f, np.ones_like(f), 1 - f, np.zeros_like(f)])
    ys = np.choose(leg, [np.zeros_like(f), f, np.ones_like(f), 1 - f])
    return side * np.column_stack([xs, ys])


GENERATORS = {"circle": circle, "ellipse": ellipse, "star": star, "square": square}


def generate(kind: str, **params) -> np.ndarray:
    try:
        fn = GENERATORS[kind]
    except KeyError:
        raise ValueError(f"unknown shape kind {kind!r}; choose from {', '.join(GENERATORS)}") from None
    return fn(**params)


def resample(curve, n: int) -> np.ndarray:
    """Arclength-uniform resampling of a closed polygon to ``n`` vertices, starting at vertex 0."""
    c = as_polygon(curve)
    n = _count(n)
    closed = np.vstack([c, c[:1]])
    s = np.r_[0.0, np.cumsum(np.linalg.norm(np.diff(closed, axis=0), axis=1))]
    if not s[-1] > 0:
        raise ValueError("curve has zero length")
    target = s[-1] * np.arange(n) / n
    return np.column_stack([np.interp(target, s, closed[:, 0]), np.interp(target, s, closed[:, 1])])
