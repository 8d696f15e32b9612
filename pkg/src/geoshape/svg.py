"""Filmstrip rendering of a path: one 120px cell per frame, left to right.

All frames share one scale and offset, so growth and motion stay visible.
Coordinates are printed with fixed precision; equal input gives equal bytes.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np

CELL = 120
MARGIN = 8
MAX_FRAMES = 12


def frame_indices(n_slices: int, max_frames: int = MAX_FRAMES) -> list[int]:
    """Evenly spaced slice indices including both endpoints."""
    if n_slices <= max_frames:
        return list(range(n_slices))
    return sorted({int(round(x)) for x in np.linspace(0, n_slices - 1, max_frames)})


def filmstrip(slices, max_frames: int = MAX_FRAMES, stroke: str = "#1f4e79") -> str:
    slices = np.asarray(slices, dtype=float)
    idx = frame_indices(len(slices), max_frames)
    frames = slices[idx]
    lo = frames.reshape(-1, 2).min(axis=0)
    hi = frames.reshape(-1, 2).max(axis=0)
    span = float(max(hi - lo)) or 1.0
    scale = (CELL - 2 * MARGIN) / span
    pad = (CELL - 2 * MARGIN - scale * (hi - lo)) / 2  # centre the common bounding box

    width = CELL * len(frames)
    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{CELL}" '
        f'viewBox="0 0 {width} {CELL}">',
        f'<rect width="{width}" height="{CELL}" fill="white"/>',
    ]
    for j, (t, c) in enumerate(zip(idx, frames)):
        x = j * CELL + MARGIN + pad[0] + scale * (c[:, 0] - lo[0])
        y = CELL - (MARGIN + pad[1] + scale * (c[:, 1] - lo[1]))  # y axis points up
        pts = " ".join(f"{a:.2f},{b:.2f}" for a, b in zip(x, y))
        out.append(f'<polygon data-slice="{t}" points="{pts}" fill="none" '
                   f'stroke="{stroke}" stroke-width="1.5" stroke-linejoin="round"/>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def write_filmstrip(path, slices, **kw) -> None:
    Path(path).write_text(filmstrip(slices, **kw), encoding="utf-8")
