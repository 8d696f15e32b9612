"""ShapeFile / PathFile JSON formats.

Floats are written with 17 significant digits, so a write/read round trip
reproduces every finite double exactly.
"""
from __future__ import annotations

import json
import math
from pathlib import Path

import jsonschema
import numpy as np

FORMAT = "geoshape/1"

_POINT = {"type": "array", "items": {"type": "number"}, "minItems": 2, "maxItems": 2}
_POLY = {"type": "array", "items": _POINT, "minItems": 3}

SHAPE_SCHEMA = {
    "type": "object",
    "required": ["format", "vertices", "closed"],
    "properties": {
        "format": {"const": FORMAT},
        "vertices": _POLY,
        "closed": {"const": True},
    },
}

PATH_SCHEMA = {
    "type": "object",
    "required": ["format", "T", "N", "metric", "objective", "slices"],
    "properties": {
        "format": {"const": FORMAT},
        "T": {"type": "integer", "minimum": 1},
        "N": {"type": "integer", "minimum": 3},
        "metric": {"type": "string"},
        "objective": {"type": "number"},
        "slices": {"type": "array", "items": _POLY, "minItems": 2},
    },
}


class FormatError(ValueError):
    """A file does not match its schema."""


def _encode(obj) -> str:
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_, str)) or obj is None:
        return json.dumps(bool(obj) if isinstance(obj, np.bool_) else obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    x = float(obj)
    if not math.isfinite(x):
        raise FormatError(f"non-finite number {x!r} cannot be written")
    return format(x, ".17g")


def dumps(obj) -> str:
    return _encode(obj) + "\n"


def _validate(data, schema, what):
    try:
        jsonschema.validate(data, schema)
    except jsonschema.ValidationError as exc:
        raise FormatError(f"invalid {what}: {exc.message}") from None


def _load(path):
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise FileNotFoundError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path} is not valid JSON: {exc}") from None


def shape_to_dict(vertices) -> dict:
    return {"format": FORMAT, "vertices": np.asarray(vertices, dtype=float), "closed": True}


def shape_from_dict(data) -> np.ndarray:
    _validate(data, SHAPE_SCHEMA, "ShapeFile")
    return np.array(data["vertices"], dtype=float)


def write_shape(path, vertices) -> None:
    Path(path).write_text(dumps(shape_to_dict(vertices)), encoding="utf-8")


def read_shape(path) -> np.ndarray:
    return shape_from_dict(_load(path))


def path_to_dict(slices, metric: str, objective: float) -> dict:
    slices = np.asarray(slices, dtype=float)
    return {"format": FORMAT, "T": slices.shape[0] - 1, "N": slices.shape[1],
            "metric": metric, "objective": float(objective), "slices": slices}


def path_from_dict(data):
    """Return ``(slices, metric, objective)``."""
    _validate(data, PATH_SCHEMA, "PathFile")
    slices = data["slices"]
    if len(slices) != data["T"] + 1:
        raise FormatError(f"invalid PathFile: {len(slices)} slices for T={data['T']}")
    if any(len(s) != data["N"] for s in slices):
        raise FormatError(f"invalid PathFile: every slice must have N={data['N']} vertices")
    return np.array(slices, dtype=float), data["metric"], float(data["objective"])


def write_path(path, slices, metric: str, objective: float) -> None:
    Path(path).write_text(dumps(path_to_dict(slices, metric, objective)), encoding="utf-8")


def read_path(path):
    return path_from_dict(_load(path))
