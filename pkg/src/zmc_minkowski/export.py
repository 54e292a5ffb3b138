"""Mesh, CSV and JSON export of sampled surfaces.

All writers are deterministic: floats are written with ``repr`` (shortest
round-trip form), JSON keys are sorted and vertices are row-major in
``(u, v)`` with ``u`` the slow index.
"""
from __future__ import annotations

import csv
import io
import json
import os
import tempfile
import warnings
from dataclasses import dataclass, field

import numpy as np

from .catalog import DEGENERACY_MARGIN
from .errors import ConfigError
from .suite import DEFAULT_GRID, Grid, Target, fit_grid, sample

FORMATS = ("obj", "csv", "json")


@dataclass(frozen=True)
class SampledSurface:
    """Positions ``points[i, j] = X(u[i], v[j])`` with export metadata."""

    u: np.ndarray
    v: np.ndarray
    points: np.ndarray
    metadata: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.points.shape != (self.u.size, self.v.size, 3):
            raise ValueError("points must have shape (len(u), len(v), 3)")
        if self.u.size < 2 or self.v.size < 2:
            raise ValueError("a mesh needs at least 2 x 2 samples")


def sample_target(target: Target, grid: Grid | None = None, threads: int | None = None) -> SampledSurface:
    """Sample ``target`` on ``grid``.

    An explicit grid that straddles a degeneracy line is refused
    (:class:`~zmc_minkowski.suite.ExclusionError`); the default grid is shrunk
    to one side with a warning.
    """
    explicit = grid is not None
    grid, msgs = fit_grid(grid or DEFAULT_GRID, target.degenerate_u, margin=DEGENERACY_MARGIN, refuse=explicit)
    for m in msgs:
        warnings.warn(m, stacklevel=2)
    u, v = grid.axes()
    with np.errstate(over="ignore", invalid="ignore"):
        X = sample(target, u, v, threads)
    if not np.all(np.isfinite(X)):
        raise ConfigError("non-finite positions on the grid; choose a smaller domain")
    meta = target.metadata()
    meta["domain"] = grid.as_dict()
    meta["grid_messages"] = msgs
    return SampledSurface(u, v, X, meta)


def triangles(nu: int, nv: int) -> np.ndarray:
    """1-based triangle indices of the row-major ``nu x nv`` vertex grid, two per cell."""
    i, j = np.meshgrid(np.arange(nu - 1), np.arange(nv - 1), indexing="ij")
    a = (i * nv + j).ravel() + 1
    b, c, d = a + nv, a + 1, a + nv + 1
    return np.stack([np.stack([a, b, c], -1), np.stack([c, b, d], -1)], 1).reshape(-1, 3)


def obj_text(s: SampledSurface) -> str:
    out = io.StringIO()
    for key in ("target", "causal_character"):
        if key in s.metadata:
            out.write(f"# {key}: {s.metadata[key]}\n")
    for x, y, z in s.points.reshape(-1, 3):
        out.write(f"v {float(x)!r} {float(y)!r} {float(z)!r}\n")
    for a, b, c in triangles(s.u.size, s.v.size):
        out.write(f"f {a} {b} {c}\n")
    return out.getvalue()


def csv_text(s: SampledSurface) -> str:
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["u", "v", "x1", "x2", "x3"])
    for i, uu in enumerate(s.u):
        for j, vv in enumerate(s.v):
            w.writerow([repr(float(uu)), repr(float(vv)), *(repr(float(x)) for x in s.points[i, j])])
    return out.getvalue()


def json_text(s: SampledSurface) -> str:
    doc = {"metadata": s.metadata, "u": s.u.tolist(), "v": s.v.tolist(), "points": s.points.tolist()}
    return json.dumps(doc, sort_keys=True, indent=1) + "\n"


_WRITERS = {"obj": obj_text, "csv": csv_text, "json": json_text}


def render(s: SampledSurface, fmt: str) -> str:
    try:
        return _WRITERS[fmt](s)
    except KeyError:
        raise ConfigError(f"unknown format {fmt!r}; expected one of {FORMATS}") from None


def write_atomic(path, text: str) -> None:
    """Write via a temporary file in the target directory, then rename over ``path``."""
    path = os.fspath(path)
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def export_mesh(s: SampledSurface, fmt: str, path) -> None:
    """Write ``s`` in ``fmt`` (``obj``, ``csv`` or ``json``) to ``path``.

    Raises
    ------
    OSError
        If the file cannot be written.
    """
    write_atomic(path, render(s, fmt))


def read_csv(path) -> SampledSurface:
    """Read a CSV written by :func:`export_mesh`; floats round-trip exactly."""
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))
    if not rows or rows[0] != ["u", "v", "x1", "x2", "x3"]:
        raise ValueError("missing u,v,x1,x2,x3 header")
    data = np.array([[float(x) for x in r] for r in rows[1:]])
    u = np.unique(data[:, 0])
    v = data[: np.count_nonzero(data[:, 0] == data[0, 0]), 1]
    return SampledSurface(u, v, data[:, 2:].reshape(u.size, v.size, 3))


def read_obj(path):
    """``(vertices, faces)`` of an OBJ file (faces keep their 1-based indices)."""
    verts, faces = [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            if parts[0] == "v":
                verts.append([float(x) for x in parts[1:4]])
            elif parts[0] == "f":
                faces.append([int(x) for x in parts[1:4]])
    return np.array(verts), np.array(faces, dtype=int)


__all__ = ["FORMATS", "SampledSurface", "sample_target", "triangles", "obj_text", "csv_text", "json_text", "render",
           "write_atomic", "export_mesh", "read_csv", "read_obj"]
