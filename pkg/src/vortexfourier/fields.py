"""Evaluation grids and on-disk formats for evaluated fields.

A rectilinear field lands in three files next to each other: a text header
(key = value, with the full coordinate vectors so nonequispaced grids are
self describing), a raw complex payload, and a raw density payload.  The
optional legacy-VTK export writes the density as a big-endian binary
RECTILINEAR_GRID dataset that standard viewers open directly.
"""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np

__all__ = [
    "equispaced_axes",
    "clustered_axes",
    "write_field",
    "read_field",
    "write_vtk_rectilinear",
    "write_points_csv",
    "read_points_csv",
]

_FORMAT = "rectilinear-field-v1"


def equispaced_axes(sizes, bounds) -> list[np.ndarray]:
    """Three linspace vectors over [a_d, b_d], endpoints included."""
    out = []
    for d in range(3):
        m = int(sizes[d])
        a, b = bounds[2 * d], bounds[2 * d + 1]
        if m < 1 or b <= a:
            raise ValueError(f"bad grid request in direction {d}: {m} points on [{a}, {b}]")
        out.append(np.linspace(a, b, m))
    return out


def clustered_axes(sizes, bounds, strength: float = 1.0) -> list[np.ndarray]:
    """Sinh-stretched vectors denser around the interval midpoints.

    Each direction maps u in [-1, 1] to c + strength*sinh(u*asinh(h/strength))
    with c the midpoint and h the half width; spacing near the center is about
    strength*asinh(h/strength)/h times the equispaced one, so small strength
    means strong clustering.  Endpoints are reproduced exactly.
    """
    if strength <= 0:
        raise ValueError("clustering strength must be positive")
    out = []
    for d in range(3):
        m = int(sizes[d])
        a, b = bounds[2 * d], bounds[2 * d + 1]
        if m < 1 or b <= a:
            raise ValueError(f"bad grid request in direction {d}: {m} points on [{a}, {b}]")
        c = 0.5 * (a + b)
        h = 0.5 * (b - a)
        u = np.linspace(-1.0, 1.0, m)
        y = c + strength * np.sinh(u * np.arcsinh(h / strength))
        y[0], y[-1] = a, b  # pin endpoints against rounding
        out.append(y)
    return out


def write_field(base, coords, values: np.ndarray, density: np.ndarray, time: float | None = None) -> list[Path]:
    """Write header + payloads for a field on the tensor grid of coords.

    base is the path prefix: writes base.hdr, base.psi.f64, base.rho.f64 and
    returns the paths.
    """
    base = Path(base)
    shape = tuple(len(c) for c in coords)
    if values.shape != shape or density.shape != shape:
        raise ValueError(f"payload shape {values.shape} does not match grid {shape}")
    psi_path = base.with_suffix(".psi.f64")
    rho_path = base.with_suffix(".rho.f64")
    hdr_path = base.with_suffix(".hdr")

    lines = [
        f"format = {_FORMAT}",
        f"size = {shape[0]} {shape[1]} {shape[2]}",
        "order = row-major third-index-fastest",
        f"payload_psi = {psi_path.name}  # complex, interleaved (re, im) f64, little-endian",
        f"payload_rho = {rho_path.name}  # f64, little-endian",
    ]
    if time is not None:
        lines.append(f"time = {time!r}")
    for d in range(3):
        lines.append(f"coords_{d + 1} = " + " ".join(repr(float(v)) for v in coords[d]))
    hdr_path.write_text("\n".join(lines) + "\n")
    psi_path.write_bytes(np.ascontiguousarray(values, dtype="<c16").tobytes())
    rho_path.write_bytes(np.ascontiguousarray(density, dtype="<f8").tobytes())
    return [hdr_path, psi_path, rho_path]


def read_field(base):
    """Inverse of write_field: returns (coords, values, density, meta)."""
    base = Path(base)
    meta = {}
    for line in base.with_suffix(".hdr").read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, val = line.partition("=")
        meta[key.strip()] = val.strip()
    if meta.get("format") != _FORMAT:
        raise ValueError(f"{base}: unknown field format {meta.get('format')!r}")
    shape = tuple(int(v) for v in meta["size"].split())
    coords = [
        np.array([float(v) for v in meta[f"coords_{d + 1}"].split()]) for d in range(3)
    ]
    values = np.frombuffer(base.with_suffix(".psi.f64").read_bytes(), dtype="<c16")
    density = np.frombuffer(base.with_suffix(".rho.f64").read_bytes(), dtype="<f8")
    return coords, values.reshape(shape).copy(), density.reshape(shape).copy(), meta


def write_vtk_rectilinear(path, coords, scalars: dict[str, np.ndarray], title="field") -> None:
    """Legacy binary VTK rectilinear grid with one or more scalar fields.

    Scalars are written as big-endian float32 in VTK point order (first index
    fastest), which matches our arrays after a transpose.
    """
    shape = tuple(len(c) for c in coords)
    with open(path, "wb") as fh:
        fh.write(b"# vtk DataFile Version 3.0\n")
        fh.write(title.encode() + b"\n")
        fh.write(b"BINARY\n")
        fh.write(b"DATASET RECTILINEAR_GRID\n")
        fh.write(f"DIMENSIONS {shape[0]} {shape[1]} {shape[2]}\n".encode())
        for name, c in zip("XYZ", coords):
            fh.write(f"{name}_COORDINATES {len(c)} double\n".encode())
            fh.write(np.ascontiguousarray(c, dtype=">f8").tobytes())
            fh.write(b"\n")
        fh.write(f"POINT_DATA {shape[0] * shape[1] * shape[2]}\n".encode())
        for name, data in scalars.items():
            if data.shape != shape:
                raise ValueError(f"scalar {name} shape {data.shape} does not match grid {shape}")
            fh.write(f"SCALARS {name} float 1\n".encode())
            fh.write(b"LOOKUP_TABLE default\n")
            fh.write(np.ascontiguousarray(data.transpose(2, 1, 0), dtype=">f4").tobytes())
            fh.write(b"\n")


def write_points_csv(path, points: np.ndarray, columns: dict[str, np.ndarray]) -> None:
    """CSV with x1,x2,x3 plus named extra columns, one row per point."""
    points = np.asarray(points, dtype=float).reshape(-1, 3)
    names = ["x1", "x2", "x3"] + list(columns)
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(names)
        for i in range(points.shape[0]):
            row = [repr(v.item()) for v in points[i]]
            for col in columns.values():
                row.append(repr(col[i].item() if hasattr(col[i], "item") else col[i]))
            writer.writerow(row)


def read_points_csv(path) -> dict[str, np.ndarray]:
    """Columns of a points CSV as float arrays keyed by header name."""
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        try:
            header = next(reader)
        except StopIteration:
            raise ValueError(f"{path}: empty points file, expected a header row")
        rows = [row for row in reader if row]
    data = np.array(rows, dtype=float) if rows else np.empty((0, len(header)))
    if data.ndim == 1:
        data = data[None, :]
    if data.size and data.shape[1] != len(header):
        raise ValueError(f"{path}: ragged CSV")
    return {name.strip(): data[:, i] for i, name in enumerate(header)}
