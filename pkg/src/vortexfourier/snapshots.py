"""Binary snapshot files.

Fixed little-endian layout, version 1:

    magic   4 bytes  b"SFS1"
    version u32
    bounds  6 f64    a1 b1 a2 b2 a3 b3 (physical box)
    sizes   3 u32    N1 N2 N3 (physical grid)
    mirror  3 u8
    time    f64
    payload N1 N2 N3 complex values, interleaved (re, im) f64 pairs in row
            major order (third index fastest)

complex128 round-trips bit for bit.
"""

from __future__ import annotations

import struct
from pathlib import Path

import numpy as np

from .fourier import DomainBox
from .gpe import Snapshot

__all__ = ["read_snapshot", "write_snapshot"]

_MAGIC = b"SFS1"
_VERSION = 1
_HEADER = struct.Struct("<4sI6d3I3Bd")


def write_snapshot(path, snap: Snapshot) -> None:
    a, b = snap.domain.a, snap.domain.b
    n = snap.values.shape
    header = _HEADER.pack(
        _MAGIC,
        _VERSION,
        a[0], b[0], a[1], b[1], a[2], b[2],
        n[0], n[1], n[2],
        *(1 if m else 0 for m in snap.mirror),
        snap.time,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(snap.values, dtype="<c16").tobytes())


def read_snapshot(path) -> Snapshot:
    raw = Path(path).read_bytes()
    if len(raw) < _HEADER.size:
        raise ValueError(f"{path}: truncated snapshot header")
    fields = _HEADER.unpack_from(raw)
    if fields[0] != _MAGIC:
        raise ValueError(f"{path}: not a snapshot file (bad magic {fields[0]!r})")
    if fields[1] != _VERSION:
        raise ValueError(f"{path}: unsupported snapshot version {fields[1]}")
    a1, b1, a2, b2, a3, b3 = fields[2:8]
    n = fields[8:11]
    mirror = tuple(bool(v) for v in fields[11:14])
    t = fields[14]
    count = n[0] * n[1] * n[2]
    expected = _HEADER.size + 16 * count
    if len(raw) != expected:
        raise ValueError(
            f"{path}: payload size {len(raw) - _HEADER.size} does not match "
            f"{n[0]}x{n[1]}x{n[2]} complex values"
        )
    values = np.frombuffer(raw, dtype="<c16", count=count, offset=_HEADER.size)
    values = values.reshape(n).astype(np.complex128)
    return Snapshot(DomainBox((a1, a2, a3), (b1, b2, b3)), values, mirror, t)
