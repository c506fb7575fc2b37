"""Adaptive extraction of low-density (vortex tube) point clouds.

The stored physical-grid samples seed the search: points at or below the
first threshold survive.  Each refinement pass keeps the points still at
or below its threshold and replaces them with their 27-point stencils of
one third the previous spacing, evaluating the density at the new points
through one reused scattered-evaluation plan.  The stencil keeps its
parent as the center point, so surviving parents reappear in the next
pass, and the cloud returned is the one produced by the last pass
(optionally post-selected by final_filter).

All candidate points live on the lattice of spacing h_d / 3^L over the
computational box (L passes), tracked as integer triples: parents sit on
the 3x coarser sub-lattice, so stencils of distinct parents never collide,
coordinates wrap periodically, and the output ordering is a lexicographic
sort independent of generation order.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from .fourier import PhysicalField, decompose
from .gpe import Snapshot, mirror_extend
from .nufft import NufftParams, NufftPlan

__all__ = ["TubePointCloud", "tube_eval"]


@dataclass(frozen=True)
class TubePointCloud:
    """Scattered points with their evaluated densities and the refinement
    pass (0 = physical grid) at which each point first appeared."""

    points: np.ndarray
    density: np.ndarray
    level: np.ndarray

    def __post_init__(self):
        if self.points.shape != (self.density.size, 3) or self.density.size != self.level.size:
            raise ValueError("inconsistent point cloud arrays")

    def __len__(self) -> int:
        return self.density.size


def _lattice_keys(idx: np.ndarray, sizes: np.ndarray) -> np.ndarray:
    return (idx[:, 0] * sizes[1] + idx[:, 1]) * sizes[2] + idx[:, 2]


def _empty_cloud() -> TubePointCloud:
    return TubePointCloud(np.empty((0, 3)), np.empty(0), np.empty(0, dtype=np.int64))


def tube_eval(
    snap: Snapshot,
    thresholds,
    final_filter: float | None = None,
    params: NufftParams | None = None,
) -> TubePointCloud:
    """Extract and refine the low-density point set of a snapshot.

    thresholds holds one density bound per pass: the first selects seeds
    from the stored samples (no series evaluation), each later one selects
    the parents of the next 3x refinement.  The result is the point set
    generated by the last pass with its evaluated densities.
    """
    thresholds = [float(t) for t in np.atleast_1d(thresholds)]
    if not thresholds or any(t <= 0 for t in thresholds):
        raise ValueError("thresholds must be a nonempty sequence of positive values")
    levels = len(thresholds)

    ext = mirror_extend(PhysicalField(snap.domain, snap.values), snap.mirror)
    spec = decompose(ext)
    shape = np.array(ext.values.shape)
    a = np.asarray(ext.domain.a)
    widths = ext.domain.widths

    scale = 3**levels
    lattice = shape * scale  # lattice sizes at the finest spacing h / 3^L

    v = snap.values
    rho_grid = (v.real**2 + v.imag**2).ravel()
    seed_flat = np.flatnonzero(rho_grid <= thresholds[0])
    if seed_flat.size == 0:
        warnings.warn(
            f"no grid point has density <= {thresholds[0]}; returning an empty cloud",
            RuntimeWarning,
            stacklevel=2,
        )
        return _empty_cloud()
    idx = np.stack(np.unravel_index(seed_flat, v.shape), axis=1) * scale
    idx = idx.astype(np.int64)
    rho = rho_grid[seed_flat]
    level = np.zeros(idx.shape[0], dtype=np.int64)

    plan = NufftPlan(spec, params)
    offs = np.array(np.meshgrid([-1, 0, 1], [-1, 0, 1], [-1, 0, 1], indexing="ij"))
    offs = offs.reshape(3, 27).T  # row 13 is the zero offset (the parent)

    for ell in range(1, levels + 1):
        keep = rho <= thresholds[ell - 1]
        if not keep.any():
            return _empty_cloud()
        parents, plevel = idx[keep], level[keep]
        step_units = 3 ** (levels - ell)
        idx = (parents[:, None, :] + offs[None, :, :] * step_units).reshape(-1, 3)
        idx %= lattice
        # center children coincide with their parents and keep their tag
        level = np.full(idx.shape[0], ell, dtype=np.int64)
        level[13::27] = plevel
        coords = a + idx * (widths / lattice)
        values = plan.evaluate(coords)
        rho = values.real**2 + values.imag**2

    if final_filter is not None:
        keep = rho <= float(final_filter)
        idx, rho, level = idx[keep], rho[keep], level[keep]
    if idx.shape[0] == 0:
        return _empty_cloud()

    order = np.argsort(_lattice_keys(idx, lattice), kind="stable")
    points = a + idx[order] * (widths / lattice)
    return TubePointCloud(points, rho[order], level[order])
