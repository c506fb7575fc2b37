"""Figure files rendered next to the data the CLI writes."""

from __future__ import annotations

import numpy as np

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402


def save_diagnostics_figure(diagnostics: np.ndarray, path) -> None:
    """Mass drift and energy split against time, from simulate's rows."""
    t = diagnostics[:, 0]
    mass0 = diagnostics[0, 1]
    fig, (ax_m, ax_e) = plt.subplots(2, 1, figsize=(7, 6), sharex=True)
    ax_m.plot(t, diagnostics[:, 1] / mass0 - 1.0, "o-", ms=3)
    ax_m.set_ylabel("relative mass drift")
    ax_m.axhline(0.0, color="k", lw=0.5)
    ax_e.plot(t, diagnostics[:, 2], label="kinetic")
    ax_e.plot(t, diagnostics[:, 3], label="interaction")
    ax_e.plot(t, diagnostics[:, 4], "k--", label="total")
    ax_e.set_xlabel("t")
    ax_e.set_ylabel("energy")
    ax_e.legend(loc="best", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_slice_figure(coords, density: np.ndarray, path, time: float | None = None) -> None:
    """Density on the mid-plane of the third direction."""
    k = density.shape[2] // 2
    fig, ax = plt.subplots(figsize=(6, 5))
    mesh = ax.pcolormesh(coords[0], coords[1], density[:, :, k].T, shading="nearest")
    fig.colorbar(mesh, ax=ax, label="density")
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    title = f"density at x3 = {coords[2][k]:.3g}"
    if time is not None:
        title += f", t = {time:.4g}"
    ax.set_title(title)
    ax.set_aspect("equal")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def save_cloud_figure(points: np.ndarray, density: np.ndarray, path) -> None:
    """3D scatter of a tube point cloud colored by density."""
    fig = plt.figure(figsize=(7, 6))
    ax = fig.add_subplot(projection="3d")
    if len(points):
        sc = ax.scatter(
            points[:, 0], points[:, 1], points[:, 2], c=density, s=2, cmap="viridis"
        )
        fig.colorbar(sc, ax=ax, shrink=0.7, label="density")
    ax.set_xlabel("x1")
    ax.set_ylabel("x2")
    ax.set_zlabel("x3")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
