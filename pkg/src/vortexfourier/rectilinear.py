"""Evaluation of a spectral field on an arbitrary rectilinear grid.

A rectilinear target grid is the tensor product of three coordinate vectors
y_d (each inside [a_d, b_d), not necessarily equispaced).  Evaluation reduces
to three mode-wise contractions with small per-dimension basis matrices, so
the M1 x M2 x M3 point tensor is never materialized and the cost stays at

    O(N3 (N1 N2 M2 + N1 M1 M2) + N3 M1 M2 M3)

instead of the O(M1 M2 M3 N1 N2 N3) of pointwise summation.
"""

from __future__ import annotations

import numpy as np

from .fourier import DomainBox, SpectralField

__all__ = ["basis_matrix", "eval_rectilinear"]


def basis_matrix(domain: DomainBox, n: int, axis: int, coords: np.ndarray) -> np.ndarray:
    """Matrix of basis values e_{m k} = E_k(y_m) along one direction.

    Shape (M, n): row m evaluates all n centered modes at coordinate y_m.
    Every entry has modulus 1/sqrt(b - a).
    """
    if axis not in (0, 1, 2):
        raise ValueError(f"axis must be 0, 1 or 2, got {axis}")
    if n <= 0 or n % 2 != 0:
        raise ValueError(f"mode count must be positive and even, got {n}")
    y = np.asarray(coords, dtype=float)
    if y.ndim != 1:
        raise ValueError("coordinate vector must be one-dimensional")
    a, b = domain.a[axis], domain.b[axis]
    if y.size and (y.min() < a or y.max() >= b):
        bad = y[(y < a) | (y >= b)][0]
        raise ValueError(
            f"coordinate {bad} outside [{a}, {b}) in direction {axis}; "
            "the right endpoint aliases the left under periodicity and is rejected"
        )
    k = np.arange(n) - n // 2
    phase = np.exp(2j * np.pi * np.outer(y - a, k) / (b - a))
    return phase / np.sqrt(b - a)


def eval_rectilinear(spec: SpectralField, coords: list[np.ndarray]) -> np.ndarray:
    """Evaluate the truncated series on the tensor grid of three coordinate
    vectors; returns a complex (M1, M2, M3) array.

    Contraction order: modes 2, then 1 (batched over mode 3), then mode 3.
    """
    if len(coords) != 3:
        raise ValueError("need exactly three coordinate vectors")
    n1, n2, n3 = spec.coeffs.shape
    e1 = basis_matrix(spec.domain, n1, 0, coords[0])
    e2 = basis_matrix(spec.domain, n2, 1, coords[1])
    e3 = basis_matrix(spec.domain, n3, 2, coords[2])
    # (N3, N1, N2) @ (N2, M2) -> (N3, N1, M2)
    t = np.matmul(spec.coeffs.transpose(2, 0, 1), e2.T)
    # (M1, N1) @ (N3, N1, M2) -> (N3, M1, M2)
    t = np.matmul(e1, t)
    # contract the leading mode-3 axis: (N3, M1, M2) x (M3, N3) -> (M1, M2, M3)
    return np.tensordot(t, e3, axes=([0], [1]))
