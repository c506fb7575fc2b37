"""Truncated Fourier series on a 3D rectangular box.

A complex field sampled on a regular N1 x N2 x N3 grid over the half-open box
prod_d [a_d, b_d) is represented by coefficients of the orthonormal basis

    E_k(x) = prod_d exp(2 pi i k_d (x_d - a_d) / (b_d - a_d)) / sqrt(b_d - a_d)

with centered integer wavenumbers k_d in {-N_d/2, ..., N_d/2 - 1}.  Coefficient
arrays are stored in centered order: index j along axis d holds wavenumber
j - N_d/2, so index 0 is the most negative mode and index N_d/2 is the mean.

The trapezoidal quadrature underlying the transform is exact for this basis on
the grid, so decompose/synthesize_regular form an exact inverse pair (up to
rounding) and the discrete Parseval identity

    sum_k |coeff_k|^2 = h1 h2 h3 sum_n |values_n|^2

holds with h_d = (b_d - a_d) / N_d.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.fft

__all__ = [
    "DomainBox",
    "GridSize",
    "PhysicalField",
    "SpectralField",
    "regular_grid",
    "decompose",
    "synthesize_regular",
    "derivative_multiplier",
    "laplacian_multiplier",
    "spectral_mass",
    "gradient_energy",
]

# scipy.fft worker count used by every transform in the package; set through
# the CLI --threads flag.
_fft_workers = -1


def set_fft_workers(n: int | None) -> None:
    global _fft_workers
    _fft_workers = -1 if n is None else int(n)


def fft_workers() -> int:
    return _fft_workers


@dataclass(frozen=True)
class DomainBox:
    """Axis-aligned half-open box prod_d [a_d, b_d)."""

    a: tuple[float, float, float]
    b: tuple[float, float, float]

    def __post_init__(self):
        a = tuple(float(v) for v in self.a)
        b = tuple(float(v) for v in self.b)
        if len(a) != 3 or len(b) != 3:
            raise ValueError("DomainBox needs exactly three bounds per side")
        for d in range(3):
            if not (np.isfinite(a[d]) and np.isfinite(b[d])):
                raise ValueError("domain bounds must be finite")
            if not a[d] < b[d]:
                raise ValueError(
                    f"domain bounds must satisfy a < b, got [{a[d]}, {b[d]}) in direction {d}"
                )
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def widths(self) -> np.ndarray:
        return np.array(self.b) - np.array(self.a)

    @property
    def volume(self) -> float:
        return float(np.prod(self.widths))

    def contains(self, points: np.ndarray) -> np.ndarray:
        """Boolean mask of rows of an (M, 3) array lying inside the box."""
        pts = np.atleast_2d(np.asarray(points, dtype=float))
        a = np.asarray(self.a)
        b = np.asarray(self.b)
        return np.all((pts >= a) & (pts < b), axis=1)


@dataclass(frozen=True)
class GridSize:
    """Per-direction sample counts; every count must be even and positive."""

    n: tuple[int, int, int]

    def __post_init__(self):
        n = tuple(int(v) for v in self.n)
        if len(n) != 3:
            raise ValueError("GridSize needs exactly three entries")
        for v in n:
            if v <= 0 or v % 2 != 0:
                raise ValueError(f"grid sizes must be positive and even, got {n}")
        object.__setattr__(self, "n", n)

    @property
    def total(self) -> int:
        return self.n[0] * self.n[1] * self.n[2]


def _as_size(size) -> GridSize:
    return size if isinstance(size, GridSize) else GridSize(tuple(size))


def _check_values(values: np.ndarray) -> np.ndarray:
    values = np.asarray(values)
    if values.ndim != 3:
        raise ValueError(f"expected a 3D array, got shape {values.shape}")
    for v in values.shape:
        if v % 2 != 0:
            raise ValueError(f"array dimensions must be even, got shape {values.shape}")
    return np.ascontiguousarray(values, dtype=np.complex128)


@dataclass(frozen=True)
class PhysicalField:
    """Complex samples on the regular grid of a DomainBox."""

    domain: DomainBox
    values: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "values", _check_values(self.values))

    @property
    def size(self) -> GridSize:
        return GridSize(self.values.shape)

    @property
    def step(self) -> np.ndarray:
        return self.domain.widths / np.array(self.values.shape)


@dataclass(frozen=True)
class SpectralField:
    """Centered-order Fourier coefficients of a field on a DomainBox."""

    domain: DomainBox
    coeffs: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coeffs", _check_values(self.coeffs))

    @property
    def size(self) -> GridSize:
        return GridSize(self.coeffs.shape)

    def wavenumbers(self, axis: int) -> np.ndarray:
        """Centered integer wavenumbers along one axis."""
        n = self.coeffs.shape[axis]
        return np.arange(n) - n // 2


def regular_grid(domain: DomainBox, size) -> list[np.ndarray]:
    """Per-direction coordinate vectors x_d = a_d + j h_d, j = 0..N_d-1.

    The right endpoint b_d is excluded; it aliases a_d under the periodic
    continuation of the series.
    """
    size = _as_size(size)
    out = []
    for d in range(3):
        n = size.n[d]
        # linspace over [a, b] then drop b: matches a + j*(b-a)/n without
        # accumulating rounding
        out.append(np.linspace(domain.a[d], domain.b[d], n + 1)[:n])
    return out


def decompose(field: PhysicalField) -> SpectralField:
    """Forward transform: grid samples to centered Fourier coefficients."""
    n = np.array(field.values.shape)
    scale = float(np.prod(np.sqrt(field.domain.widths) / n))
    coeffs = np.fft.fftshift(scipy.fft.fftn(field.values, workers=_fft_workers)) * scale
    return SpectralField(field.domain, coeffs)


def synthesize_regular(spec: SpectralField) -> PhysicalField:
    """Inverse transform back to samples on the regular grid of spec.domain."""
    n = np.array(spec.coeffs.shape)
    scale = float(np.prod(np.sqrt(spec.domain.widths) / n))
    values = scipy.fft.ifftn(np.fft.ifftshift(spec.coeffs), workers=_fft_workers) / scale
    return PhysicalField(spec.domain, values)


def derivative_multiplier(domain: DomainBox, size, axis: int) -> np.ndarray:
    """Per-mode factor turning coefficients into coefficients of d/dx_axis.

    Purely imaginary, 2 pi i k / (b - a) for centered wavenumber k; zero at
    the mean mode (centered index N/2).
    """
    size = _as_size(size)
    if axis not in (0, 1, 2):
        raise ValueError(f"axis must be 0, 1 or 2, got {axis}")
    n = size.n[axis]
    k = np.arange(n) - n // 2
    return 2j * np.pi * k / (domain.b[axis] - domain.a[axis])


def laplacian_multiplier(domain: DomainBox, size) -> np.ndarray:
    """Real nonpositive array sum_d lambda_d^2 on the full coefficient grid."""
    size = _as_size(size)
    l2 = [derivative_multiplier(domain, size, d).imag ** 2 for d in range(3)]
    return -(
        l2[0][:, None, None] + l2[1][None, :, None] + l2[2][None, None, :]
    )


def spectral_mass(spec: SpectralField) -> float:
    """Squared L2 norm of the interpolant, sum_k |coeff_k|^2."""
    c = spec.coeffs
    return float(np.sum(c.real**2 + c.imag**2))


def gradient_energy(spec: SpectralField) -> float:
    """Squared L2 norm of the gradient of the interpolant.

    Equals sum_k (|lambda_1|^2 + |lambda_2|^2 + |lambda_3|^2) |coeff_k|^2;
    computed from per-axis marginals of |coeff|^2 so no 3D temporary besides
    the modulus array is needed.
    """
    c = spec.coeffs
    abs2 = c.real**2 + c.imag**2
    total = 0.0
    for axis in range(3):
        lam2 = derivative_multiplier(spec.domain, spec.size, axis).imag ** 2
        other = tuple(d for d in range(3) if d != axis)
        total += float(np.sum(abs2.sum(axis=other) * lam2))
    return total
