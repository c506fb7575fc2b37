import numpy as np
import pytest

import vortexfourier as vf

from conftest import random_field, random_spectral


class TestDomainBox:
    def test_rejects_inverted_bounds(self):
        with pytest.raises(ValueError, match="a < b"):
            vf.DomainBox((0.0, 0.0, 0.0), (1.0, -1.0, 1.0))

    def test_rejects_empty_interval(self):
        with pytest.raises(ValueError, match="a < b"):
            vf.DomainBox((2.0, 0.0, 0.0), (2.0, 1.0, 1.0))

    def test_rejects_non_finite(self):
        with pytest.raises(ValueError, match="finite"):
            vf.DomainBox((0.0, 0.0, 0.0), (np.inf, 1.0, 1.0))

    def test_widths_and_volume(self, offset_box):
        np.testing.assert_allclose(offset_box.widths, [4.0, 1.0, 5.0])
        assert offset_box.volume == pytest.approx(20.0)

    def test_contains_is_half_open(self, unit_box):
        pts = np.array([[0.0, 0.0, 0.0], [1.0, 0.5, 0.5], [0.5, 0.5, 0.999]])
        np.testing.assert_array_equal(unit_box.contains(pts), [True, False, True])


class TestGridSize:
    @pytest.mark.parametrize("bad", [(3, 4, 4), (4, 0, 4), (4, 4, -2)])
    def test_rejects_odd_or_nonpositive(self, bad):
        with pytest.raises(ValueError, match="positive and even"):
            vf.GridSize(bad)

    def test_total(self):
        assert vf.GridSize((4, 6, 8)).total == 192


class TestRegularGrid:
    def test_unit_step_box(self):
        # the mirrored production box: 80 samples, step exactly 1
        dom = vf.DomainBox((-20.0, -20.0, -20.0), (60.0, 60.0, 60.0))
        axes = vf.regular_grid(dom, (80, 80, 80))
        for ax in axes:
            assert ax.shape == (80,)
            assert ax[0] == -20.0
            assert ax[-1] == 59.0
            np.testing.assert_allclose(np.diff(ax), 1.0, rtol=0, atol=1e-13)

    def test_excludes_right_endpoint(self, offset_box):
        axes = vf.regular_grid(offset_box, (8, 4, 6))
        for d, ax in enumerate(axes):
            assert ax.max() < offset_box.b[d]


class TestFieldTypes:
    def test_rejects_non_3d(self, unit_box):
        with pytest.raises(ValueError, match="3D"):
            vf.PhysicalField(unit_box, np.zeros((4, 4)))

    def test_rejects_odd_shape(self, unit_box):
        with pytest.raises(ValueError, match="even"):
            vf.SpectralField(unit_box, np.zeros((4, 5, 4), dtype=complex))

    def test_real_input_upcast(self, unit_box):
        field = vf.PhysicalField(unit_box, np.ones((4, 4, 4)))
        assert field.values.dtype == np.complex128

    def test_step(self, offset_box):
        field = vf.PhysicalField(offset_box, np.zeros((8, 4, 10), dtype=complex))
        np.testing.assert_allclose(field.step, [0.5, 0.25, 0.5])

    def test_wavenumbers_centered(self, unit_box):
        spec = vf.SpectralField(unit_box, np.zeros((4, 6, 8), dtype=complex))
        np.testing.assert_array_equal(spec.wavenumbers(0), [-2, -1, 0, 1])
        np.testing.assert_array_equal(spec.wavenumbers(1), [-3, -2, -1, 0, 1, 2])
        assert spec.wavenumbers(2)[0] == -4


def mode_values(domain, shape, k):
    """Samples of the normalized single-mode basis function with centered
    wavenumbers k on the regular grid."""
    axes = vf.regular_grid(domain, shape)
    w = domain.widths
    phases = [
        np.exp(2j * np.pi * k[d] * (axes[d] - domain.a[d]) / w[d]) for d in range(3)
    ]
    values = phases[0][:, None, None] * phases[1][None, :, None] * phases[2][None, None, :]
    return values / np.sqrt(np.prod(w))


class TestDecompose:
    def test_constant_field(self, offset_box):
        field = vf.PhysicalField(offset_box, np.full((4, 6, 8), 2.0 - 1.0j))
        spec = vf.decompose(field)
        expected = (2.0 - 1.0j) * np.sqrt(offset_box.volume)
        assert spec.coeffs[2, 3, 4] == pytest.approx(expected, rel=1e-14)
        rest = spec.coeffs.copy()
        rest[2, 3, 4] = 0.0
        assert np.abs(rest).max() < 1e-13 * abs(expected)

    def test_single_mode_lands_on_its_index(self, offset_box):
        shape = (8, 6, 4)
        k = (-2, 1, -1)
        field = vf.PhysicalField(offset_box, mode_values(offset_box, shape, k))
        spec = vf.decompose(field)
        idx = tuple(k[d] + shape[d] // 2 for d in range(3))
        assert spec.coeffs[idx] == pytest.approx(1.0, rel=1e-13)
        rest = spec.coeffs.copy()
        rest[idx] = 0.0
        assert np.abs(rest).max() < 1e-13

    def test_nyquist_mode_is_negative(self, unit_box):
        # on 4 samples per axis the +2 and -2 modes coincide; the convention
        # assigns the energy to index 0, wavenumber -2
        field = vf.PhysicalField(unit_box, mode_values(unit_box, (4, 4, 4), (-2, 0, 0)))
        spec = vf.decompose(field)
        assert spec.coeffs[0, 2, 2] == pytest.approx(1.0, rel=1e-13)

    def test_linearity(self, offset_box):
        f = random_field(offset_box, (6, 4, 8), seed=7)
        g = random_field(offset_box, (6, 4, 8), seed=8)
        combo = vf.PhysicalField(offset_box, 1.25 * f.values - 0.5j * g.values)
        lhs = vf.decompose(combo).coeffs
        rhs = 1.25 * vf.decompose(f).coeffs - 0.5j * vf.decompose(g).coeffs
        np.testing.assert_allclose(lhs, rhs, rtol=0, atol=1e-13 * np.abs(rhs).max())


class TestRoundTrip:
    @pytest.mark.parametrize("seed", [0, 1, 2])
    @pytest.mark.parametrize("shape", [(8, 8, 8), (4, 12, 6)])
    def test_synthesize_inverts_decompose(self, offset_box, shape, seed):
        field = random_field(offset_box, shape, seed)
        back = vf.synthesize_regular(vf.decompose(field))
        scale = np.abs(field.values).max()
        np.testing.assert_allclose(back.values, field.values, rtol=0, atol=1e-12 * scale)

    def test_decompose_inverts_synthesize(self, unit_box):
        spec = random_spectral(unit_box, (6, 6, 8), seed=3)
        again = vf.decompose(vf.synthesize_regular(spec))
        np.testing.assert_allclose(again.coeffs, spec.coeffs, rtol=0, atol=1e-12)


class TestParseval:
    @pytest.mark.parametrize("seed", [11, 12, 13])
    def test_coefficient_energy_equals_grid_sum(self, offset_box, seed):
        field = random_field(offset_box, (8, 6, 10), seed)
        spec = vf.decompose(field)
        grid_sum = float(np.prod(field.step)) * float(np.sum(np.abs(field.values) ** 2))
        assert vf.spectral_mass(spec) == pytest.approx(grid_sum, rel=1e-13)


class TestDerivatives:
    def test_multiplier_values(self, offset_box):
        lam = vf.derivative_multiplier(offset_box, (8, 4, 6), axis=0)
        assert lam.shape == (8,)
        assert lam[4] == 0.0
        width = offset_box.b[0] - offset_box.a[0]
        assert lam[5] == pytest.approx(2j * np.pi / width, rel=1e-15)
        assert np.all(lam.real == 0.0)

    def test_differentiates_single_mode(self, offset_box):
        shape = (8, 6, 4)
        k = (3, -2, 1)
        field = vf.PhysicalField(offset_box, mode_values(offset_box, shape, k))
        spec = vf.decompose(field)
        w = offset_box.widths
        for axis in range(3):
            lam = vf.derivative_multiplier(offset_box, shape, axis)
            lam = lam.reshape([-1 if d == axis else 1 for d in range(3)])
            deriv = vf.synthesize_regular(vf.SpectralField(offset_box, lam * spec.coeffs))
            expected = (2j * np.pi * k[axis] / w[axis]) * field.values
            np.testing.assert_allclose(
                deriv.values, expected, rtol=0, atol=1e-12 * np.abs(expected).max()
            )

    def test_laplacian_matches_axis_multipliers(self, offset_box):
        shape = (6, 4, 8)
        lap = vf.laplacian_multiplier(offset_box, shape)
        lams = [vf.derivative_multiplier(offset_box, shape, d) for d in range(3)]
        total = (
            (lams[0] ** 2)[:, None, None]
            + (lams[1] ** 2)[None, :, None]
            + (lams[2] ** 2)[None, None, :]
        )
        np.testing.assert_allclose(lap, total.real, rtol=1e-14, atol=0)
        assert np.all(lap <= 0.0)
        assert lap[3, 2, 4] == 0.0

    @pytest.mark.parametrize("seed", [21, 22])
    def test_gradient_energy_against_mode_sum(self, offset_box, seed):
        spec = random_spectral(offset_box, (6, 8, 4), seed)
        weight = -vf.laplacian_multiplier(offset_box, spec.coeffs.shape)
        direct = float(np.sum(weight * np.abs(spec.coeffs) ** 2))
        assert vf.gradient_energy(spec) == pytest.approx(direct, rel=1e-13)


class TestScalarOracle:
    def test_grid_value_matches_scalar_sum(self, offset_box):
        from oracles import series_sum_scalar

        spec = random_spectral(offset_box, (6, 4, 6), seed=31)
        grid = vf.synthesize_regular(spec)
        axes = vf.regular_grid(offset_box, spec.coeffs.shape)
        for i, j, l in [(0, 0, 0), (3, 1, 2), (5, 3, 5)]:
            point = (axes[0][i], axes[1][j], axes[2][l])
            ref = series_sum_scalar(offset_box, spec.coeffs, point)
            assert grid.values[i, j, l] == pytest.approx(ref, abs=1e-12)
