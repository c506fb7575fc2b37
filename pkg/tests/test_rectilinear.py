import numpy as np
import pytest

import vortexfourier as vf

from conftest import random_spectral
from oracles import series_sum_scalar


class TestBasisMatrix:
    def test_entries_and_modulus(self, offset_box):
        coords = np.array([-1.5, 0.0, 2.25])
        mat = vf.basis_matrix(offset_box, 6, 0, coords)
        assert mat.shape == (3, 6)
        width = 4.0
        np.testing.assert_allclose(np.abs(mat), 1.0 / np.sqrt(width), rtol=1e-14)
        k = np.arange(6) - 3
        expected = np.exp(2j * np.pi * k * (2.25 - (-1.5)) / width) / np.sqrt(width)
        np.testing.assert_allclose(mat[2], expected, rtol=1e-14)

    def test_rejects_right_endpoint(self, unit_box):
        with pytest.raises(ValueError, match="right endpoint aliases the left"):
            vf.basis_matrix(unit_box, 4, 1, np.array([0.5, 1.0]))

    def test_rejects_outside(self, unit_box):
        with pytest.raises(ValueError, match="outside"):
            vf.basis_matrix(unit_box, 4, 2, np.array([-0.01]))

    def test_rejects_bad_axis(self, unit_box):
        with pytest.raises(ValueError, match="axis"):
            vf.basis_matrix(unit_box, 4, 3, np.array([0.5]))


class TestEvalRectilinear:
    def test_matches_scalar_sum(self, offset_box):
        spec = random_spectral(offset_box, (6, 4, 6), seed=41)
        rng = np.random.default_rng(42)
        coords = [
            np.sort(rng.uniform(offset_box.a[d], offset_box.b[d], m))
            for d, m in enumerate((3, 2, 3))
        ]
        out = vf.eval_rectilinear(spec, coords)
        assert out.shape == (3, 2, 3)
        for i in range(3):
            for j in range(2):
                for l in range(3):
                    ref = series_sum_scalar(
                        offset_box, spec.coeffs, (coords[0][i], coords[1][j], coords[2][l])
                    )
                    assert out[i, j, l] == pytest.approx(ref, abs=1e-12)

    def test_regular_grid_matches_fft(self, offset_box):
        spec = random_spectral(offset_box, (12, 12, 12), seed=43)
        axes = vf.regular_grid(offset_box, spec.coeffs.shape)
        out = vf.eval_rectilinear(spec, axes)
        ref = vf.synthesize_regular(spec).values
        np.testing.assert_allclose(out, ref, rtol=0, atol=1e-12 * np.abs(ref).max())

    def test_single_point_grid_matches_scattered(self, offset_box):
        spec = random_spectral(offset_box, (8, 6, 4), seed=44)
        point = np.array([0.3, 0.9, 4.5])
        out = vf.eval_rectilinear(spec, [point[:1], point[1:2], point[2:3]])
        ref = vf.eval_direct(spec, point[None, :])
        assert out[0, 0, 0] == pytest.approx(complex(ref[0]), rel=1e-13)

    def test_axis_permutation_equivariance(self):
        dom = vf.DomainBox((0.0, -2.0, 1.0), (1.0, 2.0, 4.0))
        dom_rev = vf.DomainBox((1.0, -2.0, 0.0), (4.0, 2.0, 1.0))
        spec = random_spectral(dom, (4, 6, 8), seed=45)
        spec_rev = vf.SpectralField(dom_rev, spec.coeffs.transpose(2, 1, 0))
        rng = np.random.default_rng(46)
        coords = [np.sort(rng.uniform(dom.a[d], dom.b[d], 3)) for d in range(3)]
        out = vf.eval_rectilinear(spec, coords)
        out_rev = vf.eval_rectilinear(spec_rev, coords[::-1])
        np.testing.assert_allclose(out_rev, out.transpose(2, 1, 0), rtol=1e-12)

    def test_mismatched_coord_count_rejected(self, unit_box):
        spec = random_spectral(unit_box, (4, 4, 4), seed=47)
        with pytest.raises(ValueError):
            vf.eval_rectilinear(spec, [np.array([0.5]), np.array([0.5])])
