import numpy as np
import pytest

import vortexfourier as vf


@pytest.fixture(scope="session")
def unit_box() -> vf.DomainBox:
    return vf.DomainBox((0.0, 0.0, 0.0), (1.0, 1.0, 1.0))


@pytest.fixture(scope="session")
def offset_box() -> vf.DomainBox:
    """Unequal widths and a shifted origin, to catch axis mixups."""
    return vf.DomainBox((-1.5, 0.25, 2.0), (2.5, 1.25, 7.0))


def random_field(domain: vf.DomainBox, shape, seed: int) -> vf.PhysicalField:
    rng = np.random.default_rng(seed)
    values = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return vf.PhysicalField(domain, values)


def random_spectral(domain: vf.DomainBox, shape, seed: int) -> vf.SpectralField:
    rng = np.random.default_rng(seed)
    coeffs = rng.standard_normal(shape) + 1j * rng.standard_normal(shape)
    return vf.SpectralField(domain, coeffs)


@pytest.fixture(scope="session")
def reconnection_run():
    """The full-size two-vortex run (mirrored 40^3 box, T = 20, 200 steps)
    shared by the heavy end-of-suite checks."""
    domain = vf.DomainBox((-20.0, -20.0, -20.0), (20.0, 20.0, 20.0))
    grid = vf.GridSize((40, 40, 40))
    vortices = [
        vf.VortexSpec((2.0, 0.0, 0.0), (0.0, 1.0, 0.0), 1),
        vf.VortexSpec((-2.0, 0.0, 0.0), (0.0, 0.0, 1.0), 1),
    ]
    config = vf.SimConfig(
        domain=domain,
        grid=grid,
        mirror=(True, True, True),
        final_time=20.0,
        steps=200,
        snapshots=11,
    )
    initial = vf.initial_field(domain, grid, vortices)
    return vf.simulate(config, initial)
