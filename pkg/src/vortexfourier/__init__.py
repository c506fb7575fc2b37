"""Spectral representation, fast evaluation, and vortex dynamics of complex
fields on a periodic 3D box."""

from .fourier import (
    DomainBox,
    GridSize,
    PhysicalField,
    SpectralField,
    decompose,
    derivative_multiplier,
    gradient_energy,
    laplacian_multiplier,
    regular_grid,
    set_fft_workers,
    spectral_mass,
    synthesize_regular,
)
from .gpe import (
    SimConfig,
    SimResult,
    Snapshot,
    computational_domain,
    energy,
    energy_terms,
    kinetic_step,
    mass,
    mirror_extend,
    potential_halfstep,
    simulate,
    snapshot_spectral,
    strang_step,
)
from .nufft import (
    AccuracyWarning,
    NufftParams,
    NufftPlan,
    eval_direct,
    eval_nufft,
    map_to_torus,
    rescale_coeffs,
)
from .rectilinear import basis_matrix, eval_rectilinear
from .snapshots import read_snapshot, write_snapshot
from .tube import TubePointCloud, tube_eval
from .vortex import (
    PadeProfile,
    VortexSpec,
    initial_field,
    pade_coefficients,
    straight_vortex,
    superimpose,
    vortex2d,
)

__version__ = "0.1.0"
