"""Dynamic multi-coil MRI reconstruction with unrolled ADMM.

The package simulates, undersamples, and reconstructs dynamic (cine)
multi-coil MRI data end to end, entirely in numpy:

- `core` holds the typed array containers (images, k-space, maps, masks)
  and fixes the (coil, frame, row, column) axis order.
- `fourier` provides centered orthonormal FFTs and the acquisition
  operator with its exact adjoint and hard data-consistency projection.
- `sampling` builds deterministic Cartesian and pseudo-radial masks from
  a pinned splitmix64 generator, with optional frame-varying (k-t) mode.
- `phantom` renders a beating-heart scene, smooth coil profiles, and
  noisy simulated acquisitions.
- `calibration` estimates sensitivity maps from the autocalibration
  block of the measured data.
- `priors` implements the proximal denoisers (soft threshold, one-level
  Haar shrinkage, total variation) shared by the solvers.
- `vsharp` is the unrolled ADMM solver with per-iterate hard data
  consistency; `arn` refines k-space before the solve and supplies its
  warm-start image.
- `baselines` contributes zero-filled and conjugate-gradient SENSE
  references, `metrics` the SSIM/PSNR/NMSE scoring and the training
  loss, `dataio` the binary container and report formats, and `cli`
  the command line pipeline.

All solvers are deterministic: identical inputs and seeds reproduce
identical bytes.
"""

from .arn import ArnConfig, cascade_step, init_z0, refine
from .baselines import cg_sense, zero_filled
from .calibration import estimate_sensitivities
from .core import (
    DynamicImage,
    MultiCoilKSpace,
    SamplingMask,
    SensitivityMaps,
    inner_product,
    rss_combine,
)
from .errors import (
    CalibrationError,
    DegenerateMaskError,
    DimensionError,
    DivergenceError,
    FormatError,
    InvalidSpecError,
    MetricError,
    NumericError,
    ReconError,
)
from .fourier import (
    AcquisitionOperator,
    adjoint,
    coil_combine,
    coil_kspace,
    dc,
    fft2c,
    forward,
    ifft2c,
    project_iterate,
    sampled_entries_match,
)
from .metrics import (
    ReconReport,
    VSharpLossRecord,
    evaluate_volume,
    iterate_weights,
    nmse,
    psnr,
    ssim,
    ssim3d,
    vsharp_loss,
)
from .phantom import PhantomSpec, augment, coil_maps, corrupt, generate_phantom, simulate
from .priors import DenoiserSpec, denoise, haar2d, tv_prox
from .sampling import (
    GOLDEN_ANGLE_DEG,
    MaskSpec,
    Rng,
    SCHEMES,
    acs_columns,
    acs_region_mask,
    generate_mask,
    measured_acceleration,
)
from .vsharp import SolveTrace, VSharpConfig, initialize, reconstruct, u_update, x_update

__version__ = "1.0.0"

__all__ = [
    "ArnConfig",
    "cascade_step",
    "init_z0",
    "refine",
    "cg_sense",
    "zero_filled",
    "estimate_sensitivities",
    "DynamicImage",
    "MultiCoilKSpace",
    "SamplingMask",
    "SensitivityMaps",
    "inner_product",
    "rss_combine",
    "CalibrationError",
    "DegenerateMaskError",
    "DimensionError",
    "DivergenceError",
    "FormatError",
    "InvalidSpecError",
    "MetricError",
    "NumericError",
    "ReconError",
    "AcquisitionOperator",
    "adjoint",
    "coil_combine",
    "coil_kspace",
    "dc",
    "fft2c",
    "forward",
    "ifft2c",
    "project_iterate",
    "sampled_entries_match",
    "ReconReport",
    "VSharpLossRecord",
    "evaluate_volume",
    "iterate_weights",
    "nmse",
    "psnr",
    "ssim",
    "ssim3d",
    "vsharp_loss",
    "PhantomSpec",
    "augment",
    "coil_maps",
    "corrupt",
    "generate_phantom",
    "simulate",
    "DenoiserSpec",
    "denoise",
    "haar2d",
    "tv_prox",
    "GOLDEN_ANGLE_DEG",
    "MaskSpec",
    "Rng",
    "SCHEMES",
    "acs_columns",
    "acs_region_mask",
    "generate_mask",
    "measured_acceleration",
    "SolveTrace",
    "VSharpConfig",
    "initialize",
    "reconstruct",
    "u_update",
    "x_update",
    "__version__",
]
