"""Beating-heart numerical phantom, coil profiles, and data simulation.

The scene is a torso ellipse containing two static lungs and a short-axis
view of the heart: a bright myocardial ring whose inner radius follows a
sinusoidal cardiac cycle around a blood pool.  A mild linear phase ramp
makes the images genuinely complex.  All geometry constants live in one
table below so regenerated data never drifts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import DynamicImage, MultiCoilKSpace, SamplingMask, SensitivityMaps
from .errors import DimensionError, InvalidSpecError
from .fourier import _coil_kspace, _fft2c_raw, _ifft2c_raw
from .sampling import Rng

__all__ = [
    "PhantomSpec",
    "generate_phantom",
    "coil_maps",
    "simulate",
    "corrupt",
    "augment",
]

# Geometry and intensity table, in units of the image extent.
TORSO_INTENSITY = 0.2
TORSO_SEMI = (0.45, 0.45)            # fractions of (ny, nx)
LUNG_INTENSITY = 0.05
LUNG_CENTERS = ((0.42, 0.30), (0.42, 0.68))   # fractions of (ny, nx)
LUNG_SEMI = (0.22, 0.13)             # fractions of (ny, nx)
HEART_CENTER = (0.5, 0.45)           # fractions of (ny, nx)
OUTER_RADIUS_FRAC = 0.18             # of min(ny, nx)
INNER_RADIUS_FRAC = 0.10             # of min(ny, nx)
WALL_INTENSITY = 0.9
BLOOD_INTENSITY = 0.5
PHASE_RAMP_COEFF = 0.3               # of pi, over (row + col) / (ny + nx)


@dataclass(frozen=True)
class PhantomSpec:
    """Scene dimensions plus motion and noise settings."""

    ny: int
    nx: int
    nf: int
    nc: int
    beat_amplitude: float = 0.15
    noise_sigma: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if self.ny < 8 or self.nx < 8:
            raise InvalidSpecError("phantom needs ny, nx >= 8")
        if self.nf < 1:
            raise InvalidSpecError("phantom needs at least one frame")
        if self.nc < 1:
            raise InvalidSpecError("phantom needs at least one coil")
        if not 0.0 <= self.beat_amplitude < 0.5:
            raise InvalidSpecError(
                f"beat_amplitude must lie in [0, 0.5), got {self.beat_amplitude}"
            )
        if self.noise_sigma < 0.0:
            raise InvalidSpecError("noise_sigma must be nonnegative")


def _ellipse(rows, cols, center, semi):
    cy, cx = center
    ay, ax = semi
    return ((rows - cy) / ay) ** 2 + ((cols - cx) / ax) ** 2 <= 1.0


def generate_phantom(spec: PhantomSpec) -> DynamicImage:
    """Simulate the ground-truth complex image sequence.

    Frame t (0-indexed) uses inner myocardial radius

        r(t) = INNER_RADIUS_FRAC * min(ny, nx) * (1 + a * sin(2 pi t / nf))

    so the cycle is periodic in nf frames.  Magnitudes lie in [0, 0.9];
    the phase ramp exp(i * 0.3 pi * (row + col) / (ny + nx)) has unit
    modulus wherever the scene is nonzero.
    """
    ny, nx, nf = spec.ny, spec.nx, spec.nf
    rows, cols = np.meshgrid(
        np.arange(ny, dtype=np.float64), np.arange(nx, dtype=np.float64),
        indexing="ij",
    )
    mn = float(min(ny, nx))

    scene = np.zeros((nf, ny, nx), dtype=np.float64)
    torso = _ellipse(rows, cols, (0.5 * ny, 0.5 * nx),
                     (TORSO_SEMI[0] * ny, TORSO_SEMI[1] * nx))
    lungs = np.zeros_like(torso)
    for cy, cx in LUNG_CENTERS:
        lungs |= _ellipse(rows, cols, (cy * ny, cx * nx),
                          (LUNG_SEMI[0] * ny, LUNG_SEMI[1] * nx))
    heart_cy, heart_cx = HEART_CENTER[0] * ny, HEART_CENTER[1] * nx
    dist2 = (rows - heart_cy) ** 2 + (cols - heart_cx) ** 2
    outer = OUTER_RADIUS_FRAC * mn

    for t in range(nf):
        inner = INNER_RADIUS_FRAC * mn * (
            1.0 + spec.beat_amplitude * math.sin(2.0 * math.pi * t / nf)
        )
        frame = np.zeros((ny, nx), dtype=np.float64)
        frame[torso] = TORSO_INTENSITY
        frame[lungs & torso] = LUNG_INTENSITY
        frame[dist2 <= outer ** 2] = WALL_INTENSITY
        frame[dist2 <= inner ** 2] = BLOOD_INTENSITY
        scene[t] = frame

    ramp = np.exp(1j * PHASE_RAMP_COEFF * math.pi * (rows + cols) / (ny + nx))
    return DynamicImage(scene * ramp[None, :, :])


def coil_maps(spec: PhantomSpec) -> SensitivityMaps:
    """Gaussian coil profiles on a ring, normalized to unit total power.

    Coil k sits at angle 2 pi k / nc on a circle of radius
    0.55 * min(ny, nx) / 2 around the image center, with profile width
    sigma = 0.5 * min(ny, nx) and a constant per-coil phase
    exp(i 2 pi k / nc).  After pointwise normalization
    sum_k |S_k|^2 == 1 everywhere, exactly.
    """
    ny, nx, nc = spec.ny, spec.nx, spec.nc
    rows, cols = np.meshgrid(
        np.arange(ny, dtype=np.float64), np.arange(nx, dtype=np.float64),
        indexing="ij",
    )
    mn = float(min(ny, nx))
    ring = 0.55 * mn / 2.0
    sigma = 0.5 * mn
    cy, cx = ny / 2.0, nx / 2.0

    maps = np.empty((nc, ny, nx), dtype=np.complex128)
    for k in range(nc):
        phi = 2.0 * math.pi * k / nc
        ck_y = cy + ring * math.cos(phi)
        ck_x = cx + ring * math.sin(phi)
        profile = np.exp(-((rows - ck_y) ** 2 + (cols - ck_x) ** 2) / (2.0 * sigma ** 2))
        maps[k] = profile * np.exp(1j * phi)
    norm = np.sqrt(np.sum(np.abs(maps) ** 2, axis=0))
    maps /= norm[None, :, :]
    support = np.ones((ny, nx), dtype=bool)
    return SensitivityMaps(maps, support=support)


def simulate(
    x: DynamicImage,
    maps: SensitivityMaps,
    mask: SamplingMask,
    noise_sigma: float,
    seed: int,
) -> MultiCoilKSpace:
    """Noisy undersampled acquisition y = mask * (fft2c(S_k x) + n).

    The complex noise std is noise_sigma times the mean modulus of the
    noiseless k-space, drawn by Box-Muller from the pinned generator in
    coil-major, frame-major, row-major order (two uniforms per entry),
    so a seed fixes the realization bitwise.  Masking happens after the
    noise is added, leaving unsampled entries exactly zero.
    """
    if (x.ny, x.nx) != (maps.ny, maps.nx):
        raise DimensionError("image and maps spatial shapes disagree")
    if (x.nf, x.ny, x.nx) != (mask.nf, mask.ny, mask.nx):
        raise DimensionError("image and mask shapes disagree")
    noiseless = MultiCoilKSpace(_coil_kspace(x.data, maps.data))
    return corrupt(noiseless, mask, noise_sigma, seed)


def corrupt(
    k: MultiCoilKSpace,
    mask: SamplingMask,
    noise_sigma: float,
    seed: int,
) -> MultiCoilKSpace:
    """Add calibrated complex noise to full k-space, then mask it.

    Shares the noise convention of `simulate`: the std scales with the
    mean modulus of the clean input, and the mask zeroes unsampled
    entries only after the noise is added.
    """
    if (k.nf, k.ny, k.nx) != (mask.nf, mask.ny, mask.nx):
        raise DimensionError("k-space and mask shapes disagree")
    if noise_sigma < 0.0:
        raise InvalidSpecError("noise_sigma must be nonnegative")
    data = k.data
    if noise_sigma > 0.0:
        std = noise_sigma * float(np.mean(np.abs(data)))
        rng = Rng(seed)
        noise = rng.normal_pairs(data.size, std).reshape(data.shape)
        data = data + noise
    return MultiCoilKSpace(mask.data[None, :, :, :] * data)


def augment(
    y: MultiCoilKSpace,
    hflip: bool = False,
    vflip: bool = False,
    time_reverse: bool = False,
) -> MultiCoilKSpace:
    """Geometric augmentation applied in the image domain, per coil.

    Each coil k-space is inverse transformed, optionally flipped left to
    right (hflip), top to bottom (vflip), and reversed along the frame
    axis, then transformed back.  Every flag is an involution and the
    k-space norm is preserved.  Meant for fully sampled data; applying
    it to masked data spreads energy off the sampled set.
    """
    imgs = _ifft2c_raw(y.data)
    if hflip:
        imgs = imgs[:, :, :, ::-1]
    if vflip:
        imgs = imgs[:, :, ::-1, :]
    if time_reverse:
        imgs = imgs[:, ::-1, :, :]
    return MultiCoilKSpace(_fft2c_raw(np.ascontiguousarray(imgs)))
