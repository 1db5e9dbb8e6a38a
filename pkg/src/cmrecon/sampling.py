"""Cartesian and pseudo-radial sampling mask generation.

All randomness flows through a pinned splitmix64 generator so that a
(scheme, R, acs_fraction, kt_mode, seed, shape) tuple maps to the same
mask on every run and platform.  Columns index k-space readout lines;
a sampled column means every row of that column is measured.

Schemes
-------
equispaced
    Every R-th column starting from a seeded offset, plus the ACS block.
gaussian1d
    A fixed number of distinct columns drawn without replacement with
    probability proportional to a Gaussian centered on the k-space
    center, plus the ACS block.
radial
    Pseudo-radial spokes rasterized onto the Cartesian grid.

With ``kt_mode`` the pattern varies across frames: equispaced offsets
rotate by one column per frame, gaussian columns are redrawn per frame
with ``seed xor t``, and radial spokes rotate by the golden angle.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .core import SamplingMask
from .errors import DegenerateMaskError, InvalidSpecError

__all__ = [
    "Rng",
    "MaskSpec",
    "SCHEMES",
    "GOLDEN_ANGLE_DEG",
    "equispaced_mask",
    "gaussian1d_mask",
    "radial_mask",
    "kt_expand",
    "generate_mask",
    "measured_acceleration",
    "acs_columns",
    "acs_region_mask",
    "rasterize_spokes",
]

_MASK64 = (1 << 64) - 1
_GAMMA = 0x9E3779B97F4A7C15
_MIX1 = 0xBF58476D1CE4B5B9
_MIX2 = 0x94D049BB133111EB

#: Golden-angle increment used by kt radial masks, in degrees.
GOLDEN_ANGLE_DEG = 111.246117975

SCHEMES = ("equispaced", "gaussian1d", "radial")


class Rng:
    """splitmix64 generator with a 53-bit uniform output.

    Each draw advances the state by a fixed odd constant and mixes it:

        state += 0x9E3779B97F4A7C15
        z = state
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4B5B9
        z = (z ^ (z >> 27)) * 0x94D049BB133111EB
        z = z ^ (z >> 31)

    uniform() keeps the top 53 bits, giving doubles in [0, 1).
    """

    def __init__(self, seed: int):
        self.state = int(seed) & _MASK64

    def next_u64(self) -> int:
        self.state = (self.state + _GAMMA) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * _MIX1) & _MASK64
        z = ((z ^ (z >> 27)) * _MIX2) & _MASK64
        return z ^ (z >> 31)

    def uniform(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def uniforms(self, n: int) -> np.ndarray:
        """Vectorized uniform draws, identical to n successive uniform() calls.

        The counter structure of splitmix64 (state_i = state + i * gamma)
        makes the stream computable in one shot without a Python loop.
        """
        if n < 0:
            raise InvalidSpecError("draw count must be nonnegative")
        if n == 0:
            return np.empty(0, dtype=np.float64)
        idx = np.arange(1, n + 1, dtype=np.uint64)
        s = np.uint64(self.state) + idx * np.uint64(_GAMMA)
        z = (s ^ (s >> np.uint64(30))) * np.uint64(_MIX1)
        z = (z ^ (z >> np.uint64(27))) * np.uint64(_MIX2)
        z = z ^ (z >> np.uint64(31))
        self.state = int(s[-1])
        return (z >> np.uint64(11)).astype(np.float64) * 2.0 ** -53

    def normal_pairs(self, n: int, std: float) -> np.ndarray:
        """n complex Gaussian samples via Box-Muller, 2 uniforms each.

        sample = sqrt(-2 ln u1) * (cos 2pi u2 + i sin 2pi u2) * std / sqrt(2)

        u1 is clamped above 1e-300 so the log never overflows.  std is
        the complex standard deviation (E|n|^2 = std^2), so each real
        component has deviation std / sqrt(2).
        """
        us = self.uniforms(2 * n)
        u1 = np.maximum(us[0::2], 1e-300)
        u2 = us[1::2]
        radius = np.sqrt(-2.0 * np.log(u1))
        angle = 2.0 * np.pi * u2
        return radius * (np.cos(angle) + 1j * np.sin(angle)) * (std / math.sqrt(2.0))


def _round_half_up(x: float) -> int:
    """Rounding pinned to floor(x + 0.5), never banker's rounding."""
    return int(math.floor(x + 0.5))


@dataclass(frozen=True)
class MaskSpec:
    """Everything needed to regenerate a sampling mask deterministically."""

    scheme: str
    R: int
    nf: int
    ny: int
    nx: int
    acs_fraction: float = 0.0
    kt_mode: bool = False
    seed: int = 0

    def __post_init__(self):
        if self.scheme not in SCHEMES:
            raise InvalidSpecError(
                f"unknown scheme {self.scheme!r}, expected one of {SCHEMES}"
            )
        if not isinstance(self.R, int) or self.R < 1:
            raise InvalidSpecError(f"acceleration R must be a positive integer, got {self.R}")
        if not 0.0 <= self.acs_fraction < 1.0:
            raise InvalidSpecError(
                f"acs_fraction must lie in [0, 1), got {self.acs_fraction}"
            )
        if self.nf < 1 or self.ny < 2 or self.nx < 2:
            raise InvalidSpecError(
                f"mask shape must satisfy nf >= 1, ny >= 2, nx >= 2, "
                f"got ({self.nf}, {self.ny}, {self.nx})"
            )
        if not 0 <= int(self.seed) < (1 << 64):
            raise InvalidSpecError("seed must fit in an unsigned 64-bit integer")


def acs_columns(spec: MaskSpec) -> tuple[int, ...]:
    """Autocalibration block: round(acs_fraction * nx) centered columns.

    A block of width w covers [nx//2 - ceil(w/2), nx//2 + floor(w/2)).
    """
    w = _round_half_up(spec.acs_fraction * spec.nx)
    if w <= 0:
        return ()
    lo = spec.nx // 2 - (w + 1) // 2
    hi = spec.nx // 2 + w // 2
    return tuple(range(max(lo, 0), min(hi, spec.nx)))


def _columns_to_mask(spec: MaskSpec, per_frame_cols: list[tuple[int, ...]]) -> SamplingMask:
    data = np.zeros((spec.nf, spec.ny, spec.nx), dtype=np.uint8)
    for f, cols in enumerate(per_frame_cols):
        data[f, :, list(cols)] = 1
    return SamplingMask(data, cartesian_columns=tuple(per_frame_cols))


def _equispaced_columns(spec: MaskSpec, offset: int) -> tuple[int, ...]:
    cols = set(range(offset, spec.nx, spec.R))
    cols.update(acs_columns(spec))
    return tuple(sorted(cols))


def equispaced_mask(spec: MaskSpec) -> SamplingMask:
    """Uniformly spaced columns from a seeded offset, same for every frame."""
    _require_static(spec, "equispaced_mask")
    if spec.scheme != "equispaced":
        raise InvalidSpecError(f"equispaced_mask got scheme {spec.scheme!r}")
    if spec.R > spec.nx:
        raise InvalidSpecError(f"R={spec.R} exceeds nx={spec.nx}")
    offset = int(Rng(spec.seed).uniform() * spec.R)
    cols = _equispaced_columns(spec, offset)
    return _columns_to_mask(spec, [cols] * spec.nf)


def _gaussian_columns(spec: MaskSpec, rng: Rng) -> tuple[int, ...]:
    acs = acs_columns(spec)
    target = max(_round_half_up(spec.nx / spec.R), len(acs))
    if _round_half_up(spec.nx / spec.R) < len(acs):
        raise InvalidSpecError(
            f"gaussian1d needs round(nx/R) >= ACS width, got "
            f"{_round_half_up(spec.nx / spec.R)} < {len(acs)}"
        )
    if target < 1:
        raise InvalidSpecError(f"R={spec.R} leaves no columns to draw at nx={spec.nx}")
    sigma = spec.nx / 6.0
    center = spec.nx // 2
    idx = np.arange(spec.nx, dtype=np.float64)
    weights = np.exp(-((idx - center) ** 2) / (2.0 * sigma ** 2))
    chosen = set(acs)
    while len(chosen) < target:
        candidates = [c for c in range(spec.nx) if c not in chosen]
        cum = np.cumsum(weights[candidates])
        x = rng.uniform() * cum[-1]
        pick = min(int(np.searchsorted(cum, x, side="right")), len(candidates) - 1)
        chosen.add(candidates[pick])
    return tuple(sorted(chosen))


def gaussian1d_mask(spec: MaskSpec) -> SamplingMask:
    """Gaussian-weighted column draw without replacement, same per frame.

    Exactly max(round(nx / R), ACS width) distinct columns are sampled:
    the ACS block plus inverse-CDF draws from the remaining columns with
    weight exp(-(c - nx//2)^2 / (2 (nx/6)^2)).
    """
    _require_static(spec, "gaussian1d_mask")
    if spec.scheme != "gaussian1d":
        raise InvalidSpecError(f"gaussian1d_mask got scheme {spec.scheme!r}")
    cols = _gaussian_columns(spec, Rng(spec.seed))
    return _columns_to_mask(spec, [cols] * spec.nf)


def rasterize_spokes(ny: int, nx: int, nspokes: int, theta0: float) -> np.ndarray:
    """Rasterize equally spaced spokes through the k-space center.

    Spoke s has angle theta0 + s * pi / nspokes.  Points are walked in
    half-pixel steps along t in [-L/2, L/2] with L = hypot(ny, nx); each
    point marks its nearest grid entry (ties round up).  The center
    (ny//2, nx//2) is always sampled.  theta = 0 runs along the center
    row, theta = pi/2 along the center column.
    """
    if ny < 4 or nx < 4:
        raise InvalidSpecError("radial rasterization needs ny, nx >= 4")
    if nspokes < 1:
        raise InvalidSpecError("at least one spoke required")
    mask = np.zeros((ny, nx), dtype=np.uint8)
    cy, cx = ny // 2, nx // 2
    length = math.hypot(ny, nx)
    nsteps = int(math.floor(length / 0.5)) + 1
    t = -0.5 * length + 0.5 * np.arange(nsteps, dtype=np.float64)
    for s in range(nspokes):
        theta = theta0 + s * math.pi / nspokes
        rows = np.floor(cy + t * math.sin(theta) + 0.5).astype(np.int64)
        cols = np.floor(cx + t * math.cos(theta) + 0.5).astype(np.int64)
        keep = (rows >= 0) & (rows < ny) & (cols >= 0) & (cols < nx)
        mask[rows[keep], cols[keep]] = 1
    mask[cy, cx] = 1
    return mask


def _radial_nspokes(spec: MaskSpec) -> int:
    return max(1, _round_half_up(spec.nx / spec.R))

def radial_mask(spec: MaskSpec) -> SamplingMask:
    """Pseudo-radial mask with max(1, round(nx / R)) spokes per frame.

    The base angle is drawn uniformly from [0, pi) using the seed; every
    frame shares the same spokes when kt_mode is off.
    """
    _require_static(spec, "radial_mask")
    if spec.scheme != "radial":
        raise InvalidSpecError(f"radial_mask got scheme {spec.scheme!r}")
    theta0 = Rng(spec.seed).uniform() * math.pi
    frame = rasterize_spokes(spec.ny, spec.nx, _radial_nspokes(spec), theta0)
    data = np.broadcast_to(frame, (spec.nf, spec.ny, spec.nx)).copy()
    return SamplingMask(data)


def _require_static(spec: MaskSpec, name: str):
    if spec.kt_mode:
        raise InvalidSpecError(
            f"{name} generates frame-constant masks; use kt_expand for kt_mode"
        )


def kt_expand(spec: MaskSpec) -> SamplingMask:
    """Frame-varying (kt) version of each scheme.

    equispaced : frame t uses offset (base_offset + t) mod R
    gaussian1d : frame t redrawn with seed xor t, ACS block kept
    radial     : frame t rotates the base angle by t * 111.246117975 deg
    """
    if not spec.kt_mode:
        raise InvalidSpecError("kt_expand requires kt_mode=True")
    if spec.scheme == "equispaced":
        if spec.R > spec.nx:
            raise InvalidSpecError(f"R={spec.R} exceeds nx={spec.nx}")
        base = int(Rng(spec.seed).uniform() * spec.R)
        per_frame = [
            _equispaced_columns(spec, (base + t) % spec.R) for t in range(spec.nf)
        ]
        return _columns_to_mask(spec, per_frame)
    if spec.scheme == "gaussian1d":
        per_frame = [
            _gaussian_columns(spec, Rng(spec.seed ^ t)) for t in range(spec.nf)
        ]
        return _columns_to_mask(spec, per_frame)
    if spec.scheme == "radial":
        theta0 = Rng(spec.seed).uniform() * math.pi
        step = math.radians(GOLDEN_ANGLE_DEG)
        nspokes = _radial_nspokes(spec)
        data = np.zeros((spec.nf, spec.ny, spec.nx), dtype=np.uint8)
        for t in range(spec.nf):
            data[t] = rasterize_spokes(spec.ny, spec.nx, nspokes, theta0 + t * step)
        return SamplingMask(data)
    raise InvalidSpecError(f"unknown scheme {spec.scheme!r}")


def generate_mask(spec: MaskSpec) -> SamplingMask:
    """Dispatch on scheme and kt_mode."""
    if spec.kt_mode:
        return kt_expand(spec)
    if spec.scheme == "equispaced":
        return equispaced_mask(spec)
    if spec.scheme == "gaussian1d":
        return gaussian1d_mask(spec)
    return radial_mask(spec)


def acs_region_mask(spec: MaskSpec) -> SamplingMask:
    """Mask covering only the declared ACS/center block, every frame.

    Calibration reads its autocalibration region from this mask, for
    radial specs as well (the declared center block, whether or not the
    sampling scheme guarantees those columns).
    """
    cols = acs_columns(spec)
    if not cols:
        raise InvalidSpecError("acs_fraction yields an empty ACS block")
    return _columns_to_mask(spec, [cols] * spec.nf)


def measured_acceleration(mask: SamplingMask) -> float:
    """Total entry count divided by sampled entry count."""
    sampled = int(np.count_nonzero(mask.data))
    if sampled == 0:
        raise DegenerateMaskError("mask samples nothing")
    return mask.data.size / sampled
