"""Sensitivity map estimation from the autocalibration region.

Maps come from the frame-averaged k-space restricted to the declared
ACS/center block: the block is apodized with a Hann taper across its
columns, inverse transformed to low-resolution coil images, and divided
by their root-sum-of-squares.  Everything is relative to the data scale,
so scaling the input k-space leaves the map magnitudes untouched.
"""

from __future__ import annotations

import numpy as np

from .core import (
    MultiCoilKSpace,
    SamplingMask,
    SensitivityMaps,
    SUPPORT_REL_THRESHOLD,
)
from .errors import CalibrationError, DimensionError
from .fourier import _ifft2c_raw

__all__ = ["estimate_sensitivities"]


def estimate_sensitivities(
    y: MultiCoilKSpace, acs_mask: SamplingMask, eps: float = 1e-9
) -> SensitivityMaps:
    """Estimate normalized coil maps from the ACS region of y.

    Parameters
    ----------
    y : MultiCoilKSpace
        Measured k-space; only entries inside the ACS region are used.
    acs_mask : SamplingMask
        Declares the autocalibration region (frame 0 is used; the
        region is shared by all frames).
    eps : float
        Regularization relative to the peak coil-combined magnitude,
        keeping the division finite where the scene is empty.

    Returns
    -------
    SensitivityMaps
        Maps with sum_k |S_k|^2 == 1 exactly on the support set (pixels
        above SUPPORT_REL_THRESHOLD of the peak) and < 1 elsewhere.

    Notes
    -----
    Steps: average y over frames, zero outside the ACS region, taper the
    ACS columns with a Hann window, inverse transform each coil, then
    normalize by the root-sum-of-squares with relative damping eps.
    """
    if (y.ny, y.nx) != (acs_mask.ny, acs_mask.nx):
        raise DimensionError("k-space and ACS mask spatial shapes disagree")
    region = acs_mask.data[0] != 0
    if not region.any():
        raise CalibrationError("ACS region is empty")

    avg = np.mean(y.data, axis=1)
    avg = avg * region[None, :, :]

    cols = np.flatnonzero(region.any(axis=0))
    taper = np.zeros(y.nx, dtype=np.float64)
    # Hann weights that stay nonzero at the block edges, so no ACS
    # column is silently discarded.
    w = cols.size
    taper[cols] = np.hanning(w + 2)[1:-1]
    avg = avg * taper[None, None, :]

    low_res = _ifft2c_raw(avg)
    rss = np.sqrt(np.sum(np.abs(low_res) ** 2, axis=0))
    peak = float(rss.max())
    if peak == 0.0:
        raise CalibrationError("ACS region contains no signal")

    maps = low_res / (rss + eps * peak)[None, :, :]
    support = rss > SUPPORT_REL_THRESHOLD * peak
    norm = np.sqrt(np.sum(np.abs(maps) ** 2, axis=0))
    maps[:, support] /= norm[support]
    return SensitivityMaps(maps, support=support)
