"""Centered orthonormal FFTs and the multi-coil acquisition operator.

The transforms place the zero-frequency bin at (ny // 2, nx // 2) and are
unitary, so ifft2c(fft2c(x)) == x up to float rounding and Parseval holds.
The acquisition model is

    forward(x)[k, f] = mask[f] * fft2c(S_k * x[f])
    adjoint(y)[f]    = sum_k conj(S_k) * ifft2c(mask[f] * y[k, f])

which form an exact adjoint pair, with operator norm at most 1 when the
maps are normalized (sum_k |S_k|^2 <= 1).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DynamicImage, MultiCoilKSpace, SamplingMask, SensitivityMaps
from .errors import DimensionError, NumericError

__all__ = [
    "fft2c",
    "ifft2c",
    "AcquisitionOperator",
    "forward",
    "adjoint",
    "dc",
    "project_iterate",
    "coil_kspace",
    "coil_combine",
    "sampled_entries_match",
]


def _check_finite(arr: np.ndarray, name: str):
    if not np.all(np.isfinite(arr)):
        raise NumericError(f"{name} received non-finite input")


def fft2c(arr: np.ndarray) -> np.ndarray:
    """Centered orthonormal 2D FFT over the last two axes."""
    arr = np.asarray(arr)
    if arr.ndim < 2:
        raise DimensionError("fft2c needs at least two axes")
    _check_finite(arr, "fft2c")
    return _fft2c_raw(arr)


def ifft2c(arr: np.ndarray) -> np.ndarray:
    """Centered orthonormal 2D inverse FFT over the last two axes."""
    arr = np.asarray(arr)
    if arr.ndim < 2:
        raise DimensionError("ifft2c needs at least two axes")
    _check_finite(arr, "ifft2c")
    return _ifft2c_raw(arr)


def _fft2c_raw(arr: np.ndarray) -> np.ndarray:
    axes = (-2, -1)
    shifted = np.fft.ifftshift(arr, axes=axes)
    k = np.fft.fft2(shifted, axes=axes, norm="ortho")
    return np.fft.fftshift(k, axes=axes)


def _ifft2c_raw(arr: np.ndarray) -> np.ndarray:
    axes = (-2, -1)
    shifted = np.fft.ifftshift(arr, axes=axes)
    img = np.fft.ifft2(shifted, axes=axes, norm="ortho")
    return np.fft.fftshift(img, axes=axes)


@dataclass(frozen=True)
class AcquisitionOperator:
    """Pairs sensitivity maps with a sampling mask for one acquisition."""

    maps: SensitivityMaps
    mask: SamplingMask

    def __post_init__(self):
        if (self.maps.ny, self.maps.nx) != (self.mask.ny, self.mask.nx):
            raise DimensionError(
                f"maps {self.maps.data.shape[1:]} and mask "
                f"{self.mask.data.shape[1:]} spatial shapes disagree"
            )

    @property
    def nc(self) -> int:
        return self.maps.nc

    @property
    def nf(self) -> int:
        return self.mask.nf

    @property
    def ny(self) -> int:
        return self.mask.ny

    @property
    def nx(self) -> int:
        return self.mask.nx


def _check_image(x: DynamicImage, op: AcquisitionOperator):
    if (x.nf, x.ny, x.nx) != (op.nf, op.ny, op.nx):
        raise DimensionError(
            f"image shape {x.data.shape} does not match operator "
            f"({op.nf}, {op.ny}, {op.nx})"
        )


def _check_kspace(y: MultiCoilKSpace, op: AcquisitionOperator):
    if (y.nc, y.nf, y.ny, y.nx) != (op.nc, op.nf, op.ny, op.nx):
        raise DimensionError(
            f"k-space shape {y.data.shape} does not match operator "
            f"({op.nc}, {op.nf}, {op.ny}, {op.nx})"
        )


# Array-level kernels.  The solvers run on bare arrays and wrap only the
# per-iteration outputs; the public functions below validate and wrap.

def _forward(x: np.ndarray, maps: np.ndarray, mask: np.ndarray) -> np.ndarray:
    coil_imgs = maps[:, None, :, :] * x[None, :, :, :]
    return mask[None, :, :, :] * _fft2c_raw(coil_imgs)


def _adjoint(y: np.ndarray, maps: np.ndarray, mask: np.ndarray) -> np.ndarray:
    imgs = _ifft2c_raw(mask[None, :, :, :] * y)
    return np.sum(np.conj(maps)[:, None, :, :] * imgs, axis=0)


def _coil_kspace(x: np.ndarray, maps: np.ndarray) -> np.ndarray:
    return _fft2c_raw(maps[:, None, :, :] * x[None, :, :, :])


def _coil_combine(k: np.ndarray, maps: np.ndarray) -> np.ndarray:
    return np.sum(np.conj(maps)[:, None, :, :] * _ifft2c_raw(k), axis=0)


def _dc(w: np.ndarray, y: np.ndarray, mask: np.ndarray) -> np.ndarray:
    return np.where(mask[None, :, :, :] != 0, y, w)


def _check_y_off_mask(y: MultiCoilKSpace, op: AcquisitionOperator):
    """Entry-point check that measured data is zero off the sampled set."""
    _check_kspace(y, op)
    off = np.broadcast_to(op.mask.data[None, :, :, :] == 0, y.data.shape)
    if np.any(y.data[off] != 0):
        raise NumericError("measured k-space must be zero off the sampled set")


def forward(x: DynamicImage, op: AcquisitionOperator) -> MultiCoilKSpace:
    """Apply the acquisition model; unsampled entries are exactly zero."""
    _check_image(x, op)
    out = _forward(x.data, op.maps.data, op.mask.data)
    return MultiCoilKSpace(out)


def adjoint(y: MultiCoilKSpace, op: AcquisitionOperator) -> DynamicImage:
    """Apply the exact adjoint of :func:`forward`."""
    _check_kspace(y, op)
    out = _adjoint(y.data, op.maps.data, op.mask.data)
    return DynamicImage(out)


def coil_kspace(x: DynamicImage, maps: SensitivityMaps) -> MultiCoilKSpace:
    """Fully sampled coil k-space fft2c(S_k * x), no mask applied."""
    if (x.ny, x.nx) != (maps.ny, maps.nx):
        raise DimensionError("image and maps spatial shapes disagree")
    return MultiCoilKSpace(_coil_kspace(x.data, maps.data))


def coil_combine(k: MultiCoilKSpace, maps: SensitivityMaps) -> DynamicImage:
    """Coil-combined image sum_k conj(S_k) * ifft2c(k_k), no mask applied."""
    if (k.ny, k.nx) != (maps.ny, maps.nx) or k.nc != maps.nc:
        raise DimensionError("k-space and maps shapes disagree")
    return DynamicImage(_coil_combine(k.data, maps.data))


def dc(w: MultiCoilKSpace, y: MultiCoilKSpace, mask: SamplingMask) -> MultiCoilKSpace:
    """Hard data consistency: measured entries win, others pass through.

    Output equals y bitwise wherever mask is 1 and w elsewhere.  The
    caller guarantees y is zero off the mask.
    """
    if w.data.shape != y.data.shape:
        raise DimensionError("dc operands must share a shape")
    if w.data.shape[1:] != mask.data.shape:
        raise DimensionError("dc mask shape mismatch")
    return MultiCoilKSpace(_dc(w.data, y.data, mask.data))


def sampled_entries_match(a: np.ndarray, b: np.ndarray, mask: np.ndarray) -> bool:
    """True when a and b agree bitwise on every sampled k-space entry.

    The comparison views the complex payload as raw 64-bit words, so it
    distinguishes -0.0 from 0.0 and never treats NaN as unequal noise;
    it is the check hard data consistency must pass, not a tolerance.
    """
    if a.shape != b.shape or a.shape[1:] != mask.shape:
        raise DimensionError("sampled_entries_match shape mismatch")
    sel = np.broadcast_to(mask[None, :, :, :] != 0, a.shape)
    wa = np.ascontiguousarray(a[sel]).view(np.uint64)
    wb = np.ascontiguousarray(b[sel]).view(np.uint64)
    return bool(np.array_equal(wa, wb))


def project_iterate(
    x: DynamicImage, y: MultiCoilKSpace, op: AcquisitionOperator
) -> tuple[DynamicImage, MultiCoilKSpace]:
    """Push an image iterate through hard data consistency.

    The unmasked coil k-space of x has its sampled entries replaced by
    the measured data, then is coil-combined back to an image:

        y_hat = dc(fft2c(S_k * x), y)
        x_hat = sum_k conj(S_k) * ifft2c(y_hat_k)

    With an all-ones mask x_hat reduces to the adjoint image of y; with
    an all-zeros mask and unit-norm maps it returns x unchanged.
    """
    _check_image(x, op)
    _check_kspace(y, op)
    w = _coil_kspace(x.data, op.maps.data)
    y_hat = _dc(w, y.data, op.mask.data)
    x_hat = _coil_combine(y_hat, op.maps.data)
    return DynamicImage(x_hat), MultiCoilKSpace(y_hat)
