"""Image quality metrics and the composite training objective.

SSIM uses a 7x7 uniform window (3x7x7 for volumes), k1 = 0.01,
k2 = 0.03, and the reference dynamic range max(ref) - min(ref); window
moments are plain window means and only fully covered window positions
contribute.  PSNR peaks at the reference maximum modulus and returns
+inf for an exact match.  NMSE is squared-error over squared reference
norm.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.ndimage import uniform_filter

from .core import DynamicImage, MultiCoilKSpace
from .errors import DimensionError, MetricError
from .vsharp import SolveTrace

__all__ = [
    "ssim",
    "ssim3d",
    "psnr",
    "nmse",
    "ReconReport",
    "evaluate_volume",
    "VSharpLossRecord",
    "vsharp_loss",
    "iterate_weights",
]

SSIM_K1 = 0.01
SSIM_K2 = 0.03
SSIM_WINDOW = 7
SSIM3D_FRAME_WINDOW = 3


def _as_real_2d(arr, name):
    out = np.asarray(arr, dtype=np.float64)
    if out.ndim != 2:
        raise DimensionError(f"{name} must be a real 2D array")
    return out


def _as_real_3d(arr, name):
    out = np.asarray(arr, dtype=np.float64)
    if out.ndim != 3:
        raise DimensionError(f"{name} must be a real (frame, row, column) array")
    return out


def _ssim_map(pred, ref, window, crop):
    rng = float(ref.max() - ref.min())
    if rng == 0.0:
        raise MetricError("reference image has zero dynamic range")
    c1 = (SSIM_K1 * rng) ** 2
    c2 = (SSIM_K2 * rng) ** 2
    mu_p = uniform_filter(pred, size=window)[crop]
    mu_r = uniform_filter(ref, size=window)[crop]
    e_pp = uniform_filter(pred * pred, size=window)[crop]
    e_rr = uniform_filter(ref * ref, size=window)[crop]
    e_pr = uniform_filter(pred * ref, size=window)[crop]
    var_p = e_pp - mu_p * mu_p
    var_r = e_rr - mu_r * mu_r
    cov = e_pr - mu_p * mu_r
    num = (2.0 * mu_p * mu_r + c1) * (2.0 * cov + c2)
    den = (mu_p * mu_p + mu_r * mu_r + c1) * (var_p + var_r + c2)
    return num / den


def ssim(pred, ref) -> float:
    """Mean structural similarity over all fully covered 7x7 windows."""
    pred = _as_real_2d(pred, "pred")
    ref = _as_real_2d(ref, "ref")
    if pred.shape != ref.shape:
        raise DimensionError(f"shape mismatch {pred.shape} vs {ref.shape}")
    ny, nx = ref.shape
    if ny < SSIM_WINDOW or nx < SSIM_WINDOW:
        raise DimensionError(f"image {ref.shape} smaller than the {SSIM_WINDOW}x{SSIM_WINDOW} window")
    half = SSIM_WINDOW // 2
    crop = (slice(half, ny - half), slice(half, nx - half))
    return float(np.mean(_ssim_map(pred, ref, SSIM_WINDOW, crop)))


def ssim3d(pred, ref) -> float:
    """Volume SSIM with a 3x7x7 window over (frame, row, column)."""
    pred = _as_real_3d(pred, "pred")
    ref = _as_real_3d(ref, "ref")
    if pred.shape != ref.shape:
        raise DimensionError(f"shape mismatch {pred.shape} vs {ref.shape}")
    nf, ny, nx = ref.shape
    if nf < SSIM3D_FRAME_WINDOW or ny < SSIM_WINDOW or nx < SSIM_WINDOW:
        raise DimensionError(
            f"volume {ref.shape} smaller than the "
            f"{SSIM3D_FRAME_WINDOW}x{SSIM_WINDOW}x{SSIM_WINDOW} window"
        )
    half_f = SSIM3D_FRAME_WINDOW // 2
    half = SSIM_WINDOW // 2
    crop = (
        slice(half_f, nf - half_f),
        slice(half, ny - half),
        slice(half, nx - half),
    )
    window = (SSIM3D_FRAME_WINDOW, SSIM_WINDOW, SSIM_WINDOW)
    return float(np.mean(_ssim_map(pred, ref, window, crop)))


def psnr(pred, ref) -> float:
    """Peak signal-to-noise ratio in dB; +inf for an exact match."""
    pred = np.asarray(pred, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if pred.shape != ref.shape:
        raise DimensionError(f"shape mismatch {pred.shape} vs {ref.shape}")
    peak = float(np.max(np.abs(ref)))
    if peak == 0.0:
        raise MetricError("PSNR is undefined for an all-zero reference")
    mse = float(np.mean(np.abs(pred - ref) ** 2))
    if mse == 0.0:
        return math.inf
    return 20.0 * math.log10(peak / math.sqrt(mse))


def nmse(pred, ref) -> float:
    """Normalized mean squared error ||pred - ref||^2 / ||ref||^2."""
    pred = np.asarray(pred, dtype=np.float64)
    ref = np.asarray(ref, dtype=np.float64)
    if pred.shape != ref.shape:
        raise DimensionError(f"shape mismatch {pred.shape} vs {ref.shape}")
    denom = float(np.sum(np.abs(ref) ** 2))
    if denom == 0.0:
        raise MetricError("NMSE is undefined for a zero reference")
    return float(np.sum(np.abs(pred - ref) ** 2)) / denom


@dataclass(frozen=True)
class ReconReport:
    """One benchmark row: identifiers plus the volume metrics."""

    method: str
    volume: str
    acceleration: float
    scheme: str
    ssim: float
    ssim3d: float
    psnr: float
    nmse: float
    wall_seconds: float


def evaluate_volume(
    pred: DynamicImage,
    ref: DynamicImage,
    method: str = "",
    volume: str = "",
    acceleration: float = 0.0,
    scheme: str = "",
    wall_seconds: float = 0.0,
) -> ReconReport:
    """Score a reconstruction against its reference on magnitudes.

    The SSIM column averages per-frame 2D values; SSIM3D runs on the
    whole volume (NaN when fewer than 3 frames); PSNR and NMSE pool the
    volume.  Wall time is whatever the caller measured.
    """
    if pred.data.shape != ref.data.shape:
        raise DimensionError("prediction and reference shapes disagree")
    mp = pred.magnitude
    mr = ref.magnitude
    frame_ssim = float(np.mean([ssim(mp[t], mr[t]) for t in range(pred.nf)]))
    vol_ssim = ssim3d(mp, mr) if pred.nf >= SSIM3D_FRAME_WINDOW else math.nan
    return ReconReport(
        method=method,
        volume=volume,
        acceleration=float(acceleration),
        scheme=scheme,
        ssim=frame_ssim,
        ssim3d=vol_ssim,
        psnr=psnr(mp, mr),
        nmse=nmse(mp, mr),
        wall_seconds=float(wall_seconds),
    )


def iterate_weights(n: int) -> tuple[float, ...]:
    """Per-iterate loss weights 10^((j - n) / (n - 1)), j = 1..n.

    The last iterate gets weight 1 and the first 0.1; a single-iterate
    solve takes the limit weight 1.
    """
    if n < 1:
        raise DimensionError("weight count must be positive")
    if n == 1:
        return (1.0,)
    return tuple(10.0 ** ((j - n) / (n - 1)) for j in range(1, n + 1))


@dataclass(frozen=True)
class VSharpLossRecord:
    """Total training objective plus every component for inspection.

    Image terms compare magnitudes per frame (SSIM distance and L1),
    k-space terms are L1 distances normalized by the reference k-space
    L1 norm, and volume terms are SSIM3D distances (skipped for fewer
    than 3 frames).  iterate_* tuples hold the unweighted group values
    per iterate, ordered oldest first.
    """

    total: float
    weights: tuple[float, ...]
    init_ssim: float
    init_l1: float
    init_kspace: float
    init_ssim3d: float
    iterate_ssim: tuple[float, ...]
    iterate_l1: tuple[float, ...]
    iterate_kspace: tuple[float, ...]
    iterate_ssim3d: tuple[float, ...]


def _image_group(mag: np.ndarray, ref_mag: np.ndarray) -> tuple[float, float, float]:
    terms_ssim = sum(1.0 - ssim(mag[t], ref_mag[t]) for t in range(mag.shape[0]))
    terms_l1 = float(np.sum(np.abs(mag - ref_mag)))
    if mag.shape[0] >= SSIM3D_FRAME_WINDOW:
        term_3d = 1.0 - ssim3d(mag, ref_mag)
    else:
        term_3d = 0.0
    return float(terms_ssim), terms_l1, term_3d


def vsharp_loss(
    trace: SolveTrace,
    refined: MultiCoilKSpace,
    x_star: DynamicImage,
    y_star: MultiCoilKSpace,
    n: int | None = None,
) -> VSharpLossRecord:
    """Dual-domain objective over the initializer and every iterate.

    The initializer group compares (z0, refined k-space) against the
    references; each iterate group compares (x_hat_j, y_hat_j) and is
    weighted by :func:`iterate_weights`, so the first iterate counts a
    tenth of the final one.  A perfect trace scores 0 in every
    component.

    Parameters
    ----------
    n : int, optional
        Expected iterate count.  When given it must equal the number of
        iterates stored in the trace.
    """
    if n is not None and n != len(trace.iterates):
        raise DimensionError(
            "trace holds %d iterates, expected %d" % (len(trace.iterates), n)
        )
    if x_star.data.shape != trace.z0.data.shape:
        raise DimensionError("reference image and trace shapes disagree")
    if y_star.data.shape != refined.data.shape:
        raise DimensionError("reference k-space and refined k-space shapes disagree")
    ref_mag = x_star.magnitude
    y_ref = y_star.data
    y_norm = float(np.sum(np.abs(y_ref)))
    if y_norm == 0.0:
        raise MetricError("reference k-space has zero L1 norm")

    init_ssim, init_l1, init_3d = _image_group(trace.z0.magnitude, ref_mag)
    init_kspace = float(np.sum(np.abs(refined.data - y_ref))) / y_norm
    total = init_ssim + init_l1 + init_3d + init_kspace

    count = len(trace.iterates)
    weights = iterate_weights(count)
    it_ssim, it_l1, it_k, it_3d = [], [], [], []
    for (x_hat, y_hat), w in zip(trace.iterates, weights):
        g_ssim, g_l1, g_3d = _image_group(x_hat.magnitude, ref_mag)
        g_k = float(np.sum(np.abs(y_hat.data - y_ref))) / y_norm
        it_ssim.append(g_ssim)
        it_l1.append(g_l1)
        it_k.append(g_k)
        it_3d.append(g_3d)
        total += w * (g_ssim + g_l1 + g_k + g_3d)

    return VSharpLossRecord(
        total=float(total),
        weights=weights,
        init_ssim=init_ssim,
        init_l1=init_l1,
        init_kspace=init_kspace,
        init_ssim3d=init_3d,
        iterate_ssim=tuple(it_ssim),
        iterate_l1=tuple(it_l1),
        iterate_kspace=tuple(it_k),
        iterate_ssim3d=tuple(it_3d),
    )
