"""Auxiliary k-space refinement used to seed the unrolled solver.

A short cascade sharpens the measured k-space before the main solve.
Each cascade applies a data-fidelity step on the sampled entries and a
regularization residual computed in the image domain:

    k <- k - eta * U * (k - y) + expand(prox(reduce(k)) - reduce(k))

where reduce is the coil combine sum_k conj(S_k) ifft2c(.), expand is
fft2c(S_k * .), and prox is any prior from :mod:`cmrecon.priors`.  A
final hard data-consistency pass makes the refined k-space agree with
the measurements bitwise on the sampled set.  The refined output seeds
the splitting variable via :func:`init_z0`.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DynamicImage, MultiCoilKSpace
from .errors import InvalidSpecError, NumericError
from .fourier import (
    AcquisitionOperator,
    _check_y_off_mask,
    _coil_combine,
    _coil_kspace,
    _dc,
)
from .priors import DenoiserSpec, _denoise_arr

__all__ = ["ArnConfig", "cascade_step", "refine", "init_z0"]


@dataclass(frozen=True)
class ArnConfig:
    """Cascade count, data-term step, and the image-domain regularizer."""

    cascades: int = 8
    eta: float = 1.0
    regularizer: DenoiserSpec = DenoiserSpec()
    final_dc: bool = True

    def __post_init__(self):
        if self.cascades < 1:
            raise InvalidSpecError("cascades must be at least 1")
        if not 0.0 < self.eta <= 2.0:
            raise InvalidSpecError(f"eta must lie in (0, 2], got {self.eta}")
        if not self.final_dc:
            # The closing consistency pass is part of the contract: the
            # refined k-space must match the measurements on the mask.
            raise InvalidSpecError("final_dc cannot be disabled")


def _cascade_arr(
    k: np.ndarray,
    y: np.ndarray,
    maps: np.ndarray,
    mask: np.ndarray,
    cfg: ArnConfig,
) -> np.ndarray:
    m = _coil_combine(k, maps)
    zero = np.zeros_like(m)
    residual = _denoise_arr(m, m, zero, 1.0, cfg.regularizer) - m
    out = k - cfg.eta * mask[None, :, :, :] * (k - y) + _coil_kspace(residual, maps)
    if not np.all(np.isfinite(out)):
        raise NumericError("refinement cascade produced non-finite values")
    return out


def cascade_step(
    k: MultiCoilKSpace,
    y: MultiCoilKSpace,
    op: AcquisitionOperator,
    cfg: ArnConfig,
) -> MultiCoilKSpace:
    """One refinement cascade.

    With the identity regularizer and eta = 1 the sampled entries of
    the output equal y exactly and the rest of k passes through.
    """
    if k.data.shape != y.data.shape:
        raise InvalidSpecError("cascade operands must share a shape")
    return MultiCoilKSpace(
        _cascade_arr(k.data, y.data, op.maps.data, op.mask.data, cfg)
    )


def refine(
    y: MultiCoilKSpace, op: AcquisitionOperator, cfg: ArnConfig
) -> MultiCoilKSpace:
    """Run the full cascade from k = y and close with data consistency.

    The result equals y bitwise on the sampled set.  With the identity
    regularizer and eta = 1 the whole refinement collapses to y for any
    cascade count.
    """
    _check_y_off_mask(y, op)
    k = y.data
    for _ in range(cfg.cascades):
        k = _cascade_arr(k, y.data, op.maps.data, op.mask.data, cfg)
    return MultiCoilKSpace(_dc(k, y.data, op.mask.data))


def init_z0(r: MultiCoilKSpace, op: AcquisitionOperator) -> DynamicImage:
    """Seed image: coil combine of the refined k-space, no mask reapplied.

    The refined data carries synthesized energy off the sampled set;
    masking it away would discard exactly what the refinement added.
    """
    if (r.nc, r.ny, r.nx) != (op.nc, op.ny, op.nx):
        raise InvalidSpecError("refined k-space shape does not match the operator")
    return DynamicImage(_coil_combine(r.data, op.maps.data))
