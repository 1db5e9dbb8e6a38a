"""Reference reconstructions: zero-filled adjoint and iterative SENSE.

Both run on the same acquisition operator as the unrolled solver so
comparisons isolate the algorithm, not the model.
"""

from __future__ import annotations

import numpy as np

from .core import DynamicImage, MultiCoilKSpace, inner_product
from .errors import InvalidSpecError, NumericError
from .fourier import AcquisitionOperator, _adjoint, _check_y_off_mask, _forward

__all__ = ["zero_filled", "cg_sense"]


def zero_filled(y: MultiCoilKSpace, op: AcquisitionOperator) -> DynamicImage:
    """Adjoint image of the measured data."""
    _check_y_off_mask(y, op)
    return DynamicImage(_adjoint(y.data, op.maps.data, op.mask.data))


def cg_sense(
    y: MultiCoilKSpace,
    op: AcquisitionOperator,
    mu: float = 1e-2,
    iterations: int = 15,
    tol: float = 1e-6,
    return_residuals: bool = False,
):
    """Conjugate-gradient SENSE with Tikhonov damping.

    Solves (A^H A + mu I) x = A^H y from x = 0, stopping after
    ``iterations`` steps or when the residual norm falls below
    ``tol`` times its initial value.

    Parameters
    ----------
    mu : float
        Damping weight; must be nonnegative.  With mu = 0 the system is
        positive semidefinite and indefiniteness surfaces through the
        curvature check.
    return_residuals : bool
        Also return the recorded residual norms (initial value first).
    """
    if mu < 0.0:
        raise InvalidSpecError(f"mu must be nonnegative, got {mu}")
    if iterations < 1:
        raise InvalidSpecError("iterations must be at least 1")
    if tol < 0.0:
        raise InvalidSpecError("tol must be nonnegative")
    _check_y_off_mask(y, op)

    maps, mask = op.maps.data, op.mask.data

    def normal_op(v: np.ndarray) -> np.ndarray:
        return _adjoint(_forward(v, maps, mask), maps, mask) + mu * v

    b = _adjoint(y.data, maps, mask)
    x = np.zeros_like(b)
    r = b.copy()
    p = r.copy()
    rs = inner_product(r, r).real
    norms = [float(np.sqrt(rs))]
    if norms[0] == 0.0:
        img = DynamicImage(x)
        return (img, tuple(norms)) if return_residuals else img
    threshold = tol * norms[0]
    for _ in range(iterations):
        ap = normal_op(p)
        curvature = inner_product(p, ap).real
        if curvature <= 0.0 or not np.isfinite(curvature):
            raise NumericError("conjugate gradient lost definiteness")
        alpha = rs / curvature
        x = x + alpha * p
        r = r - alpha * ap
        rs_new = inner_product(r, r).real
        norms.append(float(np.sqrt(rs_new)))
        if norms[-1] <= threshold:
            break
        p = r + (rs_new / rs) * p
        rs = rs_new
    if not np.all(np.isfinite(x)):
        raise NumericError("conjugate gradient produced non-finite values")
    img = DynamicImage(x)
    return (img, tuple(norms)) if return_residuals else img
