"""Unrolled ADMM solver with half-quadratic variable splitting.

The reconstruction problem

    min_x  (1/2) ||A x - y||^2 + G(x)

is split as min_{x,z} (1/2)||A x - y||^2 + G(z) s.t. x = z and solved by
a fixed number N of scaled-form ADMM iterations:

    z <- prox_{G/rho}(x + u / rho)              (denoiser step)
    x <- Nx gradient steps on
         (1/2)||A x - y||^2 + (rho/2)||x - z + u/rho||^2
    u <- u + rho (x - z)

After each iteration the image prediction is pushed through hard data
consistency (sampled k-space entries replaced by the measured values)
unless per_iterate_dc is disabled.  With normalized maps the acquisition
operator has norm at most 1, so step size 1/(1 + rho) keeps every
gradient step a descent step on the x-subproblem.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import DynamicImage, MultiCoilKSpace
from .errors import DimensionError, DivergenceError, InvalidSpecError
from .fourier import (
    AcquisitionOperator,
    _adjoint,
    _check_y_off_mask,
    _coil_combine,
    _coil_kspace,
    _dc,
    _forward,
)
from .priors import DenoiserSpec, _denoise_arr

__all__ = ["VSharpConfig", "SolveTrace", "initialize", "x_update", "u_update", "reconstruct"]

U_INIT_MODES = ("zero", "scaled_adjoint")

#: Multiplier scale used by the "scaled_adjoint" initialization.
U_INIT_SCALE = 1e-3


@dataclass(frozen=True)
class VSharpConfig:
    """Solver shape: iteration counts, penalty, step size, prior."""

    iterations: int = 12
    x_steps: int = 6
    rho: float = 1.0
    step_size: float | str = "auto"
    denoiser: DenoiserSpec = DenoiserSpec()
    per_iterate_dc: bool = True
    u_init: str = "zero"

    def __post_init__(self):
        if self.iterations < 1:
            raise InvalidSpecError("iterations must be at least 1")
        if self.x_steps < 1:
            raise InvalidSpecError("x_steps must be at least 1")
        if self.rho <= 0.0:
            raise InvalidSpecError(f"rho must be positive, got {self.rho}")
        if isinstance(self.step_size, str):
            if self.step_size != "auto":
                raise InvalidSpecError("step_size must be positive or 'auto'")
        elif self.step_size <= 0.0:
            raise InvalidSpecError(f"step_size must be positive, got {self.step_size}")
        if self.u_init not in U_INIT_MODES:
            raise InvalidSpecError(f"u_init must be one of {U_INIT_MODES}")

    @property
    def resolved_step_size(self) -> float:
        """1 / (1 + rho) under 'auto', else the explicit value."""
        if self.step_size == "auto":
            return 1.0 / (1.0 + self.rho)
        return float(self.step_size)


@dataclass(frozen=True)
class SolveTrace:
    """Everything the unrolled solve produced, oldest iterate first.

    iterates holds one (x_hat, y_hat) pair per outer iteration; z0 is
    the image the splitting variable started from; residual_history has
    the data-fidelity norm ||forward(x_hat) - y|| per iteration.
    """

    z0: DynamicImage
    iterates: tuple[tuple[DynamicImage, MultiCoilKSpace], ...]
    residual_history: tuple[float, ...]

    def __post_init__(self):
        if len(self.iterates) != len(self.residual_history):
            raise DimensionError("one residual per recorded iterate required")
        if len(self.iterates) < 1:
            raise DimensionError("a trace needs at least one iterate")

    @property
    def final_image(self) -> DynamicImage:
        return self.iterates[-1][0]


def initialize(
    y: MultiCoilKSpace,
    op: AcquisitionOperator,
    cfg: VSharpConfig,
    z0_override: DynamicImage | None = None,
) -> tuple[DynamicImage, DynamicImage, DynamicImage]:
    """Starting triple (z0, x0, u0).

    x0 is the adjoint image of the measured data; z0 equals x0 unless an
    override (for example a refined initialization) is supplied; u0 is
    zero or U_INIT_SCALE times x0 depending on cfg.u_init.
    """
    x0 = _adjoint(y.data, op.maps.data, op.mask.data)
    if z0_override is not None:
        if z0_override.data.shape != x0.shape:
            raise DimensionError("z0 override shape mismatch")
        z0 = z0_override.data.copy()
    else:
        z0 = x0.copy()
    if cfg.u_init == "zero":
        u0 = np.zeros_like(x0)
    else:
        u0 = U_INIT_SCALE * x0
    return DynamicImage(z0), DynamicImage(x0), DynamicImage(u0)


def _x_update_arr(
    x: np.ndarray,
    z_next: np.ndarray,
    u: np.ndarray,
    y: np.ndarray,
    maps: np.ndarray,
    mask: np.ndarray,
    cfg: VSharpConfig,
) -> np.ndarray:
    eta = cfg.resolved_step_size
    rho = cfg.rho
    for _ in range(cfg.x_steps):
        grad = _adjoint(_forward(x, maps, mask) - y, maps, mask)
        grad += rho * (x - z_next) + u
        x = x - eta * grad
        if not np.all(np.isfinite(x)):
            raise DivergenceError(
                "x-update produced non-finite values; lower the step size"
            )
    return x


def x_update(
    x: DynamicImage,
    z_next: DynamicImage,
    u: DynamicImage,
    y: MultiCoilKSpace,
    op: AcquisitionOperator,
    cfg: VSharpConfig,
) -> DynamicImage:
    """Nx gradient steps on the data term plus the quadratic coupling."""
    out = _x_update_arr(
        x.data, z_next.data, u.data, y.data, op.maps.data, op.mask.data, cfg
    )
    return DynamicImage(out)


def u_update(
    u: DynamicImage, x_next: DynamicImage, z_next: DynamicImage, rho: float
) -> DynamicImage:
    """Scaled dual ascent: u + rho * (x_next - z_next)."""
    if rho <= 0.0:
        raise InvalidSpecError(f"rho must be positive, got {rho}")
    return DynamicImage(u.data + rho * (x_next.data - z_next.data))


def reconstruct(
    y: MultiCoilKSpace,
    op: AcquisitionOperator,
    cfg: VSharpConfig,
    z0_override: DynamicImage | None = None,
) -> SolveTrace:
    """Run the full unrolled solve and record every iterate.

    The multiplier update uses the pre-consistency x; the consistency
    projection (when per_iterate_dc is set) then replaces x for the next
    iteration, and its k-space equals the measurements bitwise on the
    sampled set.  Residuals are data-fidelity norms of the recorded
    iterates and are non-increasing for the identity denoiser with zero
    multiplier start when per_iterate_dc is off and the step size is
    the automatic 1/(1 + rho).
    """
    _check_y_off_mask(y, op)
    maps, mask = op.maps.data, op.mask.data
    z0_img, x0_img, u0_img = initialize(y, op, cfg, z0_override)
    z = z0_img.data
    x = x0_img.data.copy()
    u = u0_img.data.copy()
    y_arr = y.data
    rho = cfg.rho

    iterates = []
    residuals = []
    for _ in range(cfg.iterations):
        z = _denoise_arr(x, z, u / rho, rho, cfg.denoiser)
        x = _x_update_arr(x, z, u, y_arr, maps, mask, cfg)
        u = u + rho * (x - z)
        if cfg.per_iterate_dc:
            y_hat = _dc(_coil_kspace(x, maps), y_arr, mask)
            x = _coil_combine(y_hat, maps)
        else:
            y_hat = _coil_kspace(x, maps)
        residuals.append(float(np.linalg.norm(_forward(x, maps, mask) - y_arr)))
        iterates.append((DynamicImage(x), MultiCoilKSpace(y_hat)))

    return SolveTrace(
        z0=z0_img,
        iterates=tuple(iterates),
        residual_history=tuple(residuals),
    )
