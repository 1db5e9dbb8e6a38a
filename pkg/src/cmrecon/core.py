"""Core array containers and reductions.

Axis order is (coil, frame, row, column) throughout the package; axes that
a type does not use are absent rather than kept as singletons.  All pixel
data is complex128.  Containers validate their invariants on construction
and should be treated as immutable; operations return new containers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, NumericError

__all__ = [
    "DynamicImage",
    "MultiCoilKSpace",
    "SensitivityMaps",
    "SamplingMask",
    "rss_combine",
    "inner_product",
]


def _as_complex(data, name: str, ndim: int, axes: str) -> np.ndarray:
    arr = np.ascontiguousarray(np.asarray(data))
    if arr.ndim != ndim:
        raise DimensionError(
            f"{name} expects {ndim} axes {axes}, got shape {arr.shape}"
        )
    arr = arr.astype(np.complex128, copy=False)
    if not np.all(np.isfinite(arr.real)) or not np.all(np.isfinite(arr.imag)):
        raise NumericError(f"{name} contains non-finite entries")
    return arr


@dataclass(frozen=True)
class DynamicImage:
    """A complex image sequence with shape (frame, row, column)."""

    data: np.ndarray

    def __post_init__(self):
        arr = _as_complex(self.data, "DynamicImage", 3, "(frame, row, column)")
        nf, ny, nx = arr.shape
        if nf < 1 or ny < 2 or nx < 2:
            raise DimensionError(
                f"DynamicImage needs nf >= 1 and ny, nx >= 2, got {arr.shape}"
            )
        object.__setattr__(self, "data", arr)

    @property
    def nf(self) -> int:
        return self.data.shape[0]

    @property
    def ny(self) -> int:
        return self.data.shape[1]

    @property
    def nx(self) -> int:
        return self.data.shape[2]

    @property
    def magnitude(self) -> np.ndarray:
        """Pointwise modulus as float64, shape (frame, row, column)."""
        return np.abs(self.data)


@dataclass(frozen=True)
class MultiCoilKSpace:
    """Multi-coil k-space with shape (coil, frame, row, column).

    When paired with a mask, unsampled entries are exactly zero; that
    pairing is enforced by the operations that consume (y, mask) pairs
    rather than here, since the container does not hold its mask.
    """

    data: np.ndarray

    def __post_init__(self):
        arr = _as_complex(
            self.data, "MultiCoilKSpace", 4, "(coil, frame, row, column)"
        )
        if arr.shape[0] < 1:
            raise DimensionError("MultiCoilKSpace needs at least one coil")
        if arr.shape[1] < 1 or arr.shape[2] < 2 or arr.shape[3] < 2:
            raise DimensionError(
                f"MultiCoilKSpace needs nf >= 1 and ny, nx >= 2, got {arr.shape}"
            )
        object.__setattr__(self, "data", arr)

    @property
    def nc(self) -> int:
        return self.data.shape[0]

    @property
    def nf(self) -> int:
        return self.data.shape[1]

    @property
    def ny(self) -> int:
        return self.data.shape[2]

    @property
    def nx(self) -> int:
        return self.data.shape[3]


#: Slack allowed on the unit-norm invariant of sensitivity maps.
NORM_TOL = 1e-6

#: Fraction of the peak coil-combined magnitude below which a pixel is
#: considered outside the calibration support.
SUPPORT_REL_THRESHOLD = 1e-3


@dataclass(frozen=True)
class SensitivityMaps:
    """Coil sensitivity maps with shape (coil, row, column).

    The maps are normalized: sum_k |S_k|^2 <= 1 everywhere (within
    NORM_TOL) and equals 1 on the calibration support when a support
    flag is attached.
    """

    data: np.ndarray
    support: np.ndarray | None = None

    def __post_init__(self):
        arr = _as_complex(self.data, "SensitivityMaps", 3, "(coil, row, column)")
        if arr.shape[0] < 1 or arr.shape[1] < 2 or arr.shape[2] < 2:
            raise DimensionError(
                f"SensitivityMaps needs nc >= 1 and ny, nx >= 2, got {arr.shape}"
            )
        norm = np.sum(np.abs(arr) ** 2, axis=0)
        if np.max(norm) > 1.0 + NORM_TOL:
            raise NumericError(
                f"coil map norm exceeds 1 by {np.max(norm) - 1.0:.3e}"
            )
        support = self.support
        if support is not None:
            support = np.asarray(support, dtype=bool)
            if support.shape != arr.shape[1:]:
                raise DimensionError(
                    "support flag must have the spatial shape of the maps"
                )
            if support.any() and np.max(np.abs(norm[support] - 1.0)) > NORM_TOL:
                raise NumericError("coil map norm is not 1 on the support set")
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "support", support)

    @property
    def nc(self) -> int:
        return self.data.shape[0]

    @property
    def ny(self) -> int:
        return self.data.shape[1]

    @property
    def nx(self) -> int:
        return self.data.shape[2]


@dataclass(frozen=True)
class SamplingMask:
    """Binary sampling pattern with shape (frame, row, column).

    For Cartesian schemes the per-frame column sets are recorded in
    ``cartesian_columns`` (a tuple of sorted column tuples, one per
    frame); the mask array and the column sets must agree exactly.
    """

    data: np.ndarray
    cartesian_columns: tuple[tuple[int, ...], ...] | None = None

    def __post_init__(self):
        arr = np.ascontiguousarray(np.asarray(self.data))
        if arr.ndim != 3:
            raise DimensionError(
                f"SamplingMask expects (frame, row, column), got shape {arr.shape}"
            )
        arr = arr.astype(np.uint8, copy=False)
        if not np.isin(arr, (0, 1)).all():
            raise NumericError("mask entries must be 0 or 1")
        cols = self.cartesian_columns
        if cols is not None:
            cols = tuple(tuple(int(c) for c in frame_cols) for frame_cols in cols)
            if len(cols) != arr.shape[0]:
                raise DimensionError(
                    "cartesian_columns needs one column tuple per frame"
                )
            for f, frame_cols in enumerate(cols):
                ref = np.zeros(arr.shape[2], dtype=np.uint8)
                ref[list(frame_cols)] = 1
                if not np.array_equal(arr[f], np.broadcast_to(ref, arr.shape[1:])):
                    raise NumericError(
                        f"mask frame {f} disagrees with its column set"
                    )
        object.__setattr__(self, "data", arr)
        object.__setattr__(self, "cartesian_columns", cols)

    @property
    def nf(self) -> int:
        return self.data.shape[0]

    @property
    def ny(self) -> int:
        return self.data.shape[1]

    @property
    def nx(self) -> int:
        return self.data.shape[2]


def rss_combine(coil_images: np.ndarray) -> DynamicImage:
    """Root-sum-of-squares combination of per-coil image stacks.

    Parameters
    ----------
    coil_images : ndarray
        Complex coil images with shape (coil, frame, row, column).

    Returns
    -------
    DynamicImage
        Nonnegative real image sequence (stored complex, zero phase).
    """
    arr = np.asarray(coil_images)
    if arr.ndim != 4:
        raise DimensionError(
            f"rss_combine expects (coil, frame, row, column), got {arr.shape}"
        )
    out = np.sqrt(np.sum(np.abs(arr) ** 2, axis=0))
    return DynamicImage(out)


def inner_product(a: np.ndarray, b: np.ndarray) -> complex:
    """Complex inner product sum(a * conj(b)) in flat row-major order.

    The reduction order is fixed (C-order traversal of equal-shape
    arrays), so repeated evaluations on identical inputs are bitwise
    reproducible.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    if a.shape != b.shape:
        raise DimensionError(f"inner_product shape mismatch {a.shape} vs {b.shape}")
    return complex(np.sum(np.ravel(a, order="C") * np.conj(np.ravel(b, order="C"))))
