"""Shared builders and brute-force oracles for the test suite."""

import numpy as np

from cmrecon import (
    AcquisitionOperator,
    DynamicImage,
    MultiCoilKSpace,
    SamplingMask,
    SensitivityMaps,
)


def random_maps(rng, nc, ny, nx):
    """Random smooth-free maps normalized so sum_k |S_k|^2 == 1."""
    raw = rng.standard_normal((nc, ny, nx)) + 1j * rng.standard_normal((nc, ny, nx))
    # keep the normalization well conditioned
    raw[0] += 3.0
    norm = np.sqrt(np.sum(np.abs(raw) ** 2, axis=0))
    return SensitivityMaps(raw / norm)


def random_image(rng, nf, ny, nx):
    data = rng.standard_normal((nf, ny, nx)) + 1j * rng.standard_normal((nf, ny, nx))
    return DynamicImage(data)


def random_mask(rng, nf, ny, nx, keep=0.5):
    """Bernoulli mask with at least one sampled entry per frame."""
    data = (rng.uniform(size=(nf, ny, nx)) < keep).astype(np.uint8)
    for f in range(nf):
        if not data[f].any():
            data[f, ny // 2, nx // 2] = 1
    return SamplingMask(data)


def random_instance(rng, nc=2, nf=2, ny=8, nx=8, keep=0.5):
    """Operator plus consistent measurements y = mask * fft2c(S x)."""
    maps = random_maps(rng, nc, ny, nx)
    mask = random_mask(rng, nf, ny, nx, keep)
    op = AcquisitionOperator(maps, mask)
    x = random_image(rng, nf, ny, nx)
    from cmrecon import coil_kspace

    y = MultiCoilKSpace(mask.data[None, :, :, :] * coil_kspace(x, maps).data)
    return op, x, y


def dft2c_brute(img):
    """O(n^4) centered orthonormal 2D DFT of one frame."""
    img = np.asarray(img, dtype=np.complex128)
    ny, nx = img.shape
    cy, cx = ny // 2, nx // 2
    out = np.zeros((ny, nx), dtype=np.complex128)
    for ky in range(ny):
        for kx in range(nx):
            acc = 0.0 + 0.0j
            for y in range(ny):
                for x in range(nx):
                    phase = (ky - cy) * (y - cy) / ny + (kx - cx) * (x - cx) / nx
                    acc += img[y, x] * np.exp(-2j * np.pi * phase)
            out[ky, kx] = acc
    return out / np.sqrt(ny * nx)


def idft2c_brute(ksp):
    """Inverse of dft2c_brute (conjugate kernel, same scale)."""
    ksp = np.asarray(ksp, dtype=np.complex128)
    ny, nx = ksp.shape
    cy, cx = ny // 2, nx // 2
    out = np.zeros((ny, nx), dtype=np.complex128)
    for y in range(ny):
        for x in range(nx):
            acc = 0.0 + 0.0j
            for ky in range(ny):
                for kx in range(nx):
                    phase = (ky - cy) * (y - cy) / ny + (kx - cx) * (x - cx) / nx
                    acc += ksp[ky, kx] * np.exp(2j * np.pi * phase)
            out[y, x] = acc
    return out / np.sqrt(ny * nx)
