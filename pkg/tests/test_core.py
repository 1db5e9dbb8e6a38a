import numpy as np
import pytest

from cmrecon import (
    DynamicImage,
    MultiCoilKSpace,
    SamplingMask,
    SensitivityMaps,
    inner_product,
    rss_combine,
)
from cmrecon.core import NORM_TOL
from cmrecon.errors import DimensionError, NumericError


def test_dynamic_image_shape_and_props():
    img = DynamicImage(np.zeros((2, 3, 4)))
    assert (img.nf, img.ny, img.nx) == (2, 3, 4)
    assert img.data.dtype == np.complex128


def test_dynamic_image_rejects_wrong_ndim():
    with pytest.raises(DimensionError):
        DynamicImage(np.zeros((3, 4)))
    with pytest.raises(DimensionError):
        DynamicImage(np.zeros((1, 2, 3, 4)))


def test_dynamic_image_rejects_tiny_axes():
    with pytest.raises(DimensionError):
        DynamicImage(np.zeros((1, 1, 4)))
    with pytest.raises(DimensionError):
        DynamicImage(np.zeros((0, 4, 4)))


def test_dynamic_image_rejects_nonfinite():
    data = np.zeros((1, 2, 2), dtype=np.complex128)
    data[0, 0, 0] = np.nan
    with pytest.raises(NumericError):
        DynamicImage(data)
    data[0, 0, 0] = 1j * np.inf
    with pytest.raises(NumericError):
        DynamicImage(data)


def test_magnitude_is_pointwise_modulus():
    img = DynamicImage(np.array([[[3 + 4j, 0], [1, -2j]]]))
    assert np.array_equal(img.magnitude, np.array([[[5.0, 0.0], [1.0, 2.0]]]))
    assert img.magnitude.dtype == np.float64


def test_kspace_shape_and_props():
    y = MultiCoilKSpace(np.zeros((3, 2, 4, 5)))
    assert (y.nc, y.nf, y.ny, y.nx) == (3, 2, 4, 5)
    with pytest.raises(DimensionError):
        MultiCoilKSpace(np.zeros((2, 4, 5)))
    with pytest.raises(DimensionError):
        MultiCoilKSpace(np.zeros((0, 2, 4, 5)))


def test_maps_norm_invariant():
    # two coils splitting the energy evenly is fine
    ok = np.full((2, 2, 2), 1 / np.sqrt(2), dtype=np.complex128)
    maps = SensitivityMaps(ok)
    assert maps.nc == 2
    bad = np.full((2, 2, 2), 1.0, dtype=np.complex128)
    with pytest.raises(NumericError):
        SensitivityMaps(bad)


def test_maps_norm_tolerance_edge():
    val = np.sqrt((1.0 + 0.5 * NORM_TOL) / 2.0)
    SensitivityMaps(np.full((2, 2, 2), val, dtype=np.complex128))
    val = np.sqrt((1.0 + 10.0 * NORM_TOL) / 2.0)
    with pytest.raises(NumericError):
        SensitivityMaps(np.full((2, 2, 2), val, dtype=np.complex128))


def test_maps_support_must_be_unit_norm():
    data = np.zeros((1, 2, 2), dtype=np.complex128)
    data[0, 0, 0] = 1.0
    data[0, 1, 1] = 0.5
    support = np.array([[True, False], [False, False]])
    maps = SensitivityMaps(data, support=support)
    assert maps.support.dtype == bool
    bad_support = np.array([[True, False], [False, True]])
    with pytest.raises(NumericError):
        SensitivityMaps(data, support=bad_support)
    with pytest.raises(DimensionError):
        SensitivityMaps(data, support=np.ones((3, 3), dtype=bool))


def test_mask_binary_enforced():
    mask = SamplingMask(np.ones((1, 2, 2), dtype=np.uint8))
    assert mask.data.dtype == np.uint8
    with pytest.raises(NumericError):
        SamplingMask(2 * np.ones((1, 2, 2), dtype=np.uint8))
    with pytest.raises(DimensionError):
        SamplingMask(np.ones((2, 2), dtype=np.uint8))


def test_mask_column_record_must_match_array():
    data = np.zeros((1, 2, 4), dtype=np.uint8)
    data[:, :, [0, 2]] = 1
    mask = SamplingMask(data, cartesian_columns=((0, 2),))
    assert mask.cartesian_columns == ((0, 2),)
    with pytest.raises(NumericError):
        SamplingMask(data, cartesian_columns=((0, 3),))
    with pytest.raises(DimensionError):
        SamplingMask(data, cartesian_columns=((0, 2), (0, 2)))


def test_rss_combine_pythagorean():
    coils = np.zeros((2, 1, 2, 2), dtype=np.complex128)
    coils[0, 0, 0, 0] = 3.0
    coils[1, 0, 0, 0] = 4j
    out = rss_combine(coils)
    assert out.data[0, 0, 0] == 5.0 + 0j
    assert np.all(out.data.imag == 0.0)
    with pytest.raises(DimensionError):
        rss_combine(np.zeros((1, 2, 2)))


def test_rss_combine_matches_norm_along_coils():
    rng = np.random.default_rng(3)
    for _ in range(5):
        coils = rng.standard_normal((3, 2, 4, 4)) + 1j * rng.standard_normal(
            (3, 2, 4, 4)
        )
        out = rss_combine(coils)
        ref = np.sqrt(np.sum(np.abs(coils) ** 2, axis=0))
        assert np.allclose(out.data, ref, atol=1e-12)


def test_inner_product_examples():
    assert inner_product(np.array([1 + 1j]), np.array([1 + 1j])) == 2 + 0j
    assert inner_product(np.array([1.0, 2.0]), np.array([3.0, 4.0])) == 11 + 0j
    # conjugation sits on the second argument
    assert inner_product(np.array([1j]), np.array([1.0])) == 1j
    assert inner_product(np.array([1.0]), np.array([1j])) == -1j


def test_inner_product_rejects_shape_mismatch():
    with pytest.raises(DimensionError):
        inner_product(np.zeros(3), np.zeros(4))


def test_inner_product_matches_vdot_loop():
    rng = np.random.default_rng(11)
    for _ in range(10):
        a = rng.standard_normal((2, 3, 4)) + 1j * rng.standard_normal((2, 3, 4))
        b = rng.standard_normal((2, 3, 4)) + 1j * rng.standard_normal((2, 3, 4))
        ref = complex(np.vdot(b, a))  # vdot conjugates its first argument
        assert abs(inner_product(a, b) - ref) < 1e-12
