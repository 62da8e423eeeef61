import math
from fractions import Fraction

import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from lagrange_fit.basis import (
    BasisSpec,
    Family,
    InvalidDomainError,
    InvalidOrderError,
    UnderdeterminedError,
    dct_features,
    dct_map,
    design_matrix,
    features,
    normal_system,
    poly_features,
)
from lagrange_fit.dataset import DataSet, builtin


def canonical_grid(n_dct: int, x_max: float = 1.0) -> np.ndarray:
    """x values whose mapped coordinate is exactly 1..n_dct."""
    return np.arange(1, n_dct + 1) * x_max / (n_dct - 1)


@pytest.mark.parametrize(
    "x, order, expected",
    [(2.0, 3, [1, 2, 4]), (0.0, 4, [1, 0, 0, 0]), (1.7, 2, [1, 1.7])],
)
def test_poly_features(x, order, expected):
    np.testing.assert_array_equal(poly_features(x, order), expected)


def test_poly_features_bad_order():
    with pytest.raises(InvalidOrderError):
        poly_features(1.0, 0)


def test_dct_map():
    assert dct_map(0.0, 7, 3.3) == 0.0
    assert dct_map(6.2, 9, 6.2) == pytest.approx(8.0, abs=1e-15)
    assert dct_map(3.1, 9, 6.2) == pytest.approx(4.0, abs=1e-15)
    with pytest.raises(InvalidDomainError):
        dct_map(1.0, 9, 0.0)
    with pytest.raises(InvalidDomainError):
        dct_map(1.0, 9, -2.0)


def test_dct_features_examples():
    spec = BasisSpec.dct(2, 9, 6.2)
    assert dct_features(4.2, spec)[0] == 1.0
    # mapped coordinate (N_DCT + 1) / 2 puts the m=2 argument at pi/2
    x_half = (9 + 1) / 2 * 6.2 / 8
    assert dct_features(x_half, spec)[1] == pytest.approx(0.0, abs=1e-15)
    mpmath.mp.dps = 40
    oracle = mpmath.cos(mpmath.pi * (2 * (mpmath.mpf(8) / mpmath.mpf("6.2")) * 1 - 1) / 18)
    assert dct_features(1.0, spec)[1] == pytest.approx(float(oracle), rel=1e-14)
    assert float(oracle) == pytest.approx(0.96218732815960918, rel=1e-15)


def test_dct_features_requires_dct_spec():
    with pytest.raises(ValueError):
        dct_features(1.0, BasisSpec.polynomial(2))


def test_spec_validation():
    with pytest.raises(InvalidOrderError):
        BasisSpec.polynomial(0)
    with pytest.raises(InvalidOrderError):
        BasisSpec.dct(2, 1, 1.0)
    with pytest.raises(InvalidDomainError):
        BasisSpec.dct(2, 5, 0.0)
    assert BasisSpec.dct(3, 5, 2.0).feature_count == 3


def test_for_dataset_defaults():
    ds = builtin("grades")
    spec = BasisSpec.for_dataset("dct", 3, ds)
    assert (spec.dct_length, spec.domain_max) == (9, 6.2)
    spec = BasisSpec.for_dataset(Family.DCT, 3, ds, dct_length=32, domain_max=10.0)
    assert (spec.dct_length, spec.domain_max) == (32, 10.0)
    assert BasisSpec.for_dataset("poly", 3, ds).dct_length is None


def test_design_matrix_examples():
    grades = builtin("grades")
    phi = design_matrix(grades, BasisSpec.polynomial(2))
    np.testing.assert_array_equal(phi[:, 0], 1.0)
    np.testing.assert_array_equal(phi[:, 1], grades.x)
    for spec in (BasisSpec.polynomial(1), BasisSpec.for_dataset("dct", 1, grades)):
        np.testing.assert_array_equal(design_matrix(grades, spec), np.ones((9, 1)))
    two = DataSet((0.0, 1.0), (5.0, 7.0))
    np.testing.assert_array_equal(design_matrix(two, BasisSpec.polynomial(2)), [[1, 0], [1, 1]])


def test_normal_system_grades_linear():
    grades = builtin("grades")
    xs = [Fraction(str(v)) for v in grades.x]
    ys = [Fraction(str(v)) for v in grades.y]
    # exact rational sums of the table columns
    sx, sxx = sum(xs), sum(v * v for v in xs)
    sy, sxy = sum(ys), sum(a * b for a, b in zip(xs, ys))
    assert (float(sx), float(sxx), float(sy), float(sxy)) == (33.2, 146.64, 32.0, 137.84)

    gram, moment = normal_system(grades, BasisSpec.polynomial(2))
    np.testing.assert_allclose(gram, [[9, 33.2], [33.2, 146.64]], rtol=1e-14)
    np.testing.assert_allclose(moment, [32, 137.84], rtol=1e-14)


def test_normal_system_constant():
    ds = builtin("grades")
    gram, moment = normal_system(ds, BasisSpec.polynomial(1))
    assert gram.tolist() == [[9.0]]
    assert moment[0] == pytest.approx(sum(ds.y), rel=1e-15)


def test_normal_system_underdetermined():
    with pytest.raises(UnderdeterminedError):
        normal_system(DataSet((1.0, 2.0), (1.0, 2.0)), BasisSpec.polynomial(3))


@pytest.mark.parametrize("n_dct", [8, 9, 16, 32])
def test_dct_gram_on_canonical_grid(n_dct):
    x = canonical_grid(n_dct, 2.5)
    ds = DataSet(tuple(x), tuple(np.zeros(n_dct)))
    spec = BasisSpec.dct(n_dct, n_dct, 2.5)
    np.testing.assert_allclose(dct_map(x, n_dct, 2.5), np.arange(1, n_dct + 1), atol=1e-12)
    gram, _ = normal_system(ds, spec)
    expected = np.diag([1.0] + [0.5] * (n_dct - 1))
    assert np.max(np.abs(gram / n_dct - expected)) < 1e-12


@given(
    st.floats(-1e6, 1e6),
    st.integers(1, 12),
    st.integers(2, 64),
    st.floats(1e-3, 1e3),
)
def test_dct_features_bounded_and_first_is_one(x, order, n_dct, x_max):
    phi = features(x, BasisSpec.dct(order, n_dct, x_max))
    assert phi[0] == 1.0
    assert np.all(np.abs(phi) <= 1.0)


@given(st.floats(-50, 50), st.integers(1, 8))
def test_poly_first_feature_is_one(x, order):
    assert poly_features(x, order)[0] == 1.0


@given(st.lists(st.integers(-6, 6), min_size=4, max_size=12), st.integers(1, 4))
def test_poly_gram_entries_are_power_sums(xs, order):
    # integer samples keep every power sum exact in binary64
    ds = DataSet(tuple(float(v) for v in xs), tuple(0.0 for _ in xs))
    gram, _ = normal_system(ds, BasisSpec.polynomial(order))
    for i in range(order):
        for j in range(order):
            assert gram[i, j] == sum(v ** (i + j) for v in xs)


def test_features_vectorise():
    spec = BasisSpec.dct(4, 10, 3.0)
    xs = np.linspace(0, 3, 7)
    stacked = features(xs, spec)
    assert stacked.shape == (7, 4)
    for row, x in zip(stacked, xs):
        np.testing.assert_array_equal(row, features(float(x), spec))
    assert math.isclose(stacked[0, 1], math.cos(-math.pi / 20))
