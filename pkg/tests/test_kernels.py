"""Backend selection and bitwise agreement of the numba and numpy kernel paths."""

from __future__ import annotations

import os
import subprocess
import sys

import numpy as np
import pytest

from preftiles import RandomVariable, TilePoint, canonical_importance, expected_value
from preftiles import kernels
from preftiles.raster import _flat_coords, grid_points

from conftest import D1, two_class_perf

needs_numba = pytest.mark.skipif(
    not kernels.HAS_NUMBA, reason="numba backend not active"
)


def _random_inputs(rng, n_domains=4, npix=257):
    a = rng.uniform(0.001, 0.999, npix)
    b = rng.uniform(0.001, 0.999, npix)
    masses = rng.random((n_domains, 4)) + 0.01
    masses /= masses.sum(axis=1, keepdims=True)
    weights = rng.uniform(0.0, 2.0, n_domains)
    return a, b, masses, weights


def test_backend_is_reported():
    assert kernels.BACKEND in ("numba", "numpy")
    assert kernels.BACKEND == ("numba" if kernels.HAS_NUMBA else "numpy")


def test_env_flag_forces_numpy_backend():
    env = dict(os.environ, PREFTILES_NO_NUMBA="1")
    out = subprocess.run(
        [sys.executable, "-c", "from preftiles import kernels; print(kernels.BACKEND)"],
        capture_output=True,
        text=True,
        env=env,
        check=True,
    )
    assert out.stdout.strip() == "numpy"


@needs_numba
def test_score_components_paths_agree_bitwise():
    rng = np.random.default_rng(307)
    a, b, masses, _ = _random_inputs(rng)
    for row in masses:
        num_nb, den_nb = kernels.score_components_numba(row, a, b)
        num_np, den_np = kernels.score_components_numpy(row, a, b)
        assert np.array_equal(num_nb, num_np)
        assert np.array_equal(den_nb, den_np)


@needs_numba
def test_value_grid_paths_agree_bitwise():
    rng = np.random.default_rng(311)
    num = rng.random(300)
    den = rng.random(300)
    den[::7] = 0.0
    den[::11] = 1e-13
    den[::13] = 1e-12
    assert np.array_equal(
        kernels.value_grid_numba(num, den),
        kernels.value_grid_numpy(num, den),
        equal_nan=True,
    )


@needs_numba
def test_weight_grid_paths_agree_bitwise():
    rng = np.random.default_rng(313)
    a, b, masses, weights = _random_inputs(rng)
    dens = np.stack([kernels.score_components_numpy(row, a, b)[1] for row in masses])
    for index in range(len(weights)):
        assert np.array_equal(
            kernels.weight_grid_numba(weights, dens, index),
            kernels.weight_grid_numpy(weights, dens, index),
            equal_nan=True,
        )


@needs_numba
def test_code_kernels_agree_bitwise():
    rng = np.random.default_rng(317)
    a, b, masses, weights = _random_inputs(rng, n_domains=5)
    parts = [kernels.score_components_numpy(row, a, b) for row in masses]
    nums = np.stack([p[0] for p in parts])
    dens = np.stack([p[1] for p in parts])
    dens[2, ::17] = 0.0
    for maximize in (True, False):
        assert np.array_equal(
            kernels.extremum_codes_numba(nums, dens, maximize),
            kernels.extremum_codes_numpy(nums, dens, maximize),
        )
    assert np.array_equal(
        kernels.preponderance_codes_numba(weights, dens),
        kernels.preponderance_codes_numpy(weights, dens),
    )


def test_components_match_expected_value_bitwise():
    perf = two_class_perf(*D1)
    sat = RandomVariable(perf.space, np.array([1.0, 0.0, 0.0, 1.0]))
    points = grid_points(7)
    aa, bb = _flat_coords(7)
    num, den = kernels.score_components(perf.masses, aa, bb)
    for k, point in enumerate(points):
        importance = canonical_importance(point)
        weighted = importance.variable * sat
        assert num[k] == expected_value(perf, weighted)
        assert den[k] == expected_value(perf, importance.variable)


def test_value_kernel_marks_tiny_denominators_undefined():
    num = np.array([1.0, 1.0, 1.0, 1.0])
    den = np.array([2.0, 0.0, 1e-13, 1e-12])
    values = kernels.value_grid(num, den)
    assert values[0] == 0.5
    assert np.isnan(values[1]) and np.isnan(values[2]) and np.isnan(values[3])


def test_extremum_kernel_tie_and_undefined_codes():
    nums = np.array([[1.0, 0.5, 0.3], [1.0, 0.7, 0.3]])
    dens = np.array([[2.0, 1.0, 0.0], [2.0, 1.0, 1.0]])
    codes = kernels.extremum_codes(nums, dens, True)
    assert codes.tolist() == [kernels.TIE, 1, kernels.UNDEFINED]
    codes_min = kernels.extremum_codes(nums, dens, False)
    assert codes_min.tolist() == [kernels.TIE, 0, kernels.UNDEFINED]


def test_preponderance_kernel_tie_undefined_and_weighting():
    dens = np.array([[1.0, 0.4, 0.0], [0.5, 0.4, 0.0]])
    weights = np.array([1.0, 2.0])
    codes = kernels.preponderance_codes(weights, dens)
    assert codes.tolist() == [kernels.TIE, 1, kernels.UNDEFINED]


def test_weight_kernel_shares_sum_to_one():
    rng = np.random.default_rng(331)
    a, b, masses, weights = _random_inputs(rng, n_domains=3, npix=64)
    dens = np.stack([kernels.score_components(row, a, b)[1] for row in masses])
    total = sum(
        kernels.weight_grid(weights, dens, index) for index in range(3)
    )
    assert np.max(np.abs(total - 1.0)) <= 1e-12
