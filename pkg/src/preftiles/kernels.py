"""Per-pixel kernels behind the tile rasters.

Every kernel exists twice: a numba-compiled loop and a pure-numpy broadcast
version. The numba path is used when numba imports cleanly and the
PREFTILES_NO_NUMBA environment variable is unset or falsy; otherwise the
numpy path takes over. Both accumulate in the same order with fastmath off,
so the two backends return bitwise identical arrays (tests assert this).

Inputs are flat float64 coordinate arrays (one entry per pixel) and mass
vectors in the fixed (tn, fp, fn, tp) label order. Categorical kernels return
int32 codes: a domain index, TIE (-2), or UNDEFINED (-1).
"""

from __future__ import annotations

import os

import numpy as np

from .analysis import TIE_TOL
from .core import SCORE_DOMAIN_EPS

TIE = -2
UNDEFINED = -1


def _env_flag(name: str) -> bool:
    return os.environ.get(name, "").strip().lower() in {"1", "true", "yes", "on"}


NUMBA_DISABLED = _env_flag("PREFTILES_NO_NUMBA")

try:
    if NUMBA_DISABLED:
        raise ImportError("numba disabled by PREFTILES_NO_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:
    njit = None
    HAS_NUMBA = False


# numpy implementations ------------------------------------------------------


def score_components_numpy(masses, a, b):
    """Satisfied importance mass and total importance mass at each pixel."""
    p_tn, p_fp, p_fn, p_tp = masses[0], masses[1], masses[2], masses[3]
    num = p_tn * (1.0 - a) + p_tp * a
    den = p_tn * (1.0 - a) + p_fp * (1.0 - b) + p_fn * b + p_tp * a
    return num, den


def value_grid_numpy(num, den):
    """num / den where defined, NaN where the importance mass vanishes."""
    out = np.full(num.shape, np.nan)
    defined = den > SCORE_DOMAIN_EPS
    np.divide(num, den, out=out, where=defined)
    return out


def weight_grid_numpy(weights, dens, index):
    """One domain's share of the total weighted importance mass, per pixel."""
    total = np.zeros(dens.shape[1])
    for d in range(dens.shape[0]):
        total = total + weights[d] * dens[d]
    part = weights[index] * dens[index]
    out = np.full(total.shape, np.nan)
    defined = total > SCORE_DOMAIN_EPS
    np.divide(part, total, out=out, where=defined)
    return out


def extremum_codes_numpy(nums, dens, maximize):
    """Index of the best (or worst) per-domain score at each pixel."""
    ok = dens > SCORE_DOMAIN_EPS
    defined = np.all(ok, axis=0)
    values = np.zeros_like(nums)
    np.divide(nums, dens, out=values, where=ok)
    optimum = values.max(axis=0) if maximize else values.min(axis=0)
    ties = np.abs(values - optimum) <= TIE_TOL
    count = ties.sum(axis=0)
    codes = np.where(count > 1, TIE, ties.argmax(axis=0)).astype(np.int32)
    codes[~defined] = UNDEFINED
    return codes


def preponderance_codes_numpy(weights, dens):
    """Index of the domain with the largest weighted importance mass per pixel."""
    terms = weights[:, None] * dens
    total = np.zeros(dens.shape[1])
    for d in range(dens.shape[0]):
        total = total + terms[d]
    optimum = terms.max(axis=0)
    ties = np.abs(terms - optimum) <= TIE_TOL
    count = ties.sum(axis=0)
    codes = np.where(count > 1, TIE, ties.argmax(axis=0)).astype(np.int32)
    codes[~(total > SCORE_DOMAIN_EPS)] = UNDEFINED
    return codes


# numba implementations ------------------------------------------------------


def _score_components_loop(masses, a, b):
    npix = a.shape[0]
    num = np.empty(npix)
    den = np.empty(npix)
    p_tn = masses[0]
    p_fp = masses[1]
    p_fn = masses[2]
    p_tp = masses[3]
    for i in range(npix):
        av = a[i]
        bv = b[i]
        num[i] = p_tn * (1.0 - av) + p_tp * av
        den[i] = p_tn * (1.0 - av) + p_fp * (1.0 - bv) + p_fn * bv + p_tp * av
    return num, den


def _value_grid_loop(num, den):
    npix = num.shape[0]
    out = np.empty(npix)
    for i in range(npix):
        if den[i] > SCORE_DOMAIN_EPS:
            out[i] = num[i] / den[i]
        else:
            out[i] = np.nan
    return out


def _weight_grid_loop(weights, dens, index):
    n = dens.shape[0]
    npix = dens.shape[1]
    out = np.empty(npix)
    for i in range(npix):
        total = 0.0
        for d in range(n):
            total += weights[d] * dens[d, i]
        if total > SCORE_DOMAIN_EPS:
            out[i] = (weights[index] * dens[index, i]) / total
        else:
            out[i] = np.nan
    return out


def _extremum_codes_loop(nums, dens, maximize):
    n = nums.shape[0]
    npix = nums.shape[1]
    codes = np.empty(npix, np.int32)
    for i in range(npix):
        defined = True
        for d in range(n):
            if not dens[d, i] > SCORE_DOMAIN_EPS:
                defined = False
                break
        if not defined:
            codes[i] = UNDEFINED
            continue
        optimum = nums[0, i] / dens[0, i]
        for d in range(1, n):
            v = nums[d, i] / dens[d, i]
            if maximize:
                if v > optimum:
                    optimum = v
            else:
                if v < optimum:
                    optimum = v
        first = -1
        count = 0
        for d in range(n):
            v = nums[d, i] / dens[d, i]
            if abs(v - optimum) <= TIE_TOL:
                count += 1
                if first < 0:
                    first = d
        codes[i] = TIE if count > 1 else first
    return codes


def _preponderance_codes_loop(weights, dens):
    n = dens.shape[0]
    npix = dens.shape[1]
    codes = np.empty(npix, np.int32)
    for i in range(npix):
        total = 0.0
        optimum = weights[0] * dens[0, i]
        total += optimum
        for d in range(1, n):
            t = weights[d] * dens[d, i]
            total += t
            if t > optimum:
                optimum = t
        if not total > SCORE_DOMAIN_EPS:
            codes[i] = UNDEFINED
            continue
        first = -1
        count = 0
        for d in range(n):
            t = weights[d] * dens[d, i]
            if abs(t - optimum) <= TIE_TOL:
                count += 1
                if first < 0:
                    first = d
        codes[i] = TIE if count > 1 else first
    return codes


if HAS_NUMBA:
    score_components_numba = njit(cache=True)(_score_components_loop)
    value_grid_numba = njit(cache=True)(_value_grid_loop)
    weight_grid_numba = njit(cache=True)(_weight_grid_loop)
    extremum_codes_numba = njit(cache=True)(_extremum_codes_loop)
    preponderance_codes_numba = njit(cache=True)(_preponderance_codes_loop)

    BACKEND = "numba"
    score_components = score_components_numba
    value_grid = value_grid_numba
    weight_grid = weight_grid_numba
    extremum_codes = extremum_codes_numba
    preponderance_codes = preponderance_codes_numba
else:
    score_components_numba = None
    value_grid_numba = None
    weight_grid_numba = None
    extremum_codes_numba = None
    preponderance_codes_numba = None

    BACKEND = "numpy"
    score_components = score_components_numpy
    value_grid = value_grid_numpy
    weight_grid = weight_grid_numpy
    extremum_codes = extremum_codes_numpy
    preponderance_codes = preponderance_codes_numpy
