"""Shared fixtures: the three-domain example set and random-instance helpers."""

from __future__ import annotations

import numpy as np
import pytest

from preftiles import (
    ConfusionInput,
    DomainSet,
    Importance,
    Performance,
    RandomVariable,
    SampleSpace,
    bottleneck_domain,
    canonical_importance,
    easiest_domain,
    make_performance,
    most_difficult_domain,
    performance_from_confusion,
    preponderant_domain,
    two_class_satisfaction,
)
from preftiles.errors import PreftilesError

# Three example domains used throughout the tests: one skewed positive, one
# skewed negative, one balanced. Their accuracies are 0.87, 0.82, and 0.71,
# and the equal-weight mixture is (0.37, 0.13, 0.07, 0.43).
D1 = (0.02, 0.12, 0.01, 0.85)
D2 = (0.68, 0.08, 0.10, 0.14)
D3 = (0.41, 0.19, 0.10, 0.30)


def two_class_perf(tn, fp, fn, tp) -> Performance:
    return performance_from_confusion(ConfusionInput(tn, fp, fn, tp))


def demo_domain_set(weights=(1.0, 1.0, 1.0)) -> DomainSet:
    perfs = [two_class_perf(*cells) for cells in (D1, D2, D3)]
    return DomainSet.build(
        [(f"d{k + 1}", w, p) for k, (w, p) in enumerate(zip(weights, perfs))]
    )


@pytest.fixture
def trio() -> DomainSet:
    return demo_domain_set()


def random_space(rng, size=None) -> SampleSpace:
    if size is None:
        size = int(rng.integers(2, 9))
    return SampleSpace(tuple(f"w{k}" for k in range(size)))


def random_performance(rng, space) -> Performance:
    return make_performance(space, rng.random(len(space)) + 1e-3, mode="renormalize")


def random_variable(rng, space, low=-1.0, high=1.0) -> RandomVariable:
    return RandomVariable(space, rng.uniform(low, high, len(space)))


def random_importance(rng, space) -> Importance:
    return Importance.from_values(space, rng.random(len(space)) + 1e-3)


def random_domain_set(
    rng, space=None, n_domains=None, allow_zero_weights=True
) -> DomainSet:
    if space is None:
        space = random_space(rng)
    if n_domains is None:
        n_domains = int(rng.integers(2, 7))
    weights = [
        0.0 if allow_zero_weights and rng.random() < 0.15 else float(rng.uniform(0.05, 3.0))
        for _ in range(n_domains)
    ]
    if not any(weights):
        weights[-1] = 1.0
    return DomainSet.build(
        [(f"d{k}", w, random_performance(rng, space)) for k, w in enumerate(weights)]
    )


def random_two_class_set(rng, n_domains=None, allow_zero_weights=False) -> DomainSet:
    if n_domains is None:
        n_domains = int(rng.integers(2, 6))
    entries = []
    weights = [
        0.0 if allow_zero_weights and rng.random() < 0.15 else float(rng.uniform(0.05, 3.0))
        for _ in range(n_domains)
    ]
    if not any(weights):
        weights[-1] = 1.0
    for k, w in enumerate(weights):
        entries.append((f"d{k}", w, two_class_perf(*(rng.random(4) + 0.02))))
    return DomainSet.build(entries)


def selection_code(domains: DomainSet, flavor: str, point) -> int:
    """Independent per-point oracle for flavor grids.

    Runs the scalar selector and maps its outcome to a grid code: domain
    index, -2 for a tie, -1 when the selector raises.
    """
    importance = canonical_importance(point)
    satisfaction = two_class_satisfaction()
    try:
        if flavor == "easiest":
            sel = easiest_domain(domains, importance, satisfaction)
        elif flavor == "most_difficult":
            sel = most_difficult_domain(domains, importance, satisfaction)
        elif flavor == "preponderant":
            sel = preponderant_domain(domains, importance)
        elif flavor == "bottleneck":
            sel = bottleneck_domain(domains, importance, satisfaction)
        else:
            raise AssertionError(f"unknown flavor {flavor!r}")
    except PreftilesError:
        return -1
    if len(sel.tie_set) > 1:
        return -2
    return domains.ids.index(sel.winner)


def selector_grid(domains: DomainSet, flavor: str, points, resolution: int) -> np.ndarray:
    codes = np.array(
        [selection_code(domains, flavor, p) for p in points], dtype=np.int32
    )
    return codes.reshape(resolution, resolution)
