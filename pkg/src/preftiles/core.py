"""Probability measures on finite sample spaces and the score families built on them.

A performance is nothing more than a probability measure on a small ordered
sample space. Scores are functionals of that measure: plain expected values,
ratios of expected values, and the preference-weighted ranking score that
drives everything else in this package.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, Literal, Mapping

import numpy as np

from .errors import (
    DegenerateImportanceError,
    NegativeMassError,
    NotNormalizedError,
    OutsideScoreDomainError,
    SpaceMismatchError,
    ZeroTotalError,
)

# Masses must sum to 1 within this absolute tolerance.
MASS_TOL = 1e-9

# A ratio score is undefined where |denominator expectation| <= this.
SCORE_DOMAIN_EPS = 1e-12


def _readonly(values, dtype=np.float64) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    arr.setflags(write=False)
    return arr


def _accumulate(terms: Iterable[float]) -> float:
    # Plain left-to-right accumulation. The tile kernels add in the same
    # order, which keeps scalar and rasterized results bitwise identical.
    total = 0.0
    for term in terms:
        total += term
    return total


def _check_same_space(left: SampleSpace, right: SampleSpace) -> None:
    if left != right:
        raise SpaceMismatchError(
            f"sample spaces differ: {left.labels} vs {right.labels}"
        )


@dataclass(frozen=True)
class SampleSpace:
    """Ordered finite set of outcome labels."""

    labels: tuple[str, ...]

    def __post_init__(self):
        labels = tuple(str(label) for label in self.labels)
        if not labels:
            raise ValueError("a sample space needs at least one label")
        if len(set(labels)) != len(labels):
            raise ValueError(f"duplicate labels: {labels}")
        object.__setattr__(self, "labels", labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"label {label!r} not in sample space") from None

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self) -> Iterator[str]:
        return iter(self.labels)

    def __contains__(self, label) -> bool:
        return label in self.labels


@dataclass(frozen=True, eq=False)
class RandomVariable:
    """Real-valued function on a sample space, stored as one value per label."""

    space: SampleSpace
    values: np.ndarray

    def __post_init__(self):
        vals = _readonly(self.values)
        if vals.shape != (len(self.space),):
            raise ValueError(
                f"expected {len(self.space)} values, got shape {vals.shape}"
            )
        if not np.all(np.isfinite(vals)):
            raise ValueError("values must be finite")
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_mapping(cls, space: SampleSpace, mapping: Mapping[str, float]) -> RandomVariable:
        missing = [label for label in space if label not in mapping]
        if missing:
            raise ValueError(f"missing values for labels: {missing}")
        return cls(space, np.array([mapping[label] for label in space], dtype=float))

    @classmethod
    def constant(cls, space: SampleSpace, value: float) -> RandomVariable:
        return cls(space, np.full(len(space), float(value)))

    @classmethod
    def indicator(cls, space: SampleSpace, event: Iterable[str]) -> RandomVariable:
        """1 on the labels of ``event``, 0 elsewhere."""
        event = set(event)
        unknown = event - set(space.labels)
        if unknown:
            raise ValueError(f"event labels not in space: {sorted(unknown)}")
        return cls(space, np.array([1.0 if l in event else 0.0 for l in space]))

    def __call__(self, label: str) -> float:
        return float(self.values[self.space.index(label)])

    def __mul__(self, other: RandomVariable) -> RandomVariable:
        _check_same_space(self.space, other.space)
        return RandomVariable(self.space, self.values * other.values)


@dataclass(frozen=True, eq=False)
class Importance:
    """Non-negative random variable expressing how much each outcome matters.

    Must be positive somewhere; an all-zero importance cannot rank anything.
    """

    variable: RandomVariable

    def __post_init__(self):
        vals = self.variable.values
        if np.any(vals < 0):
            raise ValueError("importance values must be non-negative")
        if not np.any(vals > 0):
            raise DegenerateImportanceError("importance is zero everywhere")

    @classmethod
    def from_values(cls, space: SampleSpace, values) -> Importance:
        return cls(RandomVariable(space, np.asarray(values, dtype=float)))

    @property
    def space(self) -> SampleSpace:
        return self.variable.space

    @property
    def values(self) -> np.ndarray:
        return self.variable.values

    def __call__(self, label: str) -> float:
        return self.variable(label)

    def scaled(self, factor: float) -> Importance:
        """Same preferences, rescaled by a positive factor."""
        if not factor > 0:
            raise ValueError("scale factor must be positive")
        return Importance(RandomVariable(self.space, self.values * factor))


@dataclass(frozen=True, eq=False)
class Performance:
    """Probability measure on a finite sample space."""

    space: SampleSpace
    masses: np.ndarray

    def __post_init__(self):
        arr = _readonly(self.masses)
        if arr.shape != (len(self.space),):
            raise ValueError(
                f"expected {len(self.space)} masses, got shape {arr.shape}"
            )
        if not np.all(np.isfinite(arr)):
            raise ValueError("masses must be finite")
        if np.any(arr < 0):
            raise NegativeMassError(f"negative mass in {arr.tolist()}")
        total = _accumulate(arr.tolist())
        if abs(total - 1.0) > MASS_TOL:
            raise NotNormalizedError(f"masses sum to {total!r}, not 1")
        object.__setattr__(self, "masses", arr)

    def mass(self, label: str) -> float:
        return float(self.masses[self.space.index(label)])

    def as_dict(self) -> dict[str, float]:
        return {label: float(m) for label, m in zip(self.space, self.masses)}


def make_performance(
    space: SampleSpace,
    masses,
    mode: Literal["strict", "renormalize"] = "strict",
) -> Performance:
    """Build a performance from raw masses.

    ``strict`` requires the masses to already sum to one (within MASS_TOL);
    ``renormalize`` divides by the total, which must be positive, and is a
    no-op on already normalized input. Negative entries are rejected in
    both modes.
    """
    arr = np.asarray(masses, dtype=float)
    if arr.shape != (len(space),):
        raise ValueError(f"expected {len(space)} masses, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("masses must be finite")
    if np.any(arr < 0):
        raise NegativeMassError(f"negative mass in {arr.tolist()}")
    if mode == "renormalize":
        total = _accumulate(arr.tolist())
        if total <= 0:
            raise ZeroTotalError("cannot renormalize: total mass is zero")
        # Re-ingesting an already normalized vector must be a no-op, or
        # round-tripped reports would drift by an ulp per pass.
        if abs(total - 1.0) > MASS_TOL:
            arr = arr / total
    elif mode != "strict":
        raise ValueError(f"unknown mode {mode!r}")
    return Performance(space, arr)


def mixture(
    first: Performance, second: Performance, weight_first: float
) -> Performance:
    """Convex combination of two performances on the same space."""
    _check_same_space(first.space, second.space)
    if not 0.0 <= weight_first <= 1.0:
        raise ValueError("mixture weight must lie in [0, 1]")
    masses = weight_first * first.masses + (1.0 - weight_first) * second.masses
    return Performance(first.space, masses)


def expected_value(performance: Performance, variable: RandomVariable) -> float:
    """Expectation of ``variable`` under ``performance``.

    Accumulates mass * value left to right over the label order; the raster
    kernels evaluate the same sums in the same order.
    """
    _check_same_space(performance.space, variable.space)
    return _accumulate(
        m * v for m, v in zip(performance.masses.tolist(), variable.values.tolist())
    )


@dataclass(frozen=True, eq=False)
class ExpectedValueScore:
    """Score returning the expectation of a fixed variable; defined everywhere."""

    variable: RandomVariable

    def evaluate(self, performance: Performance) -> float:
        return expected_value(performance, self.variable)


@dataclass(frozen=True, eq=False)
class ExpectedValueRatioScore:
    """Score returning E[numerator] / E[denominator].

    Undefined (raises OutsideScoreDomainError) wherever the denominator
    expectation is within SCORE_DOMAIN_EPS of zero.
    """

    numerator: RandomVariable
    denominator: RandomVariable

    def __post_init__(self):
        _check_same_space(self.numerator.space, self.denominator.space)
        if not np.any(self.denominator.values != 0):
            raise ValueError("denominator variable is identically zero")

    @property
    def space(self) -> SampleSpace:
        return self.numerator.space

    def denominator_expectation(self, performance: Performance) -> float:
        return expected_value(performance, self.denominator)

    def is_defined_for(self, performance: Performance) -> bool:
        return abs(self.denominator_expectation(performance)) > SCORE_DOMAIN_EPS

    def evaluate(self, performance: Performance) -> float:
        den = self.denominator_expectation(performance)
        if abs(den) <= SCORE_DOMAIN_EPS:
            raise OutsideScoreDomainError(
                f"denominator expectation {den!r} is within {SCORE_DOMAIN_EPS} of zero"
            )
        return expected_value(performance, self.numerator) / den


@dataclass(frozen=True, eq=False)
class RankingScore:
    """Importance-weighted expected satisfaction, E[importance * satisfaction] / E[importance].

    Invariant under positive rescaling of the importance. When satisfaction
    stays in [0, 1] the score does too; with unbounded satisfaction that range
    guarantee lapses but nothing else changes.
    """

    importance: Importance
    satisfaction: RandomVariable
    _weighted: RandomVariable = field(init=False, repr=False)

    def __post_init__(self):
        _check_same_space(self.importance.space, self.satisfaction.space)
        object.__setattr__(
            self, "_weighted", self.importance.variable * self.satisfaction
        )

    @property
    def space(self) -> SampleSpace:
        return self.importance.space

    def importance_mass(self, performance: Performance) -> float:
        """E[importance] under the given performance."""
        return expected_value(performance, self.importance.variable)

    def is_defined_for(self, performance: Performance) -> bool:
        return self.importance_mass(performance) > SCORE_DOMAIN_EPS

    def evaluate(self, performance: Performance) -> float:
        den = self.importance_mass(performance)
        if den <= SCORE_DOMAIN_EPS:
            raise OutsideScoreDomainError(
                f"importance mass {den!r} is within {SCORE_DOMAIN_EPS} of zero"
            )
        return expected_value(performance, self._weighted) / den

    def as_ratio(self) -> ExpectedValueRatioScore:
        """The same score written as a ratio of plain expectations."""
        return ExpectedValueRatioScore(self._weighted, self.importance.variable)


def ev_score(variable: RandomVariable) -> ExpectedValueScore:
    return ExpectedValueScore(variable)


def evr_score(
    numerator: RandomVariable, denominator: RandomVariable
) -> ExpectedValueRatioScore:
    return ExpectedValueRatioScore(numerator, denominator)


def ranking_score(importance: Importance, satisfaction: RandomVariable) -> RankingScore:
    return RankingScore(importance, satisfaction)
