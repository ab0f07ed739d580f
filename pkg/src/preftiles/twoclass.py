"""The two-class specialization: confusion matrices and the preference square.

Outcomes follow the fixed label order (tn, fp, fn, tp). A point (a, b) in the
unit square encodes how much a correct positive matters relative to a correct
negative (a) and how much a false negative matters relative to a false
positive (b); the induced importance is (1-a, 1-b, b, a). Classical scores
are particular points of that square.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .core import (
    SCORE_DOMAIN_EPS,
    Importance,
    Performance,
    RandomVariable,
    SampleSpace,
    _check_same_space,
    make_performance,
)
from .errors import (
    NegativeMassError,
    OutsideScoreDomainError,
    UndefinedCoordinateError,
    ZeroTotalError,
)

TWO_CLASS_LABELS = ("tn", "fp", "fn", "tp")

_SPACE = SampleSpace(TWO_CLASS_LABELS)
_SATISFACTION = RandomVariable(_SPACE, np.array([1.0, 0.0, 0.0, 1.0]))


def two_class_space() -> SampleSpace:
    """The four-outcome space (tn, fp, fn, tp), in that order."""
    return _SPACE


def two_class_satisfaction() -> RandomVariable:
    """Indicator of a correct decision: 1 on tn and tp, 0 on fp and fn."""
    return _SATISFACTION


@dataclass(frozen=True)
class ConfusionInput:
    """Raw confusion matrix content: counts or rates, non-negative, not all zero."""

    tn: float
    fp: float
    fn: float
    tp: float

    def __post_init__(self):
        for name in TWO_CLASS_LABELS:
            value = float(getattr(self, name))
            if not np.isfinite(value):
                raise ValueError(f"{name} must be finite, got {value!r}")
            if value < 0:
                raise NegativeMassError(f"{name} must be >= 0, got {value!r}")
            object.__setattr__(self, name, value)
        if self.tn + self.fp + self.fn + self.tp <= 0:
            raise ZeroTotalError("confusion entries are all zero")

    def as_array(self) -> np.ndarray:
        return np.array([self.tn, self.fp, self.fn, self.tp])


def performance_from_confusion(confusion: ConfusionInput) -> Performance:
    """Normalize a confusion matrix into a performance on the two-class space."""
    return make_performance(_SPACE, confusion.as_array(), mode="renormalize")


@dataclass(frozen=True)
class TilePoint:
    """A point of the preference square, both coordinates in [0, 1]."""

    a: float
    b: float

    def __post_init__(self):
        for name in ("a", "b"):
            value = float(getattr(self, name))
            if not np.isfinite(value) or not 0.0 <= value <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1], got {value!r}")
            object.__setattr__(self, name, value)


def canonical_importance(point: TilePoint) -> Importance:
    """The importance (1-a, 1-b, b, a) attached to a preference point."""
    a, b = point.a, point.b
    return Importance.from_values(_SPACE, [1.0 - a, 1.0 - b, b, a])


def tile_point_from_importance(importance: Importance) -> TilePoint:
    """Recover (a, b) from any two-class importance.

    a = tp-share of the correct-outcome importance, b = fn-share of the
    error-outcome importance. A vanishing share denominator leaves that
    coordinate undefined.
    """
    _check_same_space(importance.space, _SPACE)
    w_tn, w_fp, w_fn, w_tp = importance.values.tolist()
    den_a = w_tn + w_tp
    den_b = w_fp + w_fn
    if den_a <= 0:
        raise UndefinedCoordinateError("a")
    if den_b <= 0:
        raise UndefinedCoordinateError("b")
    return TilePoint(w_tp / den_a, w_fn / den_b)


def canonical_score_value(performance: Performance, point: TilePoint) -> float:
    """Ranking score of a two-class performance at a preference point, in closed form.

    Same arithmetic expression as the raster kernels, term by term.
    """
    _check_same_space(performance.space, _SPACE)
    p_tn, p_fp, p_fn, p_tp = performance.masses.tolist()
    a, b = point.a, point.b
    num = p_tn * (1.0 - a) + p_tp * a
    den = p_tn * (1.0 - a) + p_fp * (1.0 - b) + p_fn * b + p_tp * a
    if den <= SCORE_DOMAIN_EPS:
        raise OutsideScoreDomainError(
            f"importance mass {den!r} is within {SCORE_DOMAIN_EPS} of zero"
        )
    return num / den


def named_score_points() -> dict[str, TilePoint]:
    """Preference points at which the ranking score equals a classical score."""
    return {
        "accuracy": TilePoint(0.5, 0.5),
        "TNR": TilePoint(0.0, 0.0),
        "TPR": TilePoint(1.0, 1.0),
        "NPV": TilePoint(0.0, 1.0),
        "PPV": TilePoint(1.0, 0.0),
        "F1": TilePoint(1.0, 0.5),
    }
