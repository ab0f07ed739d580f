"""Weighted mixtures of per-domain performances and their closed-form score weights.

The summary of a domain set is the weight-normalized mixture of its
performances. Every score family in :mod:`preftiles.core` evaluates on that
mixture as a weighted mean of the per-domain scores; the functions here return
those weights in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator

import numpy as np

from .core import (
    SCORE_DOMAIN_EPS,
    Importance,
    Performance,
    RandomVariable,
    SampleSpace,
    _accumulate,
    _check_same_space,
    expected_value,
)
from .errors import (
    MixedSignError,
    OutsideScoreDomainError,
    UnknownDomainError,
    ZeroTotalError,
)

# A weight vector must sum to 1 within this absolute tolerance.
WEIGHT_SUM_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DomainEntry:
    """One domain: an id, a non-negative weight, and a performance."""

    id: str
    weight: float
    performance: Performance

    def __post_init__(self):
        if not isinstance(self.id, str) or not self.id:
            raise ValueError("domain id must be a non-empty string")
        weight = float(self.weight)
        if not np.isfinite(weight) or weight < 0:
            raise ValueError(f"domain weight must be finite and >= 0, got {weight!r}")
        object.__setattr__(self, "weight", weight)


@dataclass(frozen=True, eq=False)
class DomainSet:
    """Ordered collection of domains sharing one sample space.

    Zero-weight domains are kept (they still appear in weight vectors and
    selections) but the weights must not all be zero.
    """

    entries: tuple[DomainEntry, ...]

    def __post_init__(self):
        entries = tuple(self.entries)
        if not entries:
            raise ValueError("a domain set needs at least one domain")
        ids = [e.id for e in entries]
        if len(set(ids)) != len(ids):
            raise ValueError(f"duplicate domain ids: {ids}")
        space = entries[0].performance.space
        for entry in entries[1:]:
            _check_same_space(space, entry.performance.space)
        if _accumulate(e.weight for e in entries) <= 0:
            raise ZeroTotalError("domain weights sum to zero")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def build(cls, items: Iterable[tuple[str, float, Performance]]) -> DomainSet:
        return cls(tuple(DomainEntry(i, w, p) for i, w, p in items))

    @property
    def space(self) -> SampleSpace:
        return self.entries[0].performance.space

    @property
    def ids(self) -> tuple[str, ...]:
        return tuple(e.id for e in self.entries)

    def weights(self) -> np.ndarray:
        return np.array([e.weight for e in self.entries])

    def mass_matrix(self) -> np.ndarray:
        """Per-domain masses stacked into shape (domains, labels)."""
        return np.stack([e.performance.masses for e in self.entries])

    def entry(self, domain_id: str) -> DomainEntry:
        for e in self.entries:
            if e.id == domain_id:
                return e
        raise UnknownDomainError(f"no domain with id {domain_id!r}")

    def without(self, domain_id: str) -> DomainSet:
        """The same set minus one domain; raises ZeroTotalError if nothing weighable remains."""
        rest = tuple(e for e in self.entries if e.id != domain_id)
        if len(rest) == len(self.entries):
            raise UnknownDomainError(f"no domain with id {domain_id!r}")
        if not rest:
            raise ZeroTotalError("removing the only domain leaves an empty set")
        return DomainSet(rest)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self) -> Iterator[DomainEntry]:
        return iter(self.entries)


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Convex weights over the domains of a set, in declaration order."""

    ids: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        vals.setflags(write=False)
        if vals.shape != (len(self.ids),):
            raise ValueError("one weight per domain id required")
        if np.any(vals < 0):
            raise ValueError(f"weights must be non-negative, got {vals.tolist()}")
        total = _accumulate(vals.tolist())
        if abs(total - 1.0) > WEIGHT_SUM_TOL:
            raise ValueError(f"weights sum to {total!r}, not 1")
        object.__setattr__(self, "ids", tuple(self.ids))
        object.__setattr__(self, "values", vals)

    def __getitem__(self, domain_id: str) -> float:
        try:
            return float(self.values[self.ids.index(domain_id)])
        except ValueError:
            raise KeyError(f"no domain with id {domain_id!r}") from None

    def as_dict(self) -> dict[str, float]:
        return {i: float(v) for i, v in zip(self.ids, self.values)}


def summarize(domains: DomainSet) -> Performance:
    """Weight-normalized mixture of the domain performances.

    Accumulates domain by domain in declaration order (matching the raster
    kernels) and divides by the weight total once at the end.
    """
    total = _accumulate(e.weight for e in domains)
    acc = np.zeros(len(domains.space))
    for entry in domains:
        acc = acc + entry.weight * entry.performance.masses
    return Performance(domains.space, acc / total)


def weights_for_ev_score(domains: DomainSet) -> WeightVector:
    """Weights making any expected-value score of the summary a weighted mean.

    Simply the domain weights normalized by their total; independent of the
    score's variable.
    """
    total = _accumulate(e.weight for e in domains)
    values = np.array([e.weight for e in domains]) / total
    return WeightVector(domains.ids, values)


def weights_for_evr_score(
    domains: DomainSet, denominator: RandomVariable
) -> WeightVector:
    """Weights making a ratio score of the summary a weighted mean.

    Each domain contributes weight * E[denominator]; the terms must not mix
    signs (the weights would leave [0, 1]) and must not all vanish.
    """
    _check_same_space(domains.space, denominator.space)
    terms = [
        entry.weight * expected_value(entry.performance, denominator)
        for entry in domains
    ]
    has_pos = any(t > 0 for t in terms)
    has_neg = any(t < 0 for t in terms)
    if has_pos and has_neg:
        raise MixedSignError(
            f"denominator terms mix signs across domains: {terms}"
        )
    total = _accumulate(terms)
    if abs(total) <= SCORE_DOMAIN_EPS:
        raise OutsideScoreDomainError(
            f"total denominator mass {total!r} is within {SCORE_DOMAIN_EPS} of zero"
        )
    return WeightVector(domains.ids, np.array(terms) / total)


def weights_for_ranking_score(
    domains: DomainSet, importance: Importance
) -> WeightVector:
    """Weights for the ranking score: the ratio-score weights with the importance as denominator."""
    return weights_for_evr_score(domains, importance.variable)
