"""Domain selectors: which domain is easiest, hardest, preponderant, or the bottleneck.

All selectors share the same tie rule: criterion values within TIE_TOL of the
optimum form the tie set, the winner is the first member in declaration
order, and the full tie set is always reported. Selectors fail loudly on
undefined scores; mapping failures to undefined pixels is the raster layer's
job, not theirs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    SCORE_DOMAIN_EPS,
    Importance,
    RandomVariable,
    RankingScore,
    _accumulate,
    _check_same_space,
    expected_value,
)
from .errors import (
    OutsideScoreDomainError,
    TooFewDomainsError,
    UndefinedAblationError,
    UndefinedScoreError,
    ZeroTotalError,
)
from .summarize import DomainSet, summarize

# Criterion values within this absolute tolerance of the optimum tie.
TIE_TOL = 1e-9


@dataclass(frozen=True, eq=False)
class Selection:
    """Outcome of a selector: winner, full tie set, and all criterion values."""

    winner: str
    tie_set: tuple[str, ...]
    criterion_values: dict[str, float]


def _select(ids, values, maximize: bool) -> Selection:
    optimum = max(values) if maximize else min(values)
    ties = tuple(
        domain_id
        for domain_id, value in zip(ids, values)
        if abs(value - optimum) <= TIE_TOL
    )
    return Selection(ties[0], ties, dict(zip(ids, values)))


def _ranking_values(
    domains: DomainSet, importance: Importance, satisfaction: RandomVariable
) -> list[float]:
    score = RankingScore(importance, satisfaction)
    undefined = [
        entry.id for entry in domains if not score.is_defined_for(entry.performance)
    ]
    if undefined:
        raise UndefinedScoreError(undefined)
    return [score.evaluate(entry.performance) for entry in domains]


def easiest_domain(
    domains: DomainSet, importance: Importance, satisfaction: RandomVariable
) -> Selection:
    """The domain with the highest ranking score."""
    return _select(domains.ids, _ranking_values(domains, importance, satisfaction), True)


def most_difficult_domain(
    domains: DomainSet, importance: Importance, satisfaction: RandomVariable
) -> Selection:
    """The domain with the lowest ranking score."""
    return _select(domains.ids, _ranking_values(domains, importance, satisfaction), False)


def preponderant_domain(domains: DomainSet, importance: Importance) -> Selection:
    """The domain contributing the most importance mass to the summary.

    Criterion per domain: weight * E[importance]. Satisfaction plays no role.
    """
    _check_same_space(domains.space, importance.space)
    terms = [
        entry.weight * expected_value(entry.performance, importance.variable)
        for entry in domains
    ]
    total = _accumulate(terms)
    if total <= SCORE_DOMAIN_EPS:
        raise OutsideScoreDomainError(
            f"total importance mass {total!r} is within {SCORE_DOMAIN_EPS} of zero"
        )
    return _select(domains.ids, terms, True)


def bottleneck_domain(
    domains: DomainSet, importance: Importance, satisfaction: RandomVariable
) -> Selection:
    """The domain whose removal raises the summary's ranking score the most.

    Criterion per domain: the ranking score of the summary of all the other
    domains. Needs at least two domains, and every ablation must leave a
    usable remainder.
    """
    if len(domains) < 2:
        raise TooFewDomainsError(
            f"bottleneck needs at least 2 domains, got {len(domains)}"
        )
    score = RankingScore(importance, satisfaction)
    values = []
    for entry in domains:
        try:
            remainder = summarize(domains.without(entry.id))
            values.append(score.evaluate(remainder))
        except ZeroTotalError:
            raise UndefinedAblationError(
                entry.id, "remaining domain weights sum to zero"
            ) from None
        except OutsideScoreDomainError as exc:
            raise UndefinedAblationError(entry.id, str(exc)) from None
    return _select(domains.ids, values, True)
