"""Exception types raised across the package."""

from __future__ import annotations


class PreftilesError(Exception):
    """Base class for every error this package raises on purpose."""


class SpaceMismatchError(PreftilesError):
    """Objects living on different sample spaces were combined."""


class NegativeMassError(PreftilesError):
    """A probability mass or count was negative."""


class NotNormalizedError(PreftilesError):
    """Masses do not sum to one within tolerance."""


class ZeroTotalError(PreftilesError):
    """A total that must be positive (mass or weight) was zero."""


class OutsideScoreDomainError(PreftilesError):
    """A ratio score was evaluated where its denominator vanishes."""


class MixedSignError(PreftilesError):
    """Per-domain denominator terms carry both signs; weights would go negative."""


class UndefinedScoreError(PreftilesError):
    """The ranking score is undefined on one or more domains."""

    def __init__(self, domain_ids):
        self.domain_ids = tuple(domain_ids)
        super().__init__(
            "ranking score undefined on domains: " + ", ".join(self.domain_ids)
        )


class TooFewDomainsError(PreftilesError):
    """The operation needs more domains than the set provides."""


class UndefinedAblationError(PreftilesError):
    """Removing one domain leaves no usable remainder."""

    def __init__(self, domain_id, reason=""):
        self.domain_id = domain_id
        msg = f"ablation of domain {domain_id!r} is undefined"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)


class DegenerateImportanceError(PreftilesError):
    """An importance assigns zero to every outcome."""


class UndefinedCoordinateError(PreftilesError):
    """A tile coordinate has a vanishing denominator."""

    def __init__(self, axis):
        self.axis = axis
        super().__init__(f"tile coordinate {axis!r} is undefined (zero denominator)")


class BadResolutionError(PreftilesError):
    """Grid resolution must be an integer of at least 2."""


class UnknownDomainError(PreftilesError):
    """A domain id is not present in the domain set."""


class PaletteTooSmallError(PreftilesError):
    """The categorical palette has fewer colors than there are domains."""


class ConfigError(PreftilesError):
    """Base class for configuration problems."""


class ConfigParseError(ConfigError):
    """The configuration text is not valid JSON."""


class ConfigValidationError(ConfigError):
    """The configuration is valid JSON but violates an invariant."""
