"""
Exceptions raised by the link models.
"""


class LinkModelError(ValueError):
    """Base class of every error raised by pyoptlink."""


class DomainError(LinkModelError):
    """An input lies outside the valid domain of a model."""


class FitDomainError(DomainError):
    """An input lies outside the validated interval of a fitted polynomial."""


class TransceiverLimitedError(DomainError):
    """The transmitter and receiver rise times alone exceed the rise-time budget."""


class ConfigError(LinkModelError):
    """A configuration document cannot be parsed or violates an invariant."""


class SweepError(LinkModelError):
    """A sweep definition or a trend check refers to something unknown."""
