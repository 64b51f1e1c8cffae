"""Semantic exceptions shared across the toolkit."""


class IcnofError(Exception):
    """Base class for all toolkit errors."""


class InterferenceTooWeak(IcnofError, ValueError):
    """INR <= 1: treating interference as noise is optimal, outside this model."""


class DomainError(IcnofError, ValueError):
    """A correlation or splitting parameter is outside its admissible range."""


class InputError(IcnofError, ValueError):
    """Malformed user input (CLI flags, JSON parameter files)."""


class VerificationFailure(IcnofError):
    """A verification sweep found violating channels; details in ``report``."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


class EquivalenceFailure(IcnofError):
    """The projected rate region and the split-rate system disagree."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report
