"""Exception types shared across the library."""


class IprobError(Exception):
    """Base class for all errors raised by this package."""


class SpaceMismatchError(IprobError, ValueError):
    """Operands were built over different sample spaces."""


class BudgetExceededError(IprobError, ValueError):
    """An exhaustive scan was requested on a space above the configured cap."""


class NegligibleEventError(IprobError, ValueError):
    """The conditioning event has interval measure [0, 0]."""


class FamilyDomainError(IprobError, KeyError):
    """An explicit uncertainty family has no entry for the requested event."""


class HypothesisError(IprobError, ValueError):
    """A hypothesis of a characterization fails; the check is inapplicable."""


class ScenarioError(IprobError, ValueError):
    """A scenario document failed validation.

    `field` locates the offending entry (dotted path into the document).
    """

    def __init__(self, field: str, message: str):
        super().__init__(f"{field}: {message}")
        self.field = field
        self.message = message
