"""Exception hierarchy. Every error raised on purpose derives from HweylError."""


class HweylError(Exception):
    pass


class CutoffTooLarge(HweylError):
    """Enumeration would exceed the configured entry budget."""


class OutOfRange(HweylError):
    """Query point lies outside the enumerated spectrum."""


class UnsupportedMoment(HweylError):
    """Moment order outside {1, 2, 3}."""


class NonpositiveValue(HweylError):
    """A log-log fit was asked to use a value <= 0."""


class QuadratureFailure(HweylError):
    """Requested tolerance not reached within the node budget."""


class TermBudgetExceeded(HweylError):
    """Exponential-sum term list would exceed the configured cap."""


class InvalidConfig(HweylError):
    """Parameters outside their admissible window."""


class VerificationFailed(HweylError):
    """An oracle comparison or property check did not hold."""
