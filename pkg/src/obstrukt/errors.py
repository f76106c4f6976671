"""Exception types shared by every module of the package."""


class ObstruktError(Exception):
    """Base class for all errors raised by obstrukt."""


class InvalidInput(ObstruktError, ValueError):
    """Input violates a documented precondition."""


class DegenerateInput(ObstruktError, RuntimeError):
    """A randomized general-position search exhausted its retry budget."""


class HypothesisViolation(InvalidInput):
    """Input falls outside the hypotheses under which a result applies."""
