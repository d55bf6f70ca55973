# File: utils/errors.py


class TutteFrameError(Exception):
    """Base class for every error raised by tutteframe."""


class CompositionError(TutteFrameError, ValueError):
    """Invalid composition, bit sequence, shift vector or slice constraint."""


class MatroidSpecError(TutteFrameError, ValueError):
    """A matroid description that cannot be parsed or is inconsistent."""


class CapExceededError(TutteFrameError):
    """A configured size cap stops a computation.

    Attributes:
        hint (str): A route or setting that can handle the instance instead.
    """

    def __init__(self, message, hint=""):
        super().__init__(message)
        self.hint = hint

    def __str__(self):
        base = super().__str__()
        return f"{base} (try: {self.hint})" if self.hint else base


class InfeasibleRouteError(CapExceededError):
    """No requested route can handle the instance."""


class NotDivisibleError(TutteFrameError, ArithmeticError):
    """Division by xy - x - y left a remainder."""

    def __init__(self, message, remainder=None):
        super().__init__(message)
        self.remainder = remainder


class ResidualError(TutteFrameError, ArithmeticError):
    """Peeling a polynomial against the tau family left a residual."""


class IntegralityError(TutteFrameError, ArithmeticError):
    """A quantity that must be an integer is not."""


class CalibrationError(TutteFrameError):
    """The truncated-contraction route disagrees with the catenary route."""
