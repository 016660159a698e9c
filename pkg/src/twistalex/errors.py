"""Exception types shared across the package.

The command line interface maps these onto exit codes: parse problems
exit with 2, convention failures (an exact division that does not go
through) with 3 and numerical non-convergence with 4.
"""


class TwistalexError(Exception):
    """Base class for all errors raised by this package."""


class ParseError(TwistalexError, ValueError):
    """Malformed textual input.

    Parameters
    ----------
    message : str
        Human readable description.
    text : str, optional
        The offending input.
    position : int, optional
        Character offset at which parsing failed.
    expected : str, optional
        What the parser was looking for at ``position``.
    """

    def __init__(self, message, text=None, position=None, expected=None):
        self.text = text
        self.position = position
        self.expected = expected
        detail = message
        if position is not None:
            detail += f" at position {position}"
        if expected:
            detail += f" (expected {expected})"
        super().__init__(detail)


class NotDivisibleError(TwistalexError, ArithmeticError):
    """Exact division failed; ``remainder`` witnesses the failure."""

    def __init__(self, message, remainder=None):
        self.remainder = remainder
        super().__init__(message)


class ConventionError(TwistalexError):
    """A normalization step that must be exact was not (e.g. the t1 - 1 division)."""


class PresentationError(TwistalexError, ValueError):
    """A diagram or group presentation violates a structural precondition."""


class RepresentationError(TwistalexError, ValueError):
    """A permutation representation is invalid or underdetermined."""


class ConvergenceError(TwistalexError, ArithmeticError):
    """A numerical procedure did not reach the requested accuracy."""
