# errors.py
"""
Error Types for pyfabgupta
==========================

Every failure raised by the library derives from FabGuptaError so callers
(and the CLI) can catch one type. The subclasses only name the failure
class and pick the process exit code the CLI should use.
"""


class FabGuptaError(Exception):
    """
    Generic error for all pyfabgupta failures.

    Supports:
        - exit code (optional, used by cli.py)
        - message (string)
        - payload (any extra context: offending word, partial results, ...)

    Used by:
        tree_group.py → word syntax and ψ domain failures
        metric_enum.py → table range, budget and cache failures
        bounds.py     → numeric domain failures
        cli.py        → user-friendly error messages and exit codes
    """

    exit_code = 1

    def __init__(self, message, exit_code=None, payload=None):
        """
        Parameters
        ----------
        message : str
            Human-readable error message.
        exit_code : int, optional
            Overrides the class default exit code.
        payload : any, optional
            Extra context for the failure.
        """
        super().__init__(message)
        if exit_code is not None:
            self.exit_code = exit_code
        self.payload = payload

    def __str__(self):
        base = super().__str__()
        if self.payload is not None and not hasattr(self.payload, "entries"):
            base += f" | Payload: {self.payload}"
        return base


class WordSyntaxError(FabGuptaError):
    """Unrecognised letter in a raw word; `position` is 0-based."""

    exit_code = 2

    def __init__(self, message, position=None, payload=None):
        super().__init__(message, payload=payload)
        self.position = position


class DomainError(FabGuptaError):
    """An operation was called outside its precondition."""

    exit_code = 2


class OutOfRangeError(FabGuptaError):
    """An element lies outside the radius of an exhausted ball table."""

    exit_code = 2


class EnumerationLimitError(FabGuptaError):
    """
    The candidate budget was exhausted. `payload` holds the partial
    BallTable (complete up to `payload.radius`).
    """

    exit_code = 3


class CacheFormatError(FabGuptaError):
    """Bad magic, version mismatch or truncated ball cache file."""

    exit_code = 2


class BoundsError(FabGuptaError):
    """Numeric search or majorant construction failed."""

    exit_code = 1
