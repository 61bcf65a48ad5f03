"""Exception types shared across the toolkit.

Every failure mode that a caller can act on gets its own class; the CLI
maps all of them to exit code 1 (usage errors are argparse's exit 2).
"""


class Error(Exception):
    """Base class for all toolkit errors."""


class InputError(Error):
    """Rejected input: a precondition on arguments does not hold."""


class ParseError(Error):
    """Malformed text input. Carries the 1-based line number."""

    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class ExactnessRangeError(Error):
    """The exact solver was asked to work beyond its configured size guard."""


class WorkLimitError(Error):
    """A search exceeded its step budget; no answer is returned."""


class ExhaustionError(Error):
    """All sampling attempts failed. Carries the last rejection report."""

    def __init__(self, message: str, last_report=None, attempts: int = 0):
        super().__init__(message)
        self.last_report = last_report
        self.attempts = attempts


class BudgetError(Error):
    """A construction would exceed its resource budget (named in message)."""

    def __init__(self, message: str, required: int | None = None):
        super().__init__(message)
        self.required = required


class IntegrityError(Error):
    """An instance or certificate is internally inconsistent."""
