"""Exceptions raised across the workbench.

The CLI maps these onto process exit codes (see ``ncsos_workbench.main``).
"""


class WorkbenchError(Exception):
    """Base class for workbench failures."""


class ParseError(WorkbenchError):
    """A textual input could not be parsed.

    Attributes:
        text: the offending line.
        position: zero-based column of the first bad character.
    """

    def __init__(self, message: str, text: str = "", position: int = 0) -> None:
        """Create a parse error pointing at text[position]."""
        super().__init__(message)
        self.text = text
        self.position = position

    def caret(self) -> str:
        """Render the offending text with a caret under the bad column."""
        return f"{self.text}\n{' ' * self.position}^"


class BudgetExhausted(WorkbenchError):
    """A Turing machine simulation or solver ran past its configured budget."""


class ResourceLimit(WorkbenchError):
    """A problem is larger than the configured resource caps allow."""


class VerificationFailed(WorkbenchError):
    """An exact check (decomposition, representation, suite) did not hold."""


class NonRepresentativeIndex(WorkbenchError, ValueError):
    """A normal form was requested for an index outside the representative window."""
