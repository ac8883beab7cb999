"""Exception types. Each CLI exit code maps to one base class."""


class ThematicError(Exception):
    """Base class for all errors raised by this package."""


class ConfigError(ThematicError, ValueError):
    """Bad run configuration (unknown key, wrong type, missing input)."""

    def __init__(self, message: str, key: str | None = None):
        super().__init__(message)
        self.key = key


class IngestError(ThematicError, ValueError):
    """Unreadable input file or malformed row."""

    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


class ComputationError(ThematicError, ValueError):
    """A statistic or clustering step is undefined for the given input."""


class DegenerateInputError(ComputationError):
    """Probability requested from an empty corpus, or similar."""


class UndefinedConditionalError(ComputationError):
    """Conditioning event does not occur in the corpus."""


class MissingContextError(ComputationError):
    """Thematic weighting requested without context vectors."""
