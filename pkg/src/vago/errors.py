"""Exception types shared across the package."""


class VagoError(Exception):
    """Base class for all errors raised by this package."""


class LexiconFormatError(VagoError):
    """A lexicon file line could not be parsed."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class InsufficientText(VagoError):
    """Input text is too short for language identification."""


class EmptySentence(VagoError):
    """A sentence with no countable word tokens was scored."""


class EmptyText(VagoError):
    """A text that yields no sentences was scored."""


class VectorFormatError(VagoError):
    """A word-vector file could not be parsed."""

    def __init__(self, message, line_no=None):
        if line_no is not None:
            message = f"line {line_no}: {message}"
        super().__init__(message)
        self.line_no = line_no


class CheckpointError(VagoError):
    """A model checkpoint is malformed, truncated, or has the wrong version."""


class CorpusError(VagoError):
    """A corpus file or record is invalid."""


class DegenerateVariance(VagoError):
    """Correlation requested on a variable with zero variance."""
