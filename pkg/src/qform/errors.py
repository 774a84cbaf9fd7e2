"""Exception types shared across the package."""


class QFormError(Exception):
    pass


class ParseError(QFormError, ValueError):
    """Malformed textual input (sextuple, form identifier, window)."""


class InvalidForm(QFormError, ValueError):
    """Well-formed input that does not describe a valid lattice."""


class CorpusError(QFormError):
    pass


class CoreNotFound(QFormError):
    pass


class RecipeError(QFormError):
    """A transcribed branch table does not partition the requested range."""


class QFormOverflowError(QFormError, OverflowError):
    """Raised instead of silently working with out-of-range integers."""
