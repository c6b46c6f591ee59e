"""Exception hierarchy shared by every module."""


class NijenhuisError(Exception):
    """Base class for toolkit errors."""


class DimensionError(NijenhuisError, ValueError):
    """Operands live in spaces of different dimension, or an index is out of range."""


class ParseError(NijenhuisError, ValueError):
    """Input text or JSON could not be interpreted."""


class PreconditionError(NijenhuisError):
    """An operation was called outside the hypotheses it requires."""


class InvariantError(NijenhuisError, ValueError):
    """A value violates a structural invariant (e.g. a degenerate pairing)."""


class DegreeError(NijenhuisError, ValueError):
    """A form of the wrong degree was passed."""
