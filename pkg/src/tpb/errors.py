"""Exception types shared across the solver suite."""


class TpbError(Exception):
    """Base class for every error raised by this package."""


class NotFoundError(TpbError):
    """An edge id was not present in the graph."""


class DomainError(TpbError):
    """A vertex or index lies outside the declared base graph."""


class PreconditionError(TpbError):
    """A documented hypothesis of an operation was violated by its input."""


class StructuralError(TpbError):
    """An internal consistency check failed; indicates a solver bug."""


class FormatError(TpbError):
    """Malformed instance or resolution text."""
