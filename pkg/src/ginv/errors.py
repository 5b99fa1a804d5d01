"""Exception hierarchy.

Mathematical verdicts (unsolvable, group inverse nonexistent) are return
values, not exceptions. Exceptions are reserved for malformed input and for
violated hypotheses of the constructions.
"""


class GinvError(Exception):
    """Base class for all package errors."""


class DimensionError(GinvError, ValueError):
    pass


class ModeError(GinvError, TypeError):
    """Mixing rational and float matrices in one operation."""


class HypothesisViolated(GinvError):
    """A standing hypothesis of a construction does not hold."""


class CertificateInvalid(GinvError):
    """A supplied witness or inner inverse fails its defining identity."""

    def __init__(self, message, identity=None):
        super().__init__(message)
        self.identity = identity


class NotASolution(GinvError):
    """A supplied solution has a nonzero residual."""

    def __init__(self, message, residual=None):
        super().__init__(message)
        self.residual = residual


class InternalInconsistency(GinvError):
    """A result failed its own post-condition. Indicates a bug."""


class ParseError(GinvError, ValueError):
    def __init__(self, message, source=None, offset=None):
        where = ""
        if source is not None:
            where = f"{source}"
            if offset is not None:
                where += f" at offset {offset}"
            where += ": "
        super().__init__(where + message)
        self.source = source
        self.offset = offset
