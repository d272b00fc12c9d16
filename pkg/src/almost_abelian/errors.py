"""Exception hierarchy shared by the package (and mapped to CLI exit codes)."""


class AlmostAbelianError(Exception):
    pass


class ParseError(AlmostAbelianError, ValueError):
    """Malformed matrix JSON, profile JSON or tuple text."""


class PreconditionError(AlmostAbelianError, ValueError):
    """An operation was called outside its domain (even size, non-square, ...)."""


class UnsupportedFactorError(AlmostAbelianError):
    """Factorization over Q fell outside what the exact kernels can certify."""


class NotSquarefreeError(PreconditionError):
    pass


class NotNilpotentError(PreconditionError):
    def __init__(self, message, power=None):
        super().__init__(message)
        self.power = power


class InadmissibleError(PreconditionError):
    """A witness was requested for a tuple that admits no such structure."""


class InconclusiveError(AlmostAbelianError):
    """The isomorphism test cannot decide (irrational scalings between algebraic spectra)."""
