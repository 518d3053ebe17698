"""Exception hierarchy shared by the engine and the command line."""


class TBBError(Exception):
    """Base class for every error raised by this package."""


class ZeroPolynomial(TBBError, ValueError):
    pass


class PolynomialSyntaxError(TBBError, ValueError):
    def __init__(self, message, line=1, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class ZeroPolynomialLine(PolynomialSyntaxError):
    pass


class WouldEmptyRegion(TBBError, ValueError):
    pass


class IterationBoundExceeded(TBBError, RuntimeError):
    pass


class OutsideDomain(TBBError, ValueError):
    pass


class DegreeBound(TBBError, ValueError):
    pass


class DuplicateHead(TBBError, ValueError):
    pass


class DegreeTooSmall(TBBError, ValueError):
    pass


class NotInB(TBBError, ValueError):
    pass


class BadIndices(TBBError, ValueError):
    pass


class ReductionBound(TBBError, RuntimeError):
    pass


class UnknownMonomial(TBBError, KeyError):
    pass


class NoInput(TBBError, ValueError):
    pass


class InfiniteQuotient(TBBError, ValueError):
    pass
