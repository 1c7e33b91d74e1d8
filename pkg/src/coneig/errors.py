"""Exception hierarchy shared by all modules."""


class ConeigError(Exception):
    """Base class for errors raised by coneig."""


class DivByZeroInterval(ConeigError, ZeroDivisionError):
    """Division by an interval that contains zero."""


class DimensionMismatch(ConeigError, ValueError):
    pass


class SingularMatrix(ConeigError, ArithmeticError):
    pass


class NoInverseCertificate(ConeigError):
    """No available route certifies that a diagonal block is invertible."""


class MixedScale(ConeigError, ValueError):
    pass


class NonpositiveScale(ConeigError, ValueError):
    pass


class NotIsolated(ConeigError):
    pass


class HypothesisFailed(ConeigError):
    """The hypotheses of a localization theorem could not be certified."""


class Infeasible(ConeigError):
    pass


class NotDominatingFactor(ConeigError):
    def __init__(self, index, rates=None):
        self.index = index
        self.rates = rates
        super().__init__(f"factor {index} is not certified r-dominating")


class NoConvergence(ConeigError):
    pass


class ParseError(ConeigError, ValueError):
    def __init__(self, message, line=None, column=None, path=None):
        self.line = line
        self.column = column
        self.path = path
        where = []
        if line is not None:
            where.append(f"line {line}, column {column}")
        if path:
            where.append(path)
        suffix = f" ({'; '.join(where)})" if where else ""
        super().__init__(message + suffix)
