"""Exception hierarchy shared by every module of the package."""


class IsoreduceError(Exception):
    """Base class for all errors raised by isoreduce."""


# -- algebra ----------------------------------------------------------------

class ZeroDenominator(IsoreduceError, ZeroDivisionError):
    pass


class DivisionByZeroFunction(IsoreduceError, ZeroDivisionError):
    pass


class PoleError(IsoreduceError, ZeroDivisionError):
    """Evaluation point is a root of the denominator."""


class ZeroPolynomial(IsoreduceError, ValueError):
    pass


# -- weightlang -------------------------------------------------------------

class ParseError(IsoreduceError, ValueError):
    """Malformed weight expression or graph document.

    ``line`` and ``column`` are 1-based; ``line`` is None for bare weight
    expressions.
    """

    def __init__(self, message, column=None, line=None):
        self.message = message
        self.column = column
        self.line = line
        where = []
        if line is not None:
            where.append(f"line {line}")
        if column is not None:
            where.append(f"column {column}")
        super().__init__(f"{message} ({', '.join(where)})" if where else message)


class DuplicateEdge(ParseError):
    pass


class UnknownVertex(ParseError):
    pass


# -- reduction / spectra / dynamics ------------------------------------------

class DivisionByLambda(IsoreduceError, ArithmeticError):
    """A vertex scheduled for removal has loop weight identically lambda."""

    def __init__(self, vertex, prefix=()):
        self.vertex = vertex
        self.prefix = tuple(prefix)
        msg = f"loop weight of vertex {vertex!r} is identically lambda"
        if self.prefix:
            msg += f" after removing {', '.join(map(str, self.prefix))}"
        super().__init__(msg)


class NotStructural(IsoreduceError, ValueError):
    pass


class DegenerateDeterminant(IsoreduceError, ArithmeticError):
    pass


class VerificationError(IsoreduceError, RuntimeError):
    pass


class EmptySelection(IsoreduceError, ValueError):
    pass


class StepCapExceeded(IsoreduceError, RuntimeError):
    def __init__(self, message, orbit=None):
        self.orbit = orbit
        super().__init__(message)


class LiteralZeroDenominator(ParseError, ZeroDenominator):
    """A weight expression whose denominator is identically zero."""
