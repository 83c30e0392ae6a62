"""Exception hierarchy shared by every module."""


class SplitForgeError(Exception):
    """Base class for all library errors."""


# arithmetic

class ArithmeticFailure(SplitForgeError):
    pass


class NotDivisible(ArithmeticFailure):
    pass


class DivisionByZero(ArithmeticFailure, ZeroDivisionError):
    pass


class BothZero(ArithmeticFailure):
    pass


class ZeroInput(ArithmeticFailure):
    pass


class FactorizationTimeout(ArithmeticFailure):
    """The effort budget ran out before a complete factorization was found."""


class InseparableInput(ArithmeticFailure):
    """Polynomial over F_p with zero derivative; the gcd square-free test is inconclusive."""


class NonMonicDivisor(ArithmeticFailure):
    pass


class MixedContexts(ArithmeticFailure):
    pass


class ReducibleModulus(ArithmeticFailure):
    pass


class MixedPresentations(ArithmeticFailure):
    pass


class NonRadicalPresentation(ArithmeticFailure):
    pass


# case analysis

class SplittingError(SplitForgeError):
    pass


class NotApplicable(SplittingError):
    pass


class TwoNotUnit(SplittingError):
    pass


class HypothesesNotMet(SplittingError):
    """The problem is outside every supported case; ``reason`` names the failed hypothesis."""

    def __init__(self, reason: str, detail: str = ""):
        self.reason = reason
        self.detail = detail
        super().__init__(f"{reason}: {detail}" if detail else reason)


class NoPrimeContainsJ(SplittingError):
    pass


class DomainWithNonzeroJ(SplittingError):
    pass


class InternalIdentityFailure(SplittingError):
    pass


# input parsing

class ProblemError(SplitForgeError):
    pass


class ParseError(ProblemError):
    """Syntax error with a 1-based line/column and the token that was expected."""

    def __init__(self, message: str, line: int = 0, column: int = 0, expected: str = ""):
        self.line = line
        self.column = column
        self.expected = expected
        where = f"line {line}, column {column}: " if line else ""
        tail = f" (expected {expected})" if expected else ""
        super().__init__(f"{where}{message}{tail}")


class NonMonic(ProblemError):
    pass


class WrongDegree(ProblemError):
    pass


class WrongVariable(ProblemError):
    pass


class UnknownRing(ProblemError):
    pass


class EvenPrime(ProblemError):
    pass


class MalformedCertificate(SplitForgeError):
    pass
