"""Exception hierarchy shared by all modules."""


class NsawError(Exception):
    """Base class for every error raised by the package."""


class ZeroPoint(NsawError, ZeroDivisionError):
    pass


class DivisionNotExact(NsawError, ArithmeticError):
    """Raised when a Laurent polynomial quotient leaves a remainder.

    Inside an operator this always means the operator was transcribed
    wrongly or applied outside its domain.
    """


class NotSymmetric(NsawError, ValueError):
    pass


class DegenerateParameters(NsawError, ValueError):
    pass


class InvalidParameters(NsawError, ValueError):
    pass


class ParameterSingularity(NsawError, ArithmeticError):
    pass


class InsufficientBasisDepth(NsawError, ValueError):
    pass


class NotAnEigenvector(NsawError, ValueError):
    pass


class IrrationalScaleFactor(NsawError, ValueError):
    """q**(1/2) is needed exactly but q is not the square of a rational."""


class PoleAtNegativeInteger(NsawError, ArithmeticError):
    pass


class NumericalInstability(NsawError, ArithmeticError):
    pass


class QuadratureNonConvergence(NsawError, ArithmeticError):
    pass


class ConfigError(NsawError, ValueError):
    pass
