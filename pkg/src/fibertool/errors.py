"""Exception hierarchy shared by every fibertool module."""


class FibertoolError(Exception):
    """Base class for all fibertool errors."""


class InputError(FibertoolError, ValueError):
    """Bad user input; the CLI maps these to exit code 2."""


class ParseError(InputError):
    pass


class ZeroPolynomial(InputError):
    pass


class ConstantPolynomial(InputError):
    pass


class BothConstant(InputError):
    pass


class ConstantCoordinate(InputError):
    pass


class PerfectSquare(InputError):
    pass


class ParamMismatch(InputError):
    pass


class DegreeObstruction(InputError):
    """The reduction loop met degrees where neither divides the other.

    Also raised when the parametrisation fails the properness or
    non-singularity precheck, since the loop cannot succeed on such input.
    """


class BelowThreshold(InputError):
    def __init__(self, B, B0, message=None):
        self.B = B
        self.B0 = B0
        super().__init__(message or f"B = {B} is below the certified threshold B0 = {B0}")


class NotReduced(FibertoolError):
    """Internal verification of a reduction failed."""


class VerificationFailure(FibertoolError):
    """Two independent routes disagreed, or a bound was violated."""
