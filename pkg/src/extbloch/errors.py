"""Exception hierarchy. The CLI maps these onto exit codes 1 and 2."""


class ExtBlochError(Exception):
    pass


class InputError(ExtBlochError, ValueError):
    """Arguments violate a documented precondition."""


class NumericalError(ExtBlochError, ArithmeticError):
    """A computed quantity left its expected numerical envelope."""


class VerificationError(ExtBlochError, AssertionError):
    """An internal identity check failed (usually a basis-convention bug)."""
