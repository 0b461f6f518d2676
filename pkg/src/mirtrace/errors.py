"""Exception types shared across the package."""


class MirtraceError(Exception):
    """Base class for all errors raised by mirtrace."""


class MismatchedPrimeError(MirtraceError, ValueError):
    pass


class PrecisionError(MirtraceError, ArithmeticError):
    """A p-adic quantity is needed beyond its guaranteed digits."""


class IndeterminateValuationError(PrecisionError):
    """Valuation requested for a value that is zero to its known precision."""


class PoleError(MirtraceError, ZeroDivisionError):
    pass


class UnboundedSupportError(MirtraceError, ValueError):
    pass


class DegreeBoundError(MirtraceError, ValueError):
    pass


class InternalConsistencyError(MirtraceError, AssertionError):
    """An internal self-check (certificate, tail stabilization) failed."""
